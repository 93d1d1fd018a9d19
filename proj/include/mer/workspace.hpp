#ifndef MER_WORKSPACE_HPP
#define MER_WORKSPACE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mer {

// Counts auxiliary machine words held outside the input point array.  One
// word per double/integer slot; the meter's own bookkeeping is not counted.
// All heap-like buffers in the algorithms route their footprint through
// charge()/release(); a finite budget turns an overshoot into a hard error.
class WorkspaceMeter {
public:
    struct ScopeEntry {
        std::string label;
        std::uint64_t peak_words = 0;
    };

    WorkspaceMeter() = default;
    explicit WorkspaceMeter(std::uint64_t budget_words)
        : budget_words_(budget_words), has_budget_(true) {}

    void charge(std::uint64_t words);
    void release(std::uint64_t words);

    std::uint64_t current_words() const { return current_; }
    std::uint64_t peak_words() const { return peak_; }

    const std::vector<ScopeEntry>& report() const { return entries_; }

private:
    friend class AuditScope;

    std::uint64_t current_ = 0;
    std::uint64_t peak_ = 0;
    std::uint64_t budget_words_ = 0;
    bool has_budget_ = false;

    std::uint64_t scope_base_ = 0;
    std::uint64_t scope_high_ = 0;
    bool scope_active_ = false;
    std::vector<ScopeEntry> entries_;
};

// Records the peak charged within its lifetime as a labelled report entry.
// One scope at a time per meter.
class AuditScope {
public:
    AuditScope(WorkspaceMeter& meter, std::string label);
    ~AuditScope();

    AuditScope(const AuditScope&) = delete;
    AuditScope& operator=(const AuditScope&) = delete;

private:
    WorkspaceMeter& meter_;
    std::string label_;
};

// RAII charge against an optional meter; null meter means unmetered.
class MeterCharge {
public:
    MeterCharge() = default;
    MeterCharge(WorkspaceMeter* meter, std::uint64_t words);
    ~MeterCharge();

    MeterCharge(MeterCharge&& other) noexcept;
    MeterCharge& operator=(MeterCharge&& other) noexcept;
    MeterCharge(const MeterCharge&) = delete;
    MeterCharge& operator=(const MeterCharge&) = delete;

private:
    WorkspaceMeter* meter_ = nullptr;
    std::uint64_t words_ = 0;
};

}  // namespace mer

#endif
