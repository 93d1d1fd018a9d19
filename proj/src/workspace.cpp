#include "mer/workspace.hpp"

#include <utility>

#include "mer/errors.hpp"

namespace mer {

void WorkspaceMeter::charge(std::uint64_t words) {
    current_ += words;
    if (has_budget_ && current_ > budget_words_)
        throw internal_error("workspace budget exceeded");
    if (current_ > peak_) peak_ = current_;
    if (scope_active_ && current_ > scope_high_) scope_high_ = current_;
}

void WorkspaceMeter::release(std::uint64_t words) {
    if (words > current_) throw internal_error("meter underflow");
    current_ -= words;
}

AuditScope::AuditScope(WorkspaceMeter& meter, std::string label)
    : meter_(meter), label_(std::move(label)) {
    if (meter_.scope_active_) throw internal_error("nested audit scope");
    meter_.scope_active_ = true;
    meter_.scope_base_ = meter_.current_;
    meter_.scope_high_ = meter_.current_;
}

AuditScope::~AuditScope() {
    meter_.scope_active_ = false;
    meter_.entries_.push_back(
        {label_, meter_.scope_high_ - meter_.scope_base_});
}

MeterCharge::MeterCharge(WorkspaceMeter* meter, std::uint64_t words)
    : meter_(meter), words_(words) {
    if (meter_) meter_->charge(words_);
}

MeterCharge::~MeterCharge() {
    if (meter_) meter_->release(words_);
}

MeterCharge::MeterCharge(MeterCharge&& other) noexcept
    : meter_(other.meter_), words_(other.words_) {
    other.meter_ = nullptr;
    other.words_ = 0;
}

MeterCharge& MeterCharge::operator=(MeterCharge&& other) noexcept {
    if (this != &other) {
        if (meter_) meter_->release(words_);
        meter_ = std::exchange(other.meter_, nullptr);
        words_ = std::exchange(other.words_, 0);
    }
    return *this;
}

}  // namespace mer
