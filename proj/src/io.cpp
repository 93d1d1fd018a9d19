#include "mer/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "mer/errors.hpp"

namespace mer {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s, std::size_t line) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw input_error("line " + std::to_string(line) +
                          ": bad number '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::vector<Point> read_points_csv(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == EOF) break;
            throw input_error("line " + std::to_string(lineno) + ": empty row");
        }
        if (lineno == 1 && line == "x,y") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw input_error("line " + std::to_string(lineno) +
                              ": expected 'x,y'");
        Point p;
        p.x = parse_double(std::string_view(line).substr(0, comma), lineno);
        p.y = parse_double(std::string_view(line).substr(comma + 1), lineno);
        if (!finite(p))
            throw input_error("line " + std::to_string(lineno) +
                              ": non-finite coordinate");
        pts.push_back(p);
    }
    return pts;
}

void write_points_csv(std::ostream& out, std::span<const Point> pts) {
    out << "x,y\n";
    for (const Point& p : pts)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next()) * 0x1.0p-64;
}

std::vector<Point> generate_points(std::size_t n, const Region& region,
                                   std::uint64_t seed) {
    if (!region.valid()) throw input_error("invalid region");
    SplitMix64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        Point p;
        p.x = region.x_min + rng.next_unit() * (region.x_max - region.x_min);
        p.y = region.y_min + rng.next_unit() * (region.y_max - region.y_min);
        if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
        pts.push_back(p);
    }
    return pts;
}

}  // namespace mer
