#ifndef MER_IO_HPP
#define MER_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mer/geom.hpp"

namespace mer {

// Shortest round-trip decimal representation.
std::string format_double(double v);

// One "x,y" pair per line, optional leading "x,y" header.  Malformed rows
// raise input_error with the 1-based line number.
std::vector<Point> read_points_csv(std::istream& in);
void write_points_csv(std::ostream& out, std::span<const Point> pts);

// splitmix64 stream; two draws per point, coordinates scaled into the open
// region, whole-point duplicates redrawn.  Same seed, same bytes.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double next_unit();  // in [0, 1)

private:
    std::uint64_t state_;
};

std::vector<Point> generate_points(std::size_t n, const Region& region,
                                   std::uint64_t seed);

}  // namespace mer

#endif
