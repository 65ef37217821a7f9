#pragma once

#include <cstdint>
#include <random>

namespace geolex {

// mt19937_64 with hand-rolled conversions. The engine's output sequence is
// fully specified by the standard; std::uniform_*_distribution is not, so
// seeded runs stay byte-identical across platforms only with this wrapper.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n).
    std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::mt19937_64 eng_;
};

} // namespace geolex
