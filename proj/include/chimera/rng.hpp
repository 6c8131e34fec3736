#pragma once

#include <cstdint>

namespace chimera {

// xorshift64* seeded through one splitmix64 step. Everything below uses only
// integer operations and correctly rounded IEEE arithmetic, so a seed gives
// the same stream on every platform.
//
//   seed step:  z = seed + 0x9E3779B97F4A7C15
//               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//               state = z ^ (z >> 31)        (0 is replaced by 1)
//   next():     x ^= x >> 12; x ^= x << 25; x ^= x >> 27
//               return x * 0x2545F4914F6CDD1D
class XorShift64Star {
public:
    explicit XorShift64Star(std::uint64_t seed);

    std::uint64_t next();
    // (next() >> 11) * 2^-53, in [0, 1).
    double uniform();
    // +1 or -1 from the top bit.
    double sign();
    // Marsaglia polar method; the log is evaluated by portable_log.
    double gaussian();

private:
    std::uint64_t state_;
};

// Natural log from frexp and an atanh series in plain double arithmetic.
double portable_log(double x);

}  // namespace chimera
