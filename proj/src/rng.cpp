#include "chimera/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace chimera {

XorShift64Star::XorShift64Star(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 1;
}

std::uint64_t XorShift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

double XorShift64Star::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double XorShift64Star::sign() { return (next() >> 63) ? 1.0 : -1.0; }

double XorShift64Star::gaussian() {
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * portable_log(s) / s);
    }
}

double portable_log(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("portable_log needs a positive finite argument");
    int exponent = 0;
    double m = std::frexp(x, &exponent);  // m in [0.5, 1)
    if (m < 0.70710678118654752) {
        m *= 2.0;
        exponent -= 1;
    }
    // ln m = 2 atanh(z), z = (m-1)/(m+1), |z| < 0.172.
    const double z = (m - 1.0) / (m + 1.0);
    const double z2 = z * z;
    double term = z;
    double sum = 0.0;
    for (int k = 1; k <= 41; k += 2) {
        sum += term / k;
        term *= z2;
    }
    constexpr double ln2 = 0.69314718055994530942;
    return 2.0 * sum + exponent * ln2;
}

}  // namespace chimera
