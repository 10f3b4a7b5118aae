#pragma once
// Small numeric helpers shared across modules. Everything downstream works in
// SI units (watts, meters, seconds, radians) and linear gains; dB/dBm only
// appear at the config boundary.
#include <cmath>
#include <cstdint>

namespace risopt {

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double TWO_PI = 2.0 * PI;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Wrap an angle into [0, 2*pi).
inline double wrap_2pi(double x) {
    double y = std::fmod(x, TWO_PI);
    if (y < 0.0) y += TWO_PI;
    return y;
}

// Quantize a phase onto the 2^n_bits-level uniform grid {k * 2*pi/2^n_bits}.
// Rounds to the nearest level; exact ties resolve toward the smaller index so
// the mapping is deterministic.
inline unsigned quantize_phase_index(double phase, int n_bits) {
    const long levels = 1L << n_bits;
    const double step = TWO_PI / static_cast<double>(levels);
    const double t = wrap_2pi(phase) / step;  // in [0, levels)
    long idx = static_cast<long>(std::ceil(t - 0.5));
    if (idx >= levels) idx -= levels;
    if (idx < 0) idx = 0;  // t in [0, 0.5] after wrap maps to 0
    return static_cast<unsigned>(idx);
}

inline double phase_from_index(unsigned idx, int n_bits) {
    return TWO_PI * static_cast<double>(idx) / static_cast<double>(1L << n_bits);
}

}  // namespace risopt
