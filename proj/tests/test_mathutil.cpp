#include <doctest.h>

#include <cmath>

#include "risopt/mathutil.hpp"

using namespace risopt;

TEST_CASE("dB and dBm conversions") {
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(db_to_linear(20.0) == doctest::Approx(100.0));
    CHECK(db_to_linear(-3.0) == doctest::Approx(0.501187).epsilon(1e-6));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
    CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12));
}

TEST_CASE("angle wrapping lands in [0, 2pi)") {
    CHECK(wrap_2pi(0.0) == 0.0);
    CHECK(wrap_2pi(-PI / 2) == doctest::Approx(1.5 * PI));
    CHECK(wrap_2pi(TWO_PI) == doctest::Approx(0.0));
    CHECK(wrap_2pi(7.0 * PI) == doctest::Approx(PI));
    for (double x = -20.0; x < 20.0; x += 0.37) {
        const double w = wrap_2pi(x);
        CHECK(w >= 0.0);
        CHECK(w < TWO_PI);
        CHECK(std::abs(std::remainder(w - x, TWO_PI)) < 1e-9);
    }
}

TEST_CASE("phase quantization rounds to nearest, ties to smaller index") {
    const int n_b = 3;
    const double step = TWO_PI / 8.0;
    CHECK(quantize_phase_index(0.0, n_b) == 0u);
    CHECK(quantize_phase_index(0.49 * step, n_b) == 0u);
    CHECK(quantize_phase_index(0.51 * step, n_b) == 1u);
    CHECK(quantize_phase_index(0.5 * step, n_b) == 0u);   // tie -> smaller
    CHECK(quantize_phase_index(1.5 * step, n_b) == 1u);   // tie -> smaller
    CHECK(quantize_phase_index(7.6 * step, n_b) == 0u);   // wraps past the top
    CHECK(quantize_phase_index(-0.2 * step, n_b) == 0u);  // negative input wraps

    for (int bits = 1; bits <= 6; ++bits) {
        const long levels = 1L << bits;
        for (long k = 0; k < levels; ++k) {
            const double phase = phase_from_index(static_cast<unsigned>(k), bits);
            CHECK(quantize_phase_index(phase, bits) == static_cast<unsigned>(k));
        }
    }
}

TEST_CASE("quantization error never exceeds half a step") {
    for (int bits = 1; bits <= 4; ++bits) {
        const double step = TWO_PI / static_cast<double>(1L << bits);
        for (double phase = -7.0; phase < 7.0; phase += 0.0137) {
            const double q = phase_from_index(quantize_phase_index(phase, bits), bits);
            const double err = std::abs(std::remainder(phase - q, TWO_PI));
            CHECK(err <= step / 2 + 1e-12);
        }
    }
}
