#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>

#include "gwbec/bogoliubov.hpp"
#include "gwbec/constants.hpp"
#include "gwbec/oracle.hpp"

using namespace gwbec;
using std::complex;

namespace {
const CavityConfig cavity{1e-6, 1e-2, 10, std::nullopt};
const double omega_1 = constants::pi * cavity.sound_speed / cavity.length;
}

TEST_CASE("discrete coefficients match the first-order formulas") {
    const double eps = 1e-4;
    const BogoliubovSet set = discrete_coefficients(eps, cavity);
    CHECK(set.alpha(0, 0) == complex<double>(1.0, 0.0));
    CHECK(set.beta(0, 0) == complex<double>(0.0, 0.0));
    // (m, n) = (1, 2): (-1)^3 = -1
    CHECK(set.beta(0, 1).real() ==
          doctest::Approx(std::sqrt(2.0) / 6.0 * eps).epsilon(1e-14));
    CHECK(set.alpha(0, 1).real() ==
          doctest::Approx(std::sqrt(2.0) / 2.0 * eps).epsilon(1e-14));
    CHECK(set.beta(0, 1).imag() == 0.0);

    for (int m = 1; m <= cavity.max_mode; ++m) {
        CHECK(set.beta(m - 1, m - 1) == complex<double>(0.0, 0.0));
        CHECK(set.alpha(m - 1, m - 1) == complex<double>(1.0, 0.0));
        for (int n = 1; n < m; ++n) {
            CHECK(set.beta(m - 1, n - 1) == set.beta(n - 1, m - 1));
            CHECK(set.alpha(m - 1, n - 1) == -set.alpha(n - 1, m - 1));
        }
    }
    CHECK_THROWS_AS(discrete_coefficients(0.5, cavity), std::domain_error);
}

TEST_CASE("oscillatory integral basics") {
    CHECK(oscillatory_integral(1.0, 2.0, 0.0) == complex<double>(0.0, 0.0));

    // omega = 0: elementary antiderivative (1 - cos(Omega t))/Omega
    const double drive = 2.0 * constants::pi * 15000.0;
    for (double t : {1e-5, 3.7e-4, 2.2e-3}) {
        const complex<double> val = oscillatory_integral(0.0, drive, t);
        CHECK(val.real() ==
              doctest::Approx((1.0 - std::cos(drive * t)) / drive).epsilon(1e-12));
        CHECK(std::abs(val.imag()) < 1e-18);
    }

    // exact resonance: magnitude grows like t/2
    const double t_long = 3000.0 * 2.0 * constants::pi / drive;
    CHECK(std::abs(oscillatory_integral(drive, drive, t_long)) ==
          doctest::Approx(t_long / 2.0).epsilon(1e-3));
}

TEST_CASE("oscillatory integral matches adaptive quadrature") {
    const double drive = 2.0 * constants::pi * 15000.0;
    for (double ratio : {0.0, 1e-12, -1e-12, 1e-6, -1e-6, 0.1, -0.1, 10.0}) {
        const double omega = drive * (1.0 + ratio);
        for (double cycles : {0.7, 5.3, 31.0, 213.7}) {
            const double t = cycles * 2.0 * constants::pi / drive;
            const complex<double> closed = oscillatory_integral(omega, drive, t);
            const oracle::QuadratureResult quad = oracle::quad_oscillatory(omega, drive, t);
            REQUIRE(quad.converged);
            if (std::abs(quad.value) >= 100.0 * quad.error_estimate) {
                CHECK(std::abs(closed - quad.value) <= 1e-10 * std::abs(quad.value));
            } else {
                // The integral cancels to the oracle's own noise floor; a
                // relative comparison is meaningless there.
                CHECK(std::abs(closed - quad.value) <= quad.error_estimate);
            }
        }
    }
}

TEST_CASE("time-dependent coefficients: zero-duration wave is trivial") {
    const WaveParams wave{1e-5, 2.0 * constants::pi * 15000.0, 0.0};
    const BogoliubovSet set = time_dependent_coefficients(wave, cavity);
    CHECK(set.alpha.isIdentity(0.0));
    CHECK(set.beta.isZero(0.0));
}

TEST_CASE("time-dependent coefficients reach the resonant growth rate") {
    const double eps = 1e-6;
    const double drive = 3.0 * omega_1;  // resonance of the (1, 2) pair
    const double t = 2.0e4 / omega_1;    // omega_1 t = 2e4
    const BogoliubovSet set = time_dependent_coefficients({eps, drive, t}, cavity);
    const double expected = eps / 4.0 * std::sqrt(2.0) * omega_1 * t;
    CHECK(std::abs(set.beta(1, 0)) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("off-resonant coefficients stay bounded by the kernel envelope") {
    const double eps = 1e-6;
    const double drive = 4.3 * omega_1;  // away from every odd integer multiple
    for (double cycles : {11.3, 57.0, 301.2}) {
        const double t = cycles * 2.0 * constants::pi / drive;
        const BogoliubovSet set = time_dependent_coefficients({eps, drive, t}, cavity);
        for (int j = 1; j <= cavity.max_mode; ++j)
            for (int k = 1; k <= cavity.max_mode; ++k) {
                if (j == k) continue;
                const double ws = (j + k) * omega_1;
                const double prefactor =
                    eps * ws * std::sqrt(double(j) * k) / (2.0 * (j + k));
                // |I| <= (Omega + max(Omega, w)) / |Omega^2 - w^2| off resonance
                const double envelope = prefactor * (drive + std::max(drive, ws)) /
                                        std::abs(drive * drive - ws * ws);
                CHECK(std::abs(set.beta(j - 1, k - 1)) <= envelope * (1.0 + 1e-9));
            }
    }
}

TEST_CASE("resonant coefficients") {
    const double eps = 1e-6;
    const double drive = resonant_drive_frequency(1, 2, cavity);
    const double t = 0.1;  // omega_1 t ~ 3.1e3

    const ResonantResult res = resonant_coefficients(1, 2, {eps, drive, t}, cavity);
    CHECK_FALSE(res.long_time_advisory);
    const double expected = eps / 4.0 * std::sqrt(2.0) * omega_1 * t;
    CHECK(res.set.beta(1, 0).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(res.set.alpha.isIdentity(0.0));

    // j + k = 3 is exhausted by (1,2) and (2,1): two symmetric entries
    int nonzero = 0;
    for (int j = 0; j < cavity.max_mode; ++j)
        for (int k = 0; k < cavity.max_mode; ++k)
            if (std::abs(res.set.beta(j, k)) > 0.0) ++nonzero;
    CHECK(nonzero == 2);
    CHECK(res.set.beta(0, 1) == res.set.beta(1, 0));

    // zero duration: advisory set, all beta vanish
    const ResonantResult zero = resonant_coefficients(1, 2, {eps, drive, 0.0}, cavity);
    CHECK(zero.set.beta.isZero(0.0));
    CHECK(zero.long_time_advisory);

    // off-resonance drive is rejected with a pointer to the exact route
    CHECK_THROWS_WITH_AS(
        resonant_coefficients(1, 2, {eps, drive * 1.01, t}, cavity),
        doctest::Contains("time_dependent_coefficients"), std::domain_error);
}

TEST_CASE("paper-form resonant prefactor applies the (n,m) magnitude uniformly") {
    const double eps = 1e-6;
    const double drive = resonant_drive_frequency(1, 4, cavity);
    const double t = 0.1;
    const BogoliubovSet per_pair =
        resonant_coefficients(1, 4, {eps, drive, t}, cavity).set;
    const BogoliubovSet uniform =
        resonant_coefficients(1, 4, {eps, drive, t}, cavity,
                              ResonantPrefactor::uniform_nm).set;
    // (n, m) = (4, 1) entry agrees between the two conventions
    CHECK(per_pair.beta(3, 0).real() ==
          doctest::Approx(uniform.beta(3, 0).real()).epsilon(1e-14));
    // the (2, 3) pair does not: per-pair uses sqrt(6) omega_1, uniform 2 omega_1
    CHECK(per_pair.beta(1, 2).real() ==
          doctest::Approx(eps / 4.0 * std::sqrt(6.0) * omega_1 * t).epsilon(1e-14));
    CHECK(uniform.beta(1, 2).real() ==
          doctest::Approx(eps / 4.0 * 2.0 * omega_1 * t).epsilon(1e-14));
}

TEST_CASE("particle number") {
    CHECK(particle_number(discrete_coefficients(0.0, cavity), 1) == 0.0);

    const double eps = 1e-6;
    const double drive = resonant_drive_frequency(1, 2, cavity);
    const double t = 0.1;
    const BogoliubovSet set = resonant_coefficients(1, 2, {eps, drive, t}, cavity).set;
    const double expected = eps * eps / 16.0 * 2.0 * omega_1 * omega_1 * t * t;
    CHECK(particle_number(set, 1) == doctest::Approx(expected).epsilon(1e-12));

    // quadratic growth at resonance
    const BogoliubovSet set2 =
        resonant_coefficients(1, 2, {eps, drive, 2.0 * t}, cavity).set;
    CHECK(particle_number(set2, 1) / particle_number(set, 1) ==
          doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Bogoliubov identity holds to O(eps^2) with eps-independent constant") {
    for (const bool continuous : {false, true}) {
        double c_prev = -1.0;
        for (double eps : {1e-6, 1e-5, 1e-4}) {
            const BogoliubovSet set =
                continuous
                    ? time_dependent_coefficients({eps, 3.0 * omega_1, 5e-3}, cavity)
                    : discrete_coefficients(eps, cavity);
            double worst_c = 0.0;
            for (int n = 1; n <= cavity.max_mode; ++n) {
                const double sum = set.alpha.col(n - 1).squaredNorm() -
                                   set.beta.col(n - 1).squaredNorm();
                worst_c = std::max(worst_c, std::abs(sum - 1.0) / (eps * eps));
            }
            if (c_prev >= 0.0) CHECK(worst_c == doctest::Approx(c_prev).epsilon(1e-3));
            c_prev = worst_c;
        }
    }
}

TEST_CASE("consistency of exact-integral and resonant routes at long times") {
    const double eps = 1e-6;
    const double drive = resonant_drive_frequency(1, 2, cavity);
    for (double w1t : {1e3, 1e4, 1e5}) {
        const double t = w1t / omega_1;
        const BogoliubovSet exact = time_dependent_coefficients({eps, drive, t}, cavity);
        const BogoliubovSet approx =
            resonant_coefficients(1, 2, {eps, drive, t}, cavity).set;
        CHECK(std::abs(exact.beta(1, 0)) ==
              doctest::Approx(std::abs(approx.beta(1, 0))).epsilon(0.01));
    }
}
