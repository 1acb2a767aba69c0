#include "gwbec/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

#include "gwbec/constants.hpp"

namespace gwbec {

using std::complex;
namespace {

constexpr complex<double> I{0.0, 1.0};

// Pre-computed discrete first-order entry, without the epsilon factor.
double discrete_beta(int m, int n) {
    if (m == n) return 0.0;
    const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    return -sign * std::sqrt(double(m) * n) / (2.0 * (m + n));
}

double discrete_alpha(int m, int n) {
    if (m == n) return 1.0;
    const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sqrt(double(m) * n) / (2.0 * (m - n));
}

// (exp(iat) - 1)/(ia) = t exp(iat/2) sinc(at/2); uniformly accurate in a.
complex<double> phase_integral(double a, double t) {
    const double x = 0.5 * a * t;
    double sinc;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        sinc = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    } else {
        sinc = std::sin(x) / x;
    }
    return t * std::exp(I * x) * sinc;
}

}  // namespace

void WaveParams::validate() const {
    if (amplitude < 0.0 || amplitude >= amplitude_hard_limit)
        throw std::domain_error("wave amplitude must lie in [0, 0.1) for first-order validity");
    if (drive_frequency <= 0.0) throw std::domain_error("drive frequency must be > 0");
    if (duration < 0.0) throw std::domain_error("duration must be >= 0");
}

BogoliubovSet discrete_coefficients(double epsilon, const CavityConfig& cfg) {
    cfg.validate();
    if (std::abs(epsilon) >= amplitude_hard_limit)
        throw std::domain_error("|epsilon| must be < 0.1 for first-order validity");
    const int N = cfg.max_mode;
    BogoliubovSet set;
    set.alpha.resize(N, N);
    set.beta.resize(N, N);
    for (int m = 1; m <= N; ++m)
        for (int n = 1; n <= N; ++n) {
            set.alpha(m - 1, n - 1) = discrete_alpha(m, n) * (m == n ? 1.0 : epsilon);
            set.beta(m - 1, n - 1) = discrete_beta(m, n) * epsilon;
        }
    set.method = BogoMethod::discrete;
    set.wave = {epsilon, 1.0, 0.0};
    set.cavity = cfg;
    return set;
}

complex<double> oscillatory_integral(double omega, double drive, double t) {
    if (t < 0.0) throw std::domain_error("integration time must be >= 0");
    if (t == 0.0) return {0.0, 0.0};
    // sin(Omega t') exp(-i omega t') split into two pure phases; each factor
    // is a sinc, so the omega = +-Omega singularities are removable here.
    return (phase_integral(drive - omega, t) - phase_integral(-(drive + omega), t)) /
           (2.0 * I);
}

BogoliubovSet time_dependent_coefficients(const WaveParams& wave,
                                          const CavityConfig& cfg) {
    wave.validate();
    cfg.validate();
    const int N = cfg.max_mode;
    const double omega_1 = constants::pi * cfg.sound_speed / cfg.length;
    const double eps = wave.amplitude;

    BogoliubovSet set;
    set.alpha = Eigen::MatrixXcd::Identity(N, N);
    set.beta = Eigen::MatrixXcd::Zero(N, N);
    for (int m = 1; m <= N; ++m) {
        const double w_m = m * omega_1;
        for (int n = 1; n <= N; ++n) {
            if (m == n) continue;
            const double w_n = n * omega_1;
            const double ws = w_m + w_n;
            const double wd = w_m - w_n;
            set.beta(m - 1, n - 1) = I * ws * discrete_beta(m, n) * eps *
                                     oscillatory_integral(ws, wave.drive_frequency, wave.duration);
            set.alpha(m - 1, n - 1) = I * wd * discrete_alpha(m, n) * eps *
                                      oscillatory_integral(wd, wave.drive_frequency, wave.duration);
        }
    }
    set.method = BogoMethod::exact_integral;
    set.wave = wave;
    set.cavity = cfg;
    return set;
}

ResonantResult resonant_coefficients(int m, int n, const WaveParams& wave,
                                     const CavityConfig& cfg,
                                     ResonantPrefactor prefactor) {
    wave.validate();
    const double omega_res = resonant_drive_frequency(m, n, cfg);
    if (std::abs(wave.drive_frequency - omega_res) > resonance_rel_tol * omega_res)
        throw std::domain_error(
            "drive is off the m,n resonance; use time_dependent_coefficients "
            "for non-resonant evolution");

    const int N = cfg.max_mode;
    const double omega_1 = constants::pi * cfg.sound_speed / cfg.length;
    const double omega_m = m * omega_1;
    const double eps = wave.amplitude;
    const double t = wave.duration;

    ResonantResult result;
    result.long_time_advisory = omega_1 * t < long_time_gate;
    BogoliubovSet& set = result.set;
    set.alpha = Eigen::MatrixXcd::Identity(N, N);
    set.beta = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 1; j <= N; ++j) {
        const int k = m + n - j;
        if (k < 1 || k > N || k == j) continue;
        const double magnitude =
            prefactor == ResonantPrefactor::per_pair
                ? eps / 4.0 * std::sqrt(double(j) * k) * omega_1 * t
                : eps / 4.0 * std::sqrt(double(n) / m) * omega_m * t;
        set.beta(j - 1, k - 1) = magnitude;
    }
    set.method = BogoMethod::resonant;
    set.wave = wave;
    set.cavity = cfg;
    return result;
}

double particle_number(const BogoliubovSet& set, int n) {
    if (n < 1 || n > set.beta.cols())
        throw std::domain_error("mode index outside truncation");
    return set.beta.col(n - 1).squaredNorm();
}

}  // namespace gwbec
