#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gwbec/cavity.hpp"

namespace gwbec {

/// Sinusoidal perturbation h(t) = amplitude * sin(drive_frequency * t).
struct WaveParams {
    double amplitude;        // dimensionless strain
    double drive_frequency;  // rad/s
    double duration;         // s

    void validate() const;
};

enum class BogoMethod { discrete, exact_integral, resonant };

/// Which prefactor the resonant approximation assigns to off-(n,m) pairs
/// with j + k = m + n. `per_pair` uses sqrt(jk) pi c_s / L for each pair;
/// `uniform_nm` applies the (n,m) magnitude sqrt(n/m) omega_m to all of them.
enum class ResonantPrefactor { per_pair, uniform_nm };

struct BogoliubovSet {
    Eigen::MatrixXcd alpha;  // indexed (m-1, n-1)
    Eigen::MatrixXcd beta;
    BogoMethod method;
    WaveParams wave;
    CavityConfig cavity;
};

// First-order coefficients of a single instantaneous epsilon-perturbation:
//   beta_mn  = -(-1)^(m+n) sqrt(mn) / (2(m+n)) eps   (m != n), beta_nn = 0
//   alpha_mn =  (-1)^(m+n) sqrt(mn) / (2(m-n)) eps   (m != n), alpha_nn = 1
BogoliubovSet discrete_coefficients(double epsilon, const CavityConfig& cfg);

// Kernel I(omega, Omega, t) = integral_0^t exp(-i omega t') sin(Omega t') dt',
// evaluated in a form that stays accurate through the removable singularities
// at omega = +-Omega.
std::complex<double> oscillatory_integral(double omega, double drive, double t);

// Coefficients for the continuous sinusoidal drive:
//   beta_mn(t)  = i (w_m + w_n) beta_mn  I(w_m + w_n, Omega, t)
//   alpha_mn(t) = i (w_m - w_n) alpha_mn I(w_m - w_n, Omega, t)   (m != n)
// with the diagonal fixed to alpha = 1, beta = 0.
BogoliubovSet time_dependent_coefficients(const WaveParams& wave,
                                          const CavityConfig& cfg);

// Long-time resonant approximation at Omega = w_m + w_n:
//   beta_jk(t) = (eps/4) sqrt(jk) (pi c_s / L) t  for j + k = m + n,
// zero elsewhere, alpha = identity.
struct ResonantResult {
    BogoliubovSet set;
    bool long_time_advisory;  // set when omega_1 t < 100
};
ResonantResult resonant_coefficients(int m, int n, const WaveParams& wave,
                                     const CavityConfig& cfg,
                                     ResonantPrefactor prefactor = ResonantPrefactor::per_pair);

// Expected phonon number in mode n: sum_m |beta_mn|^2.
double particle_number(const BogoliubovSet& set, int n);

inline constexpr double long_time_gate = 100.0;       // omega_1 t threshold
inline constexpr double resonance_rel_tol = 1e-9;
inline constexpr double amplitude_hard_limit = 0.1;
inline constexpr double amplitude_advisory = 1e-3;

}  // namespace gwbec
