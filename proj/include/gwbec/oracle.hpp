#pragma once

#include <complex>
#include <vector>

#include "gwbec/gaussian.hpp"

namespace gwbec::oracle {

/// Controls for the brute-force quadrature validator.
struct QuadratureSpec {
    double relative_tolerance = 1e-12;
    int max_subdivisions = 40;
    int panels_per_period = 16;

    void validate() const;
};

struct QuadratureResult {
    std::complex<double> value;
    double error_estimate;
    bool converged;
};

// Numerical evaluation of integral_0^t exp(-i omega t') sin(drive t') dt'
// by period-aware adaptive Simpson panels. Ground truth for the closed form.
QuadratureResult quad_oscillatory(double omega, double drive, double t,
                                  const QuadratureSpec& spec = {});

// Symplectic spectrum: paired eigenvalue moduli of i Omega sigma.
// The state is pure iff all values equal 1.
std::vector<double> purity_check(const CovarianceState& state);

// Pure-state overlap F = 1/sqrt(det((sigma_a + sigma_b)/2)). Refuses impure
// inputs; cross-checks the general two-mode fidelity on the pure subclass.
double pure_fidelity_oracle(const CovarianceState& a, const CovarianceState& b);

inline constexpr double purity_tol = 1e-10;

}  // namespace gwbec::oracle
