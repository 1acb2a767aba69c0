#pragma once

#include <string>

#include "gwbec/bogoliubov.hpp"
#include "gwbec/gaussian.hpp"

namespace gwbec {

enum class QfiMethod { fidelity_fd, closed_derived, closed_paper };
enum class FigureOfMerit { sqrt_omega, omega };

struct EstimationInput {
    int mode_n;        // the pair (n, m) carrying the squeezed probe
    int mode_m;
    double squeezing;  // r
    WaveParams wave;
    CavityConfig cavity;
    double probes;     // M

    void validate() const;
};

struct SensitivityRecord {
    double qfi;                 // H_eps
    double delta_epsilon;       // Cramer-Rao bound, inf when qfi == 0
    double strain_sensitivity;  // Hz^(-1/2)
    std::string method_tag;
};

// Uhlmann fidelity between two-mode Gaussian states with zero first moments
// (Marian-Marian determinant form, vacuum-is-identity convention).
double fidelity(const CovarianceState& a, const CovarianceState& b);

struct QfiFdResult {
    double value;        // H at step d_eps
    double refined;      // H at step d_eps / 2
    double richardson;   // (4 refined - value) / 3
    double discrepancy;  // |value - refined| / max(|richardson|, tiny)
};

// QFI by finite-differenced fidelity through the full pipeline:
// exact-integral coefficients -> symplectic -> transform -> reduce to (n, m).
QfiFdResult qfi_fidelity_fd(const EstimationInput& input, double d_eps = 1e-5);

struct QfiTerms {
    double term[6];  // the six printed groups, for inspection
    double total;    // H_eps
};

// Term-by-term evaluation of the general closed-form QFI in Bogoliubov
// coefficients. The printed expression has known defects (duplicated G term,
// unbalanced grouping); it is evaluated as printed and validated only through
// agreement with qfi_fidelity_fd.
QfiTerms qfi_closed_general(const BogoliubovSet& set, int n, int m, double r);

struct QfiResonant {
    double derived;  // prefactor n/(16 m); agrees with qfi_fidelity_fd
    double paper;    // prefactor n/(4 m), exactly 4x larger
};

// Closed-form QFI at resonance: (n/16m) w_m^2 t^2 (8 - 4cosh^4 r + 2sinh^2 2r),
// plus the published-prefactor variant.
QfiResonant qfi_resonant(const EstimationInput& input);

// delta_eps = 1 / sqrt(M H)
double cramer_rao(double qfi, double probes);

// delta_eps / sqrt(Omega) (default) or delta_eps / Omega, with Omega the
// drive frequency value in s^-1.
double strain_sensitivity(double delta_eps, double drive,
                          FigureOfMerit form = FigureOfMerit::sqrt_omega);

struct EvaluateOptions {
    QfiMethod method = QfiMethod::closed_derived;
    double d_eps = 1e-5;
    FigureOfMerit figure = FigureOfMerit::sqrt_omega;
    ResonantPrefactor prefactor = ResonantPrefactor::per_pair;
};

// One sweep point end to end. Closed-form methods fall back to the
// finite-difference route when the resonant gate is not met, and the
// method_tag records what actually ran.
SensitivityRecord evaluate_point(const EstimationInput& input,
                                 const EvaluateOptions& opts = {});

}  // namespace gwbec
