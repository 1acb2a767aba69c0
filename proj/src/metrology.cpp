#include "gwbec/metrology.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "gwbec/constants.hpp"

namespace gwbec {

using std::complex;

void EstimationInput::validate() const {
    cavity.validate();
    wave.validate();
    if (mode_n == mode_m) throw std::invalid_argument("probe modes must be distinct");
    if (mode_n < 1 || mode_n > cavity.max_mode || mode_m < 1 || mode_m > cavity.max_mode)
        throw std::invalid_argument("probe mode outside truncation");
    if (probes < 1.0) throw std::invalid_argument("need at least one probe");
}

namespace {

constexpr double imag_residue_tol = 1e-10;

double real_det(const Eigen::MatrixXcd& m) {
    const complex<double> d = m.determinant();
    const double scale = std::max(1.0, std::abs(d));
    if (std::abs(d.imag()) > imag_residue_tol * scale)
        throw std::runtime_error("determinant expected real has large imaginary residue");
    return d.real();
}

}  // namespace

double fidelity(const CovarianceState& a, const CovarianceState& b) {
    if (a.mode_count != 2 || b.mode_count != 2)
        throw std::invalid_argument("fidelity is defined for two-mode states");
    a.validate();
    b.validate();

    const Eigen::MatrixXcd omega =
        symplectic_form(2).cast<complex<double>>() * complex<double>(0.0, 1.0);
    const Eigen::MatrixXcd sa = a.matrix.cast<complex<double>>();
    const Eigen::MatrixXcd sb = b.matrix.cast<complex<double>>();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);

    const double gamma = real_det(omega * sa * omega * sb + id) / 16.0;
    const double lambda = real_det(omega * sa + id) * real_det(omega * sb + id) / 16.0;
    const double delta = ((a.matrix + b.matrix).determinant()) / 16.0;

    const double s = std::sqrt(std::max(lambda, 0.0)) + std::sqrt(std::max(gamma, 0.0));
    // For a pair of pure states s^2 - delta vanishes identically, so the
    // computed difference is determinant roundoff and its square root would
    // inject ~1e-8 of noise into F. Anything below the roundoff scale of the
    // operands is therefore treated as exactly zero.
    const double rad_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                             (s * s + std::abs(delta));
    const double radicand = s * s - delta;
    // 1/(s - sqrt(s^2 - delta)), rationalized to avoid the cancellation
    const double f =
        (s + (radicand > rad_floor ? std::sqrt(radicand) : 0.0)) / delta;
    // The determinants are O(1) in value but are assembled from entries as
    // large as cosh(2r), so their roundoff (and the margin of this internal
    // check) scales with the fourth power of the matrix norms.
    const double norm_scale =
        std::max({1.0, a.matrix.cwiseAbs().maxCoeff(),
                  b.matrix.cwiseAbs().maxCoeff()});
    const double cond = norm_scale * norm_scale * norm_scale * norm_scale;
    if (f < -1e-10 * cond || f > 1.0 + 1e-10 * cond)
        throw std::runtime_error("fidelity outside [0, 1]: internal inconsistency");
    return std::clamp(f, 0.0, 1.0);
}

namespace {

CovarianceState reduced_state_at(const EstimationInput& input, double eps) {
    WaveParams wave = input.wave;
    wave.amplitude = eps;
    const BogoliubovSet full = time_dependent_coefficients(wave, input.cavity);

    // The closed forms describe the probed (n, m) subsystem, so the state is
    // built from the pair's own coefficient block. Coupling to other modes is
    // a secular perturbation that the resonant model neglects by design.
    const int n = input.mode_n - 1, m = input.mode_m - 1;
    BogoliubovSet pair = full;
    pair.alpha.resize(2, 2);
    pair.beta.resize(2, 2);
    pair.alpha << full.alpha(n, n), full.alpha(n, m), full.alpha(m, n), full.alpha(m, m);
    pair.beta << full.beta(n, n), full.beta(n, m), full.beta(m, n), full.beta(m, m);
    const Eigen::MatrixXd S_lin = symplectic_from_bogoliubov(pair);

    // The first-order coefficients give a matrix that is symplectic only to
    // O(eps); the defect mimics a thermal admixture at exactly the order the
    // fidelity derivative probes. Recover an exactly symplectic matrix by
    // exponentiating the Hamiltonian part of the first-order generator.
    const Eigen::MatrixXd form = symplectic_form(2);
    const Eigen::MatrixXd gen = S_lin - Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd h = -form * gen;
    h = 0.5 * (h + h.transpose()).eval();
    const Eigen::MatrixXd S = (form * h).exp();

    const CovarianceState initial = two_mode_squeezed(input.squeezing, 1, 2, 2);
    return transform(initial, S);
}

double qfi_fd_single(const EstimationInput& input, double d_eps) {
    const double eps = input.wave.amplitude;
    const CovarianceState sigma = reduced_state_at(input, eps);
    const CovarianceState sigma_d = reduced_state_at(input, eps + d_eps);
    const double f = fidelity(sigma, sigma_d);
    if (!std::isfinite(f)) throw std::runtime_error("non-finite fidelity");
    return 8.0 * (1.0 - std::sqrt(f)) / (d_eps * d_eps);
}

}  // namespace

QfiFdResult qfi_fidelity_fd(const EstimationInput& input, double d_eps) {
    input.validate();
    if (d_eps < 1e-8 || d_eps > 1e-3)
        throw std::domain_error("d_eps must lie in [1e-8, 1e-3]");
    QfiFdResult result;
    result.value = qfi_fd_single(input, d_eps);
    result.refined = qfi_fd_single(input, 0.5 * d_eps);
    result.richardson = (4.0 * result.refined - result.value) / 3.0;
    result.discrepancy = std::abs(result.value - result.refined) /
                         std::max(std::abs(result.richardson), 1e-300);
    return result;
}

QfiTerms qfi_closed_general(const BogoliubovSet& set, int n, int m, double r) {
    const int N = static_cast<int>(set.alpha.rows());
    if (n < 1 || n > N || m < 1 || m > N || n == m)
        throw std::invalid_argument("invalid probe pair");
    const double eps = set.wave.amplitude;

    auto f_sum = [&](const Eigen::MatrixXcd& mat, int i) {
        double s = 0.0;
        for (int j = 1; j <= N; ++j)
            if (j != n && j != m) s += std::norm(mat(j - 1, i - 1));
        return 0.5 * s;
    };
    const double fan = f_sum(set.alpha, n), fbn = f_sum(set.beta, n);
    const double fam = f_sum(set.alpha, m), fbm = f_sum(set.beta, m);

    complex<double> g{0.0, 0.0};
    for (int k = 1; k <= N; ++k)
        if (k != n && k != m)
            g += set.alpha(k - 1, n - 1) * std::conj(set.beta(k - 1, m - 1));

    const complex<double> b_nm = set.beta(n - 1, m - 1);
    const complex<double> a_nm = set.alpha(n - 1, m - 1);
    const double abs_b2 = std::norm(b_nm);
    const double abs_a2 = std::norm(a_nm);

    const double ch = std::cosh(r), sh = std::sinh(r);
    const double sh2r = std::sinh(2.0 * r);

    QfiTerms out;
    out.term[0] = 4.0 * ch * (fan + fbn + fam + fbm);
    out.term[1] = 4.0 * ch * ch * (2.0 * abs_b2 - fan + fbn - fam + fbm);
    out.term[2] = (4.0 * sh * sh *
                   (fan - fbn + fam - fbm - 2.0 * (b_nm * b_nm).real() +
                    2.0 * (a_nm * a_nm).real()));
    out.term[3] = 4.0 * sh * (g + g).real();  // duplicated G term, as printed
    out.term[4] = -4.0 * ch * ch * ch * ch * abs_b2;
    out.term[5] = -0.5 * sh2r * sh2r *
                  (2.0 * abs_a2 - 3.0 * abs_b2 - (b_nm * b_nm).real());
    double total = 0.0;
    for (double t : out.term) total += t;
    out.total = total / (eps * eps);
    return out;
}

QfiResonant qfi_resonant(const EstimationInput& input) {
    input.validate();
    const int n = input.mode_n, m = input.mode_m;
    const double omega_res = resonant_drive_frequency(m, n, input.cavity);
    if (std::abs(input.wave.drive_frequency - omega_res) > resonance_rel_tol * omega_res)
        throw std::domain_error("drive is off the (m, n) resonance");
    const double omega_1 =
        constants::pi * input.cavity.sound_speed / input.cavity.length;
    const double t = input.wave.duration;
    if (omega_1 * t < long_time_gate)
        throw std::domain_error("long-time gate omega_1 t >= 100 not met");

    const double r = input.squeezing;
    const double c = std::cosh(r);
    const double s2 = std::sinh(2.0 * r);
    const double bracket = 8.0 - 4.0 * c * c * c * c + 2.0 * s2 * s2;
    const double omega_m = m * omega_1;
    const double base = double(n) / m * omega_m * omega_m * t * t * bracket;
    return {base / 16.0, base / 4.0};
}

double cramer_rao(double qfi, double probes) {
    if (qfi <= 0.0) throw std::domain_error("QFI must be positive for the Cramer-Rao bound");
    if (probes < 1.0) throw std::domain_error("need at least one probe");
    return 1.0 / std::sqrt(probes * qfi);
}

double strain_sensitivity(double delta_eps, double drive, FigureOfMerit form) {
    if (drive <= 0.0) throw std::domain_error("drive frequency must be > 0");
    return form == FigureOfMerit::sqrt_omega ? delta_eps / std::sqrt(drive)
                                             : delta_eps / drive;
}

SensitivityRecord evaluate_point(const EstimationInput& input,
                                 const EvaluateOptions& opts) {
    input.validate();
    SensitivityRecord rec;
    if (input.wave.duration == 0.0) {
        rec.qfi = 0.0;
        rec.delta_epsilon = std::numeric_limits<double>::infinity();
        rec.strain_sensitivity = std::numeric_limits<double>::infinity();
        rec.method_tag = "unbounded";
        return rec;
    }

    QfiMethod method = opts.method;
    bool fell_back = false;
    if (method != QfiMethod::fidelity_fd) {
        try {
            const QfiResonant h = qfi_resonant(input);
            rec.qfi = method == QfiMethod::closed_paper ? h.paper : h.derived;
            rec.method_tag = method == QfiMethod::closed_paper ? "closed_form_paper"
                                                               : "closed_form_derived";
        } catch (const std::domain_error&) {
            fell_back = true;
        }
    }
    if (method == QfiMethod::fidelity_fd || fell_back) {
        rec.qfi = qfi_fidelity_fd(input, opts.d_eps).richardson;
        rec.method_tag = fell_back ? "fidelity_fd(auto)" : "fidelity_fd";
    }

    if (rec.qfi <= 0.0) {
        rec.delta_epsilon = std::numeric_limits<double>::infinity();
        rec.strain_sensitivity = std::numeric_limits<double>::infinity();
    } else {
        rec.delta_epsilon = cramer_rao(rec.qfi, input.probes);
        rec.strain_sensitivity =
            strain_sensitivity(rec.delta_epsilon, input.wave.drive_frequency, opts.figure);
    }
    return rec;
}

}  // namespace gwbec
