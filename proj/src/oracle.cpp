#include "gwbec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gwbec/constants.hpp"

namespace gwbec::oracle {

using std::complex;

void QuadratureSpec::validate() const {
    if (relative_tolerance <= 0.0 || relative_tolerance > 1e-6)
        throw std::invalid_argument("quadrature tolerance must lie in (0, 1e-6]");
    if (panels_per_period < 8)
        throw std::invalid_argument("need at least 8 panels per period");
}

namespace {

complex<double> kernel(double omega, double drive, double t) {
    return std::exp(complex<double>(0.0, -omega * t)) * std::sin(drive * t);
}

struct Adaptive {
    double omega, drive;
    double abs_tol;
    int max_depth;
    double noise_scale;  // roundoff level of one kernel evaluation
    double worst_err = 0.0;
    bool converged = true;

    complex<double> simpson(double a, double b, complex<double> fa,
                            complex<double> fm, complex<double> fb) const {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    complex<double> refine(double a, double b, complex<double> fa, complex<double> fm,
                           complex<double> fb, complex<double> whole, double tol,
                           int depth) {
        const double m = 0.5 * (a + b);
        const complex<double> flm = kernel(omega, drive, 0.5 * (a + m));
        const complex<double> frm = kernel(omega, drive, 0.5 * (m + b));
        const complex<double> left = simpson(a, m, fa, flm, fm);
        const complex<double> right = simpson(m, b, fm, frm, fb);
        const complex<double> delta = left + right - whole;
        // Kernel values carry roundoff noise of order eps * (phase at the far
        // end of the interval), so the Simpson error estimate cannot drop
        // below noise_scale * (b - a); tolerances under that level would
        // drive the recursion to full depth without gaining accuracy.
        const double tol_eff = std::max(tol, noise_scale * (b - a));
        if (std::abs(delta) <= 15.0 * tol_eff || depth >= max_depth) {
            if (depth >= max_depth && std::abs(delta) > 15.0 * tol_eff) {
                converged = false;
                worst_err = std::max(worst_err, std::abs(delta) / 15.0);
            }
            return left + right + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

QuadratureResult integrate(double omega, double drive, double t,
                           const QuadratureSpec& spec, double abs_tol) {
    const double fastest = std::max(std::abs(omega), std::abs(drive));
    const double period = 2.0 * constants::pi / fastest;
    long panels = std::lround(std::ceil(t / period)) * spec.panels_per_period;
    panels = std::clamp(panels, 4L, 4'000'000L);

    const double noise_scale =
        std::numeric_limits<double>::epsilon() * (1.0 + fastest * t);
    Adaptive ad{omega, drive, abs_tol, spec.max_subdivisions, noise_scale};
    complex<double> sum = 0.0, comp = 0.0;  // Kahan
    const double h = t / double(panels);
    const double panel_tol = abs_tol / double(panels);
    complex<double> fa = kernel(omega, drive, 0.0);
    for (long p = 0; p < panels; ++p) {
        const double a = p * h, b = (p + 1) * h;
        const complex<double> fm = kernel(omega, drive, 0.5 * (a + b));
        const complex<double> fb = kernel(omega, drive, b);
        const complex<double> whole = ad.simpson(a, b, fa, fm, fb);
        complex<double> val = ad.refine(a, b, fa, fm, fb, whole, panel_tol, 0);
        complex<double> y = val - comp;
        complex<double> tmp = sum + y;
        comp = (tmp - sum) - y;
        sum = tmp;
        fa = fb;
    }
    return {sum, std::max(abs_tol, noise_scale * t), ad.converged};
}

}  // namespace

QuadratureResult quad_oscillatory(double omega, double drive, double t,
                                  const QuadratureSpec& spec) {
    spec.validate();
    if (t < 0.0) throw std::domain_error("integration time must be >= 0");
    if (t == 0.0) return {{0.0, 0.0}, 0.0, true};

    // First pass scaled to the interval length, second pass scaled to the
    // integral itself so heavy cancellation still meets the relative target.
    QuadratureResult first = integrate(omega, drive, t, spec, spec.relative_tolerance * t);
    const double magnitude = std::abs(first.value);
    if (magnitude == 0.0 || magnitude >= t) return first;
    return integrate(omega, drive, t, spec, spec.relative_tolerance * magnitude);
}

std::vector<double> purity_check(const CovarianceState& state) {
    state.validate();
    const Eigen::MatrixXd product = symplectic_form(state.mode_count) * state.matrix;
    Eigen::EigenSolver<Eigen::MatrixXd> es(product);
    std::vector<double> moduli(es.eigenvalues().size());
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        moduli[i] = std::abs(es.eigenvalues()[i]);
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

double pure_fidelity_oracle(const CovarianceState& a, const CovarianceState& b) {
    for (const CovarianceState* s : {&a, &b}) {
        for (double nu : purity_check(*s))
            if (std::abs(nu - 1.0) > purity_tol)
                throw std::domain_error("pure_fidelity_oracle requires pure states");
    }
    const Eigen::MatrixXd avg = 0.5 * (a.matrix + b.matrix);
    return 1.0 / std::sqrt(avg.determinant());
}

}  // namespace gwbec::oracle
