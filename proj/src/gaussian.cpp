#include "gwbec/gaussian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gwbec {

void CovarianceState::validate() const {
    const int dim = 2 * mode_count;
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw std::invalid_argument("covariance matrix size does not match mode count");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
    // sigma + i Omega >= 0 (Hermitian by construction)
    Eigen::MatrixXcd test = matrix.cast<std::complex<double>>();
    test += std::complex<double>(0.0, 1.0) * symplectic_form(mode_count);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -physicality_tol * scale)
        throw std::invalid_argument("covariance matrix violates the uncertainty bound");
}

Eigen::MatrixXd symplectic_form(int mode_count) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * mode_count, 2 * mode_count);
    for (int k = 0; k < mode_count; ++k) {
        omega(2 * k, 2 * k + 1) = -1.0;
        omega(2 * k + 1, 2 * k) = 1.0;
    }
    return omega;
}

CovarianceState vacuum_state(int mode_count) {
    return {Eigen::MatrixXd::Identity(2 * mode_count, 2 * mode_count), mode_count};
}

CovarianceState two_mode_squeezed(double r, int mode_a, int mode_b, int N) {
    if (mode_a == mode_b)
        throw std::domain_error("two-mode squeezing needs distinct modes");
    if (mode_a < 1 || mode_a > N || mode_b < 1 || mode_b > N)
        throw std::domain_error("squeezed mode index outside mode count");
    CovarianceState state = vacuum_state(N);
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    const int a = 2 * (mode_a - 1), b = 2 * (mode_b - 1);
    state.matrix(a, a) = ch;
    state.matrix(a + 1, a + 1) = ch;
    state.matrix(b, b) = ch;
    state.matrix(b + 1, b + 1) = ch;
    state.matrix(a, b) = sh;
    state.matrix(b, a) = sh;
    state.matrix(a + 1, b + 1) = -sh;
    state.matrix(b + 1, a + 1) = -sh;
    return state;
}

Eigen::MatrixXd symplectic_from_bogoliubov(const BogoliubovSet& set) {
    const int N = static_cast<int>(set.alpha.rows());
    Eigen::MatrixXd S(2 * N, 2 * N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            const std::complex<double> a = set.alpha(m, n);
            const std::complex<double> b = set.beta(m, n);
            S(2 * m, 2 * n) = (a - b).real();
            S(2 * m, 2 * n + 1) = (a + b).imag();
            S(2 * m + 1, 2 * n) = -(a - b).imag();
            S(2 * m + 1, 2 * n + 1) = (a + b).real();
        }
    return S;
}

CovarianceState transform(const CovarianceState& state, const Eigen::MatrixXd& S) {
    if (S.rows() != state.matrix.rows() || S.cols() != state.matrix.cols())
        throw std::invalid_argument("symplectic matrix dimension mismatch");
    Eigen::MatrixXd out = S * state.matrix * S.transpose();
    out = 0.5 * (out + out.transpose()).eval();
    return {std::move(out), state.mode_count};
}

CovarianceState reduce(const CovarianceState& state, const std::vector<int>& modes) {
    for (size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] < 1 || modes[i] > state.mode_count)
            throw std::domain_error("reduction mode index out of range");
        for (size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i] == modes[j])
                throw std::domain_error("reduction modes must be distinct");
    }
    const int Nk = static_cast<int>(modes.size());
    Eigen::MatrixXd out(2 * Nk, 2 * Nk);
    for (int i = 0; i < Nk; ++i)
        for (int j = 0; j < Nk; ++j)
            out.block<2, 2>(2 * i, 2 * j) =
                state.matrix.block<2, 2>(2 * (modes[i] - 1), 2 * (modes[j] - 1));
    return {std::move(out), Nk};
}

}  // namespace gwbec
