#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gwbec/bogoliubov.hpp"

namespace gwbec {

/// Real symmetric covariance matrix of an N-mode zero-mean Gaussian state.
/// Quadrature ordering X1, P1, X2, P2, ...; vacuum is the identity.
struct CovarianceState {
    Eigen::MatrixXd matrix;  // 2N x 2N
    int mode_count;

    void validate() const;  // symmetry + uncertainty-bound physicality
};

// Block-diagonal symplectic form, 2x2 blocks [[0,-1],[1,0]].
Eigen::MatrixXd symplectic_form(int mode_count);

CovarianceState vacuum_state(int mode_count);

// Two-mode squeezed vacuum on modes (mode_a, mode_b), all others vacuum.
// Squeezed blocks: diagonal cosh(2r) I2, cross sinh(2r) diag(1,-1).
CovarianceState two_mode_squeezed(double r, int mode_a, int mode_b, int N);

// Symplectic encoding of a Bogoliubov transformation: 2x2 block (m,n) is
// [[Re(a-b), Im(a+b)], [-Im(a-b), Re(a+b)]] with a = alpha_mn, b = beta_mn.
Eigen::MatrixXd symplectic_from_bogoliubov(const BogoliubovSet& set);

// sigma -> S sigma S^T, re-symmetrized.
CovarianceState transform(const CovarianceState& state, const Eigen::MatrixXd& S);

// Keep only the listed modes (1-based), deleting all other rows/columns.
CovarianceState reduce(const CovarianceState& state, const std::vector<int>& modes);

inline constexpr double symmetry_tol = 1e-12;
inline constexpr double physicality_tol = 1e-10;

}  // namespace gwbec
