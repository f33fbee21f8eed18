#ifndef VIBRON_PROBES_HPP
#define VIBRON_PROBES_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "vibron/spectra.hpp"

namespace vibron {

/// Which chain basis a wave function is expanded in.
enum class Basis { U2, So3 };

enum class Phase { Bent, Linear, Critical };

std::string_view phase_name(Phase p);

/// PR = 1 / sum |c_i|^4 for a normalized coefficient vector; ranges
/// from 1 (a basis state) to the dimension (uniform spread).
/// Throws InvalidArgument if the norm deviates from 1 by more than 1e-10.
double participation_ratio(const Eigen::VectorXd& coeffs);

/// PR of an eigenvector expressed in the requested basis. For So3 pass
/// the block's so3_transform; its columns re-expand the state.
double pr_in_basis(const Eigen::VectorXd& eigvec, Basis basis,
                   const Eigen::MatrixXd* so3 = nullptr);

/// |<a|b>| for normalized vectors of equal dimension.
double fidelity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Fidelity susceptibility of the j-th eigenstate from the summation
/// form: sum_{i != j} |<psi_i|H_int|psi_j>|^2 / (E_i - E_j)^2, the sum
/// running over the same angular-momentum block. A dimension-1 block
/// gives exactly 0. Throws DegenerateSpectrum when a coupled pair is
/// degenerate within 1e-10 of the spectral range.
double qfs_state(const BlockSpectrum& spectrum, const Eigen::MatrixXd& h_int, int j);

/// Convenience overload: diagonalizes h_lambda(split, lambda) first.
double qfs_state(const LambdaSplit& split, double lambda, int j);

/// chi(state, grid point) for every eigenstate over a lambda grid.
struct QfsScan {
    std::vector<double> lambdas;
    Eigen::MatrixXd chi;            ///< dim x grid
    Eigen::MatrixXd chi_normalized; ///< chi / N
};

/// One eigensolve per grid point, reused for all states; grid points
/// are independent (parallel across `threads` workers when > 1).
QfsScan qfs_scan(const LambdaSplit& split, const std::vector<double>& grid,
                 int threads = 1);

/// Position of the susceptibility maximum: grid argmax refined by a
/// parabola through the peak and its two neighbors, clamped to [-1, 1].
/// Isolated single-point spikes (a grid point exceeding both neighbors
/// tenfold), which signal narrow avoided crossings rather than the
/// separatrix, are excluded from the search. Throws FlatCurve if the
/// curve varies by less than 1e-12.
double lambda_max(const std::vector<double>& lambdas, const Eigen::VectorXd& chi_row);

struct Classification {
    int l;
    int state;
    double lambda_max;
    Phase phase;
};

struct ClassificationResult {
    std::vector<Classification> states;
    /// The last state below the separatrix (largest lambda_max among
    /// the Bent states); with no Bent state, the state whose
    /// |lambda_max| is closest to zero.
    int transition_state;
};

/// Phase assignment for every state of the split's block: Bent when
/// the susceptibility peaks at lambda < -tol, Linear when it peaks at
/// lambda > tol, Critical in between. The default tol matches the
/// lambda_max noise of the default 0.01 grid.
ClassificationResult classify(const LambdaSplit& split,
                              const std::vector<double>& grid,
                              double tol = 2e-3, int threads = 1);

/// CSV export, header lambda,l,state_index,chi,chi_over_N.
void qfs_scan_to_csv(const QfsScan& scan, int l, std::ostream& os);

/// CSV export, header l,state_index,lambda_max,phase.
void classification_to_csv(const ClassificationResult& result, std::ostream& os);

} // namespace vibron

#endif
