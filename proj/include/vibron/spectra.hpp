#ifndef VIBRON_SPECTRA_HPP
#define VIBRON_SPECTRA_HPP

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vibron/basis.hpp"
#include "vibron/operators.hpp"

namespace vibron {

/// Spectroscopic coefficients of the four-body Hamiltonian,
/// P11 n + P21 n^2 + P22 l^2 + P23 W^2 + P31 n^3 + P32 n l^2
/// + P33 (n W^2 + W^2 n) + P41 n^4 + P42 n^2 l^2 + P43 l^4
/// + P44 l^2 W^2 + P45 (n^2 W^2 + W^2 n^2) + P46 W^4
/// + P47 (W^2 Wbar^2 + Wbar^2 W^2)/2.
enum class Param {
    P11, P21, P22, P23,
    P31, P32, P33,
    P41, P42, P43, P44, P45, P46, P47,
};

inline constexpr int kParamCount = 14;

std::string_view param_name(Param p);

/// Throws InvalidArgument for an unknown name.
Param param_from_name(std::string_view name);

/// Operator scaled by each parameter.
OperatorKind param_operator(Param p);

/// Coefficient set of a four-body Hamiltonian, in cm^-1, plus the
/// vibron number N that fixes the Hilbert space. Unset coefficients
/// are zero.
class HamiltonianParams {
public:
    /// Throws InvalidArgument unless N >= 1.
    explicit HamiltonianParams(int N);

    int vibron_number() const { return N_; }

    double get(Param p) const { return coeffs_[static_cast<int>(p)]; }
    void set(Param p, double value_cm1);

    /// Parameters with nonzero coefficients, in declaration order.
    std::vector<Param> nonzero() const;

private:
    int N_;
    std::array<double, kParamCount> coeffs_{};
};

/// Control parameters of the schematic one-control Hamiltonian
/// H(xi) = (1 - xi) n + xi/(N - 1) (N(N+1) - W^2). The energy scale
/// is fixed to 1; spectra are dimensionless.
struct ModelParams {
    double xi; ///< in [0, 1]
    int N;     ///< vibron number, >= 2
};

/// Partition of a block Hamiltonian by chain diagonality:
/// h_u2 diagonal in the U(2) basis, h_so3 commuting with W^2,
/// h_mix the symmetrized products diagonal in neither chain,
/// h_shared diagonal in both.
struct LambdaSplit {
    BasisBlock block;
    Eigen::MatrixXd h_u2;
    Eigen::MatrixXd h_so3;
    Eigen::MatrixXd h_mix;
    Eigen::MatrixXd h_shared;
};

/// Eigensolution of one block, eigenvalues ascending, column k of
/// vectors paired with energies[k]. Each eigenvector's first nonzero
/// entry is positive, making results reproducible bit for bit.
struct BlockSpectrum {
    BasisBlock block;
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;
};

/// H(xi) = (1 - xi) n + xi/(N-1) (N(N+1) - W^2) on the block.
/// Throws InvalidArgument if xi is outside [0, 1] or N < 2.
Eigen::MatrixXd build_model(const ModelParams& p, const BasisBlock& block);

/// Sum of all coefficient-scaled operator matrices.
Eigen::MatrixXd build_h4b(const HamiltonianParams& p, const BasisBlock& block);

/// Partition the four-body Hamiltonian:
/// h_u2 <- P11 n + P21 n^2 + P31 n^3 + P41 n^4 + P32 n l^2 + P42 n^2 l^2,
/// h_so3 <- P23 W^2 + P44 l^2 W^2 + P46 W^4,
/// h_mix <- P33, P45, P47 symmetrized products,
/// h_shared <- P22 l^2 + P43 l^4.
LambdaSplit split_lambda(const HamiltonianParams& p, const BasisBlock& block);

/// Model-Hamiltonian partition: h_u2 = (1-xi) n, h_so3 = xi/(N-1) pairing,
/// h_mix = h_shared = 0.
LambdaSplit split_model(const ModelParams& p, const BasisBlock& block);

/// (1-lambda) h_u2 + (1+lambda) h_so3 + (1-lambda^2) h_mix + h_shared.
/// lambda = 0 recovers the original Hamiltonian; the endpoints are
/// diagonal in the U(2) / SO(3) basis. Throws InvalidArgument for
/// |lambda| > 1.
Eigen::MatrixXd h_lambda(const LambdaSplit& s, double lambda);

/// Interaction term driving the fidelity susceptibility:
/// -h_u2 + h_so3 - 2 lambda h_mix (the lambda derivative of h_lambda).
Eigen::MatrixXd h_interaction(const LambdaSplit& s, double lambda);

/// Dense symmetric eigensolve with the BlockSpectrum conventions.
/// Throws ConvergenceFailure if the solver does not converge.
BlockSpectrum eigensolve(const BasisBlock& block, const Eigen::MatrixXd& h);

/// One row of a control-parameter scan.
struct ScanPoint {
    double control;
    int l;
    Eigen::VectorXd energies;
};

/// Eigenvalues of h_of(control) over a monotone grid, one ScanPoint per
/// grid value, in grid order. Grid points are solved independently
/// (parallel across `threads` workers when > 1).
std::vector<ScanPoint> correlation_scan(
    const std::function<Eigen::MatrixXd(double)>& h_of,
    const std::vector<double>& grid, const BasisBlock& block,
    int threads = 1);

/// Writes scan rows as CSV: header control,level_index,l,energy with
/// 12 significant digits.
void scan_to_csv(const std::vector<ScanPoint>& rows, std::ostream& os);

/// Locale-independent formatting with 12 significant digits, used by
/// every CSV product.
std::string format_sig12(double value);

} // namespace vibron

#endif
