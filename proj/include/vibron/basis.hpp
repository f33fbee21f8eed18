#ifndef VIBRON_BASIS_HPP
#define VIBRON_BASIS_HPP

#include <Eigen/Dense>
#include <vector>

namespace vibron {

/// One cylindrical-oscillator basis state |[N] n^l>.
struct BasisState {
    int N; ///< vibron number
    int n; ///< oscillator quanta, 0 <= |l| <= n <= N, n - |l| even
    int l; ///< vibrational angular momentum
};

/// One displaced-oscillator label |[N] omega, l>, nu_b = (N - omega)/2.
struct So3Label {
    int N;
    int omega;
    int nu_b;
};

/// The U(2)-chain basis of a single angular-momentum block.
///
/// States are |[N] n^l> with n = |l|, |l|+2, ..., in ascending n.
/// Only l >= 0 blocks are represented; matrix elements depend on l
/// through l^2 only, so the l and -l blocks coincide.
class BasisBlock {
public:
    /// Throws InvalidArgument unless N >= 1 and 0 <= l <= N.
    BasisBlock(int N, int l);

    int vibron_number() const { return N_; }
    int angmom() const { return l_; }

    /// floor((N - l)/2) + 1
    int dimension() const { return dim_; }

    /// Oscillator quanta of the i-th state: n = l + 2i.
    int quanta(int i) const { return l_ + 2 * i; }

    std::vector<BasisState> states() const;

private:
    int N_;
    int l_;
    int dim_;
};

/// Displaced-oscillator labels spanning the same block, ordered by
/// nu_b ascending (omega descending). Count equals the block dimension.
std::vector<So3Label> so3_labels(int N, int l);

/// Orthogonal change of basis from the U(2) chain to the SO(3) chain,
/// obtained by diagonalizing the block's W^2 matrix.
///
/// Column k is the eigenvector for the k-th label of so3_labels (omega
/// descending), with the first nonzero entry positive. Throws
/// DegenerateSpectrum if two W^2 eigenvalues coincide within
/// 1e-10 * max|eigenvalue| (signals a corrupted matrix).
Eigen::MatrixXd so3_transform(const BasisBlock& block, const Eigen::MatrixXd& w2);

} // namespace vibron

#endif
