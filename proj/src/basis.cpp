#include "vibron/basis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "vibron/errors.hpp"

namespace vibron {

BasisBlock::BasisBlock(int N, int l) : N_(N), l_(l) {
    if (N < 1)
        throw InvalidArgument("vibron number must be >= 1, got " + std::to_string(N));
    if (l < 0 || l > N)
        throw InvalidArgument("angular momentum " + std::to_string(l) +
                              " outside [0, " + std::to_string(N) + "]");
    dim_ = (N - l) / 2 + 1;
}

std::vector<BasisState> BasisBlock::states() const {
    std::vector<BasisState> out;
    out.reserve(dim_);
    for (int i = 0; i < dim_; ++i)
        out.push_back({N_, quanta(i), l_});
    return out;
}

std::vector<So3Label> so3_labels(int N, int l) {
    BasisBlock block(N, l); // validates (N, l)
    std::vector<So3Label> out;
    out.reserve(block.dimension());
    // omega = N, N-2, ... down to the smallest value >= l
    for (int omega = N; omega >= l; omega -= 2)
        out.push_back({N, omega, (N - omega) / 2});
    return out;
}

namespace {

void fix_column_signs(Eigen::MatrixXd& t) {
    for (int c = 0; c < t.cols(); ++c) {
        const double scale = t.col(c).cwiseAbs().maxCoeff();
        for (int r = 0; r < t.rows(); ++r) {
            if (std::abs(t(r, c)) > 1e-12 * scale) {
                if (t(r, c) < 0.0)
                    t.col(c) = -t.col(c);
                break;
            }
        }
    }
}

} // namespace

Eigen::MatrixXd so3_transform(const BasisBlock& block, const Eigen::MatrixXd& w2) {
    const int dim = block.dimension();
    if (w2.rows() != dim || w2.cols() != dim)
        throw InvalidArgument("W^2 matrix does not match the block dimension");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w2);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("W^2 eigensolve failed");

    // Ascending from Eigen; we want omega descending, i.e. eigenvalue
    // descending, so reverse.
    Eigen::VectorXd evals = solver.eigenvalues().reverse();
    Eigen::MatrixXd t = solver.eigenvectors().rowwise().reverse();

    const double scale = std::max(std::abs(evals(0)), std::abs(evals(dim - 1)));
    for (int k = 0; k + 1 < dim; ++k) {
        if (std::abs(evals(k) - evals(k + 1)) < 1e-10 * scale)
            throw DegenerateSpectrum(
                "degenerate W^2 eigenvalues in block (N=" +
                std::to_string(block.vibron_number()) +
                ", l=" + std::to_string(block.angmom()) + ")");
    }

    fix_column_signs(t);
    return t;
}

} // namespace vibron
