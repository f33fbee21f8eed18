#include "vibron/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "parallel.hpp"
#include "vibron/errors.hpp"

namespace vibron {

namespace {

constexpr std::string_view kParamNames[kParamCount] = {
    "P11", "P21", "P22", "P23", "P31", "P32", "P33",
    "P41", "P42", "P43", "P44", "P45", "P46", "P47",
};

constexpr OperatorKind kParamOperators[kParamCount] = {
    OperatorKind::n,          // P11
    OperatorKind::n2,         // P21
    OperatorKind::l2,         // P22
    OperatorKind::w2,         // P23
    OperatorKind::n3,         // P31
    OperatorKind::nl2,        // P32
    OperatorKind::sym_n_w2,   // P33
    OperatorKind::n4,         // P41
    OperatorKind::n2l2,       // P42
    OperatorKind::l4,         // P43
    OperatorKind::l2w2,       // P44
    OperatorKind::sym_n2_w2,  // P45
    OperatorKind::w4,         // P46
    OperatorKind::sym_w2_w2bar // P47
};

enum class Part { U2, So3, Mix, Shared };

constexpr Part kParamParts[kParamCount] = {
    Part::U2,     // P11 n
    Part::U2,     // P21 n^2
    Part::Shared, // P22 l^2
    Part::So3,    // P23 W^2
    Part::U2,     // P31 n^3
    Part::U2,     // P32 n l^2
    Part::Mix,    // P33
    Part::U2,     // P41 n^4
    Part::U2,     // P42 n^2 l^2
    Part::Shared, // P43 l^4
    Part::So3,    // P44 l^2 W^2
    Part::Mix,    // P45
    Part::So3,    // P46 W^4
    Part::Mix,    // P47
};

} // namespace

std::string_view param_name(Param p) {
    return kParamNames[static_cast<int>(p)];
}

Param param_from_name(std::string_view name) {
    for (int i = 0; i < kParamCount; ++i)
        if (kParamNames[i] == name)
            return static_cast<Param>(i);
    throw InvalidArgument("unknown parameter name '" + std::string(name) + "'");
}

OperatorKind param_operator(Param p) {
    return kParamOperators[static_cast<int>(p)];
}

HamiltonianParams::HamiltonianParams(int N) : N_(N) {
    if (N < 1)
        throw InvalidArgument("vibron number must be >= 1, got " + std::to_string(N));
}

void HamiltonianParams::set(Param p, double value_cm1) {
    if (!std::isfinite(value_cm1))
        throw InvalidArgument("coefficient " + std::string(param_name(p)) +
                              " must be finite");
    coeffs_[static_cast<int>(p)] = value_cm1;
}

std::vector<Param> HamiltonianParams::nonzero() const {
    std::vector<Param> out;
    for (int i = 0; i < kParamCount; ++i)
        if (coeffs_[i] != 0.0)
            out.push_back(static_cast<Param>(i));
    return out;
}

Eigen::MatrixXd build_model(const ModelParams& p, const BasisBlock& block) {
    if (p.N < 2)
        throw InvalidArgument("model Hamiltonian needs N >= 2");
    if (!(p.xi >= 0.0 && p.xi <= 1.0))
        throw InvalidArgument("control parameter xi must lie in [0, 1]");
    if (block.vibron_number() != p.N)
        throw InvalidArgument("block vibron number does not match the model");
    return (1.0 - p.xi) * operator_matrix(OperatorKind::n, block) +
           p.xi / (p.N - 1.0) * operator_matrix(OperatorKind::pairing, block);
}

LambdaSplit split_lambda(const HamiltonianParams& p, const BasisBlock& block) {
    if (block.vibron_number() != p.vibron_number())
        throw InvalidArgument("block vibron number does not match the parameters");
    const int dim = block.dimension();
    LambdaSplit s{block,
                  Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim),
                  Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
    for (int i = 0; i < kParamCount; ++i) {
        const auto param = static_cast<Param>(i);
        const double c = p.get(param);
        if (c == 0.0)
            continue;
        const Eigen::MatrixXd term = c * operator_matrix(param_operator(param), block);
        switch (kParamParts[i]) {
        case Part::U2: s.h_u2 += term; break;
        case Part::So3: s.h_so3 += term; break;
        case Part::Mix: s.h_mix += term; break;
        case Part::Shared: s.h_shared += term; break;
        }
    }
    return s;
}

LambdaSplit split_model(const ModelParams& p, const BasisBlock& block) {
    if (p.N < 2)
        throw InvalidArgument("model Hamiltonian needs N >= 2");
    if (!(p.xi >= 0.0 && p.xi <= 1.0))
        throw InvalidArgument("control parameter xi must lie in [0, 1]");
    if (block.vibron_number() != p.N)
        throw InvalidArgument("block vibron number does not match the model");
    const int dim = block.dimension();
    LambdaSplit s{block,
                  (1.0 - p.xi) * operator_matrix(OperatorKind::n, block),
                  p.xi / (p.N - 1.0) * operator_matrix(OperatorKind::pairing, block),
                  Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
    return s;
}

Eigen::MatrixXd build_h4b(const HamiltonianParams& p, const BasisBlock& block) {
    // Same grouping as h_lambda at lambda = 0, so the two agree exactly.
    return h_lambda(split_lambda(p, block), 0.0);
}

Eigen::MatrixXd h_lambda(const LambdaSplit& s, double lambda) {
    if (!(std::abs(lambda) <= 1.0))
        throw InvalidArgument("lambda must lie in [-1, 1]");
    return (1.0 - lambda) * s.h_u2 + (1.0 + lambda) * s.h_so3 +
           (1.0 - lambda * lambda) * s.h_mix + s.h_shared;
}

Eigen::MatrixXd h_interaction(const LambdaSplit& s, double lambda) {
    if (!(std::abs(lambda) <= 1.0))
        throw InvalidArgument("lambda must lie in [-1, 1]");
    return -s.h_u2 + s.h_so3 - 2.0 * lambda * s.h_mix;
}

namespace {

void fix_vector_signs(Eigen::MatrixXd& v) {
    for (int c = 0; c < v.cols(); ++c) {
        const double scale = v.col(c).cwiseAbs().maxCoeff();
        for (int r = 0; r < v.rows(); ++r) {
            if (std::abs(v(r, c)) > 1e-12 * scale) {
                if (v(r, c) < 0.0)
                    v.col(c) = -v.col(c);
                break;
            }
        }
    }
}

bool is_diagonal(const Eigen::MatrixXd& h) {
    for (int c = 0; c < h.cols(); ++c)
        for (int r = 0; r < h.rows(); ++r)
            if (r != c && h(r, c) != 0.0)
                return false;
    return true;
}

// Sorting a diagonal matrix directly keeps exact unit eigenvectors
// even across degeneracies (h_lambda(-1) and similar limits).
BlockSpectrum solve_diagonal(const BasisBlock& block, const Eigen::MatrixXd& h) {
    const int dim = static_cast<int>(h.rows());
    std::vector<int> order(dim);
    for (int i = 0; i < dim; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return h(a, a) < h(b, b); });
    BlockSpectrum out{block, Eigen::VectorXd(dim), Eigen::MatrixXd::Zero(dim, dim)};
    for (int k = 0; k < dim; ++k) {
        out.energies(k) = h(order[k], order[k]);
        out.vectors(order[k], k) = 1.0;
    }
    return out;
}

} // namespace

BlockSpectrum eigensolve(const BasisBlock& block, const Eigen::MatrixXd& h) {
    const int dim = block.dimension();
    if (h.rows() != dim || h.cols() != dim)
        throw InvalidArgument("matrix does not match the block dimension");
    if (is_diagonal(h))
        return solve_diagonal(block, h);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("symmetric eigensolve failed to converge");
    BlockSpectrum out{block, solver.eigenvalues(), solver.eigenvectors()};
    fix_vector_signs(out.vectors);
    return out;
}

std::vector<ScanPoint> correlation_scan(
    const std::function<Eigen::MatrixXd(double)>& h_of,
    const std::vector<double>& grid, const BasisBlock& block, int threads) {
    std::vector<ScanPoint> rows(grid.size());
    detail::parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
        const BlockSpectrum s = eigensolve(block, h_of(grid[i]));
        rows[i] = ScanPoint{grid[i], block.angmom(), s.energies};
    });
    return rows;
}

std::string format_sig12(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 12);
    if (ec != std::errc{})
        throw Error("number formatting failed");
    return std::string(buf, ptr);
}

void scan_to_csv(const std::vector<ScanPoint>& rows, std::ostream& os) {
    os << "control,level_index,l,energy\n";
    for (const auto& row : rows) {
        const std::string control = format_sig12(row.control);
        for (int k = 0; k < row.energies.size(); ++k)
            os << control << ',' << k << ',' << row.l << ','
               << format_sig12(row.energies(k)) << '\n';
    }
}

} // namespace vibron
