#include "vibron/operators.hpp"

#include <cmath>

#include "vibron/errors.hpp"

namespace vibron {

std::string_view operator_kind_name(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::n: return "n";
    case OperatorKind::n2: return "n2";
    case OperatorKind::n3: return "n3";
    case OperatorKind::n4: return "n4";
    case OperatorKind::l2: return "l2";
    case OperatorKind::l4: return "l4";
    case OperatorKind::nl2: return "nl2";
    case OperatorKind::n2l2: return "n2l2";
    case OperatorKind::w2: return "w2";
    case OperatorKind::w2bar: return "w2bar";
    case OperatorKind::w4: return "w4";
    case OperatorKind::l2w2: return "l2w2";
    case OperatorKind::sym_n_w2: return "sym_n_w2";
    case OperatorKind::sym_n2_w2: return "sym_n2_w2";
    case OperatorKind::sym_w2_w2bar: return "sym_w2_w2bar";
    case OperatorKind::pairing: return "pairing";
    }
    throw InvalidArgument("unknown operator kind");
}

namespace {

Eigen::MatrixXd diagonal_power(const BasisBlock& block, int n_power, int l_power) {
    const int dim = block.dimension();
    const double lfac = std::pow(static_cast<double>(block.angmom()), l_power);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        m(i, i) = std::pow(static_cast<double>(block.quanta(i)), n_power) * lfac;
    return m;
}

// W^2 in the cylindrical basis: diagonal (N-n)(n+2) + (N-n+1)n + l^2,
// coupling <n-2|W^2|n> = -sqrt((N-n+2)(N-n+1)(n+l)(n-l)). The sign
// flips for the SO-bar(3) Casimir.
Eigen::MatrixXd casimir_so3(const BasisBlock& block, double offdiag_sign) {
    const int dim = block.dimension();
    const double N = block.vibron_number();
    const double l = block.angmom();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double n = block.quanta(i);
        m(i, i) = (N - n) * (n + 2.0) + (N - n + 1.0) * n + l * l;
        if (i > 0) {
            const double c =
                std::sqrt((N - n + 2.0) * (N - n + 1.0) * (n + l) * (n - l));
            m(i - 1, i) = offdiag_sign * c;
            m(i, i - 1) = offdiag_sign * c;
        }
    }
    return m;
}

} // namespace

Eigen::MatrixXd operator_matrix(OperatorKind kind, const BasisBlock& block) {
    const int dim = block.dimension();
    const double N = block.vibron_number();
    switch (kind) {
    case OperatorKind::n: return diagonal_power(block, 1, 0);
    case OperatorKind::n2: return diagonal_power(block, 2, 0);
    case OperatorKind::n3: return diagonal_power(block, 3, 0);
    case OperatorKind::n4: return diagonal_power(block, 4, 0);
    case OperatorKind::l2: return diagonal_power(block, 0, 2);
    case OperatorKind::l4: return diagonal_power(block, 0, 4);
    case OperatorKind::nl2: return diagonal_power(block, 1, 2);
    case OperatorKind::n2l2: return diagonal_power(block, 2, 2);
    case OperatorKind::w2: return casimir_so3(block, -1.0);
    case OperatorKind::w2bar: return casimir_so3(block, +1.0);
    case OperatorKind::w4: {
        const Eigen::MatrixXd w = casimir_so3(block, -1.0);
        return w * w;
    }
    case OperatorKind::l2w2: {
        const double l = block.angmom();
        return l * l * casimir_so3(block, -1.0);
    }
    case OperatorKind::sym_n_w2: {
        const Eigen::MatrixXd nm = diagonal_power(block, 1, 0);
        const Eigen::MatrixXd w = casimir_so3(block, -1.0);
        return nm * w + w * nm;
    }
    case OperatorKind::sym_n2_w2: {
        const Eigen::MatrixXd nm = diagonal_power(block, 2, 0);
        const Eigen::MatrixXd w = casimir_so3(block, -1.0);
        return nm * w + w * nm;
    }
    case OperatorKind::sym_w2_w2bar: {
        const Eigen::MatrixXd w = casimir_so3(block, -1.0);
        const Eigen::MatrixXd wb = casimir_so3(block, +1.0);
        return 0.5 * (w * wb + wb * w);
    }
    case OperatorKind::pairing:
        return N * (N + 1.0) * Eigen::MatrixXd::Identity(dim, dim) -
               casimir_so3(block, -1.0);
    }
    throw InvalidArgument("unknown operator kind");
}

} // namespace vibron
