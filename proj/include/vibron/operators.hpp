#ifndef VIBRON_OPERATORS_HPP
#define VIBRON_OPERATORS_HPP

#include <Eigen/Dense>
#include <string_view>

#include "vibron/basis.hpp"

namespace vibron {

/// Building-block operators of the algebraic bending Hamiltonians.
///
/// n..n2l2 are diagonal in the U(2) basis; w2, w2bar, w4, l2w2 and
/// pairing commute with W^2; the sym_* products are diagonal in
/// neither chain.
enum class OperatorKind {
    n,            ///< number operator
    n2,           ///< n^2
    n3,           ///< n^3
    n4,           ///< n^4
    l2,           ///< l^2 (scalar within a block)
    l4,           ///< l^4
    nl2,          ///< n l^2
    n2l2,         ///< n^2 l^2
    w2,           ///< SO(3) Casimir W^2
    w2bar,        ///< SO-bar(3) Casimir: W^2 with off-diagonal sign flipped
    w4,           ///< (W^2)^2
    l2w2,         ///< l^2 W^2
    sym_n_w2,     ///< n W^2 + W^2 n
    sym_n2_w2,    ///< n^2 W^2 + W^2 n^2
    sym_w2_w2bar, ///< (W^2 Wbar^2 + Wbar^2 W^2)/2
    pairing,      ///< N(N+1) - W^2
};

inline constexpr int kOperatorKindCount = 16;

std::string_view operator_kind_name(OperatorKind kind);

/// Dense symmetric matrix of one operator in the block's U(2) basis.
/// Row/column i corresponds to block.quanta(i).
Eigen::MatrixXd operator_matrix(OperatorKind kind, const BasisBlock& block);

} // namespace vibron

#endif
