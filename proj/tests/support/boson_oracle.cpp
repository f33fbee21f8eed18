#include "boson_oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {
constexpr int kSigma = 0;
constexpr int kPlus = 1;
constexpr int kMinus = 2;
} // namespace

BosonSpace::BosonSpace(int n_vibron) : n_vibron_(n_vibron) {
    if (n_vibron < 1)
        throw std::invalid_argument("oracle needs N >= 1");
    for (int ns = n_vibron; ns >= 0; --ns)
        for (int np = 0; np <= n_vibron - ns; ++np)
            occ_.push_back({ns, np, n_vibron - ns - np});
    dim_ = static_cast<int>(occ_.size());

    n_ = bilinear(kPlus, kPlus) + bilinear(kMinus, kMinus);
    l_ = bilinear(kPlus, kPlus) - bilinear(kMinus, kMinus);

    const double r2 = std::sqrt(2.0);
    const Eigen::MatrixXd d_plus =
        r2 * (bilinear(kPlus, kSigma) - bilinear(kSigma, kMinus));
    const Eigen::MatrixXd d_minus = d_plus.transpose();
    const Eigen::MatrixXd r_plus =
        r2 * (bilinear(kPlus, kSigma) + bilinear(kSigma, kMinus));
    const Eigen::MatrixXd r_minus = r_plus.transpose();

    w2_ = 0.5 * (d_plus * d_minus + d_minus * d_plus) + l_ * l_;
    w2bar_ = 0.5 * (r_plus * r_minus + r_minus * r_plus) + l_ * l_;
}

int BosonSpace::index_of(int ns, int np, int nm) const {
    for (int i = 0; i < dim_; ++i)
        if (occ_[i][0] == ns && occ_[i][1] == np && occ_[i][2] == nm)
            return i;
    return -1;
}

Eigen::MatrixXd BosonSpace::bilinear(int create, int annihilate) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int col = 0; col < dim_; ++col) {
        auto occ = occ_[col];
        const int n_ann = occ[annihilate];
        if (n_ann == 0)
            continue;
        if (create == annihilate) {
            m(col, col) = n_ann;
            continue;
        }
        const double amp = std::sqrt(static_cast<double>(n_ann) *
                                     (occ[create] + 1.0));
        occ[annihilate] -= 1;
        occ[create] += 1;
        const int row = index_of(occ[0], occ[1], occ[2]);
        m(row, col) = amp;
    }
    return m;
}

Eigen::MatrixXd BosonSpace::block(const Eigen::MatrixXd& op, int l) const {
    std::vector<int> members; // ordered by n = np + nm ascending
    for (int n = std::abs(l); n <= n_vibron_; n += 2) {
        const int np = (n + l) / 2;
        const int nm = (n - l) / 2;
        if (np < 0 || nm < 0)
            continue;
        members.push_back(index_of(n_vibron_ - n, np, nm));
    }
    const int bdim = static_cast<int>(members.size());
    Eigen::MatrixXd out(bdim, bdim);
    for (int r = 0; r < bdim; ++r)
        for (int c = 0; c < bdim; ++c)
            out(r, c) = op(members[r], members[c]);
    return out;
}

Eigen::MatrixXd BosonSpace::block_operator(vibron::OperatorKind kind, int l) const {
    using vibron::OperatorKind;
    const double big_n = n_vibron_;
    const Eigen::MatrixXd l2 = l_ * l_;
    switch (kind) {
    case OperatorKind::n: return block(n_, l);
    case OperatorKind::n2: return block(n_ * n_, l);
    case OperatorKind::n3: return block(n_ * n_ * n_, l);
    case OperatorKind::n4: return block(n_ * n_ * n_ * n_, l);
    case OperatorKind::l2: return block(l2, l);
    case OperatorKind::l4: return block(l2 * l2, l);
    case OperatorKind::nl2: return block(n_ * l2, l);
    case OperatorKind::n2l2: return block(n_ * n_ * l2, l);
    case OperatorKind::w2: return block(w2_, l);
    case OperatorKind::w2bar: return block(w2bar_, l);
    case OperatorKind::w4: return block(w2_ * w2_, l);
    case OperatorKind::l2w2: return block(l2 * w2_, l);
    case OperatorKind::sym_n_w2: return block(n_ * w2_ + w2_ * n_, l);
    case OperatorKind::sym_n2_w2:
        return block(n_ * n_ * w2_ + w2_ * n_ * n_, l);
    case OperatorKind::sym_w2_w2bar:
        return block(0.5 * (w2_ * w2bar_ + w2bar_ * w2_), l);
    case OperatorKind::pairing:
        return block(big_n * (big_n + 1.0) *
                             Eigen::MatrixXd::Identity(dim_, dim_) -
                         w2_,
                     l);
    }
    throw std::invalid_argument("unknown operator kind");
}

} // namespace oracle
