#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "support/boson_oracle.hpp"
#include "vibron/basis.hpp"
#include "vibron/operators.hpp"

using namespace vibron;

namespace {

const OperatorKind kAllKinds[] = {
    OperatorKind::n,        OperatorKind::n2,         OperatorKind::n3,
    OperatorKind::n4,       OperatorKind::l2,         OperatorKind::l4,
    OperatorKind::nl2,      OperatorKind::n2l2,       OperatorKind::w2,
    OperatorKind::w2bar,    OperatorKind::w4,         OperatorKind::l2w2,
    OperatorKind::sym_n_w2, OperatorKind::sym_n2_w2,  OperatorKind::sym_w2_w2bar,
    OperatorKind::pairing,
};

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& m) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
}

} // namespace

TEST_CASE("W^2 matrix for the smallest nontrivial block") {
    const BasisBlock block(2, 0);
    const Eigen::MatrixXd w2 = operator_matrix(OperatorKind::w2, block);
    CHECK(w2(0, 0) == doctest::Approx(4.0));
    CHECK(w2(1, 1) == doctest::Approx(2.0));
    CHECK(w2(0, 1) == doctest::Approx(-std::sqrt(8.0)));
    CHECK(w2(1, 0) == w2(0, 1));

    const Eigen::VectorXd evals = sorted_eigenvalues(w2);
    CHECK(std::abs(evals(0)) < 1e-12);
    CHECK(evals(1) == doctest::Approx(6.0));
}

TEST_CASE("diagonal operators") {
    const BasisBlock block(10, 3);
    const Eigen::MatrixXd n = operator_matrix(OperatorKind::n, block);
    for (int i = 0; i < block.dimension(); ++i)
        CHECK(n(i, i) == doctest::Approx(3.0 + 2.0 * i));
    Eigen::MatrixXd off = n;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);

    const Eigen::MatrixXd l4 = operator_matrix(OperatorKind::l4, block);
    CHECK(l4(0, 0) == doctest::Approx(81.0));
}

TEST_CASE("pairing spectrum is N(N+1) - omega(omega+1)") {
    const BasisBlock block(4, 0);
    const Eigen::VectorXd evals =
        sorted_eigenvalues(operator_matrix(OperatorKind::pairing, block));
    CHECK(evals(0) == doctest::Approx(0.0).scale(1.0));
    CHECK(evals(1) == doctest::Approx(14.0));
    CHECK(evals(2) == doctest::Approx(20.0));
}

TEST_CASE("every operator matches the boson-realization oracle (N <= 6)") {
    for (int n_vib = 1; n_vib <= 6; ++n_vib) {
        const oracle::BosonSpace space(n_vib);
        for (int l = 0; l <= n_vib; ++l) {
            const BasisBlock block(n_vib, l);
            for (const OperatorKind kind : kAllKinds) {
                const Eigen::MatrixXd impl = operator_matrix(kind, block);
                const Eigen::MatrixXd ref = space.block_operator(kind, l);
                INFO("N=", n_vib, " l=", l, " kind=", operator_kind_name(kind));
                REQUIRE(impl.rows() == ref.rows());
                CHECK((impl - ref).cwiseAbs().maxCoeff() <= 1e-10);
            }
        }
    }
}

TEST_CASE("oracle W^2 self-check: Casimir spectrum") {
    // Validates the oracle itself, independent of the implementation.
    for (int n_vib = 1; n_vib <= 6; ++n_vib) {
        const oracle::BosonSpace space(n_vib);
        for (int l = 0; l <= n_vib; ++l) {
            const Eigen::VectorXd evals =
                sorted_eigenvalues(space.block_operator(OperatorKind::w2, l));
            const auto labels = so3_labels(n_vib, l);
            const int dim = static_cast<int>(labels.size());
            for (int k = 0; k < dim; ++k) {
                // ascending eigenvalues vs descending omega
                const double omega = labels[dim - 1 - k].omega;
                CHECK(evals(k) == doctest::Approx(omega * (omega + 1.0)));
            }
        }
    }
}

TEST_CASE("W^2 and Wbar^2 are isospectral on random blocks") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> pick_n(2, 60);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_vib = pick_n(rng);
        const int l = std::uniform_int_distribution<int>(0, n_vib)(rng);
        const BasisBlock block(n_vib, l);
        const Eigen::VectorXd a =
            sorted_eigenvalues(operator_matrix(OperatorKind::w2, block));
        const Eigen::VectorXd b =
            sorted_eigenvalues(operator_matrix(OperatorKind::w2bar, block));
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-8 * scale);
        // and both carry the omega(omega+1) Casimir values
        const auto labels = so3_labels(n_vib, l);
        const int dim = static_cast<int>(labels.size());
        for (int k = 0; k < dim; ++k) {
            const double omega = labels[dim - 1 - k].omega;
            CHECK(std::abs(a(k) - omega * (omega + 1.0)) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("structural properties") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_vib = std::uniform_int_distribution<int>(2, 40)(rng);
        const int l = std::uniform_int_distribution<int>(0, n_vib)(rng);
        const BasisBlock block(n_vib, l);
        const Eigen::MatrixXd w2 = operator_matrix(OperatorKind::w2, block);
        const Eigen::MatrixXd l2 = operator_matrix(OperatorKind::l2, block);
        const Eigen::MatrixXd n = operator_matrix(OperatorKind::n, block);

        // l^2 is scalar within a block, so these commute entry for entry.
        CHECK(((w2 * l2 - l2 * w2).cwiseAbs().maxCoeff()) == 0.0);
        CHECK(((n * l2 - l2 * n).cwiseAbs().maxCoeff()) == 0.0);

        // symmetry
        for (const OperatorKind kind : kAllKinds) {
            const Eigen::MatrixXd m = operator_matrix(kind, block);
            const double norm = std::max(1e-300, m.norm());
            CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * norm);
        }

        // pairing eigenvalues within [0, N(N+1)]
        const Eigen::VectorXd pe =
            sorted_eigenvalues(operator_matrix(OperatorKind::pairing, block));
        CHECK(pe(0) >= -1e-9 * n_vib * n_vib);
        CHECK(pe(pe.size() - 1) <= n_vib * (n_vib + 1.0) * (1.0 + 1e-12));
    }
}

TEST_CASE("symmetrized products keep the step-2 band structure") {
    const BasisBlock block(12, 2);
    const Eigen::MatrixXd m = operator_matrix(OperatorKind::sym_n_w2, block);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * m.norm());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (std::abs(r - c) > 1)
                CHECK(m(r, c) == 0.0);
}
