#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "support/boson_oracle.hpp"
#include "vibron/basis.hpp"
#include "vibron/errors.hpp"
#include "vibron/operators.hpp"

using namespace vibron;

TEST_CASE("block enumeration follows the branching rules") {
    BasisBlock b40(4, 0);
    CHECK(b40.dimension() == 3);
    CHECK(b40.quanta(0) == 0);
    CHECK(b40.quanta(1) == 2);
    CHECK(b40.quanta(2) == 4);

    BasisBlock b103(10, 3);
    CHECK(b103.dimension() == 4);
    const auto states = b103.states();
    REQUIRE(states.size() == 4);
    CHECK(states.front().n == 3);
    CHECK(states.back().n == 9);
    for (const auto& s : states) {
        CHECK(s.l == 3);
        CHECK((s.n - s.l) % 2 == 0);
        CHECK(s.n <= s.N);
    }

    CHECK(BasisBlock(78, 7).dimension() == 36);
}

TEST_CASE("invalid blocks are rejected") {
    CHECK_THROWS_AS(BasisBlock(0, 0), InvalidArgument);
    CHECK_THROWS_AS(BasisBlock(5, -1), InvalidArgument);
    CHECK_THROWS_AS(BasisBlock(5, 6), InvalidArgument);
}

TEST_CASE("SO(3) labels span the block") {
    const auto l40 = so3_labels(4, 0);
    REQUIRE(l40.size() == 3);
    CHECK(l40[0].omega == 4);
    CHECK(l40[0].nu_b == 0);
    CHECK(l40[1].omega == 2);
    CHECK(l40[1].nu_b == 1);
    CHECK(l40[2].omega == 0);
    CHECK(l40[2].nu_b == 2);

    const auto l51 = so3_labels(5, 1);
    REQUIRE(l51.size() == 3);
    CHECK(l51[0].omega == 5);
    CHECK(l51[1].omega == 3);
    CHECK(l51[2].omega == 1);

    const auto l150 = so3_labels(150, 0);
    REQUIRE(l150.size() == 76);
    for (int i = 0; i < 76; ++i)
        CHECK(l150[i].nu_b == i);

    // Both chains span the same space for every block.
    for (int n_vib = 1; n_vib <= 40; ++n_vib)
        for (int l = 0; l <= n_vib; ++l)
            CHECK(so3_labels(n_vib, l).size() ==
                  static_cast<std::size_t>(BasisBlock(n_vib, l).dimension()));
}

TEST_CASE("so3_transform diagonalizes W^2 with the Casimir spectrum") {
    struct Case {
        int n_vib, l;
        std::vector<double> evals;
    };
    const Case cases[] = {
        {2, 0, {6.0, 0.0}},
        {4, 0, {20.0, 6.0, 0.0}},
        {6, 2, {42.0, 20.0, 6.0}},
    };
    for (const auto& c : cases) {
        const BasisBlock block(c.n_vib, c.l);
        const Eigen::MatrixXd w2 = operator_matrix(OperatorKind::w2, block);
        const Eigen::MatrixXd t = so3_transform(block, w2);

        const Eigen::MatrixXd gram = t.transpose() * t;
        CHECK((gram - Eigen::MatrixXd::Identity(t.cols(), t.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);

        const Eigen::MatrixXd d = t.transpose() * w2 * t;
        for (int k = 0; k < d.rows(); ++k)
            CHECK(d(k, k) == doctest::Approx(c.evals[k]).epsilon(1e-8));
        Eigen::MatrixXd off = d;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() < 1e-10 * w2.norm());
    }
}

TEST_CASE("so3_transform column order matches the labels and the oracle") {
    for (int n_vib = 1; n_vib <= 6; ++n_vib) {
        const oracle::BosonSpace space(n_vib);
        for (int l = 0; l <= n_vib; ++l) {
            const BasisBlock block(n_vib, l);
            const Eigen::MatrixXd w2 = operator_matrix(OperatorKind::w2, block);
            const Eigen::MatrixXd t = so3_transform(block, w2);
            const auto labels = so3_labels(n_vib, l);

            const Eigen::MatrixXd d = t.transpose() * w2 * t;
            for (std::size_t k = 0; k < labels.size(); ++k) {
                const double casimir =
                    labels[k].omega * (labels[k].omega + 1.0);
                CHECK(std::abs(d(static_cast<int>(k), static_cast<int>(k)) -
                               casimir) <= 1e-8 * std::max(1.0, casimir));
            }

            // Same diagonalization works on the oracle matrix.
            const Eigen::MatrixXd w2_oracle =
                space.block_operator(OperatorKind::w2, l);
            CHECK((w2 - w2_oracle).cwiseAbs().maxCoeff() < 1e-10);

            // Sign convention: first nonzero entry of each column positive.
            for (int c = 0; c < t.cols(); ++c) {
                for (int r = 0; r < t.rows(); ++r) {
                    if (std::abs(t(r, c)) > 1e-9) {
                        CHECK(t(r, c) > 0.0);
                        break;
                    }
                }
            }
        }
    }
}

TEST_CASE("so3_transform rejects degenerate input") {
    const BasisBlock block(4, 0);
    const Eigen::MatrixXd corrupted = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(so3_transform(block, corrupted), DegenerateSpectrum);
    CHECK_THROWS_AS(so3_transform(block, Eigen::MatrixXd::Zero(2, 2)),
                    InvalidArgument);
}
