#ifndef VIBRON_TESTS_BOSON_ORACLE_HPP
#define VIBRON_TESTS_BOSON_ORACLE_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "vibron/operators.hpp"

// Independent second-quantized realization of the U(3) operators.
//
// Works in the full N-boson Fock space of one scalar boson (sigma) and
// the two circular components (tau+, tau-). The generators are built
// from creation/annihilation bilinears, W^2 and Wbar^2 from the
// standard vector-operator combinations
//   D+ = sqrt(2) (tau+^dag sigma - sigma^dag tau-),
//   R+ = sqrt(2) (tau+^dag sigma + sigma^dag tau-),
//   W^2 = (D+ D- + D- D+)/2 + l^2,   Wbar^2 = (R+ R- + R- R+)/2 + l^2,
// then projected onto the angular-momentum block. Nothing here shares
// code with vibron::operator_matrix.
namespace oracle {

class BosonSpace {
public:
    explicit BosonSpace(int n_vibron);

    int dimension() const { return dim_; }
    int vibron_number() const { return n_vibron_; }

    // Full-space matrices of the elementary operators.
    const Eigen::MatrixXd& number() const { return n_; }
    const Eigen::MatrixXd& angmom() const { return l_; }
    const Eigen::MatrixXd& w2() const { return w2_; }
    const Eigen::MatrixXd& w2bar() const { return w2bar_; }

    // Projection of a full-space operator onto the l block, rows and
    // columns ordered by n ascending as in vibron::BasisBlock.
    Eigen::MatrixXd block(const Eigen::MatrixXd& op, int l) const;

    // Oracle version of every Hamiltonian building block, computed in
    // the full space and projected.
    Eigen::MatrixXd block_operator(vibron::OperatorKind kind, int l) const;

private:
    int n_vibron_;
    int dim_;
    // occupation triples (n_sigma, n_plus, n_minus) per index
    std::vector<std::array<int, 3>> occ_;
    Eigen::MatrixXd n_, l_, w2_, w2bar_;

    Eigen::MatrixXd bilinear(int create, int annihilate) const;
    int index_of(int ns, int np, int nm) const;
};

} // namespace oracle

#endif
