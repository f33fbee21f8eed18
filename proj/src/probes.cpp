#include "vibron/probes.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "parallel.hpp"
#include "vibron/errors.hpp"

namespace vibron {

std::string_view phase_name(Phase p) {
    switch (p) {
    case Phase::Bent: return "Bent";
    case Phase::Linear: return "Linear";
    case Phase::Critical: return "Critical";
    }
    throw InvalidArgument("unknown phase");
}

double participation_ratio(const Eigen::VectorXd& coeffs) {
    if (std::abs(coeffs.norm() - 1.0) > 1e-10)
        throw InvalidArgument("participation ratio needs a normalized vector");
    double sum4 = 0.0;
    for (int i = 0; i < coeffs.size(); ++i) {
        const double c2 = coeffs(i) * coeffs(i);
        sum4 += c2 * c2;
    }
    return 1.0 / sum4;
}

double pr_in_basis(const Eigen::VectorXd& eigvec, Basis basis,
                   const Eigen::MatrixXd* so3) {
    if (basis == Basis::U2)
        return participation_ratio(eigvec);
    if (so3 == nullptr)
        throw InvalidArgument("SO(3) participation ratio needs the transform");
    if (so3->rows() != eigvec.size())
        throw InvalidArgument("transform dimension mismatch");
    return participation_ratio(so3->transpose() * eigvec);
}

double fidelity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size())
        throw InvalidArgument("fidelity needs vectors of equal dimension");
    return std::abs(a.dot(b));
}

double qfs_state(const BlockSpectrum& spectrum, const Eigen::MatrixXd& h_int, int j) {
    const int dim = static_cast<int>(spectrum.energies.size());
    if (j < 0 || j >= dim)
        throw InvalidArgument("state index out of range");
    if (dim == 1)
        return 0.0;

    const double range = spectrum.energies(dim - 1) - spectrum.energies(0);
    const Eigen::VectorXd coupling = h_int * spectrum.vectors.col(j);
    const double coupling_scale = coupling.cwiseAbs().maxCoeff();

    const double gap_tol = 1e-10 * range;
    double chi = 0.0;
    for (int i = 0; i < dim; ++i) {
        if (i == j)
            continue;
        const double num = spectrum.vectors.col(i).dot(coupling);
        const double den = spectrum.energies(i) - spectrum.energies(j);
        if (std::abs(den) <= gap_tol) {
            if (std::abs(num) > 1e-12 * coupling_scale)
                throw DegenerateSpectrum("degenerate coupled pair (" +
                                         std::to_string(i) + ", " + std::to_string(j) +
                                         ") in QFS sum");
            continue; // uncoupled degenerate pair contributes nothing
        }
        chi += (num * num) / (den * den);
    }
    return chi;
}

double qfs_state(const LambdaSplit& split, double lambda, int j) {
    const BlockSpectrum s = eigensolve(split.block, h_lambda(split, lambda));
    return qfs_state(s, h_interaction(split, lambda), j);
}

QfsScan qfs_scan(const LambdaSplit& split, const std::vector<double>& grid,
                 int threads) {
    const int dim = split.block.dimension();
    const int npts = static_cast<int>(grid.size());
    QfsScan scan{grid, Eigen::MatrixXd(dim, npts), Eigen::MatrixXd(dim, npts)};
    detail::parallel_for(npts, threads, [&](int g) {
        const double lam = grid[g];
        const BlockSpectrum s = eigensolve(split.block, h_lambda(split, lam));
        const Eigen::MatrixXd h_int = h_interaction(split, lam);
        for (int j = 0; j < dim; ++j)
            scan.chi(j, g) = qfs_state(s, h_int, j);
    });
    scan.chi_normalized = scan.chi / split.block.vibron_number();
    return scan;
}

namespace {

// Single-grid-point spikes come from narrow avoided crossings with
// states folded down from the top of the n band, not from the
// separatrix; a smooth peak never exceeds both neighbors tenfold.
// Replacing a spike by its neighbor mean keeps the peak search on the
// broad susceptibility maximum.
Eigen::VectorXd reject_isolated_spikes(const Eigen::VectorXd& chi) {
    constexpr double kSpikeRatio = 10.0;
    const int npts = static_cast<int>(chi.size());
    Eigen::VectorXd out = chi;
    for (int g = 1; g + 1 < npts; ++g)
        if (chi(g) > kSpikeRatio * std::max(chi(g - 1), chi(g + 1)))
            out(g) = 0.5 * (chi(g - 1) + chi(g + 1));
    if (chi(0) > kSpikeRatio * chi(1))
        out(0) = chi(1);
    if (chi(npts - 1) > kSpikeRatio * chi(npts - 2))
        out(npts - 1) = chi(npts - 2);
    return out;
}

} // namespace

double lambda_max(const std::vector<double>& lambdas, const Eigen::VectorXd& chi_row) {
    const int npts = static_cast<int>(lambdas.size());
    if (npts < 3 || chi_row.size() != npts)
        throw InvalidArgument("lambda_max needs a grid of at least 3 points");
    if (chi_row.maxCoeff() - chi_row.minCoeff() < 1e-12)
        throw FlatCurve("susceptibility curve is flat across the grid");

    const Eigen::VectorXd chi = reject_isolated_spikes(chi_row);
    int peak = 0;
    chi.maxCoeff(&peak);
    if (peak == 0 || peak == npts - 1)
        return std::clamp(lambdas[peak], -1.0, 1.0);

    // Parabola through (x0,y0),(x1,y1),(x2,y2); vertex of the quadratic.
    const double x0 = lambdas[peak - 1], x1 = lambdas[peak], x2 = lambdas[peak + 1];
    const double y0 = chi(peak - 1), y1 = chi(peak), y2 = chi(peak + 1);
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (curvature >= 0.0)
        return std::clamp(x1, -1.0, 1.0); // numerically flat top
    const double vertex = 0.5 * (x0 + x1 - d01 / curvature);
    return std::clamp(vertex, -1.0, 1.0);
}

ClassificationResult classify(const LambdaSplit& split,
                              const std::vector<double>& grid, double tol,
                              int threads) {
    const QfsScan scan = qfs_scan(split, grid, threads);
    const int dim = split.block.dimension();
    ClassificationResult result;
    result.states.reserve(dim);
    for (int j = 0; j < dim; ++j) {
        const double lmax = lambda_max(grid, scan.chi.row(j));
        Phase phase = Phase::Critical;
        if (lmax < -tol)
            phase = Phase::Bent;
        else if (lmax > tol)
            phase = Phase::Linear;
        result.states.push_back({split.block.angmom(), j, lmax, phase});
    }
    // Transition state: the last state below the separatrix (largest
    // lambda_max among the Bent states). When nothing is bent, fall
    // back to the state with |lambda_max| closest to zero.
    result.transition_state = -1;
    for (int j = 0; j < dim; ++j)
        if (result.states[j].phase == Phase::Bent &&
            (result.transition_state < 0 ||
             result.states[j].lambda_max >
                 result.states[result.transition_state].lambda_max))
            result.transition_state = j;
    if (result.transition_state < 0) {
        result.transition_state = 0;
        for (int j = 1; j < dim; ++j)
            if (std::abs(result.states[j].lambda_max) <
                std::abs(result.states[result.transition_state].lambda_max))
                result.transition_state = j;
    }
    return result;
}

void qfs_scan_to_csv(const QfsScan& scan, int l, std::ostream& os) {
    os << "lambda,l,state_index,chi,chi_over_N\n";
    for (std::size_t g = 0; g < scan.lambdas.size(); ++g) {
        const std::string lam = format_sig12(scan.lambdas[g]);
        for (int j = 0; j < scan.chi.rows(); ++j)
            os << lam << ',' << l << ',' << j << ','
               << format_sig12(scan.chi(j, static_cast<int>(g))) << ','
               << format_sig12(scan.chi_normalized(j, static_cast<int>(g))) << '\n';
    }
}

void classification_to_csv(const ClassificationResult& result, std::ostream& os) {
    os << "l,state_index,lambda_max,phase\n";
    for (const auto& c : result.states)
        os << c.l << ',' << c.state << ',' << format_sig12(c.lambda_max) << ','
           << phase_name(c.phase) << '\n';
}

} // namespace vibron
