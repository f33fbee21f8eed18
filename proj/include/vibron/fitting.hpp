#ifndef VIBRON_FITTING_HPP
#define VIBRON_FITTING_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "vibron/spectra.hpp"

namespace vibron {

/// Quantum labels of an observed band origin. Bent notation carries
/// (nu_b, l); linear notation carries (n, l).
enum class Notation { Bent, Linear };

struct ExperimentalLine {
    Notation notation;
    int label1; ///< nu_b (bent) or n (linear)
    int label2; ///< l
    double energy_cm1;
    double weight = 1.0;
};

/// Block plus ascending-energy index; for l = 0 the index is nu_b.
struct StateRef {
    int l;
    int k;
};

/// Map a line's labels onto a block state: bent (nu_b, l) -> k = nu_b,
/// linear (n, l) -> k = (n - |l|)/2. Throws InvalidArgument when the
/// labels violate the branching rules for this N.
StateRef assign(const ExperimentalLine& line, int N);

/// Calculated band origins E(assign(line)) - E(l=0, k=0), each needed
/// block eigensolved once.
std::vector<double> band_origins(const HamiltonianParams& params,
                                 const std::vector<ExperimentalLine>& lines);

/// Jacobian d(band origin)/d(active parameter), lines x active, from
/// the eigenvector expectation values of each parameter's operator
/// minus the ground-state term.
Eigen::MatrixXd fit_jacobian(const HamiltonianParams& params,
                             const std::vector<ExperimentalLine>& lines,
                             const std::vector<Param>& active);

struct FitConfig {
    HamiltonianParams initial; ///< also fixes N (never optimized)
    std::vector<Param> active;
    int max_iterations = 200;
    double tol_rms_cm1 = 1e-10; ///< stop when the rms change drops below this
};

struct FitResult {
    HamiltonianParams params;
    std::vector<Param> active;
    Eigen::VectorXd sigma;          ///< one-sigma uncertainty per active parameter
    std::vector<double> residuals;  ///< obs - calc, line order
    double rms = 0.0;               ///< sqrt(weighted SSR / (N_data - N_params))
    bool converged = false;
    int iterations = 0;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) minimization of the
/// weighted squared residuals over the active coefficients. The rms is
/// non-increasing across accepted steps; rejected steps raise the
/// damping. Uncertainties come from the linearized covariance
/// SSR/(N_data - N_params) (J^T J)^-1. Throws SingularNormalEquations
/// on parameter redundancy; a fit that hits max_iterations returns the
/// best point found with converged = false.
FitResult fit(const FitConfig& config, const std::vector<ExperimentalLine>& lines);

/// Parse the band-origin CSV, header
/// notation,label1,label2,energy_cm1[,weight] with notation in
/// {bent, linear}. Throws ParseError naming the offending line.
std::vector<ExperimentalLine> parse_lines_csv(std::istream& is);

/// JSON document with parameter names, values, sigmas, rms, residual
/// table and convergence data.
void fit_result_to_json(const FitResult& result,
                        const std::vector<ExperimentalLine>& lines,
                        std::ostream& os);

/// CSV mirroring the reference-table column order:
/// notation,label1,label2,obs_cm1,calc_cm1,obs_minus_calc_cm1.
void fit_residuals_to_csv(const FitResult& result,
                          const std::vector<ExperimentalLine>& lines,
                          std::ostream& os);

} // namespace vibron

#endif
