#include "vibron/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "vibron/errors.hpp"

namespace vibron {

namespace {

std::string line_label(const ExperimentalLine& line) {
    return std::string(line.notation == Notation::Bent ? "bent" : "linear") + " (" +
           std::to_string(line.label1) + ", " + std::to_string(line.label2) + ")";
}

} // namespace

StateRef assign(const ExperimentalLine& line, int N) {
    const int l = std::abs(line.label2);
    if (l > N)
        throw InvalidArgument("line " + line_label(line) + ": |l| exceeds N = " +
                              std::to_string(N));
    int k = 0;
    if (line.notation == Notation::Bent) {
        k = line.label1;
        if (k < 0)
            throw InvalidArgument("line " + line_label(line) + ": negative nu_b");
    } else {
        const int n = line.label1;
        if (n < l || n > N || (n - l) % 2 != 0)
            throw InvalidArgument("line " + line_label(line) +
                                  ": n violates the branching rules");
        k = (n - l) / 2;
    }
    const BasisBlock block(N, l);
    if (k >= block.dimension())
        throw InvalidArgument("line " + line_label(line) + ": state index " +
                              std::to_string(k) + " outside block dimension " +
                              std::to_string(block.dimension()));
    return StateRef{l, k};
}

namespace {

// Eigensolve every block the line set touches, plus the l = 0 reference.
std::map<int, BlockSpectrum> solve_needed_blocks(
    const HamiltonianParams& params, const std::vector<ExperimentalLine>& lines) {
    std::set<int> ls{0};
    for (const auto& line : lines)
        ls.insert(assign(line, params.vibron_number()).l);
    std::map<int, BlockSpectrum> out;
    for (int l : ls) {
        const BasisBlock block(params.vibron_number(), l);
        out.emplace(l, eigensolve(block, build_h4b(params, block)));
    }
    return out;
}

void check_isolated(const BlockSpectrum& s, int k, int l) {
    const int dim = static_cast<int>(s.energies.size());
    if (dim < 2)
        return;
    const double range = s.energies(dim - 1) - s.energies(0);
    const double tol = 1e-10 * range;
    const bool low = k > 0 && s.energies(k) - s.energies(k - 1) <= tol;
    const bool high = k + 1 < dim && s.energies(k + 1) - s.energies(k) <= tol;
    if (low || high)
        throw DegenerateSpectrum("assigned state (l=" + std::to_string(l) +
                                 ", k=" + std::to_string(k) +
                                 ") is degenerate; derivative undefined");
}

} // namespace

std::vector<double> band_origins(const HamiltonianParams& params,
                                 const std::vector<ExperimentalLine>& lines) {
    const auto spectra = solve_needed_blocks(params, lines);
    const double e0 = spectra.at(0).energies(0);
    std::vector<double> calc;
    calc.reserve(lines.size());
    for (const auto& line : lines) {
        const StateRef ref = assign(line, params.vibron_number());
        calc.push_back(spectra.at(ref.l).energies(ref.k) - e0);
    }
    return calc;
}

Eigen::MatrixXd fit_jacobian(const HamiltonianParams& params,
                             const std::vector<ExperimentalLine>& lines,
                             const std::vector<Param>& active) {
    const auto spectra = solve_needed_blocks(params, lines);
    const int n_lines = static_cast<int>(lines.size());
    const int n_active = static_cast<int>(active.size());

    // Ground-state expectation of each active operator, subtracted from
    // every band origin derivative.
    const BlockSpectrum& ground = spectra.at(0);
    check_isolated(ground, 0, 0);
    std::map<int, std::vector<Eigen::MatrixXd>> ops; // l -> per-active matrix
    for (const auto& [l, spec] : spectra) {
        auto& v = ops[l];
        v.reserve(n_active);
        for (const Param p : active)
            v.push_back(operator_matrix(param_operator(p), spec.block));
    }
    Eigen::VectorXd gs_expect(n_active);
    for (int a = 0; a < n_active; ++a)
        gs_expect(a) =
            ground.vectors.col(0).dot(ops.at(0)[a] * ground.vectors.col(0));

    Eigen::MatrixXd jac(n_lines, n_active);
    for (int i = 0; i < n_lines; ++i) {
        const StateRef ref = assign(lines[i], params.vibron_number());
        const BlockSpectrum& spec = spectra.at(ref.l);
        check_isolated(spec, ref.k, ref.l);
        const Eigen::VectorXd psi = spec.vectors.col(ref.k);
        for (int a = 0; a < n_active; ++a)
            jac(i, a) = psi.dot(ops.at(ref.l)[a] * psi) - gs_expect(a);
    }
    return jac;
}

namespace {

Eigen::VectorXd weighted_residuals(const HamiltonianParams& params,
                                   const std::vector<ExperimentalLine>& lines,
                                   const Eigen::VectorXd& sqrt_w) {
    const std::vector<double> calc = band_origins(params, lines);
    Eigen::VectorXd r(static_cast<int>(lines.size()));
    for (int i = 0; i < r.size(); ++i)
        r(i) = sqrt_w(i) * (lines[i].energy_cm1 - calc[i]);
    return r;
}

HamiltonianParams apply_step(const HamiltonianParams& base,
                             const std::vector<Param>& active,
                             const Eigen::VectorXd& delta) {
    HamiltonianParams out = base;
    for (int a = 0; a < delta.size(); ++a)
        out.set(active[a], out.get(active[a]) + delta(a));
    return out;
}

} // namespace

FitResult fit(const FitConfig& config, const std::vector<ExperimentalLine>& lines) {
    const int n_data = static_cast<int>(lines.size());
    const int n_active = static_cast<int>(config.active.size());
    if (n_active == 0)
        throw InvalidArgument("no active parameters to optimize");
    {
        std::set<Param> unique(config.active.begin(), config.active.end());
        if (static_cast<int>(unique.size()) != n_active)
            throw InvalidArgument("duplicate active parameter");
    }
    if (n_data < n_active)
        throw InvalidArgument("fewer data lines (" + std::to_string(n_data) +
                              ") than active parameters (" +
                              std::to_string(n_active) + ")");

    Eigen::VectorXd sqrt_w(n_data);
    for (int i = 0; i < n_data; ++i) {
        if (!(lines[i].weight > 0.0))
            throw InvalidArgument("weights must be positive");
        sqrt_w(i) = std::sqrt(lines[i].weight);
    }
    const int dof = std::max(n_data - n_active, 1);

    HamiltonianParams params = config.initial;
    Eigen::VectorXd r = weighted_residuals(params, lines, sqrt_w);
    double ssr = r.squaredNorm();
    Eigen::MatrixXd jac = fit_jacobian(params, lines, config.active);
    jac.array().colwise() *= sqrt_w.array();

    double mu = 0.0; // set from the first normal matrix below
    bool converged = false;
    int iterations = 0;

    for (int iter = 0; iter < config.max_iterations && !converged; ++iter) {
        iterations = iter + 1;
        const Eigen::MatrixXd normal = jac.transpose() * jac;
        const Eigen::VectorXd grad = jac.transpose() * r;
        const Eigen::VectorXd diag = normal.diagonal();
        const double max_diag = diag.maxCoeff();
        if (!(max_diag > 0.0))
            throw SingularNormalEquations("all Jacobian columns vanish");
        for (int a = 0; a < n_active; ++a)
            if (diag(a) < 1e-14 * max_diag)
                throw SingularNormalEquations(
                    "parameter " + std::string(param_name(config.active[a])) +
                    " does not affect the fitted data");
        if (mu == 0.0)
            mu = 1e-3;

        // Marquardt scaling: damp along diag(J^T J).
        Eigen::MatrixXd damped = normal;
        damped.diagonal() += mu * diag;
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(damped);
        Eigen::VectorXd delta = ldlt.solve(grad);
        if (ldlt.info() != Eigen::Success || !delta.allFinite())
            throw SingularNormalEquations("normal equations are rank deficient");

        const HamiltonianParams trial = apply_step(params, config.active, delta);
        const Eigen::VectorXd r_trial = weighted_residuals(trial, lines, sqrt_w);
        const double ssr_trial = r_trial.squaredNorm();

        if (ssr_trial <= ssr) {
            const double rms_change =
                std::sqrt(ssr / dof) - std::sqrt(ssr_trial / dof);
            params = trial;
            r = r_trial;
            ssr = ssr_trial;
            jac = fit_jacobian(params, lines, config.active);
            jac.array().colwise() *= sqrt_w.array();
            mu = std::max(mu * 0.1, 1e-12);
            if (rms_change < config.tol_rms_cm1)
                converged = true;
        } else {
            mu *= 10.0;
        }
    }

    // Linearized covariance at the final point: SSR/dof (J^T J)^-1.
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    Eigen::MatrixXd cov =
        ldlt.solve(Eigen::MatrixXd::Identity(n_active, n_active));
    if (ldlt.info() != Eigen::Success || !cov.allFinite())
        throw SingularNormalEquations("covariance is singular at the solution");
    const double variance = ssr / dof;

    FitResult result{params, config.active, Eigen::VectorXd(n_active), {}, 0.0,
                     converged, iterations};
    for (int a = 0; a < n_active; ++a)
        result.sigma(a) = std::sqrt(std::max(cov(a, a), 0.0) * variance);
    const std::vector<double> calc = band_origins(params, lines);
    result.residuals.resize(n_data);
    for (int i = 0; i < n_data; ++i)
        result.residuals[i] = lines[i].energy_cm1 - calc[i];
    result.rms = std::sqrt(ssr / dof);
    return result;
}

namespace {

std::vector<std::string> split_fields(const std::string& text) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(text);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

int parse_int(const std::string& s, int line_no, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                         " '" + s + "'", line_no);
    }
}

double parse_double(const std::string& s, int line_no, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v))
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                         " '" + s + "'", line_no);
    }
}

} // namespace

std::vector<ExperimentalLine> parse_lines_csv(std::istream& is) {
    std::vector<ExperimentalLine> out;
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(is, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#')
            continue;
        if (!header_seen) {
            const auto fields = split_fields(raw);
            const bool ok =
                (fields.size() == 4 || fields.size() == 5) &&
                fields[0] == "notation" && fields[1] == "label1" &&
                fields[2] == "label2" && fields[3] == "energy_cm1" &&
                (fields.size() == 4 || fields[4] == "weight");
            if (!ok)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header notation,label1,label2,"
                                 "energy_cm1[,weight]", line_no);
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(raw);
        if (fields.size() != 4 && fields.size() != 5)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 4 or 5 fields, got " +
                             std::to_string(fields.size()), line_no);
        ExperimentalLine line{};
        if (fields[0] == "bent")
            line.notation = Notation::Bent;
        else if (fields[0] == "linear")
            line.notation = Notation::Linear;
        else
            throw ParseError("line " + std::to_string(line_no) +
                             ": notation must be bent or linear", line_no);
        line.label1 = parse_int(fields[1], line_no, "label1");
        line.label2 = parse_int(fields[2], line_no, "label2");
        line.energy_cm1 = parse_double(fields[3], line_no, "energy");
        if (fields.size() == 5) {
            line.weight = parse_double(fields[4], line_no, "weight");
            if (!(line.weight > 0.0))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": weight must be positive", line_no);
        }
        out.push_back(line);
    }
    if (!header_seen)
        throw ParseError("missing header row", line_no);
    return out;
}

void fit_result_to_json(const FitResult& result,
                        const std::vector<ExperimentalLine>& lines,
                        std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["N"] = result.params.vibron_number();
    doc["n_data"] = lines.size();
    doc["converged"] = result.converged;
    doc["iterations"] = result.iterations;
    doc["rms_cm1"] = result.rms;

    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (int a = 0; a < static_cast<int>(result.active.size()); ++a) {
        const Param p = result.active[a];
        params[std::string(param_name(p))] = {
            {"value_cm1", result.params.get(p)},
            {"sigma_cm1", result.sigma(a)},
        };
    }
    for (const Param p : result.params.nonzero()) {
        if (std::find(result.active.begin(), result.active.end(), p) ==
            result.active.end())
            params[std::string(param_name(p))] = {
                {"value_cm1", result.params.get(p)},
                {"fixed", true},
            };
    }
    doc["parameters"] = params;

    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    const std::vector<double> calc = band_origins(result.params, lines);
    for (std::size_t i = 0; i < lines.size(); ++i)
        table.push_back({
            {"notation", lines[i].notation == Notation::Bent ? "bent" : "linear"},
            {"label1", lines[i].label1},
            {"label2", lines[i].label2},
            {"obs_cm1", lines[i].energy_cm1},
            {"calc_cm1", calc[i]},
            {"obs_minus_calc_cm1", result.residuals[i]},
        });
    doc["residuals"] = table;
    os << doc.dump(2) << '\n';
}

void fit_residuals_to_csv(const FitResult& result,
                          const std::vector<ExperimentalLine>& lines,
                          std::ostream& os) {
    os << "notation,label1,label2,obs_cm1,calc_cm1,obs_minus_calc_cm1\n";
    const std::vector<double> calc = band_origins(result.params, lines);
    for (std::size_t i = 0; i < lines.size(); ++i)
        os << (lines[i].notation == Notation::Bent ? "bent" : "linear") << ','
           << lines[i].label1 << ',' << lines[i].label2 << ','
           << format_sig12(lines[i].energy_cm1) << ',' << format_sig12(calc[i])
           << ',' << format_sig12(result.residuals[i]) << '\n';
}

} // namespace vibron
