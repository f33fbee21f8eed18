#include "vibron2d.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "vibron/basis.hpp"
#include "vibron/errors.hpp"
#include "vibron/fitting.hpp"
#include "vibron/probes.hpp"
#include "vibron/spectra.hpp"

using vibron::BasisBlock;
using vibron::BlockSpectrum;
using vibron::HamiltonianParams;
using vibron::LambdaSplit;
using vibron::ModelParams;

struct v2d_params {
    bool is_model = false;
    double xi = 0.0;
    HamiltonianParams coeffs;
};

struct v2d_spectrum {
    BlockSpectrum spec;
};

struct v2d_split {
    LambdaSplit split;
};

struct v2d_lines {
    std::vector<vibron::ExperimentalLine> lines;
};

struct v2d_fit_result {
    vibron::FitResult result;
};

namespace {

thread_local std::string g_last_error;

v2d_status fail(v2d_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
v2d_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return V2D_OK;
    } catch (const vibron::InvalidArgument& e) {
        return fail(V2D_EINVAL, e.what());
    } catch (const vibron::DegenerateSpectrum& e) {
        return fail(V2D_EDEGENERATE, e.what());
    } catch (const vibron::SingularNormalEquations& e) {
        return fail(V2D_ESINGULAR, e.what());
    } catch (const vibron::ConvergenceFailure& e) {
        return fail(V2D_ENOCONVERGE, e.what());
    } catch (const vibron::ParseError& e) {
        return fail(V2D_EPARSE, e.what());
    } catch (const vibron::FlatCurve& e) {
        return fail(V2D_EFLAT, e.what());
    } catch (const vibron::IoError& e) {
        return fail(V2D_EIO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(V2D_EINTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(V2D_EINTERNAL, e.what());
    } catch (...) {
        return fail(V2D_EINTERNAL, "unknown error");
    }
}

void require(bool condition, const char* message) {
    if (!condition)
        throw vibron::InvalidArgument(message);
}

LambdaSplit make_split(const v2d_params& p, int l) {
    const BasisBlock block(p.coeffs.vibron_number(), l);
    if (p.is_model)
        return vibron::split_model({p.xi, p.coeffs.vibron_number()}, block);
    return vibron::split_lambda(p.coeffs, block);
}

BlockSpectrum make_spectrum(const v2d_params& p, int l) {
    const BasisBlock block(p.coeffs.vibron_number(), l);
    if (p.is_model)
        return vibron::eigensolve(
            block, vibron::build_model({p.xi, p.coeffs.vibron_number()}, block));
    return vibron::eigensolve(block, vibron::build_h4b(p.coeffs, block));
}

void write_file(const char* path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw vibron::IoError(std::string("cannot open '") + path + "' for writing");
    os << contents;
    os.flush();
    if (!os)
        throw vibron::IoError(std::string("write to '") + path + "' failed");
}

std::vector<double> copy_grid(const double* values, int count) {
    require(values != nullptr && count >= 1, "null or empty grid");
    return std::vector<double>(values, values + count);
}

} // namespace

extern "C" {

const char* v2d_version(void) { return "1.0.0"; }

const char* v2d_status_name(v2d_status status) {
    switch (status) {
    case V2D_OK: return "ok";
    case V2D_EINVAL: return "invalid argument";
    case V2D_EDEGENERATE: return "degenerate spectrum";
    case V2D_ESINGULAR: return "singular normal equations";
    case V2D_ENOCONVERGE: return "no convergence";
    case V2D_EPARSE: return "parse error";
    case V2D_EIO: return "io error";
    case V2D_EFLAT: return "flat curve";
    case V2D_EINTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* v2d_last_error(void) { return g_last_error.c_str(); }

int v2d_param_count(void) { return vibron::kParamCount; }

const char* v2d_param_name(int index) {
    if (index < 0 || index >= vibron::kParamCount)
        return nullptr;
    return vibron::param_name(static_cast<vibron::Param>(index)).data();
}

v2d_status v2d_params_create(int n_vibron, v2d_params** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = new v2d_params{false, 0.0, HamiltonianParams(n_vibron)};
    });
}

v2d_status v2d_params_create_model(int n_vibron, double xi, v2d_params** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(n_vibron >= 2, "model Hamiltonian needs N >= 2");
        require(xi >= 0.0 && xi <= 1.0, "xi must lie in [0, 1]");
        *out = new v2d_params{true, xi, HamiltonianParams(n_vibron)};
    });
}

v2d_status v2d_params_set(v2d_params* p, const char* name, double value_cm1) {
    return guarded([&] {
        require(p != nullptr && name != nullptr, "null argument");
        require(!p->is_model, "model Hamiltonian has no free coefficients");
        p->coeffs.set(vibron::param_from_name(name), value_cm1);
    });
}

v2d_status v2d_params_get(const v2d_params* p, const char* name, double* out) {
    return guarded([&] {
        require(p != nullptr && name != nullptr && out != nullptr, "null argument");
        require(!p->is_model, "model Hamiltonian has no named coefficients");
        *out = p->coeffs.get(vibron::param_from_name(name));
    });
}

int v2d_params_vibron(const v2d_params* p) {
    return p == nullptr ? -1 : p->coeffs.vibron_number();
}

int v2d_params_is_model(const v2d_params* p) {
    return p != nullptr && p->is_model ? 1 : 0;
}

v2d_status v2d_params_xi(const v2d_params* p, double* out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        require(p->is_model, "xi is only defined for the model Hamiltonian");
        *out = p->xi;
    });
}

void v2d_params_free(v2d_params* p) { delete p; }

v2d_status v2d_block_dimension(int n_vibron, int l, int* out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = BasisBlock(n_vibron, l).dimension();
    });
}

v2d_status v2d_spectrum_create(const v2d_params* p, int l, v2d_spectrum** out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        *out = new v2d_spectrum{make_spectrum(*p, l)};
    });
}

int v2d_spectrum_dimension(const v2d_spectrum* s) {
    return s == nullptr ? -1 : static_cast<int>(s->spec.energies.size());
}

v2d_status v2d_spectrum_energies(const v2d_spectrum* s, double* out, int capacity) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        const int dim = static_cast<int>(s->spec.energies.size());
        require(capacity >= dim, "buffer too small");
        for (int i = 0; i < dim; ++i)
            out[i] = s->spec.energies(i);
    });
}

v2d_status v2d_spectrum_state(const v2d_spectrum* s, int k, double* out,
                              int capacity) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        const int dim = static_cast<int>(s->spec.energies.size());
        require(k >= 0 && k < dim, "state index out of range");
        require(capacity >= dim, "buffer too small");
        for (int i = 0; i < dim; ++i)
            out[i] = s->spec.vectors(i, k);
    });
}

void v2d_spectrum_free(v2d_spectrum* s) { delete s; }

v2d_status v2d_split_create(const v2d_params* p, int l, v2d_split** out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        *out = new v2d_split{make_split(*p, l)};
    });
}

v2d_status v2d_split_spectrum(const v2d_split* s, double lambda,
                              v2d_spectrum** out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        *out = new v2d_spectrum{
            vibron::eigensolve(s->split.block, vibron::h_lambda(s->split, lambda))};
    });
}

void v2d_split_free(v2d_split* s) { delete s; }

v2d_status v2d_participation_ratio(const double* coeffs, int dim, double* out) {
    return guarded([&] {
        require(coeffs != nullptr && out != nullptr && dim >= 1, "null argument");
        *out = vibron::participation_ratio(
            Eigen::Map<const Eigen::VectorXd>(coeffs, dim));
    });
}

v2d_status v2d_fidelity(const double* a, const double* b, int dim, double* out) {
    return guarded([&] {
        require(a != nullptr && b != nullptr && out != nullptr && dim >= 1,
                "null argument");
        *out = vibron::fidelity(Eigen::Map<const Eigen::VectorXd>(a, dim),
                                Eigen::Map<const Eigen::VectorXd>(b, dim));
    });
}

v2d_status v2d_pr_state(const v2d_spectrum* s, int k, v2d_basis basis,
                        double* out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        const int dim = static_cast<int>(s->spec.energies.size());
        require(k >= 0 && k < dim, "state index out of range");
        if (basis == V2D_BASIS_U2) {
            *out = vibron::pr_in_basis(s->spec.vectors.col(k), vibron::Basis::U2);
        } else {
            require(basis == V2D_BASIS_SO3, "unknown basis");
            const Eigen::MatrixXd t = vibron::so3_transform(
                s->spec.block,
                vibron::operator_matrix(vibron::OperatorKind::w2, s->spec.block));
            *out = vibron::pr_in_basis(s->spec.vectors.col(k), vibron::Basis::So3,
                                       &t);
        }
    });
}

v2d_status v2d_qfs_state(const v2d_split* s, double lambda, int k, double* out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        *out = vibron::qfs_state(s->split, lambda, k);
    });
}

v2d_status v2d_qfs_scan(const v2d_split* s, const double* lambdas, int count,
                        int threads, double* chi) {
    return guarded([&] {
        require(s != nullptr && chi != nullptr, "null argument");
        const auto grid = copy_grid(lambdas, count);
        const vibron::QfsScan scan = vibron::qfs_scan(s->split, grid, threads);
        const int dim = s->split.block.dimension();
        for (int g = 0; g < count; ++g)
            for (int k = 0; k < dim; ++k)
                chi[static_cast<std::size_t>(g) * dim + k] = scan.chi(k, g);
    });
}

v2d_status v2d_lambda_max(const double* lambdas, const double* chi, int count,
                          double* out) {
    return guarded([&] {
        require(chi != nullptr && out != nullptr, "null argument");
        const auto grid = copy_grid(lambdas, count);
        *out = vibron::lambda_max(
            grid, Eigen::Map<const Eigen::VectorXd>(chi, count));
    });
}

v2d_status v2d_classify(const v2d_split* s, const double* lambdas, int count,
                        double tol, int threads, double* lambda_max_out,
                        int* phase_out, int* transition_out) {
    return guarded([&] {
        require(s != nullptr, "null argument");
        const auto grid = copy_grid(lambdas, count);
        const vibron::ClassificationResult result =
            vibron::classify(s->split, grid, tol, threads);
        for (std::size_t j = 0; j < result.states.size(); ++j) {
            if (lambda_max_out != nullptr)
                lambda_max_out[j] = result.states[j].lambda_max;
            if (phase_out != nullptr)
                phase_out[j] = static_cast<int>(result.states[j].phase);
        }
        if (transition_out != nullptr)
            *transition_out = result.transition_state;
    });
}

v2d_status v2d_scan_xi_csv(int n_vibron, const double* xis, int count,
                           const int* ls, int nl, int threads, const char* path) {
    return guarded([&] {
        require(ls != nullptr && nl >= 1, "empty l list");
        require(path != nullptr, "null path");
        const auto grid = copy_grid(xis, count);
        std::vector<vibron::ScanPoint> rows;
        for (int i = 0; i < nl; ++i) {
            const BasisBlock block(n_vibron, ls[i]);
            auto part = vibron::correlation_scan(
                [&](double xi) {
                    return vibron::build_model({xi, n_vibron}, block);
                },
                grid, block, threads);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::ostringstream os;
        vibron::scan_to_csv(rows, os);
        write_file(path, os.str());
    });
}

v2d_status v2d_scan_lambda_csv(const v2d_params* p, const double* lambdas,
                               int count, const int* ls, int nl, int threads,
                               const char* path) {
    return guarded([&] {
        require(p != nullptr, "null argument");
        require(ls != nullptr && nl >= 1, "empty l list");
        require(path != nullptr, "null path");
        const auto grid = copy_grid(lambdas, count);
        std::vector<vibron::ScanPoint> rows;
        for (int i = 0; i < nl; ++i) {
            const LambdaSplit split = make_split(*p, ls[i]);
            auto part = vibron::correlation_scan(
                [&](double lam) { return vibron::h_lambda(split, lam); }, grid,
                split.block, threads);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::ostringstream os;
        vibron::scan_to_csv(rows, os);
        write_file(path, os.str());
    });
}

v2d_status v2d_probe_csv(const v2d_params* p, const double* lambdas, int count,
                         const int* ls, int nl, int threads,
                         const char* scan_path, const char* lambda0_path) {
    return guarded([&] {
        require(p != nullptr, "null argument");
        require(ls != nullptr && nl >= 1, "empty l list");
        require(scan_path != nullptr || lambda0_path != nullptr,
                "both output paths are null");
        const auto grid = copy_grid(lambdas, count);

        std::ostringstream scan_os;
        std::ostringstream zero_os;
        scan_os << "lambda,l,state_index,chi,chi_over_N\n";
        zero_os << "l,state_index,energy,chi,chi_over_N,pr_u2,pr_so3\n";

        for (int i = 0; i < nl; ++i) {
            const int l = ls[i];
            const LambdaSplit split = make_split(*p, l);
            if (scan_path != nullptr) {
                const vibron::QfsScan scan = vibron::qfs_scan(split, grid, threads);
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    const std::string lam = vibron::format_sig12(grid[g]);
                    for (int k = 0; k < scan.chi.rows(); ++k)
                        scan_os << lam << ',' << l << ',' << k << ','
                                << vibron::format_sig12(
                                       scan.chi(k, static_cast<int>(g)))
                                << ','
                                << vibron::format_sig12(
                                       scan.chi_normalized(k, static_cast<int>(g)))
                                << '\n';
                }
            }
            if (lambda0_path != nullptr) {
                const BlockSpectrum spec =
                    vibron::eigensolve(split.block, vibron::h_lambda(split, 0.0));
                const Eigen::MatrixXd h_int = vibron::h_interaction(split, 0.0);
                const Eigen::MatrixXd t = vibron::so3_transform(
                    split.block,
                    vibron::operator_matrix(vibron::OperatorKind::w2, split.block));
                const double n_vibron = split.block.vibron_number();
                for (int k = 0; k < spec.energies.size(); ++k) {
                    const double chi = vibron::qfs_state(spec, h_int, k);
                    zero_os << l << ',' << k << ','
                            << vibron::format_sig12(spec.energies(k)) << ','
                            << vibron::format_sig12(chi) << ','
                            << vibron::format_sig12(chi / n_vibron) << ','
                            << vibron::format_sig12(vibron::pr_in_basis(
                                   spec.vectors.col(k), vibron::Basis::U2))
                            << ','
                            << vibron::format_sig12(vibron::pr_in_basis(
                                   spec.vectors.col(k), vibron::Basis::So3, &t))
                            << '\n';
                }
            }
        }
        if (scan_path != nullptr)
            write_file(scan_path, scan_os.str());
        if (lambda0_path != nullptr)
            write_file(lambda0_path, zero_os.str());
    });
}

v2d_status v2d_classify_csv(const v2d_params* p, const double* lambdas, int count,
                            double tol, int threads, const char* path,
                            int* transition_out) {
    return guarded([&] {
        require(p != nullptr && path != nullptr, "null argument");
        const auto grid = copy_grid(lambdas, count);
        const LambdaSplit split = make_split(*p, 0);
        const vibron::ClassificationResult result =
            vibron::classify(split, grid, tol, threads);
        std::ostringstream os;
        vibron::classification_to_csv(result, os);
        write_file(path, os.str());
        if (transition_out != nullptr)
            *transition_out = result.transition_state;
    });
}

v2d_status v2d_lines_load(const char* path, v2d_lines** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw vibron::IoError(std::string("cannot open '") + path + "'");
        *out = new v2d_lines{vibron::parse_lines_csv(is)};
    });
}

int v2d_lines_count(const v2d_lines* lines) {
    return lines == nullptr ? -1 : static_cast<int>(lines->lines.size());
}

v2d_status v2d_lines_get(const v2d_lines* lines, int i, int* notation,
                         int* label1, int* label2, double* energy_cm1,
                         double* weight) {
    return guarded([&] {
        require(lines != nullptr, "null argument");
        require(i >= 0 && i < static_cast<int>(lines->lines.size()),
                "line index out of range");
        const auto& line = lines->lines[i];
        if (notation != nullptr)
            *notation = line.notation == vibron::Notation::Bent
                            ? V2D_NOTATION_BENT
                            : V2D_NOTATION_LINEAR;
        if (label1 != nullptr)
            *label1 = line.label1;
        if (label2 != nullptr)
            *label2 = line.label2;
        if (energy_cm1 != nullptr)
            *energy_cm1 = line.energy_cm1;
        if (weight != nullptr)
            *weight = line.weight;
    });
}

v2d_status v2d_lines_assign(const v2d_lines* lines, int n_vibron, int* ls,
                            int* ks) {
    return guarded([&] {
        require(lines != nullptr, "null argument");
        for (std::size_t i = 0; i < lines->lines.size(); ++i) {
            const vibron::StateRef ref = vibron::assign(lines->lines[i], n_vibron);
            if (ls != nullptr)
                ls[i] = ref.l;
            if (ks != nullptr)
                ks[i] = ref.k;
        }
    });
}

v2d_status v2d_band_origins(const v2d_params* p, const v2d_lines* lines,
                            double* out) {
    return guarded([&] {
        require(p != nullptr && lines != nullptr && out != nullptr,
                "null argument");
        require(!p->is_model, "band origins need a four-body Hamiltonian");
        const std::vector<double> calc =
            vibron::band_origins(p->coeffs, lines->lines);
        std::copy(calc.begin(), calc.end(), out);
    });
}

v2d_status v2d_fit_run(const v2d_params* initial, const v2d_lines* lines,
                       const char* const* active_names, int n_active,
                       int max_iterations, double tol_rms_cm1,
                       v2d_fit_result** out) {
    return guarded([&] {
        require(initial != nullptr && lines != nullptr && out != nullptr,
                "null argument");
        require(!initial->is_model, "fits need a four-body Hamiltonian");
        require(active_names != nullptr && n_active >= 1,
                "empty active parameter list");
        vibron::FitConfig config{initial->coeffs, {}, max_iterations, tol_rms_cm1};
        for (int i = 0; i < n_active; ++i) {
            require(active_names[i] != nullptr, "null parameter name");
            config.active.push_back(vibron::param_from_name(active_names[i]));
        }
        *out = new v2d_fit_result{vibron::fit(config, lines->lines)};
    });
}

double v2d_fit_rms(const v2d_fit_result* r) {
    return r == nullptr ? -1.0 : r->result.rms;
}

int v2d_fit_converged(const v2d_fit_result* r) {
    return r != nullptr && r->result.converged ? 1 : 0;
}

int v2d_fit_iterations(const v2d_fit_result* r) {
    return r == nullptr ? -1 : r->result.iterations;
}

v2d_status v2d_fit_params(const v2d_fit_result* r, v2d_params** out) {
    return guarded([&] {
        require(r != nullptr && out != nullptr, "null argument");
        *out = new v2d_params{false, 0.0, r->result.params};
    });
}

v2d_status v2d_fit_sigma(const v2d_fit_result* r, const char* name, double* out) {
    return guarded([&] {
        require(r != nullptr && name != nullptr && out != nullptr,
                "null argument");
        const vibron::Param p = vibron::param_from_name(name);
        for (std::size_t a = 0; a < r->result.active.size(); ++a) {
            if (r->result.active[a] == p) {
                *out = r->result.sigma(static_cast<int>(a));
                return;
            }
        }
        throw vibron::InvalidArgument(std::string("parameter ") + name +
                                      " was not optimized");
    });
}

v2d_status v2d_fit_residuals(const v2d_fit_result* r, double* out, int capacity) {
    return guarded([&] {
        require(r != nullptr && out != nullptr, "null argument");
        const int n = static_cast<int>(r->result.residuals.size());
        require(capacity >= n, "buffer too small");
        std::copy(r->result.residuals.begin(), r->result.residuals.end(), out);
    });
}

v2d_status v2d_fit_write(const v2d_fit_result* r, const v2d_lines* lines,
                         const char* json_path, const char* csv_path) {
    return guarded([&] {
        require(r != nullptr && lines != nullptr, "null argument");
        require(json_path != nullptr || csv_path != nullptr,
                "both output paths are null");
        if (json_path != nullptr) {
            std::ostringstream os;
            vibron::fit_result_to_json(r->result, lines->lines, os);
            write_file(json_path, os.str());
        }
        if (csv_path != nullptr) {
            std::ostringstream os;
            vibron::fit_residuals_to_csv(r->result, lines->lines, os);
            write_file(csv_path, os.str());
        }
    });
}

void v2d_fit_free(v2d_fit_result* r) { delete r; }

void v2d_lines_free(v2d_lines* lines) { delete lines; }

} // extern "C"
