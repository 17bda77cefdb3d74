#include "fracdiff/fracdiff.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "fracdiff/analysis.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/exact.hpp"
#include "fracdiff/metrics.hpp"
#include "fracdiff/mlf.hpp"
#include "fracdiff/stepper.hpp"
#include "fracdiff/study.hpp"

using namespace fracdiff;

struct fd_problem {
    stepper::ProblemSpec spec;
    int example = 0;  // 0 for custom problems
};

struct fd_solution {
    stepper::ProblemSpec spec;
    fem::FemSystem sys;
    stepper::Trajectory traj;
};

struct fd_reference {
    exact::SeriesSolution series;
};

namespace {

thread_local std::string g_last_error;

fd_status fail(fd_status code, std::string msg) {
    g_last_error = std::move(msg);
    return code;
}

fd_status from_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return FD_ERR_INVALID_ARGUMENT;
        case ErrorCode::Domain: return FD_ERR_DOMAIN;
        case ErrorCode::Singular: return FD_ERR_SINGULAR;
        case ErrorCode::Accuracy: return FD_ERR_ACCURACY;
        case ErrorCode::Io: return FD_ERR_IO;
    }
    return FD_ERR_INTERNAL;
}

template <class F>
fd_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return FD_OK;
    } catch (const Error& e) {
        return fail(from_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(FD_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FD_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FD_ERR_INTERNAL, "unknown exception");
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw InvalidArgument(std::string(what) + " is null");
}

std::vector<double> with_boundary(const std::vector<double>& interior) {
    std::vector<double> out(interior.size() + 2, 0.0);
    std::copy(interior.begin(), interior.end(), out.begin() + 1);
    return out;
}

void copy_out(const std::vector<double>& v, double* dst, size_t len) {
    require(dst, "output buffer");
    if (len != v.size()) {
        throw InvalidArgument("output buffer holds " + std::to_string(len) + " values, need " +
                              std::to_string(v.size()));
    }
    std::copy(v.begin(), v.end(), dst);
}

study::StudyConfig to_config(const fd_study_config* c) {
    require(c, "config");
    study::StudyConfig cfg;
    cfg.example = c->example;
    cfg.alpha = c->alpha;
    if (c->gamma_count > 0) require(c->gammas, "config gammas");
    if (c->n_count > 0) require(c->ns, "config ns");
    cfg.gammas.assign(c->gammas, c->gammas + c->gamma_count);
    cfg.Ns.assign(c->ns, c->ns + c->n_count);
    cfg.M = c->m;
    cfg.terms = c->terms;
    cfg.output_dir = c->output_dir != nullptr ? c->output_dir : ".";
    cfg.threads = c->threads;
    return cfg;
}

const double kDefaultGammas[] = {1.0, 2.0, 3.0, 4.0};
const size_t kDefaultNs[] = {8, 16, 32, 64, 128};

}  // namespace

extern "C" {

const char* fd_version(void) { return "0.1.0"; }

const char* fd_last_error(void) { return g_last_error.c_str(); }

const char* fd_status_name(fd_status status) {
    switch (status) {
        case FD_OK: return "ok";
        case FD_ERR_INVALID_ARGUMENT: return "invalid argument";
        case FD_ERR_DOMAIN: return "domain error";
        case FD_ERR_SINGULAR: return "singular system";
        case FD_ERR_ACCURACY: return "accuracy failure";
        case FD_ERR_IO: return "i/o error";
        case FD_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

fd_status fd_problem_create_example(int example, double alpha, fd_problem** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        auto p = std::make_unique<fd_problem>();
        p->spec = study::example_problem(example, alpha);
        p->example = example;
        stepper::validate(p->spec);
        *out = p.release();
    });
}

fd_status fd_problem_create_custom(const fd_problem_desc* desc, fd_problem** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        require(desc, "problem description");
        if (desc->kappa == nullptr) throw InvalidArgument("kappa: callback is required");
        if (desc->u0 != nullptr && desc->u0_prime == nullptr) {
            throw InvalidArgument("u0_prime: required when u0 is given");
        }
        auto p = std::make_unique<fd_problem>();
        auto& s = p->spec;
        void* user = desc->user;
        s.alpha = desc->alpha;
        s.final_time = desc->final_time;
        s.kappa = [f = desc->kappa, user](double x) { return f(x, user); };
        if (desc->source != nullptr) {
            s.source = [f = desc->source, user](double x, double t) { return f(x, t, user); };
        }
        if (desc->u0 != nullptr) {
            s.u0 = [f = desc->u0, user](double x) { return f(x, user); };
            s.u0_prime = [f = desc->u0_prime, user](double x) { return f(x, user); };
        } else {
            s.u0 = [](double) { return 0.0; };
            s.u0_prime = [](double) { return 0.0; };
        }
        stepper::validate(s);
        *out = p.release();
    });
}

void fd_problem_destroy(fd_problem* problem) { delete problem; }

fd_status fd_solve(const fd_problem* problem, size_t N, double gamma, size_t M,
                   fd_solution** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        require(problem, "problem");
        if (problem->example == 2 && M % 2 != 0) {
            throw InvalidArgument("m: must be even for example 2");
        }
        const kernel::GradedMesh mesh(problem->spec.final_time, N, gamma);
        auto sys = fem::assemble(fem::SpatialGrid(M), problem->spec.kappa);
        auto traj = stepper::run(problem->spec, mesh, sys);
        *out = new fd_solution{problem->spec, std::move(sys), std::move(traj)};
    });
}

void fd_solution_destroy(fd_solution* solution) { delete solution; }

fd_status fd_solution_dims(const fd_solution* solution, size_t* N, size_t* M) {
    return guarded([&] {
        require(solution, "solution");
        if (N != nullptr) *N = solution->traj.mesh().steps();
        if (M != nullptr) *M = solution->traj.grid().intervals();
    });
}

fd_status fd_solution_time(const fd_solution* solution, size_t n, double* t) {
    return guarded([&] {
        require(solution, "solution");
        require(t, "t");
        if (n > solution->traj.mesh().steps()) throw InvalidArgument("n: beyond the last step");
        *t = solution->traj.mesh().time(n);
    });
}

fd_status fd_solution_level(const fd_solution* solution, size_t n, double* values, size_t len) {
    return guarded([&] {
        require(solution, "solution");
        if (n > solution->traj.mesh().steps()) throw InvalidArgument("n: beyond the last step");
        copy_out(with_boundary(solution->traj.level(n)), values, len);
    });
}

fd_status fd_solution_evaluate(const fd_solution* solution, double t, double* values,
                               size_t len) {
    return guarded([&] {
        require(solution, "solution");
        copy_out(with_boundary(solution->traj.evaluate(t)), values, len);
    });
}

fd_status fd_solution_max_residual(const fd_solution* solution, double* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "out");
        const auto r = stepper::slab_residuals(solution->traj, solution->spec, solution->sys);
        *out = r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
    });
}

fd_status fd_solution_write_csv(const fd_solution* solution, const char* path) {
    return guarded([&] {
        require(solution, "solution");
        require(path, "path");
        study::write_solution_csv(solution->traj, path);
    });
}

fd_status fd_reference_create_example(int example, double alpha, size_t terms,
                                      fd_reference** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        if (terms == 0) throw InvalidArgument("terms: must be >= 1");
        *out = new fd_reference{study::example_reference(example, alpha, terms)};
    });
}

void fd_reference_destroy(fd_reference* reference) { delete reference; }

fd_status fd_reference_eval(const fd_reference* reference, double x, double t, double* out) {
    return guarded([&] {
        require(reference, "reference");
        require(out, "out");
        *out = reference->series.eval(x, t);
    });
}

fd_status fd_error_norms(const fd_solution* solution, const fd_reference* reference,
                         double* e_tau, double* e_l2) {
    return guarded([&] {
        require(solution, "solution");
        require(reference, "reference");
        const auto sampler = metrics::make_sampler(solution->traj.grid(), reference->series);
        if (e_tau != nullptr) *e_tau = metrics::linf_l2_error(solution->traj, sampler);
        if (e_l2 != nullptr) *e_l2 = metrics::l2_l2_error(solution->traj, sampler);
    });
}

fd_status fd_nodal_errors(const fd_solution* solution, const fd_reference* reference,
                          double* out, size_t len) {
    return guarded([&] {
        require(solution, "solution");
        require(reference, "reference");
        copy_out(metrics::nodal_errors(solution->traj, reference->series), out, len);
    });
}

fd_status fd_convergence_rate(double coarse, double fine, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = metrics::convergence_rate(coarse, fine);
    });
}

fd_status fd_mlf_neg(double alpha, double x, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = mlf::mlf_neg(alpha, x);
    });
}

void fd_study_config_default(fd_study_config* cfg) {
    if (cfg == nullptr) return;
    const study::StudyConfig d;
    cfg->example = d.example;
    cfg->alpha = d.alpha;
    cfg->gammas = kDefaultGammas;
    cfg->gamma_count = std::size(kDefaultGammas);
    cfg->ns = kDefaultNs;
    cfg->n_count = std::size(kDefaultNs);
    cfg->m = d.M;
    cfg->terms = d.terms;
    cfg->output_dir = ".";
    cfg->threads = 0;
}

fd_status fd_study_validate(const fd_study_config* cfg) {
    return guarded([&] { study::validate(to_config(cfg)); });
}

fd_status fd_cmd_solve(const fd_study_config* cfg) {
    return guarded([&] { study::cmd_solve(to_config(cfg)); });
}

fd_status fd_cmd_convergence(const fd_study_config* cfg) {
    return guarded([&] { study::cmd_convergence(to_config(cfg)); });
}

fd_status fd_cmd_nodal_errors(const fd_study_config* cfg) {
    return guarded([&] { study::cmd_nodal_errors(to_config(cfg)); });
}

fd_status fd_selftest(uint64_t seed, fd_diagnostic* results, size_t capacity, size_t* count) {
    std::optional<bool> all;
    const fd_status st = guarded([&] {
        if (capacity > 0) require(results, "results");
        const auto diags = analysis::run_diagnostics(seed);
        if (count != nullptr) *count = diags.size();
        all = true;
        for (size_t i = 0; i < diags.size(); ++i) {
            const auto& d = diags[i];
            if (!d.passed) *all = false;
            if (i >= capacity) continue;
            fd_diagnostic& r = results[i];
            std::memset(r.name, 0, sizeof r.name);
            std::strncpy(r.name, d.name.c_str(), sizeof r.name - 1);
            r.worst = d.worst;
            r.tolerance = d.tolerance;
            r.cases = d.cases;
            r.passed = d.passed ? 1 : 0;
        }
    });
    if (st != FD_OK) return st;
    if (!*all) return fail(FD_ERR_ACCURACY, "selftest: at least one diagnostic failed");
    return FD_OK;
}

}  // extern "C"
