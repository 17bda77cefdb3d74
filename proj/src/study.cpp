#include "fracdiff/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <string>
#include <thread>

#include "fracdiff/error.hpp"

namespace fracdiff::study {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
}

struct RunResult {
    double e_tau = 0.0;
    double e_l2 = 0.0;
};

RunResult run_one(const StudyConfig& cfg, const fem::FemSystem& sys, double gamma, std::size_t N) {
    const auto spec = example_problem(cfg.example, cfg.alpha);
    const auto ref = example_reference(cfg.example, cfg.alpha, cfg.terms);
    const kernel::GradedMesh mesh(spec.final_time, N, gamma);
    const auto traj = stepper::run(spec, mesh, sys);
    const auto sampler = metrics::make_sampler(traj.grid(), ref);
    return {metrics::linf_l2_error(traj, sampler), metrics::l2_l2_error(traj, sampler)};
}

}  // namespace

void validate(const StudyConfig& cfg) {
    if (cfg.example != 1 && cfg.example != 2) {
        throw InvalidArgument("example: must be 1 or 2");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
        throw InvalidArgument("alpha: must lie in (0, 1]");
    }
    if (cfg.gammas.empty()) {
        throw InvalidArgument("gamma: at least one value is required");
    }
    for (double g : cfg.gammas) {
        if (!(g >= 1.0) || !std::isfinite(g)) {
            throw InvalidArgument("gamma: every value must be >= 1");
        }
    }
    if (cfg.Ns.empty()) {
        throw InvalidArgument("n: at least one value is required");
    }
    for (std::size_t i = 0; i < cfg.Ns.size(); ++i) {
        if (cfg.Ns[i] == 0) {
            throw InvalidArgument("n: every value must be >= 1");
        }
        if (i > 0 && cfg.Ns[i] != 2 * cfg.Ns[i - 1]) {
            throw InvalidArgument("n: values must form a doubling sequence");
        }
    }
    if (cfg.M < 2) {
        throw InvalidArgument("m: need at least 2 spatial subintervals");
    }
    if (cfg.example == 2 && cfg.M % 2 != 0) {
        throw InvalidArgument("m: must be even for example 2 so the kink at x = 1/2 is a node");
    }
    if (cfg.terms == 0) {
        throw InvalidArgument("terms: must be >= 1");
    }
}

stepper::ProblemSpec example_problem(int example, double alpha) {
    stepper::ProblemSpec spec;
    spec.alpha = alpha;
    spec.final_time = 1.0;
    spec.kappa = [](double) { return 1.0; };
    if (example == 1) {
        spec.u0 = [](double x) { return x * (1.0 - x); };
        spec.u0_prime = [](double x) { return 1.0 - 2.0 * x; };
    } else if (example == 2) {
        spec.u0 = [](double x) { return 1.0 - 2.0 * std::abs(x - 0.5); };
        spec.u0_prime = [](double x) { return x < 0.5 ? 2.0 : -2.0; };
    } else {
        throw InvalidArgument("example: must be 1 or 2");
    }
    return spec;
}

exact::SeriesSolution example_reference(int example, double alpha, std::size_t terms) {
    if (example == 1) return exact::example1(alpha, terms);
    if (example == 2) return exact::example2(alpha, terms);
    throw InvalidArgument("example: must be 1 or 2");
}

metrics::ConvergenceReport convergence(const StudyConfig& cfg) {
    validate(cfg);
    const auto spec = example_problem(cfg.example, cfg.alpha);
    const auto sys = fem::assemble(fem::SpatialGrid(cfg.M), spec.kappa);

    struct Job {
        double gamma;
        std::size_t N;
    };
    std::vector<Job> jobs;
    for (double g : cfg.gammas) {
        for (std::size_t N : cfg.Ns) jobs.push_back({g, N});
    }
    std::vector<RunResult> results(jobs.size());

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
    // Largest runs first for better balance; each slot is written by one task.
    std::vector<std::size_t> order(jobs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return jobs[a].N > jobs[b].N; });
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < order.size(); k = next++) {
            const auto& job = jobs[order[k]];
            results[order[k]] = run_one(cfg, sys, job.gamma, job.N);
        }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    metrics::ConvergenceReport report;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        report.add(jobs[i].N, jobs[i].gamma, results[i].e_tau, results[i].e_l2);
    }
    return report;
}

void write_solution_csv(const stepper::Trajectory& traj, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "t,x,value\n";
    const auto& mesh = traj.mesh();
    const auto nodes = traj.grid().nodes();
    const std::size_t M = traj.grid().intervals();
    for (std::size_t n = 0; n <= mesh.steps(); ++n) {
        const auto& u = traj.level(n);
        const std::string t = fmt("%.17g", mesh.time(n));
        for (std::size_t i = 0; i <= M; ++i) {
            const double v = (i == 0 || i == M) ? 0.0 : u[i - 1];
            out << t << ',' << fmt("%.17g", nodes[i]) << ',' << fmt("%.17g", v) << '\n';
        }
    }
    close_output(out, path);
}

void write_table_csv(const metrics::ConvergenceReport& report, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "N,gamma,E_tau,CR,E_L2,CR_L2\n";
    for (const auto& r : report.rows) {
        out << r.N << ',' << format_gamma(r.gamma) << ',' << fmt("%.3e", r.e_tau) << ','
            << (r.cr ? fmt("%.3f", *r.cr) : "") << ',' << fmt("%.3e", r.e_l2) << ','
            << (r.cr_l2 ? fmt("%.3f", *r.cr_l2) : "") << '\n';
    }
    close_output(out, path);
}

void write_nodal_errors_csv(const kernel::GradedMesh& mesh, const std::vector<double>& errors,
                            const std::filesystem::path& path) {
    if (errors.size() != mesh.steps()) {
        throw InvalidArgument("nodal errors: expected one value per step");
    }
    auto out = open_output(path);
    out << "t_n,error\n";
    for (std::size_t n = 1; n <= mesh.steps(); ++n) {
        out << fmt("%.17g", mesh.time(n)) << ',' << fmt("%.17g", errors[n - 1]) << '\n';
    }
    close_output(out, path);
}

std::string format_gamma(double gamma) {
    for (int digits = 1; digits <= 17; ++digits) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, gamma);
        if (std::strtod(buf, nullptr) == gamma) return buf;
    }
    return fmt("%.17g", gamma);
}

std::filesystem::path cmd_solve(const StudyConfig& cfg) {
    validate(cfg);
    prepare_dir(cfg.output_dir);
    const auto spec = example_problem(cfg.example, cfg.alpha);
    const kernel::GradedMesh mesh(spec.final_time, cfg.Ns.front(), cfg.gammas.front());
    const auto traj = stepper::run(spec, mesh, fem::SpatialGrid(cfg.M));
    const auto path = cfg.output_dir / "solution.csv";
    write_solution_csv(traj, path);
    return path;
}

std::filesystem::path cmd_convergence(const StudyConfig& cfg) {
    validate(cfg);
    prepare_dir(cfg.output_dir);
    const auto report = convergence(cfg);
    const auto path = cfg.output_dir / "table.csv";
    write_table_csv(report, path);
    return path;
}

std::vector<std::filesystem::path> cmd_nodal_errors(const StudyConfig& cfg) {
    validate(cfg);
    prepare_dir(cfg.output_dir);
    const auto spec = example_problem(cfg.example, cfg.alpha);
    const auto ref = example_reference(cfg.example, cfg.alpha, cfg.terms);
    const auto sys = fem::assemble(fem::SpatialGrid(cfg.M), spec.kappa);
    const std::size_t N = cfg.Ns.front();

    std::vector<std::vector<double>> errors(cfg.gammas.size());
    std::vector<std::future<void>> tasks;
    for (std::size_t g = 0; g < cfg.gammas.size(); ++g) {
        tasks.push_back(std::async(std::launch::async, [&, g]() {
            const kernel::GradedMesh mesh(spec.final_time, N, cfg.gammas[g]);
            errors[g] = metrics::nodal_errors(stepper::run(spec, mesh, sys), ref);
        }));
    }
    for (auto& t : tasks) t.get();

    std::vector<std::filesystem::path> paths;
    for (std::size_t g = 0; g < cfg.gammas.size(); ++g) {
        const kernel::GradedMesh mesh(spec.final_time, N, cfg.gammas[g]);
        auto path = cfg.output_dir / ("nodal_errors_" + format_gamma(cfg.gammas[g]) + ".csv");
        write_nodal_errors_csv(mesh, errors[g], path);
        paths.push_back(std::move(path));
    }
    return paths;
}

}  // namespace fracdiff::study
