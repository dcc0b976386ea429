#include "incbessel/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "incbessel/bench.hpp"
#include "incbessel/engine.hpp"
#include "incbessel/legacy.hpp"
#include "incbessel/quadrature.hpp"
#include "incbessel/selftest.hpp"
#include "incbessel/sweep.hpp"

namespace incbessel::cli {
namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalOptions {
    double x = 0, y = 0, nu = 0;
    std::string method = "recursive";
    std::string precision = "double";
    double tol = 0;  // 0: default
    int max_order = 0;  // 0: default
};

struct SweepOptions {
    double x = 0, nu = 0;
    std::vector<double> ys;
    int n_max = 0;
    std::string output = "-";
};

struct BenchOptions {
    double x = 4, y = 2, nu = 3;
    std::vector<int> orders{250, 500, 1000, 2000};
    std::vector<int> legacy_orders{4, 8, 16};
    double batch_seconds = 0.01;
};

// Legacy default: each order is rebuilt from scratch and the sums overflow
// well before the recursive default.
constexpr int kLegacyDefaultMaxOrder = 32;

// Default stopping tolerance in extended precision.
constexpr double kExtendedTolerance = 1e-18;

double default_tolerance(bool extended) {
    double tol = extended ? kExtendedTolerance : EngineConfig{}.rel_tolerance;
    if (const char* env = std::getenv(kTolEnv); env && *env) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (*end != '\0' || !(v > 0)) throw UsageError(std::string(kTolEnv) + " must be a positive number");
        tol = v;
    }
    return tol;
}

template <class Real>
std::string fmt(Real v) {
    char buf[48];
    if constexpr (sizeof(Real) > sizeof(double))
        std::snprintf(buf, sizeof buf, "%.20Le", static_cast<long double>(v));
    else
        std::snprintf(buf, sizeof buf, "%.16e", static_cast<double>(v));
    return buf;
}

void print_line(std::ostream& out, const char* key, const std::string& value) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%-12s", key);
    out << buf << value << '\n';
}

template <class Real>
int report(std::ostream& out, const EvalOptions& o, const BasicEvaluationResult<Real>& r, double ms) {
    print_line(out, "method", o.method);
    print_line(out, "precision", o.precision);
    print_line(out, "value", fmt(r.value));
    print_line(out, "scaled", fmt(r.scaled_value));
    print_line(out, "order", std::to_string(r.order));
    print_line(out, "est_error", fmt(static_cast<double>(r.est_rel_error)));
    print_line(out, "status", to_string(r.status));
    print_line(out, "time_ms", fmt(ms));
    return r.status == Status::Converged ? kOk : kNotConverged;
}

template <class Real>
int eval_quadrature(std::ostream& out, const EvalOptions& o) {
    QuadratureConfig qc;
    if (o.tol > 0) qc.rel_target = o.tol;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = tail_integral(BasicParameters<Real>{Real(o.x), Real(o.y), Real(o.nu)}, qc);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    print_line(out, "method", o.method);
    print_line(out, "precision", o.precision);
    print_line(out, "value", fmt(r.value));
    print_line(out, "scaled", fmt(r.scaled_value));
    print_line(out, "evaluations", std::to_string(r.evaluations));
    print_line(out, "est_error", fmt(static_cast<double>(r.rel_error)));
    print_line(out, "status", r.converged ? "Converged" : "NotConverged");
    print_line(out, "time_ms", fmt(ms));
    return r.converged ? kOk : kNotConverged;
}

template <class Real>
int eval_recursive(std::ostream& out, const EvalOptions& o, const EngineConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = evaluate(BasicParameters<Real>{Real(o.x), Real(o.y), Real(o.nu)}, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report(out, o, r, ms);
}

int cmd_eval(std::ostream& out, EvalOptions o) {
    validate(Parameters{o.x, o.y, o.nu});
    const bool extended = o.precision == "extended";
#ifndef INCBESSEL_HAVE_EXTENDED
    if (extended) throw UsageError("extended precision is not available in this build");
#endif
    if (o.method == "quadrature") {
#ifdef INCBESSEL_HAVE_EXTENDED
        if (extended) return eval_quadrature<long double>(out, o);
#endif
        return eval_quadrature<double>(out, o);
    }

    EngineConfig cfg;
    cfg.rel_tolerance = o.tol > 0 ? o.tol : default_tolerance(extended);
    if (o.max_order > 0) cfg.max_order = o.max_order;

    if (o.method == "legacy") {
        if (extended) throw UsageError("the legacy method runs in double precision only");
        if (o.max_order == 0) cfg.max_order = kLegacyDefaultMaxOrder;
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = legacy::legacy_evaluate(Parameters{o.x, o.y, o.nu}, cfg);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return report(out, o, r, ms);
    }
#ifdef INCBESSEL_HAVE_EXTENDED
    if (extended) return eval_recursive<long double>(out, o, cfg);
#endif
    return eval_recursive<double>(out, o, cfg);
}

int cmd_sweep(std::ostream& out, const SweepOptions& o) {
    if (o.n_max < 1) throw UsageError("--n-max must be at least 1");
    for (double y : o.ys) validate(Parameters{o.x, y, o.nu});

    std::ofstream file;
    if (o.output != "-") {
        file.open(o.output, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open " + o.output + " for writing");
    }
    const auto rows = compute_sweep(o.x, o.nu, o.ys, o.n_max);
    std::ostream& dst = o.output == "-" ? out : file;
    write_sweep_csv(dst, rows);
    dst.flush();
    if (!dst) throw IoError("write to " + o.output + " failed");
    return kOk;
}

int cmd_bench(std::ostream& out, const BenchOptions& o) {
    bench::TimingConfig tc;
    tc.batch_seconds = o.batch_seconds;
    const auto r = bench::run_bench(Parameters{o.x, o.y, o.nu}, o.orders, o.legacy_orders, tc);
    bench::print_report(out, r);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Incomplete Bessel function K_nu(x, y) = int_1^inf exp(-x t - y/t) t^(-nu-1) dt"};
    app.name("incbessel");
    app.require_subcommand(1);

    EvalOptions eo;
    auto* eval = app.add_subcommand("eval", "Evaluate K_nu(x, y) at one point");
    eval->add_option("--x", eo.x, "x > 0")->required();
    eval->add_option("--y", eo.y, "y >= 0")->required();
    eval->add_option("--nu", eo.nu, "order nu")->required();
    eval->add_option("--method", eo.method, "recursive, legacy or quadrature")
        ->check(CLI::IsMember({"recursive", "legacy", "quadrature"}))
        ->capture_default_str();
    eval->add_option("--tol", eo.tol, std::string("relative tolerance (default from ") + kTolEnv + ", else 1e-14, 1e-18 extended)")
        ->check(CLI::PositiveNumber);
    eval->add_option("--max-order", eo.max_order, "order cap (default 200, legacy 32)")->check(CLI::PositiveNumber);
    eval->add_option("--precision", eo.precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}))
        ->capture_default_str();

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "Relative error against quadrature for orders 0..n-max, as CSV");
    sweep->add_option("--x", so.x, "x > 0")->required();
    sweep->add_option("--nu", so.nu, "order nu")->required();
    sweep->add_option("--y", so.ys, "comma-separated y values")->required()->delimiter(',');
    sweep->add_option("--n-max", so.n_max, "highest order, >= 1")->required();
    sweep->add_option("-o,--output", so.output, "output file, - for stdout")->capture_default_str();

    BenchOptions bo;
    auto* bench = app.add_subcommand("bench", "Wall time of recursive and legacy trajectories");
    bench->add_option("--x", bo.x)->capture_default_str();
    bench->add_option("--y", bo.y)->capture_default_str();
    bench->add_option("--nu", bo.nu)->capture_default_str();
    bench->add_option("--orders", bo.orders, "recursive orders")->delimiter(',')->capture_default_str();
    bench->add_option("--legacy-orders", bo.legacy_orders, "legacy orders, at most 32")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--batch-seconds", bo.batch_seconds, "minimum duration of a timing batch")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* selftest = app.add_subcommand("self-test", "Run the built-in consistency suites");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(out, eo);
        if (sweep->parsed()) return cmd_sweep(out, so);
        if (bench->parsed()) return cmd_bench(out, bo);
        if (selftest->parsed()) return print_selftest(out, run_selftest()) ? kOk : kNotConverged;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace incbessel::cli
