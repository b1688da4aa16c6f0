// Command-line front end: single evaluations, reproduction studies, CSV/JSON
// emission. Exit codes: 0 success, 2 domain/validation, 3 iteration or
// tolerance budget exceeded.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glambert/glambert.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// log-distance cell: empty when the distance is zero at double precision
std::string log_cell(double d) {
    if (!(d > 0.0)) return "";
    return fmt17(std::log(d));
}

struct Output {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw std::domain_error("cannot open output file: " + path);
        f << text;
    }
};

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << csv_quote(header[i]);
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_quote(row[i]);
        os << "\n";
    }
    return os.str();
}

glambert::StartStrategy parse_start(const std::string& s) {
    using S = glambert::StartStrategy;
    if (s == "upper") return S::upper();
    if (s == "lower") return S::lower();
    if (s == "mid") return S::midpoint();
    if (s.rfind("const:", 0) == 0) return S::constant(std::stod(s.substr(6)));
    throw std::domain_error("unknown start strategy: " + s +
                            " (expected upper|lower|mid|const:<theta>)");
}

glambert::StopRule parse_stop(const std::string& s) {
    using R = glambert::StopRule;
    if (s == "diff") return R::successive_diff;
    if (s == "true") return R::true_error;
    if (s == "residual") return R::residual;
    throw std::domain_error("unknown stop rule: " + s + " (expected diff|true|residual)");
}

const char* stop_name(glambert::StopRule r) {
    switch (r) {
        case glambert::StopRule::successive_diff: return "diff";
        case glambert::StopRule::true_error: return "true";
        case glambert::StopRule::residual: return "residual";
    }
    return "?";
}

// Flat key=value defaults: each key missing from the command line is
// appended as --key value, so explicit flags always win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream f(path);
    if (!f) throw std::domain_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) { present = true; break; }
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        return 0;
    } catch (const glambert::MaxIterError& e) {
        std::cerr << "error: " << e.what() << "\nlast=" << fmt17(e.last_value)
                  << " iterations=" << e.iterations
                  << " residual=" << fmt17(e.residual) << "\n";
        return 3;
    } catch (const glambert::ToleranceError& e) {
        std::cerr << "error: " << e.what() << "\nbest=" << fmt17(e.best)
                  << " error_estimate=" << fmt17(e.error_estimate) << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    // "start:step:max" arithmetic or "log:lo:hi:count"
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (!parts.empty() && parts[0] == "log") {
        if (parts.size() != 4) throw std::domain_error("grid: expected log:lo:hi:count");
        return glambert::geometric_grid(std::stod(parts[1]), std::stod(parts[2]),
                                        std::stoi(parts[3]));
    }
    if (parts.size() != 3) throw std::domain_error("grid: expected start:step:max or log:lo:hi:count");
    return glambert::arithmetic_grid(std::stod(parts[0]), std::stod(parts[1]),
                                     std::stod(parts[2]));
}

}  // namespace

int main(int argc, char** argv) {
    using namespace glambert;

    CLI::App app{"generalized Lambert function y_beta(x): evaluation, distribution, studies"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value file with flag defaults");

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "solve y^beta = 1 - exp(-x y) by fixed-point iteration");
    struct {
        double x = 0, beta = 0, eps = 1e-12;
        long max_iter = 10'000;
        std::string stop = "residual", start = "const:1", format = "text";
        std::optional<double> ref;
        Output out;
    } ev;
    eval_cmd->add_option("--x", ev.x, "argument x > 0")->required();
    eval_cmd->add_option("--beta", ev.beta, "shape beta > 1")->required();
    eval_cmd->add_option("--eps", ev.eps, "stop tolerance");
    eval_cmd->add_option("--stop", ev.stop, "diff|true|residual");
    eval_cmd->add_option("--start", ev.start, "upper|lower|mid|const:<theta>");
    eval_cmd->add_option("--max-iter", ev.max_iter, "iteration budget");
    eval_cmd->add_option("--ref", ev.ref, "reference value for --stop true");
    eval_cmd->add_option("--format", ev.format, "text|csv|json");
    eval_cmd->add_option("--out", ev.out.path, "output path (default stdout)");

    // ---- invert ----
    auto* inv_cmd = app.add_subcommand("invert", "x_beta(y) = -log(1-y^beta)/y");
    struct { double y = 0, beta = 0; std::string format = "text"; Output out; } iv;
    inv_cmd->add_option("--y", iv.y, "value in [0,1)")->required();
    inv_cmd->add_option("--beta", iv.beta, "shape beta > 1")->required();
    inv_cmd->add_option("--format", iv.format, "text|csv|json");
    inv_cmd->add_option("--out", iv.out.path, "output path");

    // ---- extinction ----
    auto* ext_cmd = app.add_subcommand("extinction", "Galton-Watson extinction probability");
    struct {
        double lambda = 0;
        std::optional<double> alpha, beta;
        double eps = 1e-12;
        std::string method = "lambert", format = "text";
        Output out;
    } ex;
    ext_cmd->add_option("--lambda", ex.lambda, "offspring scale > 0")->required();
    ext_cmd->add_option("--alpha", ex.alpha, "stability index in (0,1)");
    ext_cmd->add_option("--beta", ex.beta, "alternative to --alpha (alpha = 1/beta)");
    ext_cmd->add_option("--eps", ex.eps, "tolerance");
    ext_cmd->add_option("--method", ex.method, "lambert|pgf");
    ext_cmd->add_option("--format", ex.format, "text|csv|json");
    ext_cmd->add_option("--out", ex.out.path, "output path");

    // ---- bounds ----
    auto* bnd_cmd = app.add_subcommand("bounds", "two-sided bounds and their ratio");
    struct { double x = 0, beta = 0; std::string format = "text"; Output out; } bd;
    bnd_cmd->add_option("--x", bd.x, "argument x > 0")->required();
    bnd_cmd->add_option("--beta", bd.beta, "shape beta > 1")->required();
    bnd_cmd->add_option("--format", bd.format, "text|csv|json");
    bnd_cmd->add_option("--out", bd.out.path, "output path");

    // ---- moments ----
    auto* mom_cmd = app.add_subcommand("moments", "moments E[xi^n], n = 1..n_max");
    struct {
        double beta = 0, tol = 1e-10;
        int n = 6;
        long long samples = 1'000'000;
        std::uint64_t seed = 42;
        std::string method = "quad", format = "csv";
        Output out;
    } mo;
    mom_cmd->add_option("--beta", mo.beta, "shape beta > 1")->required();
    mom_cmd->add_option("--n", mo.n, "highest moment order");
    mom_cmd->add_option("--method", mo.method, "quad|closed|mc");
    mom_cmd->add_option("--tol", mo.tol, "relative quadrature tolerance");
    mom_cmd->add_option("--samples", mo.samples, "Monte Carlo sample count");
    mom_cmd->add_option("--seed", mo.seed, "Monte Carlo seed");
    mom_cmd->add_option("--format", mo.format, "csv|json");
    mom_cmd->add_option("--out", mo.out.path, "output path");

    // ---- sample ----
    auto* smp_cmd = app.add_subcommand("sample", "seeded draws from xi_beta");
    struct {
        double beta = 0;
        long long n = 1;
        std::uint64_t seed = 42;
        std::string format = "text";
        Output out;
    } sm;
    smp_cmd->add_option("--beta", sm.beta, "shape beta > 1")->required();
    smp_cmd->add_option("--n", sm.n, "number of draws");
    smp_cmd->add_option("--seed", sm.seed, "generator seed");
    smp_cmd->add_option("--format", sm.format, "text|csv|json");
    smp_cmd->add_option("--out", sm.out.path, "output path");

    // ---- study-approx ----
    auto* sa_cmd = app.add_subcommand("study-approx",
                                      "distances of the small-x approximations to the exact values");
    struct {
        std::vector<double> betas{1.25};
        std::string grid = "0.0001:0.0001:0.15", format = "csv";
        Output out;
    } sa;
    sa_cmd->add_option("--beta", sa.betas, "shape values (repeatable)");
    sa_cmd->add_option("--grid", sa.grid, "y grid, start:step:max or log:lo:hi:count");
    sa_cmd->add_option("--format", sa.format, "csv|json");
    sa_cmd->add_option("--out", sa.out.path, "output path");

    // ---- study-iter ----
    auto* si_cmd = app.add_subcommand("study-iter",
                                      "iterations to reach eps per start strategy");
    struct {
        double beta = 1.25, eps = 1e-5;
        int m = 10'000;
        std::string grid = "log:0.0001:0.999:200", format = "csv";
        Output out;
    } si;
    si_cmd->add_option("--beta", si.beta, "shape beta > 1");
    si_cmd->add_option("--eps", si.eps, "target accuracy");
    si_cmd->add_option("--m", si.m, "benchmark grid resolution");
    si_cmd->add_option("--grid", si.grid, "target y grid, start:step:max or log:lo:hi:count");
    si_cmd->add_option("--format", si.format, "csv|json");
    si_cmd->add_option("--out", si.out.path, "output path");

    // ---- study-moments ----
    auto* sM_cmd = app.add_subcommand("study-moments", "log-moments, quadrature vs Monte Carlo");
    struct {
        double beta = 1.2, tol = 1e-9;
        int n = 6;
        long long samples = 1'000'000;
        std::uint64_t seed = 42;
        std::string format = "csv";
        Output out;
    } sM;
    sM_cmd->add_option("--beta", sM.beta, "shape beta > 1");
    sM_cmd->add_option("--n", sM.n, "highest moment order");
    sM_cmd->add_option("--samples", sM.samples, "Monte Carlo sample count");
    sM_cmd->add_option("--seed", sM.seed, "Monte Carlo seed");
    sM_cmd->add_option("--tol", sM.tol, "relative quadrature tolerance");
    sM_cmd->add_option("--format", sM.format, "csv|json");
    sM_cmd->add_option("--out", sM.out.path, "output path");

    // --config is valid after any subcommand; the file itself is handled by
    // the preprocessor below, the options only keep the parser happy
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->add_option("--config", config_path, "flat key=value file with flag defaults");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*eval_cmd) return guarded([&] {
        Params p(ev.beta);
        EvalOptions opt;
        opt.start = parse_start(ev.start);
        opt.epsilon = ev.eps;
        opt.stop = parse_stop(ev.stop);
        opt.max_iter = ev.max_iter;
        opt.reference = ev.ref;
        const EvalResult r = eval_y(ev.x, p, opt);
        if (ev.format == "json") {
            json j{{"value", r.value},       {"complement", r.complement},
                   {"iterations", r.iterations}, {"residual", r.residual},
                   {"stop", stop_name(r.stop_rule)}};
            ev.out.write(j.dump() + "\n");
        } else if (ev.format == "csv") {
            ev.out.write(to_csv({"value", "complement", "iterations", "residual", "stop"},
                                {{fmt17(r.value), fmt17(r.complement),
                                  std::to_string(r.iterations), fmt17(r.residual),
                                  stop_name(r.stop_rule)}}));
        } else {
            ev.out.write("value=" + fmt17(r.value) + " iterations=" +
                         std::to_string(r.iterations) + " residual=" + fmt17(r.residual) +
                         " stop=" + stop_name(r.stop_rule) + "\n");
        }
    });

    if (*inv_cmd) return guarded([&] {
        Params p(iv.beta);
        const double x = inverse_x(iv.y, p);
        if (iv.format == "json") iv.out.write(json{{"x", x}}.dump() + "\n");
        else if (iv.format == "csv") iv.out.write(to_csv({"x"}, {{fmt17(x)}}));
        else iv.out.write("x=" + fmt17(x) + "\n");
    });

    if (*ext_cmd) return guarded([&] {
        if (ex.alpha.has_value() == ex.beta.has_value())
            throw std::domain_error("extinction: give exactly one of --alpha, --beta");
        const double alpha = ex.alpha ? *ex.alpha : 1.0 / *ex.beta;
        BranchingParams bp(ex.lambda, alpha);
        double q;
        if (ex.method == "lambert") q = extinction_via_lambert(bp, ex.eps);
        else if (ex.method == "pgf") q = extinction_pgf_iteration(bp, ex.eps);
        else throw std::domain_error("extinction: unknown method " + ex.method);
        if (ex.format == "json")
            ex.out.write(json{{"extinction", q}, {"method", ex.method}}.dump() + "\n");
        else if (ex.format == "csv")
            ex.out.write(to_csv({"extinction", "method"}, {{fmt17(q), ex.method}}));
        else ex.out.write("extinction=" + fmt17(q) + "\n");
    });

    if (*bnd_cmd) return guarded([&] {
        Params p(bd.beta);
        const double lo = lower_bound(bd.x, p), hi = upper_bound(bd.x, p);
        const double ratio = bound_ratio(bd.x, p);
        if (bd.format == "json")
            bd.out.write(json{{"lower", lo}, {"upper", hi}, {"ratio", ratio}}.dump() + "\n");
        else if (bd.format == "csv")
            bd.out.write(to_csv({"lower", "upper", "ratio"},
                                {{fmt17(lo), fmt17(hi), fmt17(ratio)}}));
        else
            bd.out.write("lower=" + fmt17(lo) + " upper=" + fmt17(hi) +
                         " ratio=" + fmt17(ratio) + "\n");
    });

    if (*mom_cmd) return guarded([&] {
        Params p(mo.beta);
        if (mo.n < 1) throw std::domain_error("moments: --n must be >= 1");
        std::vector<std::vector<std::string>> rows;
        json jrows = json::array();
        for (int n = 1; n <= mo.n; ++n) {
            double value;
            double std_error = 0.0;
            if (mo.method == "quad") {
                value = moment_quadrature(n, p, mo.tol).value;
            } else if (mo.method == "closed") {
                if (n == 1) value = mean_exact(p);
                else if (n == 2) value = second_moment(p, mo.tol);
                else throw std::domain_error("moments: closed forms exist for n <= 2 only");
            } else if (mo.method == "mc") {
                const McEstimate e = mc_moments(n, p, mo.samples, mo.seed);
                value = e.estimate;
                std_error = e.std_error;
            } else {
                throw std::domain_error("moments: unknown method " + mo.method);
            }
            rows.push_back({std::to_string(n), fmt17(value), fmt17(std_error)});
            jrows.push_back({{"n", n}, {"value", value}, {"std_error", std_error}});
        }
        if (mo.format == "json") mo.out.write(jrows.dump() + "\n");
        else mo.out.write(to_csv({"n", "value", "std_error"}, rows));
    });

    if (*smp_cmd) return guarded([&] {
        Params p(sm.beta);
        const auto xs = sample_batch(sm.n, p, sm.seed);
        if (sm.format == "json") {
            json j = json::array();
            for (double v : xs) j.push_back(v);
            sm.out.write(j.dump() + "\n");
        } else if (sm.format == "csv") {
            std::vector<std::vector<std::string>> rows;
            for (double v : xs) rows.push_back({fmt17(v)});
            sm.out.write(to_csv({"sample"}, rows));
        } else {
            std::string text;
            for (double v : xs) text += fmt17(v) + "\n";
            sm.out.write(text);
        }
    });

    if (*sa_cmd) return guarded([&] {
        const auto grid = parse_grid_spec(sa.grid);
        if (grid.empty()) throw std::domain_error("study-approx: empty grid");
        std::vector<std::vector<std::string>> rows;
        json jrows = json::array();
        for (double beta : sa.betas) {
            Params p(beta);
            for (const auto& r : approx_distances(p, grid)) {
                rows.push_back({fmt17(beta), fmt17(r.y), fmt17(r.x), fmt17(r.d1),
                                fmt17(r.d2), fmt17(r.d_lower), log_cell(r.d1),
                                log_cell(r.d2), log_cell(r.d_lower)});
                jrows.push_back({{"beta", beta},
                                 {"y", r.y},
                                 {"x", r.x},
                                 {"d1", r.d1},
                                 {"d2", r.d2},
                                 {"d_lower", r.d_lower}});
            }
        }
        if (sa.format == "json") sa.out.write(jrows.dump() + "\n");
        else
            sa.out.write(to_csv({"beta", "y", "x", "d1", "d2", "d_lower", "log_d1",
                                 "log_d2", "log_d_lower"},
                                rows));
    });

    if (*si_cmd) return guarded([&] {
        Params p(si.beta);
        const auto grid = parse_grid_spec(si.grid);
        if (grid.empty()) throw std::domain_error("study-iter: empty grid");
        const BenchmarkGrid bench = build_benchmark_grid(p, si.m);
        std::vector<std::vector<std::string>> rows;
        json jrows = json::array();
        for (const auto& r : iteration_study(p, si.eps, grid, bench)) {
            rows.push_back({fmt17(r.y_target), fmt17(r.x), std::to_string(r.n_upper),
                            std::to_string(r.n_lower), std::to_string(r.n_midpoint)});
            jrows.push_back({{"y", r.y_target},
                             {"x", r.x},
                             {"n_upper", r.n_upper},
                             {"n_lower", r.n_lower},
                             {"n_midpoint", r.n_midpoint}});
        }
        if (si.format == "json") si.out.write(jrows.dump() + "\n");
        else
            si.out.write(to_csv({"y", "x", "n_upper", "n_lower", "n_midpoint"}, rows));
    });

    if (*sM_cmd) return guarded([&] {
        Params p(sM.beta);
        std::vector<std::vector<std::string>> rows;
        json jrows = json::array();
        for (const auto& r : moments_study(p, sM.n, sM.samples, sM.seed, sM.tol)) {
            rows.push_back({std::to_string(r.n), fmt17(r.quadrature), fmt17(r.mc_estimate),
                            fmt17(r.mc_std_error), log_cell(r.quadrature),
                            log_cell(r.mc_estimate)});
            jrows.push_back({{"n", r.n},
                             {"quadrature", r.quadrature},
                             {"mc_estimate", r.mc_estimate},
                             {"mc_std_error", r.mc_std_error}});
        }
        if (sM.format == "json") sM.out.write(jrows.dump() + "\n");
        else
            sM.out.write(to_csv({"n", "quadrature", "mc_estimate", "mc_std_error",
                                 "log_quadrature", "log_mc"},
                                rows));
    });

    return 0;
}
