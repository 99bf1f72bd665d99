#include "dcurve/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcurve/acceptance.hpp"
#include "dcurve/converse.hpp"
#include "dcurve/curve.hpp"
#include "dcurve/divergence.hpp"
#include "dcurve/math.hpp"
#include "dcurve/mc.hpp"
#include "dcurve/quadrature.hpp"

namespace dcurve {

namespace {

NoiseModel parse_noise(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("noise spec must be family:param or gridded:file.json");
    }
    const std::string family = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (family == "gridded") {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("cannot open noise file: " + arg);
        nlohmann::json j;
        in >> j;
        return NoiseModel::from_json(j);
    }
    const double v = std::stod(arg);
    if (family == "gaussian") return NoiseModel::gaussian(v);
    if (family == "laplace") return NoiseModel::laplace(v);
    if (family == "uniform") return NoiseModel::uniform(v);
    if (family == "exponential" || family == "exp") return NoiseModel::exponential(v);
    throw std::invalid_argument("unknown noise family: " + family);
}

CostFunction parse_cost(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("cost spec must be family:param");
    }
    const std::string family = spec.substr(0, colon);
    const double v = std::stod(spec.substr(colon + 1));
    if (family == "power") return CostFunction::power(v);
    if (family == "subexp") return CostFunction::sub_exp(v);
    if (family == "subgauss") return CostFunction::sub_gauss(v);
    throw std::invalid_argument("unknown cost family: " + family);
}

/// Grid spec start:stop:count (inclusive, linear) or start:stop:countL
/// (log-spaced).
std::vector<double> parse_grid(const std::string& spec) {
    std::string s = spec;
    bool log_spaced = false;
    if (!s.empty() && (s.back() == 'L' || s.back() == 'l')) {
        log_spaced = true;
        s.pop_back();
    }
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("grid spec must be start:stop:count[L]");
    }
    const double lo = std::stod(s.substr(0, c1));
    const double hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const auto count = static_cast<std::size_t>(std::stoull(s.substr(c2 + 1)));
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    if (count == 1) return {lo};
    return log_spaced ? logspace(lo, hi, count) : linspace(lo, hi, count);
}

/// Rows plus header, emitted as CSV (17 significant digits, C locale) or as
/// a JSON array of objects.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string render(const std::string& format) const {
        std::ostringstream out;
        if (format == "csv") {
            for (std::size_t i = 0; i < header.size(); ++i) {
                out << (i ? "," : "") << header[i];
            }
            out << "\n";
            char buf[64];
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
                    out << (i ? "," : "") << buf;
                }
                out << "\n";
            }
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& row : rows) {
                nlohmann::json obj;
                for (std::size_t i = 0; i < row.size(); ++i) obj[header[i]] = row[i];
                arr.push_back(obj);
            }
            out << arr.dump(2) << "\n";
        }
        return out.str();
    }
};

std::string resolve_out_path(const std::string& out) {
    if (out.empty() || out.front() == '/') return out;
    const char* dir = std::getenv("DCURVE_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return out;
    std::string base(dir);
    if (base.back() != '/') base += '/';
    return base + out;
}

/// Emits payload to stdout or --out; alongside a file output, records the
/// run manifest (subcommand + full parameter set) so the run can be
/// reproduced byte-for-byte.
void emit(const std::string& payload, const std::string& out_path,
          const nlohmann::json& manifest) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    const std::string path = resolve_out_path(out_path);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << payload;
    std::ofstream m(path + ".manifest.json", std::ios::binary);
    m << manifest.dump(2) << "\n";
}

struct CommonOpts {
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "write output to this file (plus <out>.manifest.json)");
    cmd->add_option("--format", opts.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

nlohmann::json base_manifest(const std::string& subcommand, const CommonOpts& opts) {
    return {{"subcommand", subcommand}, {"out", opts.out}, {"format", opts.format}};
}

int run_app(int argc, const char* const* argv) {
    CLI::App app{"Dobrushin curves, f-divergence contraction bounds and "
                 "information-decay rates for additive-noise channels"};
    app.require_subcommand(1);

    // ---- theta ----
    auto* theta_cmd = app.add_subcommand("theta", "two-point TV profile of a noise law");
    std::string theta_noise = "gaussian:1";
    std::string theta_grid = "0:10:101";
    CommonOpts theta_opts;
    theta_cmd->add_option("--noise", theta_noise, "noise spec family:param");
    theta_cmd->add_option("--x", theta_grid, "shift grid start:stop:count[L]");
    add_common(theta_cmd, theta_opts);

    // ---- curve ----
    auto* curve_cmd = app.add_subcommand("curve", "Dobrushin curve bounds (t, lower, upper)");
    std::string curve_noise = "gaussian:1";
    std::string curve_cost = "power:2";
    double curve_budget = 1.0;
    std::size_t curve_points = 100;
    CommonOpts curve_opts;
    curve_cmd->add_option("--noise", curve_noise, "noise spec");
    curve_cmd->add_option("--cost", curve_cost, "cost spec family:param");
    curve_cmd->add_option("--budget", curve_budget, "average cost budget a");
    curve_cmd->add_option("--grid", curve_points, "number of t points (t = k/grid)");
    add_common(curve_cmd, curve_opts);

    // ---- divergence ----
    auto* div_cmd = app.add_subcommand("divergence", "divergence between two distribution files");
    std::string div_p, div_q, div_name = "tv";
    CommonOpts div_opts;
    div_cmd->add_option("--p", div_p, "JSON file with distribution P")->required();
    div_cmd->add_option("--q", div_q, "JSON file with distribution Q")->required();
    div_cmd->add_option("--div", div_name,
                        "tv, kl, chi2, hellinger2, renyi:alpha, egamma:gamma, or w1");
    add_common(div_cmd, div_opts);

    // ---- decay ----
    auto* decay_cmd = app.add_subcommand("decay", "T-information decay along a relay chain");
    std::string decay_noise = "gaussian:1";
    std::string decay_cost = "power:2";
    double decay_budget = 1.0;
    std::size_t decay_nmax = 100000;
    bool decay_all = false;
    CommonOpts decay_opts;
    decay_cmd->add_option("--noise", decay_noise, "noise spec");
    decay_cmd->add_option("--cost", decay_cost, "cost spec");
    decay_cmd->add_option("--budget", decay_budget, "budget a");
    decay_cmd->add_option("--nmax", decay_nmax, "iterate to this chain length");
    decay_cmd->add_flag("--all", decay_all, "emit every n instead of checkpoints");
    add_common(decay_cmd, decay_opts);

    // ---- mi ----
    auto* mi_cmd = app.add_subcommand("mi", "mutual-information bounds from T-information");
    double mi_T = 0.1;
    std::size_t mi_m = 2;
    bool mi_chain = false;
    std::size_t mi_d = 1;
    double mi_E = 1.0;
    double mi_n = 1e6;
    double mi_Tbound = -1.0;
    CommonOpts mi_opts;
    mi_cmd->add_option("--T", mi_T, "T-information value in [0,1]");
    mi_cmd->add_option("--m", mi_m, "alphabet size (finite-alphabet bound)");
    mi_cmd->add_flag("--chain", mi_chain, "evaluate the d-dimensional chain bound instead");
    mi_cmd->add_option("--d", mi_d, "dimension (chain bound)");
    mi_cmd->add_option("--E", mi_E, "per-coordinate power (chain bound)");
    mi_cmd->add_option("--n", mi_n, "chain length (chain bound)");
    mi_cmd->add_option("--Tbound", mi_Tbound,
                       "T term for the chain bound; computed from the decay rate if omitted");
    add_common(mi_cmd, mi_opts);

    // ---- circuit ----
    auto* circ_cmd = app.add_subcommand("circuit", "noisy-circuit error lower bound vs SNR");
    std::size_t circ_k = 3;
    std::string circ_grid = "0.1:10:50";
    CommonOpts circ_opts;
    circ_cmd->add_option("--k", circ_k, "gate fan-in");
    circ_cmd->add_option("--snr-grid", circ_grid, "SNR grid start:stop:count[L]");
    add_common(circ_cmd, circ_opts);

    // ---- tree ----
    auto* tree_cmd = app.add_subcommand("tree", "broadcasting design on the binary tree");
    double tree_mu = 10.0;
    double tree_t = 0.6;
    std::size_t tree_depth = 12;
    bool tree_sim = false;
    std::size_t tree_trials = 10000;
    std::uint64_t tree_seed = 1;
    unsigned tree_threads = 0;
    CommonOpts tree_opts;
    tree_cmd->add_option("--mu", tree_mu, "signal level");
    tree_cmd->add_option("--t", tree_t, "threshold fraction in (1/2, 1)");
    tree_cmd->add_option("--depth", tree_depth, "tree depth");
    tree_cmd->add_flag("--simulate", tree_sim, "run the seeded simulator");
    tree_cmd->add_option("--trials", tree_trials, "Monte Carlo trials");
    tree_cmd->add_option("--seed", tree_seed, "RNG seed");
    tree_cmd->add_option("--threads", tree_threads, "worker threads (0 = auto)");
    add_common(tree_cmd, tree_opts);

    // ---- control ----
    auto* ctl_cmd = app.add_subcommand("control", "best linear-control squared correlation");
    double ctl_s0 = 1.0;
    double ctl_E = 1.0;
    std::size_t ctl_n = 1;
    CommonOpts ctl_opts;
    ctl_cmd->add_option("--sigma0sq", ctl_s0, "variance of the controlled state");
    ctl_cmd->add_option("--E", ctl_E, "per-stage power");
    ctl_cmd->add_option("--n", ctl_n, "number of stages");
    add_common(ctl_cmd, ctl_opts);

    // ---- relay ----
    auto* relay_cmd = app.add_subcommand("relay", "seeded relay-cascade simulators");
    std::string relay_scheme = "binary";
    std::size_t relay_n = 100;
    double relay_p = 2.0;
    double relay_s0 = 1.0;
    double relay_E = 1.0;
    std::size_t relay_trials = 100000;
    std::uint64_t relay_seed = 1;
    unsigned relay_threads = 0;
    CommonOpts relay_opts;
    relay_opts.format = "json";
    relay_cmd->add_option("--scheme", relay_scheme, "binary or linear")
        ->check(CLI::IsMember({"binary", "linear"}));
    relay_cmd->add_option("--n", relay_n, "number of hops");
    relay_cmd->add_option("--p", relay_p, "moment exponent (binary scheme)");
    relay_cmd->add_option("--sigma0sq", relay_s0, "state variance (linear scheme)");
    relay_cmd->add_option("--E", relay_E, "per-stage power (linear scheme)");
    relay_cmd->add_option("--trials", relay_trials, "Monte Carlo trials");
    relay_cmd->add_option("--seed", relay_seed, "RNG seed");
    relay_cmd->add_option("--threads", relay_threads, "worker threads (0 = auto)");
    add_common(relay_cmd, relay_opts);

    // ---- clt ----
    auto* clt_cmd = app.add_subcommand("clt", "exact smoothed-CLT total variation");
    std::size_t clt_n = 100;
    double clt_sigma = 1.0;
    CommonOpts clt_opts;
    clt_opts.format = "json";
    clt_cmd->add_option("--n", clt_n, "number of Rademacher summands");
    clt_cmd->add_option("--sigma", clt_sigma, "smoothing noise std-dev");
    add_common(clt_cmd, clt_opts);

    // ---- probe ----
    auto* probe_cmd = app.add_subcommand("probe", "Renyi non-contraction witness probe");
    double probe_alpha = 2.0;
    double probe_t = 0.1;
    double probe_a = 2.0;
    std::vector<double> probe_q = {1e-2, 1e-3, 1e-4};
    CommonOpts probe_opts;
    probe_opts.format = "json";
    probe_cmd->add_option("--alpha", probe_alpha, "Renyi order >= 1");
    probe_cmd->add_option("--t", probe_t, "target divergence level");
    probe_cmd->add_option("--a", probe_a, "cost budget");
    probe_cmd->add_option("--q", probe_q, "witness q values");
    add_common(probe_cmd, probe_opts);

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    bool verify_fast = false;
    bool verify_full = false;
    bool verify_qfault = false;
    verify_cmd->add_flag("--fast", verify_fast, "reduced-scale smoke run");
    verify_cmd->add_flag("--full", verify_full, "gate-level scale (default)");
    verify_cmd->add_flag("--inject-q-fault", verify_qfault,
                         "perturb the Q function (fault-injection hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (theta_cmd->parsed()) {
        const NoiseModel noise = parse_noise(theta_noise);
        Table t;
        t.header = {"x", "theta", "theta_lb"};
        for (double x : parse_grid(theta_grid)) {
            t.rows.push_back({x, theta(noise, x), theta_lb(noise, x)});
        }
        nlohmann::json manifest = base_manifest("theta", theta_opts);
        manifest["noise"] = theta_noise;
        manifest["x"] = theta_grid;
        emit(t.render(theta_opts.format), theta_opts.out, manifest);
        return 0;
    }
    if (curve_cmd->parsed()) {
        const DobrushinCurve curve(parse_noise(curve_noise), parse_cost(curve_cost), curve_budget);
        Table t;
        t.header = {"t", "lower", "upper"};
        for (std::size_t i = 1; i <= curve_points; ++i) {
            const double tv = static_cast<double>(i) / static_cast<double>(curve_points);
            t.rows.push_back({tv, curve.lower(tv), curve.upper(tv)});
        }
        nlohmann::json manifest = base_manifest("curve", curve_opts);
        manifest["noise"] = curve_noise;
        manifest["cost"] = curve_cost;
        manifest["budget"] = curve_budget;
        manifest["grid"] = curve_points;
        emit(t.render(curve_opts.format), curve_opts.out, manifest);
        return 0;
    }
    if (div_cmd->parsed()) {
        auto load = [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("cannot open distribution file: " + path);
            nlohmann::json j;
            in >> j;
            return Distribution::from_json(j);
        };
        const Distribution p = load(div_p);
        const Distribution q = load(div_q);
        double value = 0.0;
        if (div_name == "tv") value = tv(p, q);
        else if (div_name == "kl") value = f_divergence(p, q, DivergenceKind::kl());
        else if (div_name == "chi2") value = f_divergence(p, q, DivergenceKind::chi2());
        else if (div_name == "hellinger2") value = f_divergence(p, q, DivergenceKind::hellinger2());
        else if (div_name == "w1") value = w1_distance(p, q);
        else if (div_name.rfind("renyi:", 0) == 0) {
            value = f_divergence(p, q, DivergenceKind::renyi(std::stod(div_name.substr(6))));
        } else if (div_name.rfind("egamma:", 0) == 0) {
            value = e_gamma(p, q, std::stod(div_name.substr(7)));
        } else {
            throw std::invalid_argument("unknown divergence: " + div_name);
        }
        Table t;
        t.header = {"value"};
        t.rows.push_back({value});
        nlohmann::json manifest = base_manifest("divergence", div_opts);
        manifest["p"] = div_p;
        manifest["q"] = div_q;
        manifest["div"] = div_name;
        emit(t.render(div_opts.format), div_opts.out, manifest);
        return 0;
    }
    if (decay_cmd->parsed()) {
        const DecayTrajectory traj = t_decay(parse_noise(decay_noise), parse_cost(decay_cost),
                                             decay_budget, decay_nmax, !decay_all);
        Table t;
        if (decay_all || traj.checkpoint_n.empty()) {
            t.header = {"n", "t_n", "T_bound"};
            for (std::size_t n = 1; n <= decay_nmax; ++n) {
                t.rows.push_back({static_cast<double>(n), traj.t[n - 1],
                                  decay_budget * traj.t[n - 1]});
            }
        } else {
            t.header = {"n", "t_n", "T_bound", "rate_lemma_bound"};
            for (std::size_t i = 0; i < traj.checkpoint_n.size(); ++i) {
                const std::size_t n = traj.checkpoint_n[i];
                t.rows.push_back({static_cast<double>(n), traj.t[n - 1],
                                  decay_budget * traj.t[n - 1], traj.checkpoint_rate_bound[i]});
            }
        }
        nlohmann::json manifest = base_manifest("decay", decay_opts);
        manifest["noise"] = decay_noise;
        manifest["cost"] = decay_cost;
        manifest["budget"] = decay_budget;
        manifest["nmax"] = decay_nmax;
        emit(t.render(decay_opts.format), decay_opts.out, manifest);
        return 0;
    }
    if (mi_cmd->parsed()) {
        Table t;
        nlohmann::json manifest = base_manifest("mi", mi_opts);
        if (mi_chain) {
            double tb = mi_Tbound;
            if (tb < 0.0) {
                const DobrushinCurve curve(NoiseModel::gaussian(1.0), CostFunction::power(2.0),
                                           1.0);
                tb = std::min(1.0, mi_E * rate_lemma_bound(
                                               [&](double u) { return curve.upper_gap(u); },
                                               mi_n));
            }
            t.header = {"n", "T_bound", "mi_bound"};
            t.rows.push_back({mi_n, tb, mi_bound_chain(mi_d, mi_E, mi_n, tb)});
            manifest["chain"] = true;
            manifest["d"] = mi_d;
            manifest["E"] = mi_E;
            manifest["n"] = mi_n;
            manifest["Tbound"] = tb;
        } else {
            t.header = {"T", "m", "mi_bound"};
            t.rows.push_back({mi_T, static_cast<double>(mi_m), mi_bound_finite(mi_T, mi_m)});
            manifest["T"] = mi_T;
            manifest["m"] = mi_m;
        }
        emit(t.render(mi_opts.format), mi_opts.out, manifest);
        return 0;
    }
    if (circ_cmd->parsed()) {
        Table t;
        t.header = {"snr", "t_star", "error_lb"};
        for (double snr : parse_grid(circ_grid)) {
            const CircuitBound b = circuit_error_bound(snr, circ_k);
            t.rows.push_back({snr, b.t_star, b.error_lb});
        }
        nlohmann::json manifest = base_manifest("circuit", circ_opts);
        manifest["k"] = circ_k;
        manifest["snr-grid"] = circ_grid;
        emit(t.render(circ_opts.format), circ_opts.out, manifest);
        return 0;
    }
    if (tree_cmd->parsed()) {
        const TreeDesign design = tree_design(tree_mu, tree_t);
        nlohmann::json manifest = base_manifest("tree", tree_opts);
        manifest["mu"] = tree_mu;
        manifest["t"] = tree_t;
        manifest["depth"] = tree_depth;
        if (tree_sim) {
            manifest["trials"] = tree_trials;
            manifest["seed"] = tree_seed;
            SimConfig cfg;
            cfg.seed = tree_seed;
            cfg.trials = tree_trials;
            cfg.threads = tree_threads;
            const SimReport rep = simulate_tree(design, tree_depth, cfg);
            emit(rep.to_json().dump(2) + "\n", tree_opts.out, manifest);
        } else {
            const TreeMoments mom = tree_moments(design, tree_depth);
            Table t;
            t.header = {"p",           "theta",          "energy_used",
                        "mean_pm",     "second_moment_ub", "second_moment_exact",
                        "tv_lb"};
            t.rows.push_back({design.p, design.theta, design.energy_used, mom.mean_pm,
                              mom.second_moment_ub, mom.second_moment_exact,
                              mom.tv_lb.value_or(std::nan(""))});
            emit(t.render(tree_opts.format), tree_opts.out, manifest);
        }
        return 0;
    }
    if (ctl_cmd->parsed()) {
        Table t;
        t.header = {"n", "rho_sq"};
        t.rows.push_back({static_cast<double>(ctl_n), linear_control_corr(ctl_s0, ctl_E, ctl_n)});
        nlohmann::json manifest = base_manifest("control", ctl_opts);
        manifest["sigma0sq"] = ctl_s0;
        manifest["E"] = ctl_E;
        manifest["n"] = ctl_n;
        emit(t.render(ctl_opts.format), ctl_opts.out, manifest);
        return 0;
    }
    if (relay_cmd->parsed()) {
        SimConfig cfg;
        cfg.seed = relay_seed;
        cfg.trials = relay_trials;
        cfg.threads = relay_threads;
        const SimReport rep = (relay_scheme == "binary")
                                  ? simulate_relay_binary(relay_n, relay_p, cfg)
                                  : simulate_relay_linear(relay_s0, relay_E, relay_n, cfg);
        nlohmann::json manifest = base_manifest("relay", relay_opts);
        manifest["scheme"] = relay_scheme;
        manifest["n"] = relay_n;
        manifest["p"] = relay_p;
        manifest["sigma0sq"] = relay_s0;
        manifest["E"] = relay_E;
        manifest["trials"] = relay_trials;
        manifest["seed"] = relay_seed;
        emit(rep.to_json().dump(2) + "\n", relay_opts.out, manifest);
        return 0;
    }
    if (clt_cmd->parsed()) {
        const CltExact e = clt_tv_exact(clt_n, clt_sigma);
        nlohmann::json j = {{"n", clt_n},
                            {"sigma", clt_sigma},
                            {"tv_exact", e.tv_exact},
                            {"w1_exact", e.w1_exact},
                            {"bound_chain_ok", e.bound_chain_ok}};
        nlohmann::json manifest = base_manifest("clt", clt_opts);
        manifest["n"] = clt_n;
        manifest["sigma"] = clt_sigma;
        emit(j.dump(2) + "\n", clt_opts.out, manifest);
        return 0;
    }
    if (probe_cmd->parsed()) {
        const SimReport rep = renyi_noncontraction_probe(probe_alpha, probe_t, probe_a, probe_q);
        nlohmann::json manifest = base_manifest("probe", probe_opts);
        manifest["alpha"] = probe_alpha;
        manifest["t"] = probe_t;
        manifest["a"] = probe_a;
        manifest["q"] = probe_q;
        emit(rep.to_json().dump(2) + "\n", probe_opts.out, manifest);
        return 0;
    }
    if (verify_cmd->parsed()) {
        if (verify_qfault) q_fault_offset() = 1e-3;
        const bool fast = verify_fast && !verify_full;
        const auto results = run_acceptance(fast);
        bool all_ok = true;
        for (const auto& res : results) {
            std::printf("%-26s %s  (%.0f ms)  %s\n", res.name.c_str(),
                        res.passed ? "PASS" : "FAIL", res.ms, res.detail.c_str());
            all_ok = all_ok && res.passed;
        }
        if (verify_qfault) q_fault_offset() = 0.0;
        if (!all_ok) {
            for (const auto& res : results) {
                if (!res.passed) {
                    std::fprintf(stderr, "verification failed: %s\n", res.name.c_str());
                }
            }
            return 1;
        }
        return 0;
    }
    return 2;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}

}  // namespace dcurve
