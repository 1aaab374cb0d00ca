// Command-line laboratory for the blow-up construction: parameter tables,
// Gauss sums, pointwise evolution, Omega measure, maximal-function probes,
// dyadic sweeps and the self-check suite.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numeric>

#include "smax/experiment.hpp"
#include "smax/parallel.hpp"
#include "smax/rng.hpp"

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;  // fixed so default runs reproduce

int cmd_params(int n, double R) {
    const smax::Params p = smax::build_params(n, R);
    json j{{"n", p.n},
           {"R", p.R},
           {"D", p.D},
           {"lattice_lo", p.lattice_lo},
           {"lattice_hi", p.lattice_hi},
           {"N", p.N},
           {"Q", p.Q},
           {"sigma", p.sigma},
           {"tau_halfwidth", p.tau_halfwidth},
           {"target_exp", p.target_exp.value()},
           {"target_exp_rational",
            std::to_string(p.target_exp.num) + "/" + std::to_string(p.target_exp.den)}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_gauss(long q, long a, long b) {
    const auto g = smax::gauss_sum(q, a, b);
    json j{{"q", q}, {"a", a},         {"b", b},
           {"re", g.real()},           {"im", g.imag()},
           {"modulus", std::abs(g)},   {"sqrt_q", std::sqrt(static_cast<double>(q))}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_eval(int n, double R, const std::vector<double>& coords, double t, double c,
             int resolution) {
    const smax::InitialDatum d = smax::make_datum(n, R, resolution);
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(coords.data(), coords.size());
    const auto v = smax::propagate(d, x, t);
    json j{{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)},
           {"l2_norm", smax::l2_norm(d)}};
    try {
        j["approx"] = smax::propagate_approx(d, x, t, c);
        j["approx_deviation"] = smax::approx_deviation(d, x, t, c);
    } catch (const smax::OutOfApproximationRange&) {
        j["approx"] = nullptr;
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_omega(int n, double R, double c, long samples, std::uint64_t seed) {
    const smax::Params p = smax::build_params(n, R);
    const auto spec = smax::OmegaSpec::make(p, c);
    const auto est = smax::omega_measure_estimate(spec, seed, samples);
    json j{{"n", n},           {"R", R},
           {"c", c},           {"q_lo", spec.q_lo},
           {"q_hi", spec.q_hi}, {"samples", samples},
           {"fraction", est.fraction}, {"stderr", est.stderr_}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_maximal(int n, double R, long samples, const std::string& strategy, int budget,
                double c, std::uint64_t seed, int threads, int resolution) {
    const smax::InitialDatum d = smax::make_datum(n, R, resolution);
    const auto spec = smax::OmegaSpec::make(d.params, c);
    const auto strat = smax::strategy_from_string(strategy);
    std::vector<double> ratios(samples);
    smax::parallel_for(samples, threads, [&](long i) {
        const auto s = smax::sample_omega_pullback(
            spec, seed + 0x9e37ull * static_cast<std::uint64_t>(i + 1));
        ratios[i] = smax::pointwise_ratio(d, spec, s.x, strat, budget);
    });
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = samples % 2 == 1
                              ? sorted[samples / 2]
                              : 0.5 * (sorted[samples / 2 - 1] + sorted[samples / 2]);
    json j{{"n", n},
           {"R", R},
           {"samples", samples},
           {"strategy", strategy},
           {"budget", budget},
           {"median_ratio", median},
           {"min_ratio", sorted.front()},
           {"max_ratio", sorted.back()},
           {"target_growth", std::pow(R, smax::target_exponent(n).value())},
           {"ratios", ratios}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int threads_override) {
    smax::SweepConfig cfg = smax::load_config(config_path);
    if (threads_override >= 0) cfg.threads = threads_override;
    std::string dir = out_dir;
    if (const char* env = std::getenv("SMAX_OUT_DIR"); env && *env) dir = env;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        if (cfg.out_csv.empty()) cfg.out_csv = dir + "/sweep.csv";
        if (cfg.out_json.empty()) cfg.out_json = dir + "/sweep.json";
    }
    const auto records = smax::run_sweep(cfg);
    json j{{"records", json::array()}};
    for (const auto& r : records)
        j["records"].push_back({{"R", r.R},
                                {"l1_mean", r.l1_mean},
                                {"omega_median_ratio", r.omega_median_ratio}});
    const auto fit = smax::fit_exponent(records, smax::Field::OmegaMedianRatio);
    j["fit_omega_median"] = {{"slope", fit.slope}, {"stderr", fit.stderr_}};
    const auto fit_l1 = smax::fit_exponent(records, smax::Field::L1Mean);
    j["fit_l1"] = {{"slope", fit_l1.slope}, {"stderr", fit_l1.stderr_}};
    const double target = smax::target_exponent(cfg.n).value();
    j["target_exponent"] = target;
    j["verdict_below_target"] =
        smax::to_string(smax::divergence_verdict(records, target - 0.05, cfg.n));
    j["verdict_above_target"] =
        smax::to_string(smax::divergence_verdict(records, target + 0.05, cfg.n));
    if (!cfg.out_csv.empty()) j["csv"] = cfg.out_csv;
    if (!cfg.out_json.empty()) j["json"] = cfg.out_json;
    std::cout << j.dump(2) << '\n';
    return 0;
}

struct Check {
    std::string name;
    bool pass;
};

int cmd_validate(std::uint64_t seed) {
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass) {
        checks.push_back({name, pass});
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << '\n';
    };

    {
        const auto p = smax::build_params(2, 4096.0);
        add("params: D = 256, N = 7 at (n=2, R=4096)",
            std::abs(p.D - 256.0) <= 1e-10 && p.N == 7 && p.lattice_lo == 9 &&
                p.lattice_hi == 15);
        add("params: sigma * R^{3/2} = D^2",
            std::abs(p.sigma * std::pow(p.R, 1.5) - p.D * p.D) <= 1e-12 * p.D * p.D);
    }
    {
        bool ok = true;
        for (long q = 3; q <= 199; q += 2) {
            smax::CounterRng rng(seed, static_cast<std::uint64_t>(q));
            for (int rep = 0; rep < 3; ++rep) {
                long a = rng.uniform_int(1, q - 1);
                while (std::gcd(a, q) != 1) a = rng.uniform_int(1, q - 1);
                const long b = rng.uniform_int(0, q - 1);
                if (smax::gauss_modulus_check(q, a, b) > 1e-9 * std::sqrt((double)q)) ok = false;
            }
        }
        add("gauss: |G(q,a,b)| = sqrt(q) for odd q <= 199", ok);
    }
    {
        const smax::InitialDatum d = smax::make_datum(2, 256.0, 1024);
        bool ok = true;
        smax::CounterRng rng(seed, 0xe5a1ull);
        for (int i = 0; i < 20; ++i) {
            Eigen::VectorXd x(2);
            x << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
            const auto lhs = smax::propagate(d, x, 0.0);
            const auto rhs = smax::f_eval(d, x);
            if (std::abs(lhs - rhs) > 1e-10 * std::abs(rhs)) ok = false;
        }
        add("propagator: t = 0 reproduces the datum (rel 1e-10)", ok);
        const double phi0 = smax::phi_eval(*d.profile, 0.0);
        add("bumps: phi(0) = 1 (abs 1e-10)", std::abs(phi0 - 1.0) <= 1e-10);
        add("bumps: phi_hat vanishes outside [-1,1]",
            smax::phi_hat_eval(*d.profile, 1.0001) == 0.0);
    }

    const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    std::cout << (all ? "validate: all checks passed" : "validate: FAILURES present") << '\n';
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for a Schrodinger maximal-function blow-up construction"};
    app.require_subcommand(1);

    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    std::string out_dir;
    app.add_option("--seed", seed, "global RNG seed (fixed default for reproducibility)");
    app.add_option("--threads", threads, "worker threads (0 = auto)");
    app.add_option("--out-dir", out_dir, "output directory (env SMAX_OUT_DIR overrides)");

    int n = 2;
    double R = 4096.0;

    auto* sub_params = app.add_subcommand("params", "print derived scaling parameters as JSON");
    sub_params->add_option("n", n)->required();
    sub_params->add_option("R", R)->required();

    long gq = 5, ga = 1, gb = 0;
    auto* sub_gauss = app.add_subcommand("gauss", "quadratic Gauss sum and its modulus");
    sub_gauss->add_option("q", gq)->required();
    sub_gauss->add_option("a", ga)->required();
    sub_gauss->add_option("b", gb)->required();

    std::vector<double> coords;
    double t = 0.0, approx_c = 0.01;
    int resolution = 4096;
    auto* sub_eval = app.add_subcommand("eval", "evaluate e^{it Delta} f at a point");
    sub_eval->add_option("n", n)->required();
    sub_eval->add_option("R", R)->required();
    sub_eval->add_option("x", coords, "n coordinates")->required()->expected(-1);
    sub_eval->add_option("--t", t, "time");
    sub_eval->add_option("--c", approx_c, "short-time window constant");
    sub_eval->add_option("--resolution", resolution);

    double omega_c = 0.05;
    long samples = 10000;
    auto* sub_omega = app.add_subcommand("omega", "Monte Carlo measure of the resonant set");
    sub_omega->add_option("n", n)->required();
    sub_omega->add_option("R", R)->required();
    sub_omega->add_option("--c", omega_c, "window constant");
    sub_omega->add_option("--samples", samples);

    std::string strategy = "combined";
    int budget = 64;
    long msamples = 200;
    auto* sub_max = app.add_subcommand("maximal", "pointwise maximal-function ratios on resonant samples");
    sub_max->add_option("n", n)->required();
    sub_max->add_option("R", R)->required();
    sub_max->add_option("--samples", msamples);
    sub_max->add_option("--strategy", strategy, "predicted|window_grid|combined");
    sub_max->add_option("--budget", budget);
    sub_max->add_option("--c", omega_c, "window constant");
    sub_max->add_option("--resolution", resolution);

    std::string config_path;
    auto* sub_sweep = app.add_subcommand("sweep", "dyadic R sweep with exponent fit and verdicts");
    sub_sweep->add_option("--config", config_path, "JSON sweep configuration")->required();

    auto* sub_validate = app.add_subcommand("validate", "run the built-in property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (sub_params->parsed()) return cmd_params(n, R);
        if (sub_gauss->parsed()) return cmd_gauss(gq, ga, gb);
        if (sub_eval->parsed()) {
            if (static_cast<int>(coords.size()) != n) {
                std::cerr << "usage error: expected " << n << " coordinates for x\n";
                return 2;
            }
            return cmd_eval(n, R, coords, t, approx_c, resolution);
        }
        if (sub_omega->parsed()) return cmd_omega(n, R, omega_c, samples, seed);
        if (sub_max->parsed())
            return cmd_maximal(n, R, msamples, strategy, budget, omega_c, seed, threads, resolution);
        if (sub_sweep->parsed()) {
            if (!std::filesystem::exists(config_path)) {
                std::cerr << "usage error: --config file not found: " << config_path << '\n';
                return 2;
            }
            return cmd_sweep(config_path, out_dir, threads);
        }
        if (sub_validate->parsed()) return cmd_validate(seed);
    } catch (const smax::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
