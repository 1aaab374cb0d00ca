#include "smax/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "smax/errors.hpp"
#include "smax/parallel.hpp"
#include "smax/rng.hpp"

namespace smax {
namespace {

using nlohmann::json;

constexpr std::uint64_t kUniformStream = 0x756e6900ull;

Eigen::VectorXd uniform_ball_point(int n, CounterRng& rng) {
    Eigen::VectorXd x(n);
    do {
        for (int j = 0; j < n; ++j) x[j] = rng.uniform(-1.0, 1.0);
    } while (x.norm() >= 1.0);
    return x;
}

std::pair<double, double> mean_stderr(const std::vector<double>& v) {
    const long m = static_cast<long>(v.size());
    const double mean = pairwise_sum(v) / m;
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    const double var = pairwise_sum(sq) / std::max<long>(1, m - 1);
    return {mean, std::sqrt(var / m)};
}

double record_stat(const SweepRecord& r, Field f) {
    return f == Field::L1Mean ? r.l1_mean : r.omega_median_ratio;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

std::pair<double, double> l1_monte_carlo(int n, long samples, std::uint64_t seed, int threads,
                                         const std::function<double(const Eigen::VectorXd&)>& fn) {
    if (samples < 1) throw PreconditionViolated("l1_monte_carlo requires samples >= 1");
    std::vector<double> vals(samples);
    parallel_for(samples, threads, [&](long i) {
        CounterRng rng(seed, kUniformStream + static_cast<std::uint64_t>(i));
        vals[i] = fn(uniform_ball_point(n, rng));
    });
    auto [mean, se] = mean_stderr(vals);
    const double vol = ball_volume(n);
    return {vol * mean, vol * se};
}

std::pair<double, double> l1_estimate(const InitialDatum& d, const OmegaSpec& spec,
                                      Strategy strategy, int budget, long samples,
                                      std::uint64_t seed, int threads) {
    const double norm = l2_norm(d);
    return l1_monte_carlo(d.params.n, samples, seed, threads, [&](const Eigen::VectorXd& x) {
        return sup_estimate(d, spec, x, strategy, budget).value / norm;
    });
}

SweepRecord run_single(const SweepConfig& cfg, double R,
                       std::shared_ptr<const BumpProfile> profile) {
    const auto t0 = std::chrono::steady_clock::now();
    const InitialDatum d = make_datum(build_params(cfg.n, R), profile);
    const OmegaSpec spec = OmegaSpec::make(d.params, cfg.c);
    const double norm = l2_norm(d);

    SweepRecord rec;
    rec.R = R;

    std::vector<double> vals(cfg.samples_uniform);
    std::vector<long> evals(cfg.samples_uniform);
    parallel_for(cfg.samples_uniform, cfg.threads, [&](long i) {
        CounterRng rng(cfg.seed, kUniformStream + static_cast<std::uint64_t>(i));
        const Eigen::VectorXd x = uniform_ball_point(cfg.n, rng);
        const MaximalEstimate est = sup_estimate(d, spec, x, cfg.strategy, cfg.budget);
        vals[i] = est.value / norm;
        evals[i] = est.evaluations;
    });
    auto [mean, se] = mean_stderr(vals);
    const double vol = ball_volume(cfg.n);
    rec.l1_mean = vol * mean;
    rec.l1_stderr = std::max(vol * se, 1e-300);

    std::vector<double> ratios(cfg.samples_omega);
    std::vector<long> oevals(cfg.samples_omega);
    parallel_for(cfg.samples_omega, cfg.threads, [&](long i) {
        const OmegaSample s =
            sample_omega_pullback(spec, cfg.seed + 0x9e37ull * static_cast<std::uint64_t>(i + 1));
        const MaximalEstimate est = sup_estimate(d, spec, s.x, cfg.strategy, cfg.budget);
        ratios[i] = est.value / norm;
        oevals[i] = est.evaluations;
    });
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    rec.omega_median_ratio =
        m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    rec.omega_fraction =
        omega_measure_estimate(spec, cfg.seed, std::max<long>(1000, cfg.samples_omega)).fraction;

    for (long e : evals) rec.evaluations += e;
    for (long e : oevals) rec.evaluations += e;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    if (cfg.R_list.size() < 3) throw ConfigError("run_sweep requires at least 3 R values");
    for (std::size_t i = 1; i < cfg.R_list.size(); ++i)
        if (!(cfg.R_list[i] > cfg.R_list[i - 1]))
            throw ConfigError("R_list must be strictly increasing");
    if (cfg.samples_uniform < 100 || cfg.samples_omega < 100)
        throw ConfigError("sample counts must be >= 100");

    std::vector<SweepRecord> existing;
    if (!cfg.out_json.empty() && std::filesystem::exists(cfg.out_json))
        existing = read_json_records(cfg.out_json, cfg);

    auto profile = std::make_shared<const BumpProfile>(make_profile(cfg.n, cfg.resolution));
    std::vector<SweepRecord> records;
    for (double R : cfg.R_list) {
        const auto it = std::find_if(existing.begin(), existing.end(),
                                     [&](const SweepRecord& r) { return r.R == R; });
        if (it != existing.end()) {
            records.push_back(*it);
        } else {
            records.push_back(run_single(cfg, R, profile));
        }
        // persist incrementally
        if (!cfg.out_csv.empty()) write_csv(cfg.out_csv, records);
        if (!cfg.out_json.empty()) write_json(cfg.out_json, cfg, records);
    }
    return records;
}

FitResult fit_exponent(const std::vector<SweepRecord>& records, Field field) {
    if (records.size() < 3) throw PreconditionViolated("fit_exponent requires >= 3 records");
    const std::size_t m = records.size();
    double sx = 0, sy = 0;
    for (const auto& r : records) {
        sx += std::log(r.R);
        sy += std::log(record_stat(r, field));
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (const auto& r : records) {
        const double dx = std::log(r.R) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(record_stat(r, field)) - my);
    }
    if (sxx == 0.0) throw DegenerateFit("all R values coincide");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (const auto& r : records) {
        const double res = std::log(record_stat(r, field)) - fit.intercept -
                           fit.slope * std::log(r.R);
        ss += res * res;
    }
    fit.stderr_ = m > 2 ? std::sqrt(ss / (m - 2) / sxx) : 0.0;
    return fit;
}

Verdict divergence_verdict(const std::vector<SweepRecord>& records, double s_test, int n) {
    (void)n;
    if (s_test < 0.0) throw PreconditionViolated("divergence_verdict requires s_test >= 0");
    if (records.size() < 2) throw PreconditionViolated("divergence_verdict requires >= 2 records");
    const SweepRecord& a = records.front();
    const SweepRecord& b = records.back();
    const double ga = std::log(a.l1_mean) - s_test * std::log(a.R);
    const double gb = std::log(b.l1_mean) - s_test * std::log(b.R);
    const double se = std::hypot(a.l1_stderr / a.l1_mean, b.l1_stderr / b.l1_mean);
    if (gb - ga > 2.0 * se) return Verdict::DivergenceConsistent;
    if (ga - gb > 2.0 * se) return Verdict::Contradicted;
    return Verdict::Inconclusive;
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Predicted: return "predicted";
        case Strategy::WindowGrid: return "window_grid";
        default: return "combined";
    }
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "predicted") return Strategy::Predicted;
    if (s == "window_grid") return Strategy::WindowGrid;
    if (s == "combined") return Strategy::Combined;
    throw ConfigError("unknown strategy: " + s);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::DivergenceConsistent: return "DivergenceConsistent";
        case Verdict::Contradicted: return "Contradicted";
        default: return "Inconclusive";
    }
}

void write_csv(const std::string& path, const std::vector<SweepRecord>& records) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "R,l1_mean,l1_stderr,omega_median_ratio,omega_fraction,evaluations\n";
    for (const auto& r : records)
        out << fmt(r.R) << ',' << fmt(r.l1_mean) << ',' << fmt(r.l1_stderr) << ','
            << fmt(r.omega_median_ratio) << ',' << fmt(r.omega_fraction) << ','
            << r.evaluations << '\n';
    if (!out) throw Error("write failed: " + path);
}

std::vector<SweepRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV: " + path);
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        SweepRecord r;
        auto next = [&] {
            if (!std::getline(ss, tok, ',')) throw Error("malformed CSV row in " + path);
            return std::stod(tok);
        };
        r.R = next();
        r.l1_mean = next();
        r.l1_stderr = next();
        r.omega_median_ratio = next();
        r.omega_fraction = next();
        r.evaluations = static_cast<long>(next());
        records.push_back(r);
    }
    return records;
}

namespace {

json record_to_json(const SweepRecord& r) {
    return json{{"R", r.R},
                {"l1_mean", r.l1_mean},
                {"l1_stderr", r.l1_stderr},
                {"omega_median_ratio", r.omega_median_ratio},
                {"omega_fraction", r.omega_fraction},
                {"wall_time", r.wall_time},
                {"evaluations", r.evaluations}};
}

SweepRecord record_from_json(const json& j) {
    SweepRecord r;
    r.R = j.at("R").get<double>();
    r.l1_mean = j.at("l1_mean").get<double>();
    r.l1_stderr = j.at("l1_stderr").get<double>();
    r.omega_median_ratio = j.at("omega_median_ratio").get<double>();
    r.omega_fraction = j.at("omega_fraction").get<double>();
    r.wall_time = j.value("wall_time", 0.0);
    r.evaluations = j.at("evaluations").get<long>();
    return r;
}

json config_to_json(const SweepConfig& cfg) {
    return json{{"n", cfg.n},
                {"R_list", cfg.R_list},
                {"samples_uniform", cfg.samples_uniform},
                {"samples_omega", cfg.samples_omega},
                {"strategy", to_string(cfg.strategy)},
                {"budget", cfg.budget},
                {"c", cfg.c},
                {"seed", cfg.seed},
                {"threads", cfg.threads},
                {"resolution", cfg.resolution}};
}

}  // namespace

void write_json(const std::string& path, const SweepConfig& cfg,
                const std::vector<SweepRecord>& records) {
    json j;
    j["config"] = config_to_json(cfg);
    j["records"] = json::array();
    for (const auto& r : records) j["records"].push_back(record_to_json(r));
    if (records.size() >= 3) {
        for (Field f : {Field::L1Mean, Field::OmegaMedianRatio}) {
            const FitResult fit = fit_exponent(records, f);
            j["fits"][f == Field::L1Mean ? "l1_mean" : "omega_median_ratio"] = {
                {"slope", fit.slope}, {"intercept", fit.intercept}, {"stderr", fit.stderr_}};
        }
        j["target_exponent"] = target_exponent(cfg.n).value();
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed: " + path);
}

std::vector<SweepRecord> read_json_records(const std::string& path, const SweepConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    json j = json::parse(in);
    std::vector<SweepRecord> records;
    if (!j.contains("config") || !j.contains("records")) return records;
    const json& c = j["config"];
    // resume key: (n, R, seed, c, strategy, budget); R is matched per record
    if (c.value("n", -1) != cfg.n || c.value("seed", std::uint64_t{0}) != cfg.seed ||
        c.value("c", -1.0) != cfg.c || c.value("strategy", "") != to_string(cfg.strategy) ||
        c.value("budget", -1) != cfg.budget)
        return records;
    for (const auto& rj : j["records"]) records.push_back(record_from_json(rj));
    return records;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    static const std::vector<std::string> known = {
        "n",      "R_list", "samples_uniform", "samples_omega", "strategy", "budget",
        "c",      "seed",   "threads",         "resolution",    "out_csv",  "out_json"};
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key: " + key);
    }
    SweepConfig cfg;
    cfg.n = j.value("n", cfg.n);
    cfg.R_list = j.value("R_list", cfg.R_list);
    cfg.samples_uniform = j.value("samples_uniform", cfg.samples_uniform);
    cfg.samples_omega = j.value("samples_omega", cfg.samples_omega);
    if (j.contains("strategy")) cfg.strategy = strategy_from_string(j["strategy"].get<std::string>());
    cfg.budget = j.value("budget", cfg.budget);
    cfg.c = j.value("c", cfg.c);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.resolution = j.value("resolution", cfg.resolution);
    cfg.out_csv = j.value("out_csv", cfg.out_csv);
    cfg.out_json = j.value("out_json", cfg.out_json);
    return cfg;
}

}  // namespace smax
