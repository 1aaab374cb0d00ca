#pragma once

#include <functional>
#include <string>
#include <vector>

#include "smax/maximal.hpp"

namespace smax {

struct SweepConfig {
    int n = 2;
    std::vector<double> R_list;
    long samples_uniform = 500;
    long samples_omega = 500;
    Strategy strategy = Strategy::Combined;
    int budget = 64;
    double c = 0.05;
    std::uint64_t seed = 12345;
    int threads = 0;  // 0 = auto
    int resolution = 4096;
    std::string out_csv;
    std::string out_json;
};

struct SweepRecord {
    double R = 0.0;
    double l1_mean = 0.0;    // vol(B) * mean of sup-estimate / ||f||_2 over uniform x
    double l1_stderr = 0.0;
    double omega_median_ratio = 0.0;
    double omega_fraction = 0.0;
    double wall_time = 0.0;  // seconds; kept out of the CSV so runs at different
                             // thread counts stay byte-identical
    long evaluations = 0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_ = 0.0;
};

enum class Field { L1Mean, OmegaMedianRatio };
enum class Verdict { DivergenceConsistent, Inconclusive, Contradicted };

double ball_volume(int n);

// Monte Carlo mean of fn over uniform x in B(0,1), scaled by |B(0,1)|.
// Deterministic for fixed seed at any thread count.
std::pair<double, double> l1_monte_carlo(int n, long samples, std::uint64_t seed, int threads,
                                         const std::function<double(const Eigen::VectorXd&)>& fn);

std::pair<double, double> l1_estimate(const InitialDatum& d, const OmegaSpec& spec,
                                      Strategy strategy, int budget, long samples,
                                      std::uint64_t seed, int threads);

SweepRecord run_single(const SweepConfig& cfg, double R,
                       std::shared_ptr<const BumpProfile> profile);

// One record per R; resumable against an existing JSON output whose records
// carry the same key (n, R, seed, c, strategy, budget).
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

FitResult fit_exponent(const std::vector<SweepRecord>& records, Field field);

Verdict divergence_verdict(const std::vector<SweepRecord>& records, double s_test, int n);

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);
std::string to_string(Verdict v);

// CSV: header row, one row per record, fields in declared order (minus
// wall_time). JSON: config echo + records + fits. Both round-trip.
void write_csv(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(const std::string& path);
void write_json(const std::string& path, const SweepConfig& cfg,
                const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_json_records(const std::string& path, const SweepConfig& cfg);

// Strict JSON config parser: unknown keys are rejected.
SweepConfig load_config(const std::string& path);

}  // namespace smax
