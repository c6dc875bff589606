#pragma once

// Experiment orchestration: JSON config loading with strict key checking,
// per-seed runs (optionally in parallel), CSV persistence, plateau
// assessment, and cross-seed summaries.
//
// Reproducibility scheme: every run owns the RNG streams
//   run seed      = value from the config's seed list
//   init stream   = derive_seed(run seed, 1)
//   graph stream  = derive_seed(run seed, 2)
// and flow-control reward factors come from a dedicated sub-seed shared by
// all runs of the experiment, so a (config, seed) pair maps to one exact
// trace byte sequence regardless of scheduling.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pplay/comm_learner.hpp"
#include "pplay/errors.hpp"
#include "pplay/game.hpp"
#include "pplay/graph_schedule.hpp"
#include "pplay/payoff_learner.hpp"
#include "pplay/rng.hpp"
#include "pplay/schedules.hpp"

namespace pplay {

inline constexpr const char* kOutputRootEnv = "POTENTIAL_PLAY_OUT";

// plateau thresholds per learner family
inline constexpr double kCommPlateauRelTol = 0.01;
inline constexpr double kCommGradThreshold = 0.05;
inline constexpr double kPayoffPlateauRelTol = 0.02;
inline constexpr double kPayoffGradThreshold = 0.1;

enum class Algorithm { comm, payoff_one_point, payoff_two_point };

struct GameSpec {
    enum class Type { flow_control, quadratic, custom };
    Type type = Type::flow_control;
    int n = 10;
    std::vector<double> h;                     // explicit reward factors
    std::optional<std::uint64_t> h_seed;       // or a draw seed for them
    std::vector<double> center;                // quadratic optimum
    std::shared_ptr<const GameModel> custom;   // injected programmatically
};

struct InitSpec {
    enum class Kind { sphere, explicit_vector };
    Kind kind = Kind::sphere;
    double radius = 10.0;
    std::vector<double> values;
};

struct ExperimentConfig {
    std::string name = "experiment";
    GameSpec game;
    Algorithm algorithm = Algorithm::comm;
    ScheduleSpec gamma{1.0, 0.9};
    ScheduleSpec sigma{1.0, 0.13};
    int graph_s = 4;
    double graph_density = 0.1;
    NoiseSpec noise;
    std::int64_t horizon = 4000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    InitSpec init;
    std::int64_t log_stride = 10;
    bool log_state = false;
    std::string output;
    bool force = false;  // skip schedule admissibility gates
    int jobs = 0;        // 0 = one thread per available core
};

struct RunSummary {
    std::uint64_t seed = 0;
    double final_phi = 0.0;
    double final_grad_norm = 0.0;
    bool plateau = false;
    std::int64_t plateau_onset = 0;
    double wall_seconds = 0.0;  // reported on the console, never in the CSV
    std::string trace_file;
};

struct ExperimentResult {
    std::filesystem::path out_dir;  // empty if nothing was written
    std::vector<RunSummary> summaries;
    std::vector<double> resolved_h;  // flow-control reward factors in effect
};

// --- plateau assessment ----------------------------------------------------

struct PlateauThresholds {
    double rel_tol;
    double grad_threshold;
};

inline PlateauThresholds plateau_thresholds(Algorithm alg) {
    if (alg == Algorithm::comm) return {kCommPlateauRelTol, kCommGradThreshold};
    return {kPayoffPlateauRelTol, kPayoffGradThreshold};
}

struct PlateauReport {
    bool plateau = false;
    std::int64_t onset = 0;
    double tail_mean = 0.0;
};

// The flag follows the trailing-window rule: the mean of phi over the last
// 10% of the horizon must sit within rel_tol of the final value, and the
// final gradient norm must be below the threshold. The onset is the first
// logged step after which phi never again leaves a band of rel_tol times
// the trace's full phi range around the final value; the range-based band
// keeps the onset comparable across problem sizes.
inline PlateauReport assess_plateau(const std::vector<std::pair<std::int64_t, double>>& phis,
                                    double final_grad_norm, std::int64_t horizon,
                                    const PlateauThresholds& thr) {
    if (phis.empty()) throw std::invalid_argument("assess_plateau: empty trace");
    PlateauReport rep;
    const double final_phi = phis.back().second;

    const std::int64_t tail_start = horizon - horizon / 10;
    double tail_sum = 0.0;
    std::int64_t tail_count = 0;
    for (const auto& [t, phi] : phis) {
        if (t >= tail_start) {
            tail_sum += phi;
            ++tail_count;
        }
    }
    rep.tail_mean = tail_count > 0 ? tail_sum / static_cast<double>(tail_count) : final_phi;
    const bool window_ok =
        std::abs(rep.tail_mean - final_phi) <= thr.rel_tol * std::max(std::abs(final_phi), 1e-12);
    rep.plateau = window_ok && final_grad_norm <= thr.grad_threshold;

    double lo = phis.front().second, hi = phis.front().second;
    for (const auto& [t, phi] : phis) {
        lo = std::min(lo, phi);
        hi = std::max(hi, phi);
    }
    const double band = thr.rel_tol * std::max(hi - lo, 1e-12);
    std::int64_t onset = phis.back().first;
    for (auto it = phis.rbegin(); it != phis.rend(); ++it) {
        if (std::abs(it->second - final_phi) > band) break;
        onset = it->first;
    }
    rep.onset = onset;
    return rep;
}

// --- config loading ----------------------------------------------------------

namespace detail {

using json = nlohmann::json;

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw validation_error("unknown key '" + key + "' in " + where);
        }
    }
}

inline GameSpec parse_game(const json& j) {
    check_keys(j, {"type", "n", "h", "h_seed", "center"}, "game");
    GameSpec spec;
    const std::string type = j.value("type", "flow-control");
    if (type == "flow-control") {
        spec.type = GameSpec::Type::flow_control;
    } else if (type == "quadratic") {
        spec.type = GameSpec::Type::quadratic;
    } else if (type == "custom") {
        spec.type = GameSpec::Type::custom;
    } else {
        throw validation_error("game.type must be flow-control, quadratic or custom");
    }
    spec.n = j.value("n", 10);
    if (spec.n < 1) throw validation_error("game.n must be >= 1");
    if (j.contains("h")) {
        spec.h = j.at("h").get<std::vector<double>>();
        for (double hi : spec.h) {
            if (!(hi > 0.0) || hi > 1.0) throw validation_error("h_i must lie in (0, 1]");
        }
        if (spec.h.size() != static_cast<std::size_t>(spec.n)) {
            throw validation_error("game.h must list exactly n reward factors");
        }
    }
    if (j.contains("h_seed")) spec.h_seed = j.at("h_seed").get<std::uint64_t>();
    if (j.contains("center")) {
        spec.center = j.at("center").get<std::vector<double>>();
        if (spec.center.size() != static_cast<std::size_t>(spec.n)) {
            throw validation_error("game.center must have length n");
        }
    }
    return spec;
}

inline ScheduleSpec parse_schedule(const json& j, const std::string& where, const ScheduleSpec& fallback) {
    check_keys(j, {"coefficient", "exponent"}, where);
    try {
        return ScheduleSpec(j.value("coefficient", fallback.coefficient),
                            j.value("exponent", fallback.exponent));
    } catch (const std::invalid_argument& e) {
        throw validation_error(where + ": " + e.what());
    }
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    using detail::check_keys;
    check_keys(j,
               {"name", "game", "algorithm", "schedules", "graph", "noise", "horizon", "seeds", "init",
                "log_stride", "log_state", "output", "jobs"},
               "config");
    ExperimentConfig cfg;
    cfg.name = j.value("name", cfg.name);
    if (j.contains("game")) cfg.game = detail::parse_game(j.at("game"));

    const std::string alg = j.value("algorithm", "comm");
    if (alg == "comm") {
        cfg.algorithm = Algorithm::comm;
    } else if (alg == "payoff-one-point") {
        cfg.algorithm = Algorithm::payoff_one_point;
    } else if (alg == "payoff-two-point") {
        cfg.algorithm = Algorithm::payoff_two_point;
    } else {
        throw validation_error("algorithm must be comm, payoff-one-point or payoff-two-point");
    }
    if (cfg.algorithm != Algorithm::comm) cfg.gamma = ScheduleSpec(1.0, 0.6);

    if (j.contains("schedules")) {
        const auto& s = j.at("schedules");
        check_keys(s, {"gamma", "sigma"}, "schedules");
        if (s.contains("gamma")) cfg.gamma = detail::parse_schedule(s.at("gamma"), "schedules.gamma", cfg.gamma);
        if (s.contains("sigma")) cfg.sigma = detail::parse_schedule(s.at("sigma"), "schedules.sigma", cfg.sigma);
    }
    if (j.contains("graph")) {
        const auto& g = j.at("graph");
        check_keys(g, {"s", "density"}, "graph");
        cfg.graph_s = g.value("s", cfg.graph_s);
        cfg.graph_density = g.value("density", cfg.graph_density);
        if (cfg.graph_s < 1) throw validation_error("graph.s must be >= 1");
        if (!(cfg.graph_density >= 0.0) || cfg.graph_density > 1.0) {
            throw validation_error("graph.density must lie in [0, 1]");
        }
    }
    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        check_keys(n, {"kind", "scale"}, "noise");
        const std::string kind = n.value("kind", "uniform-symmetric");
        if (kind == "uniform-symmetric") {
            cfg.noise.kind = NoiseSpec::Kind::uniform_symmetric;
        } else if (kind == "truncated-gaussian") {
            cfg.noise.kind = NoiseSpec::Kind::truncated_gaussian;
        } else {
            throw validation_error("noise.kind must be uniform-symmetric or truncated-gaussian");
        }
        cfg.noise.scale = n.value("scale", cfg.noise.scale);
        if (!(cfg.noise.scale >= 0.0)) throw validation_error("noise.scale must be >= 0");
    }
    cfg.horizon = j.value("horizon", cfg.horizon);
    if (cfg.horizon < 0) throw validation_error("horizon must be >= 0");
    if (j.contains("seeds")) {
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (cfg.seeds.empty()) throw validation_error("seeds must not be empty");
    }
    if (j.contains("init")) {
        const auto& i = j.at("init");
        check_keys(i, {"kind", "radius", "values"}, "init");
        const std::string kind = i.value("kind", "sphere");
        if (kind == "sphere") {
            cfg.init.kind = InitSpec::Kind::sphere;
            cfg.init.radius = i.value("radius", cfg.init.radius);
            if (!(cfg.init.radius > 0.0)) throw validation_error("init.radius must be > 0");
        } else if (kind == "explicit") {
            cfg.init.kind = InitSpec::Kind::explicit_vector;
            if (!i.contains("values")) throw validation_error("explicit init needs values");
            cfg.init.values = i.at("values").get<std::vector<double>>();
        } else {
            throw validation_error("init.kind must be sphere or explicit");
        }
    }
    cfg.log_stride = j.value("log_stride", cfg.log_stride);
    if (cfg.log_stride < 1) throw validation_error("log_stride must be >= 1");
    cfg.log_state = j.value("log_state", cfg.log_state);
    cfg.output = j.value("output", cfg.output);
    cfg.jobs = j.value("jobs", cfg.jobs);
    if (cfg.jobs < 0) throw validation_error("jobs must be >= 0");
    return cfg;
}

// Validates the schedule pair for the configured learner; returns the
// report so callers can print it.
inline ValidationReport validate_config_schedules(const ExperimentConfig& cfg) {
    if (cfg.algorithm == Algorithm::comm) return validate_comm_schedule(cfg.gamma);
    const PayoffMode mode =
        cfg.algorithm == Algorithm::payoff_one_point ? PayoffMode::one_point : PayoffMode::two_point;
    return validate_payoff_schedules(cfg.gamma, cfg.sigma, mode);
}

inline ExperimentConfig load_config(const std::filesystem::path& path, bool force = false) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error("config parse error in " + path.string() + ": " + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg = parse_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("config error in " + path.string() + ": " + e.what());
    }
    cfg.force = cfg.force || force;
    if (!cfg.force) {
        const auto report = validate_config_schedules(cfg);
        if (!report.admissible) {
            throw validation_error("schedules rejected for " + path.string() + ":\n" + report.to_text());
        }
    }
    return cfg;
}

// --- running -----------------------------------------------------------------

namespace detail {

inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

struct BuiltGame {
    std::shared_ptr<const GameModel> game;
    std::vector<double> h;  // resolved reward factors when flow-control
};

inline BuiltGame build_game(const GameSpec& spec) {
    BuiltGame out;
    switch (spec.type) {
        case GameSpec::Type::flow_control: {
            std::vector<double> h = spec.h;
            if (h.empty()) {
                const std::uint64_t hs = spec.h_seed.value_or(derive_seed(0xF10BULL, 0));
                h = FlowControlGame::random(spec.n, hs).rewards();
            }
            out.h = h;
            out.game = std::make_shared<FlowControlGame>(std::move(h));
            return out;
        }
        case GameSpec::Type::quadratic: {
            std::vector<double> c = spec.center;
            if (c.empty()) c.assign(static_cast<std::size_t>(spec.n), 0.0);
            out.game = std::make_shared<QuadraticGame>(std::move(c));
            return out;
        }
        case GameSpec::Type::custom:
            if (!spec.custom) {
                throw validation_error("custom games must be attached programmatically");
            }
            out.game = spec.custom;
            return out;
    }
    throw std::logic_error("unreachable");
}

namespace detail {

struct SeedRunOutput {
    RunSummary summary;
    std::string trace_csv;  // rendered file content
};

inline SeedRunOutput run_one_seed(const ExperimentConfig& cfg, const std::shared_ptr<const GameModel>& game,
                                  std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = game->agent_count();
    std::mt19937_64 init_rng(derive_seed(seed, 1));
    const auto thr = plateau_thresholds(cfg.algorithm);

    SeedRunOutput out;
    out.summary.seed = seed;
    std::vector<std::pair<std::int64_t, double>> phis;

    if (cfg.algorithm == Algorithm::comm) {
        CommConfig rc;
        rc.game = game;
        rc.schedule = std::make_shared<GraphSchedule>(
            generate_random_s_connected(n, cfg.graph_s, cfg.graph_density, derive_seed(seed, 2)));
        rc.gamma = cfg.gamma;
        rc.noise = cfg.noise;
        rc.horizon = cfg.horizon;
        rc.seed = seed;
        rc.log_stride = cfg.log_stride;
        rc.log_actions = cfg.log_state;
        rc.validate = !cfg.force;
        if (cfg.init.kind == InitSpec::Kind::sphere) {
            for (int i = 0; i < n; ++i) rc.initial_x.push_back(random_sphere_point(init_rng, n, cfg.init.radius));
        } else {
            if (cfg.init.values.size() != static_cast<std::size_t>(n)) {
                throw validation_error("explicit init values must have length n");
            }
            rc.initial_x.assign(static_cast<std::size_t>(n), cfg.init.values);
        }
        const CommTrace trace = run_comm(rc);
        for (const auto& row : trace.rows) phis.emplace_back(row.t, row.phi);
        out.summary.final_phi = trace.rows.back().phi;
        out.summary.final_grad_norm = trace.rows.back().grad_norm_xbar;
        std::ostringstream os;
        write_csv(os, trace, cfg.log_state);
        out.trace_csv = os.str();
    } else {
        PayoffConfig rc;
        rc.game = game;
        rc.gamma = cfg.gamma;
        rc.sigma = cfg.sigma;
        rc.mode = cfg.algorithm == Algorithm::payoff_one_point ? PayoffMode::one_point : PayoffMode::two_point;
        rc.horizon = cfg.horizon;
        rc.seed = seed;
        rc.log_stride = cfg.log_stride;
        rc.log_means = cfg.log_state;
        rc.validate = !cfg.force;
        if (cfg.init.kind == InitSpec::Kind::sphere) {
            rc.mu0 = random_sphere_point(init_rng, n, cfg.init.radius);
        } else {
            if (cfg.init.values.size() != static_cast<std::size_t>(n)) {
                throw validation_error("explicit init values must have length n");
            }
            rc.mu0 = cfg.init.values;
        }
        const PayoffTrace trace = run_payoff(rc);
        for (const auto& row : trace.rows) phis.emplace_back(row.t, row.phi_mu);
        out.summary.final_phi = trace.rows.back().phi_mu;
        out.summary.final_grad_norm = trace.rows.back().grad_norm_mu;
        std::ostringstream os;
        write_csv(os, trace, cfg.log_state);
        out.trace_csv = os.str();
    }

    const auto rep = assess_plateau(phis, out.summary.final_grad_norm, cfg.horizon, thr);
    out.summary.plateau = rep.plateau;
    out.summary.plateau_onset = rep.onset;
    out.summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace detail

// Output directory after applying the environment root override: a relative
// config path lands under $POTENTIAL_PLAY_OUT when that is set.
inline std::filesystem::path resolve_output_dir(const std::string& output) {
    if (output.empty()) return {};
    std::filesystem::path p(output);
    if (const char* root = std::getenv(kOutputRootEnv); root && *root && p.is_relative()) {
        return std::filesystem::path(root) / p;
    }
    return p;
}

inline const char* kSummaryHeader = "seed,final_phi,final_grad_norm,plateau,plateau_onset,trace_file";

// Runs every configured seed (in parallel when allowed), writes one trace
// CSV per seed plus summary.csv and resolved_config.json when an output
// directory is configured, and returns the per-run summaries in seed-list
// order. Rerunning the same config reproduces every trace byte for byte.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (!cfg.force) {
        const auto report = validate_config_schedules(cfg);
        if (!report.admissible) {
            throw validation_error("schedules inadmissible:\n" + report.to_text());
        }
    }
    const auto built = build_game(cfg.game);

    std::vector<detail::SeedRunOutput> outputs(cfg.seeds.size());
    std::vector<std::exception_ptr> failures(cfg.seeds.size());
    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs) : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cfg.seeds.size())));

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cfg.seeds.size()) return;
            try {
                outputs[k] = detail::run_one_seed(cfg, built.game, cfg.seeds[k]);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    ExperimentResult result;
    result.resolved_h = built.h;
    result.out_dir = resolve_output_dir(cfg.output);
    if (!result.out_dir.empty()) {
        std::filesystem::create_directories(result.out_dir);
    }
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        auto& summary = outputs[k].summary;
        summary.trace_file = "trace_seed" + std::to_string(summary.seed) + ".csv";
        if (!result.out_dir.empty()) {
            std::ofstream tf(result.out_dir / summary.trace_file, std::ios::binary);
            if (!tf) throw std::runtime_error("cannot write trace file in " + result.out_dir.string());
            tf << outputs[k].trace_csv;
        }
        result.summaries.push_back(summary);
    }
    if (!result.out_dir.empty()) {
        std::ofstream sf(result.out_dir / "summary.csv", std::ios::binary);
        if (!sf) throw std::runtime_error("cannot write summary.csv in " + result.out_dir.string());
        sf << kSummaryHeader << '\n';
        for (const auto& s : result.summaries) {
            sf << s.seed << ',' << detail::format_g17(s.final_phi) << ','
               << detail::format_g17(s.final_grad_norm) << ',' << (s.plateau ? 1 : 0) << ','
               << s.plateau_onset << ',' << s.trace_file << '\n';
        }

        nlohmann::json resolved;
        resolved["name"] = cfg.name;
        resolved["algorithm"] = cfg.algorithm == Algorithm::comm
                                    ? "comm"
                                    : (cfg.algorithm == Algorithm::payoff_one_point ? "payoff-one-point"
                                                                                    : "payoff-two-point");
        resolved["horizon"] = cfg.horizon;
        resolved["seeds"] = cfg.seeds;
        resolved["gamma"] = {{"coefficient", cfg.gamma.coefficient}, {"exponent", cfg.gamma.exponent}};
        if (cfg.algorithm != Algorithm::comm) {
            resolved["sigma"] = {{"coefficient", cfg.sigma.coefficient}, {"exponent", cfg.sigma.exponent}};
        }
        if (!built.h.empty()) {
            resolved["h"] = built.h;
            if (cfg.game.h.empty()) {
                resolved["h_seed"] = cfg.game.h_seed.value_or(derive_seed(0xF10BULL, 0));
            }
        }
        std::ofstream rf(result.out_dir / "resolved_config.json", std::ios::binary);
        rf << resolved.dump(2) << '\n';
    }
    return result;
}

// --- summaries ----------------------------------------------------------------

struct ExperimentAggregate {
    std::string dir;
    int runs = 0;
    int plateau_count = 0;
    double phi_q1 = 0.0, phi_median = 0.0, phi_q3 = 0.0;
    double grad_q1 = 0.0, grad_median = 0.0, grad_q3 = 0.0;
    double onset_median = 0.0, onset_mean = 0.0;
};

namespace detail {

inline double percentile(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    if (xs.empty()) return 0.0;
    const double pos = p * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline ExperimentAggregate aggregate_one(const std::filesystem::path& dir) {
    std::ifstream in(dir / "summary.csv");
    if (!in) throw std::runtime_error("no summary.csv in " + dir.string());
    std::string header;
    if (!std::getline(in, header) || header != kSummaryHeader) {
        throw std::runtime_error("summary schema mismatch in " + dir.string());
    }
    ExperimentAggregate agg;
    agg.dir = dir.string();
    std::vector<double> phis, grads, onsets;
    std::string line;
    std::string trace_header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cols = split_csv_line(line);
        if (cols.size() != 6) throw std::runtime_error("summary row malformed in " + dir.string());
        phis.push_back(std::stod(cols[1]));
        grads.push_back(std::stod(cols[2]));
        agg.plateau_count += cols[3] == "1" ? 1 : 0;
        onsets.push_back(std::stod(cols[4]));
        ++agg.runs;
        // traces referenced by the summary must exist and share one schema
        std::ifstream tf(dir / cols[5]);
        if (!tf) throw std::runtime_error("missing trace file " + cols[5] + " in " + dir.string());
        std::string th;
        std::getline(tf, th);
        if (trace_header.empty()) {
            trace_header = th;
        } else if (th != trace_header) {
            throw std::runtime_error("trace schema mismatch in " + dir.string());
        }
    }
    if (agg.runs == 0) throw std::runtime_error("summary.csv has no rows in " + dir.string());
    agg.phi_q1 = percentile(phis, 0.25);
    agg.phi_median = percentile(phis, 0.5);
    agg.phi_q3 = percentile(phis, 0.75);
    agg.grad_q1 = percentile(grads, 0.25);
    agg.grad_median = percentile(grads, 0.5);
    agg.grad_q3 = percentile(grads, 0.75);
    agg.onset_median = percentile(onsets, 0.5);
    double mean = 0.0;
    for (double o : onsets) mean += o;
    agg.onset_mean = mean / static_cast<double>(onsets.size());
    return agg;
}

}  // namespace detail

// Aggregates the experiment directory at root, or every immediate child
// directory that carries a summary.csv.
inline std::vector<ExperimentAggregate> summarize(const std::filesystem::path& root) {
    std::vector<ExperimentAggregate> out;
    if (std::filesystem::exists(root / "summary.csv")) {
        out.push_back(detail::aggregate_one(root));
        return out;
    }
    std::vector<std::filesystem::path> dirs;
    if (!std::filesystem::is_directory(root)) throw std::runtime_error("not a directory: " + root.string());
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        if (entry.is_directory() && std::filesystem::exists(entry.path() / "summary.csv")) {
            dirs.push_back(entry.path());
        }
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& d : dirs) out.push_back(detail::aggregate_one(d));
    if (out.empty()) throw std::runtime_error("no summary.csv found under " + root.string());
    return out;
}

inline std::string to_text(const std::vector<ExperimentAggregate>& aggs) {
    std::ostringstream os;
    for (const auto& a : aggs) {
        os << a.dir << '\n'
           << "  runs: " << a.runs << ", plateau: " << a.plateau_count << '/' << a.runs << '\n'
           << "  final phi     q1/median/q3: " << a.phi_q1 << " / " << a.phi_median << " / " << a.phi_q3
           << '\n'
           << "  final |grad|  q1/median/q3: " << a.grad_q1 << " / " << a.grad_median << " / " << a.grad_q3
           << '\n'
           << "  plateau onset median: " << a.onset_median << ", mean: " << a.onset_mean << '\n';
    }
    return os.str();
}

}  // namespace pplay
