// potential-play: simulation driver for distributed learning in
// continuous-action potential games.
//
// Subcommands:
//   run <config.json>       execute an experiment (one run per seed)
//   validate-schedule       check step/variance schedule admissibility
//   check-game <config>     potential-identity and gradient probes
//   gen-graphs              emit a random windowed-connectivity schedule
//   verify-graphs           verify an edge-list schedule
//   summarize <dir>         aggregate experiment summaries
//
// Exit codes: 0 success, 1 validation failure, 2 runtime error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "pplay/errors.hpp"
#include "pplay/experiment.hpp"
#include "pplay/game.hpp"
#include "pplay/graph_schedule.hpp"
#include "pplay/schedules.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& config_path, bool force) {
    const auto cfg = pplay::load_config(config_path, force);
    const auto result = pplay::run_experiment(cfg);
    if (!result.out_dir.empty()) {
        fs::copy_file(config_path, result.out_dir / "config.json", fs::copy_options::overwrite_existing);
    }
    std::printf("experiment %s: %zu runs\n", cfg.name.c_str(), result.summaries.size());
    for (const auto& s : result.summaries) {
        std::printf("  seed %llu: phi=%.6g |grad|=%.3g plateau=%s onset=%lld (%.2fs)\n",
                    static_cast<unsigned long long>(s.seed), s.final_phi, s.final_grad_norm,
                    s.plateau ? "yes" : "no", static_cast<long long>(s.plateau_onset), s.wall_seconds);
    }
    if (!result.out_dir.empty()) {
        std::printf("artifacts in %s\n", result.out_dir.string().c_str());
    }
    return 0;
}

int cmd_validate_schedule(double p, double q, double cg, double cs, const std::string& mode) {
    pplay::ValidationReport report;
    if (mode == "comm") {
        report = pplay::validate_comm_schedule(pplay::ScheduleSpec(cg, p));
    } else {
        report = pplay::validate_payoff_schedules(pplay::ScheduleSpec(cg, p), pplay::ScheduleSpec(cs, q),
                                                  pplay::PayoffMode::one_point);
    }
    std::fputs(report.to_text().c_str(), stdout);
    return report.admissible ? 0 : 1;
}

int cmd_check_game(const std::string& config_path, int samples, double radius, std::uint64_t seed) {
    const auto cfg = pplay::load_config(config_path, /*force=*/true);
    const auto built = pplay::build_game(cfg.game);
    const auto& game = *built.game;

    const auto rep = pplay::check_potential_identity(game, samples, radius, seed);
    const double grad_bound = pplay::max_abs_partial_probe(game, samples, radius, seed + 1);
    const double coord_l = pplay::coordinate_lipschitz_probe(game, samples, radius, seed + 2);
    const double grad_l = pplay::gradient_lipschitz_probe(game, samples, radius, seed + 3);
    const double growth = pplay::utility_growth_probe(game, samples, 5.0 * radius, seed + 4);

    std::printf("potential identity over %d samples in [-%g, %g]^%d\n", rep.samples, rep.radius, rep.radius,
                game.agent_count());
    std::printf("  max |dU_i/da_i - dphi/da_i| (analytic)        : %.3g\n", rep.max_analytic_gap);
    std::printf("  max |dU_i/da_i - central difference of phi|   : %.3g (step %.1g)\n", rep.max_fd_gap,
                rep.fd_step);
    std::printf("probes\n");
    std::printf("  max |dphi/da_i|                               : %.4g\n", grad_bound);
    std::printf("  coordinate-wise gradient Lipschitz estimate   : %.4g\n", coord_l);
    std::printf("  full gradient Lipschitz estimate              : %.4g\n", grad_l);
    std::printf("  |U_i| / (1 + ||a||) growth estimate           : %.4g\n", growth);

    const bool ok = rep.max_analytic_gap <= 1e-12 && rep.max_fd_gap <= 1e-5;
    std::printf("%s\n", ok ? "identity holds" : "identity VIOLATED");
    return ok ? 0 : 1;
}

int cmd_gen_graphs(int n, int s, double density, std::uint64_t seed, std::int64_t horizon,
                   const std::string& out_path) {
    const auto sched = pplay::generate_random_s_connected(n, s, density, seed);
    const auto report = pplay::verify_s_strong_connectivity(sched, horizon);
    if (!report.ok) throw pplay::validation_error(report.to_text());
    if (out_path.empty()) {
        pplay::write_edge_list(std::cout, sched, horizon);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        pplay::write_edge_list(out, sched, horizon);
    }
    return 0;
}

int cmd_verify_graphs(int s, const std::string& in_path) {
    std::int64_t horizon = 0;
    pplay::GraphSchedule sched = [&] {
        if (in_path.empty()) return pplay::read_edge_list(std::cin, s, &horizon);
        std::ifstream in(in_path);
        if (!in) throw std::runtime_error("cannot open " + in_path);
        return pplay::read_edge_list(in, s, &horizon);
    }();
    if (horizon < s) throw pplay::validation_error("edge list shorter than one connectivity window");
    const auto report = pplay::verify_s_strong_connectivity(sched, horizon);
    std::printf("%s\n", report.to_text().c_str());
    return report.ok ? 0 : 1;
}

int cmd_summarize(const std::string& dir) {
    const auto aggs = pplay::summarize(dir);
    std::fputs(pplay::to_text(aggs).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed learning in continuous-action potential games"};
    app.require_subcommand(1);

    std::string config_path;
    bool force = false;
    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_flag("--force", force, "run even if the schedules fail admissibility checks");

    double p = 0.6, q = 0.13, cg = 1.0, cs = 1.0;
    std::string mode = "payoff";
    auto* vs = app.add_subcommand("validate-schedule", "check schedule admissibility");
    vs->add_option("--p", p, "step-size exponent")->required();
    vs->add_option("--q", q, "variance exponent (payoff mode)");
    vs->add_option("--coeff-gamma", cg, "step-size coefficient");
    vs->add_option("--coeff-sigma", cs, "variance coefficient");
    vs->add_option("--mode", mode, "comm | payoff")->check(CLI::IsMember({"comm", "payoff"}));

    std::string game_config;
    int samples = 1000;
    double radius = 5.0;
    std::uint64_t probe_seed = 1;
    auto* cg_cmd = app.add_subcommand("check-game", "potential identity and gradient probes");
    cg_cmd->add_option("config", game_config, "experiment config naming the game")->required();
    cg_cmd->add_option("--samples", samples, "sample count per probe");
    cg_cmd->add_option("--radius", radius, "cube half-width");
    cg_cmd->add_option("--seed", probe_seed, "probe seed");

    int gn = 10, gs = 4;
    double gdensity = 0.1;
    std::uint64_t gseed = 1;
    std::int64_t ghorizon = 200;
    std::string gout;
    auto* gg = app.add_subcommand("gen-graphs", "emit a windowed-connectivity graph schedule");
    gg->add_option("--n", gn, "node count");
    gg->add_option("--s", gs, "connectivity window");
    gg->add_option("--density", gdensity, "random edge density");
    gg->add_option("--seed", gseed, "generator seed");
    gg->add_option("--horizon", ghorizon, "number of time slots to emit");
    gg->add_option("--out", gout, "output file (default stdout)");

    int vgs = 4;
    std::string vin;
    auto* vg = app.add_subcommand("verify-graphs", "verify an edge-list schedule");
    vg->add_option("--s", vgs, "connectivity window");
    vg->add_option("--in", vin, "input file (default stdin)");

    std::string sum_dir;
    auto* sm = app.add_subcommand("summarize", "aggregate experiment summaries");
    sm->add_option("dir", sum_dir, "experiment directory or parent of several")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, force);
        if (vs->parsed()) return cmd_validate_schedule(p, q, cg, cs, mode);
        if (cg_cmd->parsed()) return cmd_check_game(game_config, samples, radius, probe_seed);
        if (gg->parsed()) return cmd_gen_graphs(gn, gs, gdensity, gseed, ghorizon, gout);
        if (vg->parsed()) return cmd_verify_graphs(vgs, vin);
        if (sm->parsed()) return cmd_summarize(sum_dir);
    } catch (const pplay::validation_error& e) {
        std::fprintf(stderr, "validation failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
