#pragma once

// Communication-based learner. Each agent runs push-sum on its estimate of
// the joint action and, after mixing, nudges its own coordinate along the
// noisy utility gradient:
//
//   e_i(t+1) = gamma(t+1) * (dU_i/da_i(a_hat_i(t+1)) + xi_i(t)) * unit_i
//   x_i(t+1) = w_i(t+1) + e_i(t+1)
//   a_i(t+1) = a_hat_i(t+1)[i]
//
// The perturbation lives only in the agent's own coordinate; the noise
// xi is zero-mean with bounded support.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "pplay/errors.hpp"
#include "pplay/game.hpp"
#include "pplay/graph_schedule.hpp"
#include "pplay/push_sum.hpp"
#include "pplay/rng.hpp"
#include "pplay/schedules.hpp"
#include "pplay/vec.hpp"

namespace pplay {

struct NoiseSpec {
    enum class Kind { uniform_symmetric, truncated_gaussian };
    Kind kind = Kind::uniform_symmetric;
    double scale = 0.1;  // support bound: |xi| <= scale almost surely

    double draw(std::mt19937_64& rng) const {
        if (!(scale >= 0.0)) throw std::invalid_argument("noise scale must be >= 0");
        if (scale == 0.0) return 0.0;
        switch (kind) {
            case Kind::uniform_symmetric:
                return uniform_symmetric(rng, scale);
            case Kind::truncated_gaussian: {
                const double sd = scale / 3.0;
                for (;;) {
                    const double v = sd * standard_normal(rng);
                    if (std::abs(v) <= scale) return v;
                }
            }
        }
        throw std::logic_error("unreachable");
    }
};

struct CommConfig {
    std::shared_ptr<const GameModel> game;
    std::shared_ptr<const GraphSchedule> schedule;
    ScheduleSpec gamma{1.0, 0.9};
    NoiseSpec noise;
    std::vector<std::vector<double>> initial_x;  // one length-N vector per agent
    std::int64_t horizon = 4000;
    std::uint64_t seed = 1;
    std::int64_t log_stride = 10;
    bool log_actions = false;
    bool validate = true;  // schedule admissibility + windowed connectivity
};

struct CommState {
    PushSumState ps;
    JointAction action;  // a_i(t) = a_hat_i(t)[i]
    std::int64_t t = 0;
    std::mt19937_64 rng;
};

struct CommTraceRow {
    std::int64_t t = 0;
    double phi = 0.0;                // phi(a(t))
    double grad_norm_xbar = 0.0;     // ||grad phi(xbar(t))||
    double consensus_err_max = 0.0;  // max_i ||a_hat_i(t) - xbar(t-1)||
    double residual_norm = 0.0;
    JointAction action;
    std::vector<double> xbar;
};

struct CommTrace {
    int n_agents = 0;
    std::vector<CommTraceRow> rows;
};

// (1/N) || v || with v_i = dU_i/da_i(a_hat_i) - dphi/da_i(xbar): the gap
// between the direction the agents actually inject and the true gradient
// at the average state.
inline double residual_norm(const GameModel& game, const std::vector<std::vector<double>>& a_hats,
                            const std::vector<double>& xbar) {
    const int n = game.agent_count();
    if (a_hats.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("residual_norm: one estimate per agent is required");
    }
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = game.utility_partial(i, a_hats[static_cast<std::size_t>(i)]) -
                         game.potential_partial(i, xbar);
        s += d * d;
    }
    return std::sqrt(s) / static_cast<double>(n);
}

inline CommState comm_initial_state(const CommConfig& config) {
    if (!config.game) throw std::invalid_argument("comm config needs a game");
    if (!config.schedule) throw std::invalid_argument("comm config needs a graph schedule");
    const int n = config.game->agent_count();
    if (config.schedule->node_count() != n) {
        throw std::invalid_argument("graph schedule and game disagree on agent count");
    }
    if (config.initial_x.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("comm config needs one initial vector per agent");
    }
    CommState st;
    st.ps = PushSumState::from_initial(config.initial_x);
    if (st.ps.dim() != n) throw std::invalid_argument("comm initial vectors must have length N");
    st.action.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        st.action[static_cast<std::size_t>(i)] = st.ps.a_hat[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    st.t = 0;
    st.rng.seed(config.seed);
    return st;
}

// One synchronous round: mix, perturb own coordinate, advance the clock.
inline void comm_step(CommState& st, const CommConfig& config) {
    const int n = config.game->agent_count();
    const Digraph g = config.schedule->graph_at(st.t);
    PushSumState mixed = push_sum_mix(st.ps, g);
    const double step = config.gamma.value(st.t + 1);
    for (int i = 0; i < n; ++i) {
        const double grad = config.game->utility_partial(i, mixed.a_hat[static_cast<std::size_t>(i)]);
        const double xi = config.noise.draw(st.rng);
        mixed.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += step * (grad + xi);
        st.action[static_cast<std::size_t>(i)] = mixed.a_hat[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    st.ps = std::move(mixed);
    st.t += 1;
}

namespace detail {

inline CommTraceRow comm_trace_row(const CommState& st, const CommConfig& config,
                                   const std::vector<double>& prev_xbar) {
    CommTraceRow row;
    row.t = st.t;
    row.action = st.action;
    row.xbar = st.ps.x_average();
    row.phi = config.game->potential(st.action);
    row.grad_norm_xbar = l2_norm(config.game->potential_gradient(row.xbar));
    row.consensus_err_max = max_consensus_error(st.ps, prev_xbar);
    row.residual_norm = residual_norm(*config.game, st.ps.a_hat, prev_xbar);
    return row;
}

}  // namespace detail

inline CommTrace run_comm(const CommConfig& config) {
    if (config.horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    if (config.log_stride < 1) throw std::invalid_argument("log stride must be >= 1");
    if (config.validate) {
        const auto gamma_report = validate_comm_schedule(config.gamma);
        if (!gamma_report.admissible) {
            throw validation_error("comm step-size schedule inadmissible:\n" + gamma_report.to_text());
        }
        if (config.horizon >= config.schedule->window()) {
            const auto conn = verify_s_strong_connectivity(*config.schedule, config.horizon);
            if (!conn.ok) throw validation_error("graph schedule fails connectivity: " + conn.to_text());
        }
    }
    CommState st = comm_initial_state(config);
    CommTrace trace;
    trace.n_agents = config.game->agent_count();
    std::vector<double> prev_xbar = st.ps.x_average();
    trace.rows.push_back(detail::comm_trace_row(st, config, prev_xbar));
    for (std::int64_t t = 0; t < config.horizon; ++t) {
        prev_xbar = st.ps.x_average();
        comm_step(st, config);
        if (st.t % config.log_stride == 0 || st.t == config.horizon) {
            trace.rows.push_back(detail::comm_trace_row(st, config, prev_xbar));
        }
    }
    return trace;
}

// CSV schema: t, phi, grad_norm_xbar, consensus_err_max, residual_norm
// and optionally the joint action. Doubles carry 17 significant digits so
// a rerun reproduces the file byte for byte.
inline void write_csv(std::ostream& os, const CommTrace& trace, bool include_actions) {
    char buf[64];
    const auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
    };
    os << "t,phi,grad_norm_xbar,consensus_err_max,residual_norm";
    if (include_actions) {
        for (int i = 1; i <= trace.n_agents; ++i) os << ",a_" << i;
    }
    os << '\n';
    for (const auto& row : trace.rows) {
        os << row.t << ',';
        put(row.phi);
        os << ',';
        put(row.grad_norm_xbar);
        os << ',';
        put(row.consensus_err_max);
        os << ',';
        put(row.residual_norm);
        if (include_actions) {
            for (double a : row.action) {
                os << ',';
                put(a);
            }
        }
        os << '\n';
    }
}

}  // namespace pplay
