#pragma once

// Payoff-based learner over Gaussian mixed strategies. Agent i samples
// a_i ~ N(mu_i, sigma^2) and updates the mean along a zeroth-order
// gradient estimate built from realized payoffs only:
//
//   one-point:  U_i(a) (a_i - mu_i) / sigma^2
//   two-point: (U_i(a) - U_i(mu)) (a_i - mu_i) / sigma^2
//
// Both are unbiased for the smoothed gradient, the expectation of
// dU_i/da_i under the Gaussian policy; the two-point form keeps a bounded
// variance regardless of where mu sits. The mean update is
//
//   mu(t+1) = mu(t) + gamma(t+1) sigma^3(t+1) * estimate(t)
//
// with the estimate's divisor being the sigma that generated a(t).
// The internal clock starts at t = 1 so the power-law schedules are
// always evaluated at arguments >= 1.

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
#include "pplay/rng.hpp"
#include "pplay/schedules.hpp"
#include "pplay/vec.hpp"

namespace pplay {

struct GaussianPolicy {
    std::vector<double> mu;
    double sigma = 1.0;

    void check() const {
        if (!(sigma > 0.0)) throw std::invalid_argument("policy sigma must be > 0");
        if (!all_finite(mu)) throw std::invalid_argument("policy mean must be finite");
    }
};

inline std::vector<double> one_point_estimate(const GameModel& game, const JointAction& a,
                                              const GaussianPolicy& policy) {
    policy.check();
    game.check_action(a);
    game.check_action(policy.mu);
    const int n = game.agent_count();
    const double inv_var = 1.0 / (policy.sigma * policy.sigma);
    std::vector<double> est(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        est[k] = game.utility(i, a) * (a[k] - policy.mu[k]) * inv_var;
    }
    return est;
}

inline std::vector<double> two_point_estimate(const GameModel& game, const JointAction& a,
                                              const GaussianPolicy& policy) {
    policy.check();
    game.check_action(a);
    game.check_action(policy.mu);
    const int n = game.agent_count();
    const double inv_var = 1.0 / (policy.sigma * policy.sigma);
    std::vector<double> est(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        est[k] = (game.utility(i, a) - game.utility(i, policy.mu)) * (a[k] - policy.mu[k]) * inv_var;
    }
    return est;
}

struct McGradient {
    std::vector<double> estimate;
    std::vector<double> std_error;
    std::int64_t samples = 0;
};

// Monte-Carlo oracle for the smoothed gradient: averages the analytic
// dU_i/dx_i over draws x ~ N(mu, sigma^2 I). Used as the reference that
// the payoff estimators are checked against.
inline McGradient mc_mixed_gradient(const GameModel& game, const GaussianPolicy& policy,
                                    std::int64_t n_samples, std::uint64_t seed) {
    policy.check();
    game.check_action(policy.mu);
    if (n_samples < 1000) throw std::invalid_argument("mc_mixed_gradient: need at least 1000 samples");
    const int n = game.agent_count();
    std::mt19937_64 rng(seed);
    std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sum_sq(static_cast<std::size_t>(n), 0.0);
    JointAction x(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < n_samples; ++s) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = policy.mu[k] + policy.sigma * standard_normal(rng);
        }
        for (int i = 0; i < n; ++i) {
            const double v = game.utility_partial(i, x);
            sum[static_cast<std::size_t>(i)] += v;
            sum_sq[static_cast<std::size_t>(i)] += v * v;
        }
    }
    McGradient out;
    out.samples = n_samples;
    out.estimate.resize(static_cast<std::size_t>(n));
    out.std_error.resize(static_cast<std::size_t>(n));
    const double m = static_cast<double>(n_samples);
    for (std::size_t k = 0; k < out.estimate.size(); ++k) {
        out.estimate[k] = sum[k] / m;
        const double var = std::max(0.0, sum_sq[k] / m - out.estimate[k] * out.estimate[k]);
        out.std_error[k] = std::sqrt(var / m);
    }
    return out;
}

struct PayoffConfig {
    std::shared_ptr<const GameModel> game;
    ScheduleSpec gamma{1.0, 0.6};
    ScheduleSpec sigma{1.0, 0.13};
    PayoffMode mode = PayoffMode::two_point;
    std::vector<double> mu0;
    std::int64_t horizon = 4000;
    std::uint64_t seed = 1;
    std::int64_t log_stride = 10;
    bool log_means = false;
    bool validate = true;
};

struct PayoffState {
    std::vector<double> mu;
    JointAction action;
    double sigma_draw = 0.0;  // the sigma that produced the current action
    std::int64_t t = 1;
    std::mt19937_64 rng;
};

struct PayoffTraceRow {
    std::int64_t t = 0;
    double phi_mu = 0.0;
    double phi_a = 0.0;
    double grad_norm_mu = 0.0;
    double sigma_t = 0.0;
    double gamma_t = 0.0;
    std::vector<double> mu;
    JointAction action;
    std::vector<double> estimate;  // raw estimator that produced this state
};

struct PayoffTrace {
    int n_agents = 0;
    std::vector<PayoffTraceRow> rows;
};

inline PayoffState payoff_initial_state(const PayoffConfig& config) {
    if (!config.game) throw std::invalid_argument("payoff config needs a game");
    const int n = config.game->agent_count();
    if (config.mu0.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("payoff config needs a length-N initial mean");
    }
    if (!all_finite(config.mu0)) throw std::invalid_argument("initial mean must be finite");
    PayoffState st;
    st.mu = config.mu0;
    st.t = 1;
    st.rng.seed(config.seed);
    st.sigma_draw = config.sigma.value(1);
    st.action.resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < st.action.size(); ++k) {
        st.action[k] = st.mu[k] + st.sigma_draw * standard_normal(st.rng);
    }
    return st;
}

// One iteration: estimate from the current sample, move the means, draw
// the next joint action with the shrunken sigma. Returns the raw estimate.
inline std::vector<double> payoff_step(PayoffState& st, const PayoffConfig& config) {
    const GaussianPolicy policy{st.mu, st.sigma_draw};
    std::vector<double> est = config.mode == PayoffMode::one_point
                                  ? one_point_estimate(*config.game, st.action, policy)
                                  : two_point_estimate(*config.game, st.action, policy);
    const double gamma_next = config.gamma.value(st.t + 1);
    const double sigma_next = config.sigma.value(st.t + 1);
    const double gain = gamma_next * sigma_next * sigma_next * sigma_next;
    for (std::size_t k = 0; k < st.mu.size(); ++k) st.mu[k] += gain * est[k];
    st.sigma_draw = sigma_next;
    for (std::size_t k = 0; k < st.action.size(); ++k) {
        st.action[k] = st.mu[k] + sigma_next * standard_normal(st.rng);
    }
    st.t += 1;
    return est;
}

namespace detail {

inline PayoffTraceRow payoff_trace_row(const PayoffState& st, const PayoffConfig& config,
                                       const std::vector<double>& est) {
    PayoffTraceRow row;
    row.t = st.t;
    row.mu = st.mu;
    row.action = st.action;
    row.phi_mu = config.game->potential(st.mu);
    row.phi_a = config.game->potential(st.action);
    row.grad_norm_mu = l2_norm(config.game->potential_gradient(st.mu));
    row.sigma_t = st.sigma_draw;
    row.gamma_t = config.gamma.value(st.t);
    row.estimate = est;
    return row;
}

}  // namespace detail

inline PayoffTrace run_payoff(const PayoffConfig& config) {
    if (config.horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    if (config.log_stride < 1) throw std::invalid_argument("log stride must be >= 1");
    if (config.validate) {
        const auto report = validate_payoff_schedules(config.gamma, config.sigma, config.mode);
        if (!report.admissible) {
            throw validation_error("payoff schedules inadmissible:\n" + report.to_text());
        }
    }
    PayoffState st = payoff_initial_state(config);
    PayoffTrace trace;
    trace.n_agents = config.game->agent_count();
    trace.rows.push_back(detail::payoff_trace_row(st, config, {}));
    const std::int64_t last = 1 + config.horizon;
    for (std::int64_t r = 0; r < config.horizon; ++r) {
        const auto est = payoff_step(st, config);
        if ((st.t - 1) % config.log_stride == 0 || st.t == last) {
            trace.rows.push_back(detail::payoff_trace_row(st, config, est));
        }
    }
    return trace;
}

// CSV schema: t, phi_mu, phi_a, grad_norm_mu, sigma_t, gamma_t and
// optionally the mean vector; 17 significant digits throughout.
inline void write_csv(std::ostream& os, const PayoffTrace& trace, bool include_means) {
    char buf[64];
    const auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
    };
    os << "t,phi_mu,phi_a,grad_norm_mu,sigma_t,gamma_t";
    if (include_means) {
        for (int i = 1; i <= trace.n_agents; ++i) os << ",mu_" << i;
    }
    os << '\n';
    for (const auto& row : trace.rows) {
        os << row.t << ',';
        put(row.phi_mu);
        os << ',';
        put(row.phi_a);
        os << ',';
        put(row.grad_norm_mu);
        os << ',';
        put(row.sigma_t);
        os << ',';
        put(row.gamma_t);
        if (include_means) {
            for (double m : row.mu) {
                os << ',';
                put(m);
            }
        }
        os << '\n';
    }
}

}  // namespace pplay
