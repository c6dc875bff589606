#pragma once

// Power-law step and variance schedules, value(t) = c / t^e for t >= 1,
// plus analytic admissibility checks for the two learner families and a
// numeric partial-sum probe that cross-checks the analytic verdicts.
//
// Every check reduces to exponent arithmetic on sum_t t^(-r):
// the series diverges iff r <= 1. Boundary cases (r == 1) are harmonic
// and therefore divergent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pplay {

struct ScheduleSpec {
    double coefficient = 1.0;
    double exponent = 0.0;

    ScheduleSpec() = default;
    ScheduleSpec(double c, double e) : coefficient(c), exponent(e) {
        if (!std::isfinite(c) || c < 0.0) {
            throw std::invalid_argument("schedule coefficient must be finite and >= 0");
        }
        if (!std::isfinite(e) || e < 0.0) {
            throw std::invalid_argument("schedule exponent must be finite and >= 0");
        }
    }

    // Computed directly from t so repeated evaluation cannot drift.
    double value(std::int64_t t) const {
        if (t < 1) throw std::invalid_argument("schedules are defined for t >= 1");
        return coefficient * std::pow(static_cast<double>(t), -exponent);
    }
};

struct ConditionVerdict {
    std::string description;
    bool pass = false;
};

struct ValidationReport {
    bool admissible = false;
    std::vector<ConditionVerdict> conditions;
    std::string note;

    std::string to_text() const {
        std::size_t width = 0;
        for (const auto& c : conditions) width = std::max(width, c.description.size());
        std::ostringstream os;
        for (const auto& c : conditions) {
            os << "  " << std::left << std::setw(static_cast<int>(width)) << c.description
               << "  ->  " << (c.pass ? "pass" : "FAIL") << '\n';
        }
        os << (admissible ? "admissible" : "inadmissible") << '\n';
        if (!note.empty()) os << "note: " << note << '\n';
        return os.str();
    }
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

inline void add_condition(ValidationReport& rep, std::string text, bool pass) {
    rep.conditions.push_back({std::move(text), pass});
    rep.admissible = rep.admissible && pass;
}

}  // namespace detail

// Communication learner: step sizes gamma(t) = c / t^nu are admissible for
// nu in (1/2, 1] with c > 0.
inline ValidationReport validate_comm_schedule(const ScheduleSpec& gamma) {
    ValidationReport rep;
    rep.admissible = true;
    const double nu = gamma.exponent;
    detail::add_condition(rep, "coefficient > 0: " + detail::fmt(gamma.coefficient),
                          gamma.coefficient > 0.0);
    detail::add_condition(rep, "1/2 < nu <= 1: nu = " + detail::fmt(nu), nu > 0.5 && nu <= 1.0);
    return rep;
}

enum class PayoffMode { one_point, two_point };

// Payoff learner with gamma(t) = c_g / t^p and sigma(t) = c_s / t^q.
// The admissibility conditions, reduced to exponent inequalities:
//   (1) sum gamma sigma^3 = inf      <=>  p + 3q <= 1
//   (2) sum gamma sigma^4 < inf      <=>  p + 4q >  1
//   (3) sum gamma^2 < inf            <=>  2p > 1
//   (4) sum (gamma/sqrt(tail))^3 < inf:  gamma(t)/sqrt(sum_{k>t} gamma^2(k))
//       is Theta(t^{-1/2}), so the cube sums iff 2p > 1 holds at all
//   (5) sum gamma sigma^4 / sqrt(tail) < inf  <=>  4q + 1/2 > 1, i.e. q > 1/8
// The same set is applied in both modes; the two-point analysis would
// permit dropping the square-summability clause of (3), which the report
// notes and the validator deliberately does not exploit.
inline ValidationReport validate_payoff_schedules(const ScheduleSpec& gamma, const ScheduleSpec& sigma,
                                                  PayoffMode mode = PayoffMode::one_point) {
    ValidationReport rep;
    rep.admissible = true;
    const double p = gamma.exponent;
    const double q = sigma.exponent;
    detail::add_condition(rep,
                          "coefficients > 0: c_gamma = " + detail::fmt(gamma.coefficient) +
                              ", c_sigma = " + detail::fmt(sigma.coefficient),
                          gamma.coefficient > 0.0 && sigma.coefficient > 0.0);
    detail::add_condition(rep, "sum gamma*sigma^3 diverges, p+3q <= 1: " + detail::fmt(p + 3 * q) + " <= 1",
                          p + 3 * q <= 1.0);
    detail::add_condition(rep, "sum gamma*sigma^4 converges, p+4q > 1: " + detail::fmt(p + 4 * q) + " > 1",
                          p + 4 * q > 1.0);
    detail::add_condition(rep, "sum gamma^2 converges, 2p > 1: " + detail::fmt(2 * p) + " > 1", 2 * p > 1.0);
    detail::add_condition(rep,
                          "sum (gamma/sqrt(gamma^2 tail))^3 converges, reduces to 2p > 1: " +
                              detail::fmt(2 * p) + " > 1",
                          2 * p > 1.0);
    detail::add_condition(rep, "sum gamma*sigma^4/sqrt(gamma^2 tail) converges, q > 1/8: " + detail::fmt(q) + " > 0.125",
                          q > 0.125);
    if (mode == PayoffMode::two_point) {
        rep.note =
            "two-point mode: the full one-point condition set is applied (conservative); "
            "the two-point analysis would drop the square-summable step clause";
    }
    return rep;
}

// Plain partial sum of a user expression over t = 1..terms.
inline double partial_sum(const std::function<double(std::int64_t)>& term, std::int64_t terms) {
    if (terms < 1) throw std::invalid_argument("partial_sum: terms must be >= 1");
    double s = 0.0;
    for (std::int64_t t = 1; t <= terms; ++t) s += term(t);
    return s;
}

// Integral estimate of sum_{k > t} gamma^2(k) for a power-law schedule:
// c^2 * t^(1-2p) / (2p - 1). Only meaningful when the tail converges.
inline double gamma_sq_tail_estimate(const ScheduleSpec& gamma, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("gamma_sq_tail_estimate: t must be >= 1");
    const double p = gamma.exponent;
    if (2.0 * p <= 1.0) {
        throw std::invalid_argument("gamma_sq_tail_estimate: divergent tail (2p <= 1)");
    }
    const double c = gamma.coefficient;
    return c * c * std::pow(static_cast<double>(t), 1.0 - 2.0 * p) / (2.0 * p - 1.0);
}

// Exact tail sum up to a numeric horizon plus the integral estimate of the
// remainder beyond it.
inline double gamma_sq_tail(const ScheduleSpec& gamma, std::int64_t t, std::int64_t horizon) {
    if (t < 1 || horizon < t) throw std::invalid_argument("gamma_sq_tail: need 1 <= t <= horizon");
    double s = 0.0;
    for (std::int64_t k = t + 1; k <= horizon; ++k) {
        const double g = gamma.value(k);
        s += g * g;
    }
    return s + gamma_sq_tail_estimate(gamma, horizon);
}

// Partial sums recorded at 10^k terms. For power sums sum t^(-r) the ratio
// of consecutive decade increments approaches 10^(1-r): ratios >= 1 mean
// divergence (r <= 1), ratios < 1 mean convergence.
struct DecadeProbe {
    std::vector<std::int64_t> checkpoints;
    std::vector<double> sums;
    double last_increment_ratio = 0.0;
    bool suggests_divergence = false;
};

inline DecadeProbe probe_decades(const std::function<double(std::int64_t)>& term, std::int64_t max_terms) {
    if (max_terms < 1000) throw std::invalid_argument("probe_decades: need at least 1000 terms");
    DecadeProbe probe;
    double s = 0.0;
    std::int64_t next = 10;
    for (std::int64_t t = 1; t <= max_terms; ++t) {
        s += term(t);
        if (t == next || t == max_terms) {
            if (probe.checkpoints.empty() || probe.checkpoints.back() != t) {
                probe.checkpoints.push_back(t);
                probe.sums.push_back(s);
            }
            next *= 10;
        }
    }
    const std::size_t m = probe.sums.size();
    if (m >= 3) {
        const double inc_prev = probe.sums[m - 2] - probe.sums[m - 3];
        const double inc_last = probe.sums[m - 1] - probe.sums[m - 2];
        probe.last_increment_ratio = inc_prev > 0.0 ? inc_last / inc_prev : 0.0;
    }
    // small tolerance so harmonic-type boundaries classify as divergent
    probe.suggests_divergence = probe.last_increment_ratio >= 0.995;
    return probe;
}

}  // namespace pplay
