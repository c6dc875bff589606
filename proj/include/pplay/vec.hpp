#pragma once

// Dense vector helpers shared by the protocol and learner code.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pplay {

inline double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

inline double l2_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("l2_distance: size mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

// Component-wise mean of a family of equally sized vectors.
inline std::vector<double> mean_vector(const std::vector<std::vector<double>>& vs) {
    if (vs.empty()) throw std::invalid_argument("mean_vector: empty input");
    std::vector<double> m(vs.front().size(), 0.0);
    for (const auto& v : vs) {
        if (v.size() != m.size()) throw std::invalid_argument("mean_vector: size mismatch");
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += v[k];
    }
    const double inv = 1.0 / static_cast<double>(vs.size());
    for (auto& x : m) x *= inv;
    return m;
}

inline bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace pplay
