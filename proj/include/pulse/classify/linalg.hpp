#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace pulse {

// Cholesky factor (lower triangular, row-major d x d) of a symmetric
// positive-definite matrix, or nullopt if the matrix is not PD.
inline std::optional<std::vector<double>> cholesky(
    const std::vector<double>& a, size_t d) {
    std::vector<double> l(d * d, 0.0);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double s = a[i * d + j];
            for (size_t k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
            if (i == j) {
                if (s <= 0) return std::nullopt;
                l[i * d + i] = std::sqrt(s);
            } else {
                l[i * d + j] = s / l[j * d + j];
            }
        }
    }
    return l;
}

inline double cholesky_log_det(const std::vector<double>& l, size_t d) {
    double s = 0;
    for (size_t i = 0; i < d; ++i) s += std::log(l[i * d + i]);
    return 2.0 * s;
}

// Squared Mahalanobis distance v' (L L')^-1 v via one forward solve.
inline double mahalanobis_sq(const std::vector<double>& l, size_t d,
                             const double* v) {
    double out = 0;
    std::vector<double> z(d);
    for (size_t i = 0; i < d; ++i) {
        double s = v[i];
        for (size_t k = 0; k < i; ++k) s -= l[i * d + k] * z[k];
        z[i] = s / l[i * d + i];
        out += z[i] * z[i];
    }
    return out;
}

}  // namespace pulse
