#pragma once

// Exhaustive oracle for the soft-margin SVM dual: enumerates every
// bounded/free pattern of the box-constrained QP (3^n patterns), solves the
// stationarity system on each free face subject to the equality constraint,
// and returns the best feasible objective. Independent of the SMO path.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace testsupport {

// Gaussian elimination with partial pivoting; nullopt if singular.
inline std::optional<std::vector<double>> solve_dense(
    std::vector<std::vector<double>> a, std::vector<double> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline double dual_objective_of(const std::vector<std::vector<double>>& k,
                                const std::vector<double>& y,
                                const std::vector<double>& alpha) {
    const size_t n = y.size();
    double lin = 0, quad = 0;
    for (size_t i = 0; i < n; ++i) {
        lin += alpha[i];
        for (size_t j = 0; j < n; ++j)
            quad += alpha[i] * alpha[j] * y[i] * y[j] * k[i][j];
    }
    return lin - 0.5 * quad;
}

// Max of W(alpha) = sum(alpha) - 1/2 alpha' Q alpha over the box [0,C]^n
// intersected with sum(alpha_i y_i) = 0.
inline double qp_dual_max(const std::vector<std::vector<double>>& k,
                          const std::vector<double>& y, double c_bound) {
    const size_t n = y.size();
    double best = -1e300;
    std::vector<int> pattern(n);  // 0 = at zero, 1 = at C, 2 = free

    size_t total = 1;
    for (size_t i = 0; i < n; ++i) total *= 3;

    for (size_t code = 0; code < total; ++code) {
        size_t rem = code;
        std::vector<size_t> free_idx;
        std::vector<double> alpha(n, 0.0);
        double bound_ay = 0.0;
        for (size_t i = 0; i < n; ++i) {
            pattern[i] = static_cast<int>(rem % 3);
            rem /= 3;
            if (pattern[i] == 1) {
                alpha[i] = c_bound;
                bound_ay += c_bound * y[i];
            } else if (pattern[i] == 2) {
                free_idx.push_back(i);
            }
        }

        if (free_idx.empty()) {
            if (std::abs(bound_ay) > 1e-9) continue;
            best = std::max(best, dual_objective_of(k, y, alpha));
            continue;
        }

        // Stationarity on the free block with multiplier mu:
        //   sum_{j free} Q_ij a_j + mu y_i = 1 - sum_{j at C} Q_ij C
        //   sum_{i free} y_i a_i = -bound_ay
        const size_t m = free_idx.size();
        std::vector<std::vector<double>> a(m + 1,
                                           std::vector<double>(m + 1, 0.0));
        std::vector<double> rhs(m + 1, 0.0);
        for (size_t r = 0; r < m; ++r) {
            const size_t i = free_idx[r];
            for (size_t cidx = 0; cidx < m; ++cidx) {
                const size_t j = free_idx[cidx];
                a[r][cidx] = y[i] * y[j] * k[i][j];
            }
            a[r][m] = y[i];
            double fixed = 0.0;
            for (size_t j = 0; j < n; ++j)
                if (pattern[j] == 1) fixed += y[i] * y[j] * k[i][j] * c_bound;
            rhs[r] = 1.0 - fixed;
        }
        for (size_t cidx = 0; cidx < m; ++cidx)
            a[m][cidx] = y[free_idx[cidx]];
        rhs[m] = -bound_ay;

        const auto sol = solve_dense(a, rhs);
        if (!sol) continue;
        bool feasible = true;
        for (size_t r = 0; r < m && feasible; ++r) {
            const double v = (*sol)[r];
            feasible = v >= -1e-9 && v <= c_bound + 1e-9;
        }
        if (!feasible) continue;
        for (size_t r = 0; r < m; ++r)
            alpha[free_idx[r]] =
                std::min(c_bound, std::max(0.0, (*sol)[r]));
        best = std::max(best, dual_objective_of(k, y, alpha));
    }
    return best;
}

}  // namespace testsupport
