#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "pulse/classify/kernel.hpp"
#include "pulse/matrix.hpp"

namespace pulse {

// Materializes full kernel rows on demand. Two backings: direct evaluation
// from the sample matrix, or a transform over a precomputed dot-product Gram
// shared across kernels in a sweep.
class KernelRowSource {
public:
    virtual ~KernelRowSource() = default;
    virtual size_t size() const = 0;
    virtual double diag(size_t i) const = 0;
    virtual void fill_row(size_t i, double* out) const = 0;
};

class MatrixKernelSource final : public KernelRowSource {
public:
    MatrixKernelSource(const Matrix& x, KernelKind kind,
                       const KernelParams& params)
        : x_(x), kind_(kind), params_(params), self_dot_(x.rows) {
        params.validate(kind);
        for (size_t i = 0; i < x.rows; ++i)
            self_dot_[i] = dot(x.row(i), x.row(i), x.cols);
    }

    size_t size() const override { return x_.rows; }

    double diag(size_t i) const override {
        return kernel_from_dots(kind_, params_, self_dot_[i], self_dot_[i],
                                self_dot_[i]);
    }

    void fill_row(size_t i, double* out) const override {
        const double* xi = x_.row(i);
        for (size_t k = 0; k < x_.rows; ++k)
            out[k] = kernel_from_dots(kind_, params_,
                                      dot(xi, x_.row(k), x_.cols),
                                      self_dot_[i], self_dot_[k]);
    }

private:
    const Matrix& x_;
    KernelKind kind_;
    KernelParams params_;
    std::vector<double> self_dot_;
};

class GramKernelSource final : public KernelRowSource {
public:
    // gram holds raw pairwise dot products of the training rows.
    GramKernelSource(const Matrix& gram, KernelKind kind,
                     const KernelParams& params)
        : gram_(gram), kind_(kind), params_(params) {
        params.validate(kind);
    }

    size_t size() const override { return gram_.rows; }

    double diag(size_t i) const override {
        const double s = gram_.at(i, i);
        return kernel_from_dots(kind_, params_, s, s, s);
    }

    void fill_row(size_t i, double* out) const override {
        const double* g = gram_.row(i);
        const double si = gram_.at(i, i);
        for (size_t k = 0; k < gram_.rows; ++k)
            out[k] = kernel_from_dots(kind_, params_, g[k], si,
                                      gram_.at(k, k));
    }

private:
    const Matrix& gram_;
    KernelKind kind_;
    KernelParams params_;
};

// Row memoizer: each kernel row is computed at most once per fit.
class KernelRowCache {
public:
    explicit KernelRowCache(const KernelRowSource& src)
        : src_(src), rows_(src.size()) {}

    size_t size() const { return src_.size(); }
    double diag(size_t i) const { return src_.diag(i); }

    const double* row(size_t i) {
        auto& r = rows_[i];
        if (r.empty()) {
            r.resize(src_.size());
            src_.fill_row(i, r.data());
        }
        return r.data();
    }

private:
    const KernelRowSource& src_;
    std::vector<std::vector<double>> rows_;
};

struct SmoResult {
    std::vector<double> alpha;
    double b = 0.0;
    bool converged = false;
    int passes = 0;
};

// Sequential minimal optimization for the soft-margin dual. Deterministic by
// construction: the outer loop scans indices in order and takes the first
// KKT violator; the partner is the max |E_i - E_j| index (ties to the lowest
// index); there are no randomized passes. Full sweeps alternate with sweeps
// over non-bound points, Platt-style.
inline SmoResult smo_solve(KernelRowCache& kernel,
                           std::span<const double> y, double C, double tol,
                           int max_passes) {
    const size_t n = kernel.size();
    if (n == 0) throw std::invalid_argument("smo: empty training set");
    if (!(C > 0)) throw std::invalid_argument("smo: C must be positive");

    SmoResult res;
    res.alpha.assign(n, 0.0);
    std::vector<double>& alpha = res.alpha;
    double& b = res.b;
    std::vector<double> err(n);  // E_i = f(x_i) - y_i; f = 0 initially
    for (size_t i = 0; i < n; ++i) err[i] = -y[i];

    const double snap = 1e-12 * std::max(1.0, C);

    auto take_step = [&](size_t i1, size_t i2) -> bool {
        if (i1 == i2) return false;
        const double a1 = alpha[i1], a2 = alpha[i2];
        const double y1 = y[i1], y2 = y[i2];
        const double e1 = err[i1], e2 = err[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (s < 0) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(C, C + a2 - a1);
        } else {
            lo = std::max(0.0, a2 + a1 - C);
            hi = std::min(C, a2 + a1);
        }
        if (lo >= hi) return false;

        const double* row1 = kernel.row(i1);
        const double* row2 = kernel.row(i2);
        const double k11 = kernel.diag(i1);
        const double k22 = kernel.diag(i2);
        const double k12 = row1[i2];
        const double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0) {
            a2_new = a2 + y2 * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            // Flat or indefinite direction: evaluate the objective at both
            // ends of the segment (Platt 12.2.3).
            const double f1 = y1 * (e1 + b) - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * (e2 + b) - s * a1 * k12 - a2 * k22;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double psi_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                                  0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double psi_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                                  0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (psi_lo < psi_hi - 1e-12)
                a2_new = lo;
            else if (psi_lo > psi_hi + 1e-12)
                a2_new = hi;
            else
                return false;
        }
        if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12))
            return false;

        double a1_new = a1 + s * (a2 - a2_new);
        if (a1_new < snap) a1_new = 0.0;
        else if (a1_new > C - snap) a1_new = C;
        if (a2_new < snap) a2_new = 0.0;
        else if (a2_new > C - snap) a2_new = C;

        const double d1 = y1 * (a1_new - a1);
        const double d2 = y2 * (a2_new - a2);
        const double b1 = b - e1 - d1 * k11 - d2 * k12;
        const double b2 = b - e2 - d1 * k12 - d2 * k22;
        double b_new;
        if (a1_new > 0 && a1_new < C) b_new = b1;
        else if (a2_new > 0 && a2_new < C) b_new = b2;
        else b_new = 0.5 * (b1 + b2);

        const double db = b_new - b;
        for (size_t k = 0; k < n; ++k)
            err[k] += d1 * row1[k] + d2 * row2[k] + db;

        alpha[i1] = a1_new;
        alpha[i2] = a2_new;
        b = b_new;
        return true;
    };

    auto violates = [&](size_t i) {
        const double r = err[i] * y[i];  // y_i f(x_i) - 1
        return (r < -tol && alpha[i] < C) || (r > tol && alpha[i] > 0);
    };

    auto examine = [&](size_t i) -> bool {
        if (!violates(i)) return false;
        // Partner choice: maximal |E_i - E_j|, ties to the lowest index.
        size_t best = n;
        double best_gap = -1.0;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double gap = std::abs(err[i] - err[j]);
            if (gap > best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        if (best == n) return false;
        return take_step(best, i);
    };

    bool examine_all = true;
    while (res.passes < max_passes) {
        ++res.passes;
        int changed = 0;
        for (size_t i = 0; i < n; ++i) {
            if (!examine_all && (alpha[i] <= 0 || alpha[i] >= C)) continue;
            if (examine(i)) ++changed;
        }
        if (examine_all) {
            if (changed == 0) {
                res.converged = true;
                break;
            }
            examine_all = false;
        } else if (changed == 0) {
            examine_all = true;
        }
    }
    return res;
}

struct KktReport {
    bool ok = false;
    double max_violation = 0.0;  // worst margin-condition breach
    double sum_alpha_y = 0.0;
};

// Independent optimality audit: recomputes every decision value from the
// kernel source (no reliance on the solver's error cache) and checks the
// box/margin conditions plus the equality constraint.
inline KktReport kkt_audit(KernelRowCache& kernel, std::span<const double> y,
                           std::span<const double> alpha, double b, double C,
                           double tol) {
    const size_t n = kernel.size();
    KktReport rep;
    std::vector<double> f(n, b);
    for (size_t j = 0; j < n; ++j) {
        if (alpha[j] <= 0) continue;
        const double* row = kernel.row(j);
        const double w = alpha[j] * y[j];
        for (size_t i = 0; i < n; ++i) f[i] += w * row[i];
    }
    for (size_t i = 0; i < n; ++i) {
        const double margin = y[i] * f[i];
        double violation = 0.0;
        if (alpha[i] <= 0) violation = std::max(0.0, 1.0 - margin);
        else if (alpha[i] >= C) violation = std::max(0.0, margin - 1.0);
        else violation = std::abs(margin - 1.0);
        rep.max_violation = std::max(rep.max_violation, violation);
        rep.sum_alpha_y += alpha[i] * y[i];
    }
    rep.ok = rep.max_violation <= tol && std::abs(rep.sum_alpha_y) <= tol;
    return rep;
}

// Dual objective: sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
inline double dual_objective(KernelRowCache& kernel,
                             std::span<const double> y,
                             std::span<const double> alpha) {
    const size_t n = kernel.size();
    double lin = 0, quad = 0;
    for (size_t i = 0; i < n; ++i) {
        lin += alpha[i];
        if (alpha[i] == 0) continue;
        const double* row = kernel.row(i);
        for (size_t j = 0; j < n; ++j)
            quad += alpha[i] * alpha[j] * y[i] * y[j] * row[j];
    }
    return lin - 0.5 * quad;
}

}  // namespace pulse
