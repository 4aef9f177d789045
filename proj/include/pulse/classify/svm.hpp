#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "pulse/classify/kernel.hpp"
#include "pulse/classify/smo.hpp"
#include "pulse/matrix.hpp"

namespace pulse {

// Soft-margin kernel SVM trained by SMO. Labels map class 1 -> -1,
// class 2 -> +1; prediction is class 2 iff the decision value is >= 0.
struct SvmModel {
    KernelKind kind = KernelKind::linear;
    KernelParams params;
    Matrix support_x;                      // standardized support vectors
    std::vector<double> coef;              // alpha_i * y_i
    std::vector<double> support_self_dot;  // cached x_i . x_i
    double b = 0.0;
    bool converged = false;

    double decision_value(std::span<const double> x) const {
        if (x.size() != support_x.cols)
            throw std::invalid_argument("svm: dimension mismatch");
        const double xx = dot(x.data(), x.data(), x.size());
        double f = b;
        for (size_t i = 0; i < support_x.rows; ++i) {
            const double xy = dot(support_x.row(i), x.data(), x.size());
            f += coef[i] *
                 kernel_from_dots(kind, params, xy, support_self_dot[i], xx);
        }
        return f;
    }

    int predict(std::span<const double> x) const {
        return decision_value(x) >= 0 ? 2 : 1;
    }
};

inline std::vector<double> svm_labels(std::span<const int> labels12) {
    std::vector<double> y(labels12.size());
    for (size_t i = 0; i < labels12.size(); ++i)
        y[i] = labels12[i] == 2 ? 1.0 : -1.0;
    return y;
}

inline SvmModel fit_svm(KernelKind kind, const KernelParams& params,
                        const Matrix& x, std::span<const int> labels,
                        double C, double tol, int max_passes) {
    bool has1 = false, has2 = false;
    for (const int l : labels) (l == 2 ? has2 : has1) = true;
    if (!has1 || !has2) throw std::runtime_error("SVM: degenerate split");

    const std::vector<double> y = svm_labels(labels);
    MatrixKernelSource source(x, kind, params);
    KernelRowCache cache(source);
    const SmoResult res = smo_solve(cache, y, C, tol, max_passes);

    SvmModel m;
    m.kind = kind;
    m.params = params;
    m.b = res.b;
    m.converged = res.converged;
    size_t n_sv = 0;
    for (const double a : res.alpha) n_sv += a > 0 ? 1 : 0;
    m.support_x = Matrix(n_sv, x.cols);
    m.coef.reserve(n_sv);
    m.support_self_dot.reserve(n_sv);
    size_t r = 0;
    for (size_t i = 0; i < res.alpha.size(); ++i) {
        if (res.alpha[i] <= 0) continue;
        for (size_t j = 0; j < x.cols; ++j)
            m.support_x.at(r, j) = x.at(i, j);
        m.coef.push_back(res.alpha[i] * y[i]);
        m.support_self_dot.push_back(dot(x.row(i), x.row(i), x.cols));
        ++r;
    }
    return m;
}

}  // namespace pulse
