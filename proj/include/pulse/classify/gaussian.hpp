#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "pulse/classify/linalg.hpp"
#include "pulse/matrix.hpp"

namespace pulse {

// Gaussian discriminant shared by LDA and QDA: per-class mean and a
// covariance Cholesky factor (LDA stores the pooled factor in both slots,
// so both methods score through the exact same code path).
struct GaussianModel {
    size_t dim = 0;
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> mean;
    std::array<std::vector<double>, 2> chol;  // lower triangular, dim x dim
    std::array<double, 2> log_det{};

    // Log class score up to a shared constant.
    double discriminant(int cls, const double* x) const {
        std::vector<double> diff(dim);
        for (size_t j = 0; j < dim; ++j) diff[j] = x[j] - mean[cls][j];
        return log_prior[cls] - 0.5 * log_det[cls] -
               0.5 * mahalanobis_sq(chol[cls], dim, diff.data());
    }

    // Posterior tie breaks to class 1.
    int predict(const double* x) const {
        return discriminant(1, x) > discriminant(0, x) ? 2 : 1;
    }
};

namespace detail {

// Ridge scaled to the covariance magnitude; lagged features are strongly
// collinear and need it.
inline void regularize_covariance(std::vector<double>& cov, size_t d) {
    double trace = 0;
    for (size_t j = 0; j < d; ++j) trace += cov[j * d + j];
    const double lambda = 1e-6 * trace / static_cast<double>(d);
    for (size_t j = 0; j < d; ++j) cov[j * d + j] += lambda;
}

inline std::array<std::vector<size_t>, 2> class_index_split(
    std::span<const int> labels) {
    std::array<std::vector<size_t>, 2> idx;
    for (size_t i = 0; i < labels.size(); ++i)
        idx[labels[i] == 2 ? 1 : 0].push_back(i);
    return idx;
}

}  // namespace detail

// labels are classes in {1, 2}; x is already standardized.
inline GaussianModel fit_lda(const Matrix& x, std::span<const int> labels) {
    const size_t d = x.cols;
    const auto idx = detail::class_index_split(labels);
    if (idx[0].size() < 2 || idx[1].size() < 2)
        throw std::runtime_error("LDA: degenerate split");

    GaussianModel m;
    m.dim = d;
    std::vector<double> pooled(d * d, 0.0);
    for (int c = 0; c < 2; ++c) {
        m.mean[c].assign(d, 0.0);
        for (const size_t i : idx[c])
            for (size_t j = 0; j < d; ++j) m.mean[c][j] += x.at(i, j);
        for (size_t j = 0; j < d; ++j)
            m.mean[c][j] /= static_cast<double>(idx[c].size());
        m.log_prior[c] = std::log(static_cast<double>(idx[c].size()) /
                                  static_cast<double>(x.rows));
        for (const size_t i : idx[c]) {
            for (size_t a = 0; a < d; ++a) {
                const double da = x.at(i, a) - m.mean[c][a];
                for (size_t b = 0; b <= a; ++b)
                    pooled[a * d + b] += da * (x.at(i, b) - m.mean[c][b]);
            }
        }
    }
    const double denom = static_cast<double>(x.rows - 2);
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b <= a; ++b) {
            pooled[a * d + b] /= denom;
            pooled[b * d + a] = pooled[a * d + b];
        }
    detail::regularize_covariance(pooled, d);
    const auto chol = cholesky(pooled, d);
    if (!chol) throw std::runtime_error("LDA: singular covariance");
    m.chol[0] = *chol;
    m.chol[1] = *chol;
    m.log_det[0] = m.log_det[1] = cholesky_log_det(*chol, d);
    return m;
}

inline GaussianModel fit_qda(const Matrix& x, std::span<const int> labels) {
    const size_t d = x.cols;
    const auto idx = detail::class_index_split(labels);
    if (idx[0].size() < 2 || idx[1].size() < 2)
        throw std::runtime_error("QDA: degenerate split");

    GaussianModel m;
    m.dim = d;
    for (int c = 0; c < 2; ++c) {
        const auto& rows = idx[c];
        m.mean[c].assign(d, 0.0);
        for (const size_t i : rows)
            for (size_t j = 0; j < d; ++j) m.mean[c][j] += x.at(i, j);
        for (size_t j = 0; j < d; ++j)
            m.mean[c][j] /= static_cast<double>(rows.size());
        m.log_prior[c] = std::log(static_cast<double>(rows.size()) /
                                  static_cast<double>(x.rows));

        std::vector<double> cov(d * d, 0.0);
        for (const size_t i : rows)
            for (size_t a = 0; a < d; ++a) {
                const double da = x.at(i, a) - m.mean[c][a];
                for (size_t b = 0; b <= a; ++b)
                    cov[a * d + b] += da * (x.at(i, b) - m.mean[c][b]);
            }
        const double denom = static_cast<double>(rows.size() - 1);
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b <= a; ++b) {
                cov[a * d + b] /= denom;
                cov[b * d + a] = cov[a * d + b];
            }
        detail::regularize_covariance(cov, d);
        const auto chol = cholesky(cov, d);
        if (!chol) throw std::runtime_error("QDA: singular covariance");
        m.chol[c] = *chol;
        m.log_det[c] = cholesky_log_det(*chol, d);
    }
    return m;
}

}  // namespace pulse
