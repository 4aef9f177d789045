#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "pulse/matrix.hpp"

namespace pulse {

// Gaussian naive Bayes: independent per-feature normals per class.
// The variance floor keeps binary features (e.g. peak flags) usable when a
// class stratum is pure.
struct NaiveBayesModel {
    static constexpr double kVarianceFloor = 1e-9;

    size_t dim = 0;
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> mean;
    std::array<std::vector<double>, 2> var;

    double log_joint(int cls, const double* x) const {
        double s = log_prior[cls];
        for (size_t j = 0; j < dim; ++j) {
            const double v = var[cls][j];
            const double d = x[j] - mean[cls][j];
            s += -0.5 * std::log(2.0 * std::numbers::pi * v) -
                 d * d / (2.0 * v);
        }
        return s;
    }

    // Normalized class posteriors {P(class 1 | x), P(class 2 | x)}.
    std::array<double, 2> posterior(const double* x) const {
        const double l0 = log_joint(0, x), l1 = log_joint(1, x);
        const double m = l0 > l1 ? l0 : l1;
        const double e0 = std::exp(l0 - m), e1 = std::exp(l1 - m);
        return {e0 / (e0 + e1), e1 / (e0 + e1)};
    }

    int predict(const double* x) const {
        return log_joint(1, x) > log_joint(0, x) ? 2 : 1;
    }
};

inline NaiveBayesModel fit_naive_bayes(const Matrix& x,
                                       std::span<const int> labels) {
    NaiveBayesModel m;
    m.dim = x.cols;
    std::array<size_t, 2> count{0, 0};
    for (int c = 0; c < 2; ++c) {
        m.mean[c].assign(x.cols, 0.0);
        m.var[c].assign(x.cols, 0.0);
    }
    for (size_t i = 0; i < x.rows; ++i)
        ++count[labels[i] == 2 ? 1 : 0];
    if (count[0] == 0 || count[1] == 0)
        throw std::runtime_error("NB: degenerate split");

    for (size_t i = 0; i < x.rows; ++i) {
        const int c = labels[i] == 2 ? 1 : 0;
        for (size_t j = 0; j < x.cols; ++j) m.mean[c][j] += x.at(i, j);
    }
    for (int c = 0; c < 2; ++c)
        for (size_t j = 0; j < x.cols; ++j)
            m.mean[c][j] /= static_cast<double>(count[c]);
    for (size_t i = 0; i < x.rows; ++i) {
        const int c = labels[i] == 2 ? 1 : 0;
        for (size_t j = 0; j < x.cols; ++j) {
            const double d = x.at(i, j) - m.mean[c][j];
            m.var[c][j] += d * d;
        }
    }
    for (int c = 0; c < 2; ++c) {
        m.log_prior[c] = std::log(static_cast<double>(count[c]) /
                                  static_cast<double>(x.rows));
        for (size_t j = 0; j < x.cols; ++j) {
            m.var[c][j] /= static_cast<double>(count[c]);
            if (m.var[c][j] < NaiveBayesModel::kVarianceFloor)
                m.var[c][j] = NaiveBayesModel::kVarianceFloor;
        }
    }
    return m;
}

}  // namespace pulse
