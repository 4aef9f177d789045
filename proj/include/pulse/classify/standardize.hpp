#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "pulse/matrix.hpp"

namespace pulse {

// Per-feature affine map to zero mean / unit spread, fitted on training data
// only. Constant columns pass through centered with a unit divisor.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;  // population; 1.0 for constant columns

    static Standardizer fit(const Matrix& x) {
        if (x.rows == 0)
            throw std::invalid_argument("standardize: empty training matrix");
        Standardizer s;
        s.mean.assign(x.cols, 0.0);
        s.stddev.assign(x.cols, 0.0);
        for (size_t i = 0; i < x.rows; ++i)
            for (size_t j = 0; j < x.cols; ++j) s.mean[j] += x.at(i, j);
        for (size_t j = 0; j < x.cols; ++j)
            s.mean[j] /= static_cast<double>(x.rows);
        for (size_t i = 0; i < x.rows; ++i)
            for (size_t j = 0; j < x.cols; ++j) {
                const double d = x.at(i, j) - s.mean[j];
                s.stddev[j] += d * d;
            }
        for (size_t j = 0; j < x.cols; ++j) {
            s.stddev[j] = std::sqrt(s.stddev[j] / static_cast<double>(x.rows));
            if (s.stddev[j] == 0.0) s.stddev[j] = 1.0;
        }
        return s;
    }

    void apply_row(const double* in, double* out) const {
        for (size_t j = 0; j < mean.size(); ++j)
            out[j] = (in[j] - mean[j]) / stddev[j];
    }

    Matrix apply(const Matrix& x) const {
        if (x.cols != mean.size())
            throw std::invalid_argument("standardize: dimension mismatch");
        Matrix out(x.rows, x.cols);
        for (size_t i = 0; i < x.rows; ++i) apply_row(x.row(i), out.row(i));
        return out;
    }

    std::vector<double> apply_vector(std::span<const double> v) const {
        if (v.size() != mean.size())
            throw std::invalid_argument("standardize: dimension mismatch");
        std::vector<double> out(v.size());
        apply_row(v.data(), out.data());
        return out;
    }
};

}  // namespace pulse
