#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "pulse/matrix.hpp"

namespace pulse {

enum class KernelKind { linear, quadratic, poly3, mlp, rbf };

inline std::string_view kernel_name(KernelKind k) {
    switch (k) {
        case KernelKind::linear: return "linear";
        case KernelKind::quadratic: return "quadratic";
        case KernelKind::poly3: return "poly3";
        case KernelKind::mlp: return "mlp";
        case KernelKind::rbf: return "rbf";
    }
    return "?";
}

struct KernelParams {
    double sigma = 1.0;   // rbf width
    double slope = 1.0;   // mlp
    double offset = -1.0; // mlp

    void validate(KernelKind kind) const {
        if (kind == KernelKind::rbf && !(sigma > 0))
            throw std::invalid_argument("kernel: sigma must be positive");
    }
};

// Kernel value from raw dot products. The rbf distance uses the dot-product
// identity so the precomputed-Gram path and the direct path agree bitwise;
// K(x,x) is exactly 1 there since the distance cancels to 0.
inline double kernel_from_dots(KernelKind kind, const KernelParams& p,
                               double xy, double xx, double yy) {
    switch (kind) {
        case KernelKind::linear: return xy;
        case KernelKind::quadratic: {
            const double t = xy + 1.0;
            return t * t;
        }
        case KernelKind::poly3: {
            const double t = xy + 1.0;
            return t * t * t;
        }
        case KernelKind::mlp: return std::tanh(p.slope * xy + p.offset);
        case KernelKind::rbf: {
            const double d2 = std::max(0.0, xx + yy - 2.0 * xy);
            return std::exp(-d2 / (2.0 * p.sigma * p.sigma));
        }
    }
    return 0.0;
}

inline double kernel_eval(KernelKind kind, const KernelParams& p,
                          std::span<const double> x,
                          std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("kernel: dimension mismatch");
    p.validate(kind);
    const double xy = dot(x.data(), y.data(), x.size());
    if (kind != KernelKind::rbf) return kernel_from_dots(kind, p, xy, 0, 0);
    return kernel_from_dots(kind, p, xy, dot(x.data(), x.data(), x.size()),
                            dot(y.data(), y.data(), y.size()));
}

}  // namespace pulse
