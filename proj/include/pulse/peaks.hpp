#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pulse/window.hpp"

namespace pulse {

enum class PeakDetect { maxima, minima, both };

struct PeakDetectionParams {
    double delta = 1.0;  // emission threshold, > 0
    PeakDetect detect = PeakDetect::both;
};

struct PeakList {
    std::vector<std::pair<size_t, double>> maxima;
    std::vector<std::pair<size_t, double>> minima;
};

// Alternating delta-threshold scan: track the running extreme and emit it
// once the series moves more than delta away, then switch direction.
// Emitted maxima and minima strictly alternate; indices increase.
inline PeakList detect_peaks(std::span<const double> series,
                             const PeakDetectionParams& params) {
    if (!(params.delta > 0))
        throw std::invalid_argument("peak detection: delta must be positive");

    PeakList peaks;
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    size_t mx_pos = 0, mn_pos = 0;
    bool look_for_max = true;

    for (size_t i = 0; i < series.size(); ++i) {
        const double v = series[i];
        if (!std::isfinite(v))
            throw std::invalid_argument(
                "peak detection: non-finite value in series");
        if (v > mx) {
            mx = v;
            mx_pos = i;
        }
        if (v < mn) {
            mn = v;
            mn_pos = i;
        }
        if (look_for_max) {
            if (v < mx - params.delta) {
                peaks.maxima.emplace_back(mx_pos, mx);
                mn = v;
                mn_pos = i;
                look_for_max = false;
            }
        } else {
            if (v > mn + params.delta) {
                peaks.minima.emplace_back(mn_pos, mn);
                mx = v;
                mx_pos = i;
                look_for_max = true;
            }
        }
    }

    if (params.detect == PeakDetect::maxima) peaks.minima.clear();
    if (params.detect == PeakDetect::minima) peaks.maxima.clear();
    return peaks;
}

// Scale-relative default: half the population standard deviation, with a
// tiny floor for constant series.
inline double suggest_delta(std::span<const double> series) {
    if (series.empty()) return 1.0;
    double mean = 0;
    for (const double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    double var = 0;
    for (const double v : series) var += (v - mean) * (v - mean);
    var /= static_cast<double>(series.size());
    const double delta = 0.5 * std::sqrt(var);
    return delta > 0 ? delta : 1.0;
}

// Flags windows whose index is a detected maximum of the ACT (activity) and
// SENT (sentiment) series respectively.
inline void mark_peaks(std::vector<WindowFeatures>& windows,
                       const PeakDetectionParams& act_params,
                       const PeakDetectionParams& sent_params) {
    std::vector<double> act(windows.size()), sent(windows.size());
    for (size_t i = 0; i < windows.size(); ++i) {
        act[i] = windows[i].act;
        sent[i] = windows[i].sent;
        windows[i].act_peak = false;
        windows[i].sent_peak = false;
    }
    for (const auto& [idx, value] : detect_peaks(act, act_params).maxima)
        windows[idx].act_peak = true;
    for (const auto& [idx, value] : detect_peaks(sent, sent_params).maxima)
        windows[idx].sent_peak = true;
}

}  // namespace pulse
