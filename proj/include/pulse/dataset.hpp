#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulse/csv.hpp"
#include "pulse/medals.hpp"
#include "pulse/window.hpp"

namespace pulse {

enum class Problem { trend, threshold, peak };

inline std::string_view problem_name(Problem p) {
    switch (p) {
        case Problem::trend: return "trend";
        case Problem::threshold: return "threshold";
        case Problem::peak: return "peak";
    }
    return "?";
}

inline std::optional<Problem> parse_problem(std::string_view name) {
    if (name == "trend") return Problem::trend;
    if (name == "threshold") return Problem::threshold;
    if (name == "peak") return Problem::peak;
    return std::nullopt;
}

enum class FeatureBase {
    Act,
    Sent,
    DAct,
    DSent,
    D2Act,
    D2Sent,
    PercUniq,
    PercRep,
    MeanPl,
    SentPeak,
};

inline std::string_view feature_base_name(FeatureBase base) {
    switch (base) {
        case FeatureBase::Act: return "ACT";
        case FeatureBase::Sent: return "SENT";
        case FeatureBase::DAct: return "dACT";
        case FeatureBase::DSent: return "dSENT";
        case FeatureBase::D2Act: return "d2ACT";
        case FeatureBase::D2Sent: return "d2SENT";
        case FeatureBase::PercUniq: return "PERC_UNIQ";
        case FeatureBase::PercRep: return "PERC_REP";
        case FeatureBase::MeanPl: return "MEAN_PL";
        case FeatureBase::SentPeak: return "SENT_PEAK";
    }
    return "?";
}

// One predictor: a base series evaluated `lag` windows back. Sentiment-derived
// bases count as emotional dimensions.
struct FeatureId {
    FeatureBase base;
    int lag = 0;

    bool emotional() const {
        return base == FeatureBase::Sent || base == FeatureBase::DSent ||
               base == FeatureBase::D2Sent || base == FeatureBase::SentPeak;
    }

    // Windows needed behind t for this feature to be defined: the lag plus
    // the differencing depth of the base.
    int reach() const {
        switch (base) {
            case FeatureBase::DAct:
            case FeatureBase::DSent: return lag + 1;
            case FeatureBase::D2Act:
            case FeatureBase::D2Sent: return lag + 2;
            default: return lag;
        }
    }

    std::string name() const {
        return std::string(feature_base_name(base)) + "_lag" +
               std::to_string(lag);
    }

    bool operator==(const FeatureId&) const = default;
};

inline std::optional<FeatureId> parse_feature_name(std::string_view name) {
    const size_t pos = name.rfind("_lag");
    if (pos == std::string_view::npos) return std::nullopt;
    const auto lag = parse_int(name.substr(pos + 4));
    if (!lag || *lag < 0) return std::nullopt;
    const std::string_view base = name.substr(0, pos);
    constexpr FeatureBase kBases[] = {
        FeatureBase::Act,      FeatureBase::Sent,    FeatureBase::DAct,
        FeatureBase::DSent,    FeatureBase::D2Act,   FeatureBase::D2Sent,
        FeatureBase::PercUniq, FeatureBase::PercRep, FeatureBase::MeanPl,
        FeatureBase::SentPeak};
    for (const FeatureBase b : kBases)
        if (feature_base_name(b) == base)
            return FeatureId{b, static_cast<int>(*lag)};
    return std::nullopt;
}

inline int emotional_count(const std::vector<FeatureId>& subset) {
    int n = 0;
    for (const auto& f : subset) n += f.emotional() ? 1 : 0;
    return n;
}

// Predictor lists for the benchmark problems. Activity trend/threshold use
// strictly lagged features; peak classification also sees the current window.
inline std::vector<FeatureId> trend_catalog() {
    using B = FeatureBase;
    return {
        {B::Act, 1},      {B::Act, 2},    {B::Act, 3},   {B::Sent, 1},
        {B::Sent, 2},     {B::Sent, 3},   {B::DAct, 1},  {B::DAct, 2},
        {B::DSent, 1},    {B::DSent, 2},  {B::D2Act, 1}, {B::D2Act, 2},
        {B::D2Sent, 1},   {B::D2Sent, 2}, {B::PercRep, 1},
        {B::PercUniq, 1}, {B::MeanPl, 1},
    };
}

inline std::vector<FeatureId> threshold_catalog() { return trend_catalog(); }

inline std::vector<FeatureId> peak_catalog() {
    using B = FeatureBase;
    return {
        {B::Act, 0},      {B::Act, 1},      {B::Act, 2},
        {B::Sent, 0},     {B::Sent, 1},     {B::Sent, 2},
        {B::SentPeak, 0}, {B::SentPeak, 1}, {B::SentPeak, 2},
        {B::PercUniq, 0}, {B::PercUniq, 1}, {B::PercUniq, 2},
        {B::MeanPl, 0},   {B::MeanPl, 1},   {B::MeanPl, 2},
    };
}

inline std::vector<FeatureId> problem_catalog(Problem p) {
    return p == Problem::peak ? peak_catalog() : trend_catalog();
}

// Feature value at window t, or nullopt when the lag runs off the front or
// hits an unset derivative.
inline std::optional<double> feature_value(
    const std::vector<WindowFeatures>& windows, int64_t t,
    const FeatureId& f) {
    const int64_t i = t - f.lag;
    if (i < 0 || i >= static_cast<int64_t>(windows.size()))
        return std::nullopt;
    const auto& w = windows[static_cast<size_t>(i)];
    switch (f.base) {
        case FeatureBase::Act: return static_cast<double>(w.act);
        case FeatureBase::Sent: return w.sent;
        case FeatureBase::DAct:
            if (!w.d_act) return std::nullopt;
            return static_cast<double>(*w.d_act);
        case FeatureBase::DSent:
            if (!w.d_sent) return std::nullopt;
            return *w.d_sent;
        case FeatureBase::D2Act:
            if (!w.d2_act) return std::nullopt;
            return static_cast<double>(*w.d2_act);
        case FeatureBase::D2Sent:
            if (!w.d2_sent) return std::nullopt;
            return *w.d2_sent;
        case FeatureBase::PercUniq: return w.perc_uniq;
        case FeatureBase::PercRep: return w.perc_rep;
        case FeatureBase::MeanPl: return w.mean_pl;
        case FeatureBase::SentPeak: return w.sent_peak ? 1.0 : 0.0;
    }
    return std::nullopt;
}

struct Observation {
    int64_t window_index = 0;
    std::vector<double> values;  // catalog order
    int label = 1;               // class in {1, 2}
};

struct LabeledDataset {
    Problem problem = Problem::trend;
    std::vector<FeatureId> catalog;
    std::vector<Observation> observations;

    std::array<size_t, 2> class_counts() const {
        std::array<size_t, 2> counts{0, 0};
        for (const auto& o : observations) ++counts[o.label - 1];
        return counts;
    }
};

namespace detail {

// First window index for which every cataloged feature is defined.
inline int64_t warmup_windows(const std::vector<FeatureId>& catalog) {
    int reach = 0;
    for (const auto& f : catalog) reach = std::max(reach, f.reach());
    return reach;
}

inline Observation make_observation(const std::vector<WindowFeatures>& windows,
                                    int64_t t,
                                    const std::vector<FeatureId>& catalog) {
    Observation obs;
    obs.window_index = t;
    obs.values.reserve(catalog.size());
    for (const auto& f : catalog) obs.values.push_back(*feature_value(windows, t, f));
    return obs;
}

}  // namespace detail

// Will the next window have lower activity (class 1) or not (class 2)?
// Observations need every lagged feature defined plus a successor window.
inline LabeledDataset build_trend_dataset(
    const std::vector<WindowFeatures>& windows) {
    if (windows.size() < 5)
        throw std::runtime_error("trend dataset: fewer than 5 windows");
    LabeledDataset ds;
    ds.problem = Problem::trend;
    ds.catalog = trend_catalog();
    const int64_t first = detail::warmup_windows(ds.catalog);
    const auto n = static_cast<int64_t>(windows.size());
    for (int64_t t = first; t + 1 < n; ++t) {
        Observation obs = detail::make_observation(windows, t, ds.catalog);
        obs.label = windows[t + 1].act < windows[t].act ? 1 : 2;
        ds.observations.push_back(std::move(obs));
    }
    return ds;
}

// Is activity in the current window under the threshold (class 1) or not
// (class 2)? Labels use the current window; predictors are all lagged. The
// trend problem's eligibility range is reused for comparability.
inline LabeledDataset build_threshold_dataset(
    const std::vector<WindowFeatures>& windows, int threshold = 500) {
    if (windows.size() < 5)
        throw std::runtime_error("threshold dataset: fewer than 5 windows");
    LabeledDataset ds;
    ds.problem = Problem::threshold;
    ds.catalog = threshold_catalog();
    const int64_t first = detail::warmup_windows(ds.catalog);
    const auto n = static_cast<int64_t>(windows.size());
    for (int64_t t = first; t + 1 < n; ++t) {
        Observation obs = detail::make_observation(windows, t, ds.catalog);
        obs.label = windows[t].act < threshold ? 1 : 2;
        ds.observations.push_back(std::move(obs));
    }
    return ds;
}

// Did this activity peak co-occur with a medal event? One observation per
// activity-peak window; class 2 iff a medal time falls within the window
// extended by tolerance_windows windows on both sides.
inline LabeledDataset build_peak_dataset(
    const std::vector<WindowFeatures>& windows,
    const std::vector<MedalEvent>& medals, int tolerance_windows = 2) {
    if (windows.size() < 2)
        throw std::runtime_error("peak dataset: fewer than 2 windows");
    const int64_t w = windows[1].start_time - windows[0].start_time;
    LabeledDataset ds;
    ds.problem = Problem::peak;
    ds.catalog = peak_catalog();
    const int64_t first = detail::warmup_windows(ds.catalog);
    const auto n = static_cast<int64_t>(windows.size());
    for (int64_t t = first; t < n; ++t) {
        if (!windows[t].act_peak) continue;
        Observation obs = detail::make_observation(windows, t, ds.catalog);
        const int64_t lo = windows[t].start_time - tolerance_windows * w;
        const int64_t hi = windows[t].start_time + w + tolerance_windows * w;
        obs.label = 1;
        for (const auto& m : medals) {
            if (m.time >= lo && m.time <= hi) {
                obs.label = 2;
                break;
            }
        }
        ds.observations.push_back(std::move(obs));
    }
    return ds;
}

// Majority-class share: the accuracy floor any useful classifier must beat.
inline double majority_fraction(const LabeledDataset& ds) {
    if (ds.observations.empty()) return 0.0;
    const auto counts = ds.class_counts();
    return static_cast<double>(std::max(counts[0], counts[1])) /
           static_cast<double>(ds.observations.size());
}

inline void write_dataset(std::ostream& os, const LabeledDataset& ds) {
    for (size_t i = 0; i < ds.catalog.size(); ++i) {
        if (i) os << ',';
        os << ds.catalog[i].name();
    }
    os << ",label\n";
    for (const auto& obs : ds.observations) {
        for (const double v : obs.values) os << format_double(v) << ',';
        os << obs.label << '\n';
    }
}

// Reads a dataset CSV; the problem tag is not stored in the file, so the
// caller supplies it (metadata only).
inline LabeledDataset read_dataset(std::istream& is,
                                   Problem problem = Problem::trend) {
    CsvReader reader(is);
    std::vector<std::string> fields;
    if (!reader.next_row(fields) || fields.size() < 2 ||
        fields.back() != "label")
        throw std::runtime_error("dataset CSV: missing or malformed header");
    LabeledDataset ds;
    ds.problem = problem;
    for (size_t i = 0; i + 1 < fields.size(); ++i) {
        const auto f = parse_feature_name(fields[i]);
        if (!f)
            throw std::runtime_error("dataset CSV: unknown feature name \"" +
                                     fields[i] + "\"");
        ds.catalog.push_back(*f);
    }
    while (reader.next_row(fields)) {
        if (fields.size() != ds.catalog.size() + 1)
            throw std::runtime_error("dataset CSV: bad row at line " +
                                     std::to_string(reader.line_no()));
        Observation obs;
        obs.values.reserve(ds.catalog.size());
        for (size_t i = 0; i < ds.catalog.size(); ++i) {
            const auto v = parse_double(fields[i]);
            if (!v)
                throw std::runtime_error("dataset CSV: bad value at line " +
                                         std::to_string(reader.line_no()));
            obs.values.push_back(*v);
        }
        const auto label = parse_int(fields.back());
        if (!label || (*label != 1 && *label != 2))
            throw std::runtime_error("dataset CSV: bad label at line " +
                                     std::to_string(reader.line_no()));
        obs.label = static_cast<int>(*label);
        ds.observations.push_back(std::move(obs));
    }
    return ds;
}

}  // namespace pulse
