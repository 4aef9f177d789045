#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulse/csv.hpp"
#include "pulse/sweep.hpp"

namespace pulse {

inline double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Quartiles {
    double min, q1, median, q3, max;
};

// Median-of-halves with the median excluded from both halves for odd counts
// (so {1,2,3,4,5} gives q1=1.5, q3=4.5). Degenerate single-value groups
// collapse the whole box.
inline Quartiles quartiles_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("quartiles of empty set");
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    Quartiles q{};
    q.min = v.front();
    q.max = v.back();
    q.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    if (n == 1) {
        q.q1 = q.q3 = q.median;
        return q;
    }
    const std::vector<double> lower(v.begin(), v.begin() + n / 2);
    const std::vector<double> upper(v.begin() + (n + 1) / 2, v.end());
    q.q1 = median_of(lower);
    q.q3 = median_of(upper);
    return q;
}

// Per (method, dimensionality): the best subset's mean accuracy, the grand
// mean, and the spread across all records of that group.
struct DimensionSummary {
    std::string method;
    int subset_size = 0;
    double best_accuracy = 0.0;  // max over subsets of mean-over-repetitions
    double mean_accuracy = 0.0;  // mean over all records of the group
    double stddev = 0.0;         // population, over all records
    size_t record_count = 0;
};

inline std::vector<DimensionSummary> summarize_by_dimension(
    const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("summarize: no records");
    std::map<std::pair<std::string, int>,
             std::map<std::string, std::vector<double>>>
        groups;
    for (const auto& r : rows)
        groups[{r.method, r.subset_size}][r.subset_ids].push_back(r.accuracy);

    std::vector<DimensionSummary> out;
    for (const auto& [key, by_subset] : groups) {
        DimensionSummary s;
        s.method = key.first;
        s.subset_size = key.second;
        double sum = 0;
        size_t count = 0;
        double best = 0;
        for (const auto& [ids, accs] : by_subset) {
            double subset_sum = 0;
            for (const double a : accs) subset_sum += a;
            best = std::max(best,
                            subset_sum / static_cast<double>(accs.size()));
            sum += subset_sum;
            count += accs.size();
        }
        s.best_accuracy = best;
        s.mean_accuracy = sum / static_cast<double>(count);
        double var = 0;
        for (const auto& [ids, accs] : by_subset)
            for (const double a : accs)
                var += (a - s.mean_accuracy) * (a - s.mean_accuracy);
        s.stddev = std::sqrt(var / static_cast<double>(count));
        s.record_count = count;
        out.push_back(std::move(s));
    }
    return out;
}

// Accuracy distribution for one (dimensionality, emotional-dimension count)
// cell, optionally restricted to a single method ("ALL" otherwise).
struct BoxSummary {
    std::string method;
    int subset_size = 0;
    int emotional_count = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    size_t count = 0;
};

inline std::vector<BoxSummary> summarize_by_emotion(
    const std::vector<ResultRow>& rows,
    const std::optional<std::string>& method_filter = std::nullopt) {
    if (rows.empty()) throw std::invalid_argument("summarize: no records");
    std::map<std::pair<int, int>, std::vector<double>> groups;
    for (const auto& r : rows) {
        if (method_filter && r.method != *method_filter) continue;
        groups[{r.subset_size, r.emotional_count}].push_back(r.accuracy);
    }
    std::vector<BoxSummary> out;
    for (const auto& [key, accs] : groups) {
        const Quartiles q = quartiles_of(accs);
        out.push_back({method_filter.value_or("ALL"), key.first, key.second,
                       q.min, q.q1, q.median, q.q3, q.max, accs.size()});
    }
    return out;
}

struct GroupKey {
    int subset_size = 0;
    int emotional_count = 0;
};

struct EmotionEffect {
    GroupKey from, to;
    double median_difference = 0.0;  // median(to) - median(from)
};

// Median accuracy shifts between (size, emotional-count) groups; pairs with
// an empty side are skipped (reported via the skipped list).
inline std::vector<EmotionEffect> emotion_effect(
    const std::vector<ResultRow>& rows,
    const std::vector<std::pair<GroupKey, GroupKey>>& pairs,
    std::vector<std::pair<GroupKey, GroupKey>>* skipped = nullptr,
    const std::optional<std::string>& method_filter = std::nullopt) {
    std::map<std::pair<int, int>, std::vector<double>> groups;
    for (const auto& r : rows) {
        if (method_filter && r.method != *method_filter) continue;
        groups[{r.subset_size, r.emotional_count}].push_back(r.accuracy);
    }
    std::vector<EmotionEffect> out;
    for (const auto& [from, to] : pairs) {
        const auto a = groups.find({from.subset_size, from.emotional_count});
        const auto b = groups.find({to.subset_size, to.emotional_count});
        if (a == groups.end() || b == groups.end()) {
            if (skipped) skipped->push_back({from, to});
            continue;
        }
        out.push_back(
            {from, to, median_of(b->second) - median_of(a->second)});
    }
    return out;
}

inline constexpr std::string_view kDimSummaryCsvHeader =
    "method,subset_size,best_accuracy,mean_accuracy,stddev,record_count";

inline void write_dim_summary(std::ostream& os,
                              const std::vector<DimensionSummary>& summaries) {
    os << kDimSummaryCsvHeader << '\n';
    for (const auto& s : summaries) {
        os << s.method << ',' << s.subset_size << ','
           << format_double(s.best_accuracy) << ','
           << format_double(s.mean_accuracy) << ',' << format_double(s.stddev)
           << ',' << s.record_count << '\n';
    }
}

inline constexpr std::string_view kBoxSummaryCsvHeader =
    "method,subset_size,emotional_count,min,q1,median,q3,max,count";

inline void write_box_summary(std::ostream& os,
                              const std::vector<BoxSummary>& summaries) {
    os << kBoxSummaryCsvHeader << '\n';
    for (const auto& s : summaries) {
        os << s.method << ',' << s.subset_size << ',' << s.emotional_count
           << ',' << format_double(s.min) << ',' << format_double(s.q1) << ','
           << format_double(s.median) << ',' << format_double(s.q3) << ','
           << format_double(s.max) << ',' << s.count << '\n';
    }
}

// The full report: dimension summaries plus box summaries for ALL methods
// pooled and for each method present in the records.
inline std::vector<BoxSummary> full_box_summary(
    const std::vector<ResultRow>& rows) {
    std::vector<BoxSummary> boxes = summarize_by_emotion(rows);
    std::vector<std::string> methods;
    for (const auto& r : rows)
        if (std::find(methods.begin(), methods.end(), r.method) ==
            methods.end())
            methods.push_back(r.method);
    std::sort(methods.begin(), methods.end());
    for (const auto& m : methods) {
        const auto per = summarize_by_emotion(rows, m);
        boxes.insert(boxes.end(), per.begin(), per.end());
    }
    return boxes;
}

}  // namespace pulse
