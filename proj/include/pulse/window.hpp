#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "pulse/csv.hpp"
#include "pulse/event.hpp"
#include "pulse/iso8601.hpp"

namespace pulse {

// One aggregation window's feature vector. Derivative fields reference the
// one/two preceding windows and stay unset for the first one/two windows.
// Empty windows use the defined-zero convention so the series is gapless.
struct WindowFeatures {
    int64_t index = 0;
    int64_t start_time = 0;  // UTC epoch seconds
    int act = 0;             // event count
    double sent = 0.0;       // mean of (pos + neg), net valence
    double perc_uniq = 0.0;  // distinct authors / act
    double perc_rep = 0.0;   // replies / act
    double mean_pl = 0.0;    // mean text length
    std::optional<int> d_act;
    std::optional<double> d_sent;
    std::optional<int> d2_act;
    std::optional<double> d2_sent;
    bool act_peak = false;
    bool sent_peak = false;
};

// Tiles sorted events into non-overlapping windows aligned to multiples of
// window_minutes from midnight UTC and fills the base (non-derivative)
// features. Empty interior windows are emitted with zeros.
inline std::vector<WindowFeatures> aggregate_windows(
    const std::vector<TweetEvent>& events, int window_minutes = 15) {
    if (window_minutes <= 0)
        throw std::invalid_argument("window length must be positive");
    if (events.empty()) throw std::runtime_error("no data");

    const int64_t w = static_cast<int64_t>(window_minutes) * 60;
    auto floor_div = [](int64_t a, int64_t b) {
        int64_t q = a / b;
        if (a % b != 0 && ((a < 0) != (b < 0))) --q;
        return q;
    };
    const int64_t first = floor_div(events.front().timestamp, w);
    const int64_t last = floor_div(events.back().timestamp, w);

    std::vector<WindowFeatures> windows(static_cast<size_t>(last - first + 1));
    for (size_t i = 0; i < windows.size(); ++i) {
        windows[i].index = static_cast<int64_t>(i);
        windows[i].start_time = (first + static_cast<int64_t>(i)) * w;
    }

    size_t lo = 0;
    std::unordered_set<std::string_view> authors;
    for (size_t i = 0; i < windows.size(); ++i) {
        const int64_t end = windows[i].start_time + w;
        size_t hi = lo;
        while (hi < events.size() && events[hi].timestamp < end) ++hi;

        auto& win = windows[i];
        win.act = static_cast<int>(hi - lo);
        if (win.act > 0) {
            double sent_sum = 0, len_sum = 0;
            int replies = 0;
            authors.clear();
            for (size_t k = lo; k < hi; ++k) {
                sent_sum += events[k].pos + events[k].neg;
                len_sum += events[k].text_length;
                replies += events[k].is_reply() ? 1 : 0;
                authors.insert(events[k].author);
            }
            win.sent = sent_sum / win.act;
            win.mean_pl = len_sum / win.act;
            win.perc_rep = static_cast<double>(replies) / win.act;
            win.perc_uniq = static_cast<double>(authors.size()) / win.act;
        }
        lo = hi;
    }
    return windows;
}

// Fills dX(i) = X(i) - X(i-1) and d2X(i) = dX(i) - dX(i-1). With fewer than
// 3 windows everything representable stays partially/fully unset.
inline void derive_derivatives(std::vector<WindowFeatures>& windows) {
    for (size_t i = 1; i < windows.size(); ++i) {
        windows[i].d_act = windows[i].act - windows[i - 1].act;
        windows[i].d_sent = windows[i].sent - windows[i - 1].sent;
    }
    for (size_t i = 2; i < windows.size(); ++i) {
        windows[i].d2_act = *windows[i].d_act - *windows[i - 1].d_act;
        windows[i].d2_sent = *windows[i].d_sent - *windows[i - 1].d_sent;
    }
}

inline constexpr std::string_view kWindowCsvHeader =
    "index,start_time,act,sent,perc_uniq,perc_rep,mean_pl,d_act,d_sent,"
    "d2_act,d2_sent,act_peak,sent_peak";

inline void write_windows(std::ostream& os,
                          const std::vector<WindowFeatures>& windows) {
    os << kWindowCsvHeader << '\n';
    for (const auto& w : windows) {
        os << w.index << ',' << format_iso8601_utc(w.start_time) << ',' << w.act
           << ',' << format_double(w.sent) << ',' << format_double(w.perc_uniq)
           << ',' << format_double(w.perc_rep) << ','
           << format_double(w.mean_pl) << ',';
        if (w.d_act) os << *w.d_act;
        else os << "NA";
        os << ',';
        if (w.d_sent) os << format_double(*w.d_sent);
        else os << "NA";
        os << ',';
        if (w.d2_act) os << *w.d2_act;
        else os << "NA";
        os << ',';
        if (w.d2_sent) os << format_double(*w.d2_sent);
        else os << "NA";
        os << ',' << (w.act_peak ? 1 : 0) << ',' << (w.sent_peak ? 1 : 0)
           << '\n';
    }
}

inline std::vector<WindowFeatures> read_windows(std::istream& is) {
    CsvReader reader(is);
    std::vector<std::string> fields;
    if (!reader.next_row(fields))
        throw std::runtime_error("window CSV: missing header");
    {
        std::string joined;
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) joined += ',';
            joined += fields[i];
        }
        if (joined != kWindowCsvHeader)
            throw std::runtime_error("window CSV: malformed header");
    }
    std::vector<WindowFeatures> windows;
    while (reader.next_row(fields)) {
        if (fields.size() != 13)
            throw std::runtime_error("window CSV: bad row at line " +
                                     std::to_string(reader.line_no()));
        auto bad = [&](const char* what) {
            return std::runtime_error(std::string("window CSV: bad ") + what +
                                      " at line " +
                                      std::to_string(reader.line_no()));
        };
        WindowFeatures w;
        const auto idx = parse_int(fields[0]);
        if (!idx) throw bad("index");
        w.index = *idx;
        w.start_time = require_iso8601_utc(fields[1]);
        const auto act = parse_int(fields[2]);
        if (!act) throw bad("act");
        w.act = static_cast<int>(*act);
        const auto sent = parse_double(fields[3]);
        const auto uniq = parse_double(fields[4]);
        const auto rep = parse_double(fields[5]);
        const auto pl = parse_double(fields[6]);
        if (!sent || !uniq || !rep || !pl) throw bad("feature value");
        w.sent = *sent;
        w.perc_uniq = *uniq;
        w.perc_rep = *rep;
        w.mean_pl = *pl;
        if (fields[7] != "NA") {
            const auto v = parse_int(fields[7]);
            if (!v) throw bad("d_act");
            w.d_act = static_cast<int>(*v);
        }
        if (fields[8] != "NA") {
            const auto v = parse_double(fields[8]);
            if (!v) throw bad("d_sent");
            w.d_sent = *v;
        }
        if (fields[9] != "NA") {
            const auto v = parse_int(fields[9]);
            if (!v) throw bad("d2_act");
            w.d2_act = static_cast<int>(*v);
        }
        if (fields[10] != "NA") {
            const auto v = parse_double(fields[10]);
            if (!v) throw bad("d2_sent");
            w.d2_sent = *v;
        }
        w.act_peak = fields[11] == "1";
        w.sent_peak = fields[12] == "1";
        windows.push_back(std::move(w));
    }
    return windows;
}

}  // namespace pulse
