#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulse/csv.hpp"
#include "pulse/iso8601.hpp"

namespace pulse {

// One sentiment-scored message record. Sentiment strengths follow the
// SentiStrength convention: pos in 1..5 (1 = none), neg in -5..-1 (-1 = none).
struct TweetEvent {
    std::string id;
    int64_t timestamp = 0;  // UTC epoch seconds
    std::string author;
    std::string reply_to_id;  // empty = not a reply
    int pos = 1;
    int neg = -1;
    int text_length = 1;  // characters, 1..160

    bool is_reply() const { return !reply_to_id.empty(); }
    bool is_neutral() const { return pos == 1 && neg == -1; }
};

inline constexpr std::string_view kEventCsvHeader =
    "id,timestamp,author,reply_to_id,pos,neg,text_length";

struct RejectedRow {
    size_t line;
    std::string reason;
};

struct ParseResult {
    std::vector<TweetEvent> events;
    std::vector<RejectedRow> rejects;
};

// Parses the event CSV. Valid rows come back sorted by timestamp (ties by
// id); malformed rows are collected with line number and reason. Throws on
// a missing/umatched header and when more than half of the data rows are
// rejected.
inline ParseResult parse_events(std::istream& is) {
    CsvReader reader(is);
    std::vector<std::string> fields;
    if (!reader.next_row(fields))
        throw std::runtime_error("event CSV: missing header");
    {
        std::string joined;
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) joined += ',';
            joined += fields[i];
        }
        if (joined != kEventCsvHeader)
            throw std::runtime_error("event CSV: missing or malformed header (got \"" +
                                     joined + "\")");
    }

    ParseResult result;
    while (reader.next_row(fields)) {
        const size_t line = reader.line_no();
        auto reject = [&](std::string reason) {
            result.rejects.push_back({line, std::move(reason)});
        };
        if (fields.size() != 7) {
            reject("expected 7 fields, got " + std::to_string(fields.size()));
            continue;
        }
        TweetEvent ev;
        ev.id = fields[0];
        if (ev.id.empty()) {
            reject("empty id");
            continue;
        }
        const auto ts = parse_iso8601_utc(fields[1]);
        if (!ts) {
            reject("bad timestamp");
            continue;
        }
        ev.timestamp = *ts;
        ev.author = fields[2];
        ev.reply_to_id = fields[3];
        const auto pos = parse_int(fields[4]);
        if (!pos) {
            reject("bad pos");
            continue;
        }
        if (*pos < 1 || *pos > 5) {
            reject("pos out of range");
            continue;
        }
        ev.pos = static_cast<int>(*pos);
        const auto neg = parse_int(fields[5]);
        if (!neg) {
            reject("bad neg");
            continue;
        }
        if (*neg < -5 || *neg > -1) {
            reject("neg out of range");
            continue;
        }
        ev.neg = static_cast<int>(*neg);
        const auto len = parse_int(fields[6]);
        if (!len) {
            reject("bad text_length");
            continue;
        }
        if (*len < 1 || *len > 160) {
            reject("text_length out of range");
            continue;
        }
        ev.text_length = static_cast<int>(*len);
        result.events.push_back(std::move(ev));
    }

    const size_t total = result.events.size() + result.rejects.size();
    if (total > 0 && result.rejects.size() * 2 > total)
        throw std::runtime_error(
            "event CSV: " + std::to_string(result.rejects.size()) + " of " +
            std::to_string(total) + " rows rejected (over 50%), aborting");

    std::stable_sort(result.events.begin(), result.events.end(),
                     [](const TweetEvent& a, const TweetEvent& b) {
                         if (a.timestamp != b.timestamp)
                             return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    return result;
}

inline void write_event_row(std::ostream& os, const TweetEvent& ev) {
    os << csv_escape(ev.id) << ',' << format_iso8601_utc(ev.timestamp) << ','
       << csv_escape(ev.author) << ',' << csv_escape(ev.reply_to_id) << ','
       << ev.pos << ',' << ev.neg << ',' << ev.text_length << '\n';
}

inline void write_events(std::ostream& os,
                         const std::vector<TweetEvent>& events) {
    os << kEventCsvHeader << '\n';
    for (const auto& ev : events) write_event_row(os, ev);
}

// Drops exactly the no-sentiment records (pos=1 and neg=-1), keeping order.
inline std::vector<TweetEvent> filter_neutral(std::vector<TweetEvent> events) {
    std::erase_if(events,
                  [](const TweetEvent& ev) { return ev.is_neutral(); });
    return events;
}

}  // namespace pulse
