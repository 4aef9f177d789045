#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulse/csv.hpp"
#include "pulse/iso8601.hpp"

namespace pulse {

// A real-world event the benchmark labels against (a British medal win
// at London 2012). Times in the source table are local London (BST,
// UTC+1 for the whole window); we store UTC.
struct MedalEvent {
    int64_t time = 0;  // UTC epoch seconds
    std::string description;
};

namespace detail {

struct MedalRow {
    unsigned month, day, hour, minute;
    const char* description;
};

// London 2012 British medal sessions, local time, in source order.
// Entries timed 00:00-01:30 belong to the late evening session of the
// listed date and are kept as given.
inline constexpr std::array<MedalRow, 52> kMedalRows = {{
    {7, 29, 18, 45, "Women's road race"},
    {7, 29, 23, 45, "Women's 400 m freestyle"},
    {7, 30, 22, 0, "Men's artistic team all-around"},
    {7, 31, 16, 0, "Team eventing"},
    {8, 1, 15, 0, "Women's coxless pair"},
    {8, 1, 15, 30, "Men's eight"},
    {8, 1, 19, 15, "Men's time trial"},
    {8, 1, 19, 15, "Men's time trial"},
    {8, 2, 18, 45, "Men's slalom C-2"},
    {8, 2, 18, 45, "Men's double trap"},
    {8, 2, 18, 45, "Men's slalom C-2"},
    {8, 2, 19, 0, "Women's 78 kg"},
    {8, 2, 21, 15, "Men's team sprint"},
    {8, 3, 15, 15, "Men's single sculls"},
    {8, 3, 15, 15, "Women's double sculls"},
    {8, 3, 15, 45, "Men's coxless pair"},
    {8, 3, 21, 45, "Men's team pursuit"},
    {8, 3, 22, 15, "Women's keirin"},
    {8, 4, 14, 45, "Men's coxless four"},
    {8, 4, 15, 0, "Women's lightweight double sculls"},
    {8, 4, 21, 15, "Women's team pursuit"},
    {8, 4, 0, 0, "Women's heptathlon"},
    {8, 4, 0, 30, "Men's long jump"},
    {8, 4, 1, 0, "Men's 10,000 m"},
    {8, 5, 17, 45, "Finn class"},
    {8, 5, 19, 15, "Men's pommel horse"},
    {8, 5, 19, 15, "Men's pommel horse"},
    {8, 5, 19, 45, "Men's singles"},
    {8, 5, 20, 30, "Mixed doubles"},
    {8, 5, 22, 0, "Men's omnium"},
    {8, 5, 0, 15, "Women's 400 m"},
    {8, 6, 17, 45, "Women's uneven bars"},
    {8, 6, 20, 0, "Team jumping"},
    {8, 6, 21, 15, "Men's sprint"},
    {8, 7, 16, 15, "Men's sailboard"},
    {8, 7, 17, 15, "Men's triathlon"},
    {8, 7, 17, 15, "Men's triathlon"},
    {8, 7, 19, 15, "Team dressage"},
    {8, 7, 20, 15, "Women's omnium"},
    {8, 7, 21, 15, "Men's keirin"},
    {8, 7, 21, 30, "Women's sprint"},
    {8, 7, 0, 0, "Men's high jump"},
    {8, 9, 19, 0, "Individual dressage"},
    {8, 9, 19, 0, "Individual dressage"},
    {8, 9, 19, 45, "Women's flyweight"},
    {8, 9, 1, 30, "Women's 57 kg"},
    {8, 10, 16, 45, "Women's 470 class"},
    {8, 11, 12, 45, "Men's K-1 200 m"},
    {8, 11, 23, 0, "Men's 5,000 m"},
    {8, 11, 0, 15, "Men's bantamweight"},
    {8, 11, 1, 15, "Men's 10 m platform"},
    {8, 12, 18, 45, "Men's super heavyweight"},
}};

constexpr int64_t kBstOffsetSeconds = 3600;

inline int64_t medal_row_utc(const MedalRow& r) {
    return utc_epoch(2012, r.month, r.day, r.hour, r.minute) -
           kBstOffsetSeconds;
}

}  // namespace detail

// The built-in medal calendar, in source order.
inline std::vector<MedalEvent> default_medal_events() {
    std::vector<MedalEvent> events;
    events.reserve(detail::kMedalRows.size());
    for (const auto& r : detail::kMedalRows)
        events.push_back({detail::medal_row_utc(r), r.description});
    return events;
}

inline constexpr std::string_view kMedalCsvHeader = "time,description";

inline void write_medal_events(std::ostream& os,
                               const std::vector<MedalEvent>& events) {
    os << kMedalCsvHeader << '\n';
    for (const auto& ev : events) {
        os << format_iso8601_utc(ev.time) << ','
           << csv_escape(ev.description) << '\n';
    }
}

inline std::vector<MedalEvent> read_medal_events(std::istream& is) {
    CsvReader reader(is);
    std::vector<std::string> fields;
    if (!reader.next_row(fields) || fields.size() != 2 ||
        fields[0] != "time" || fields[1] != "description")
        throw std::runtime_error("medal CSV: missing or malformed header");
    std::vector<MedalEvent> events;
    while (reader.next_row(fields)) {
        if (fields.size() != 2)
            throw std::runtime_error("medal CSV: bad row at line " +
                                     std::to_string(reader.line_no()));
        events.push_back({require_iso8601_utc(fields[0]), fields[1]});
    }
    return events;
}

}  // namespace pulse
