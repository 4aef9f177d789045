#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pulse {

// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
constexpr int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

struct CivilTime {
    int year;
    unsigned month, day, hour, minute, second;
};

constexpr CivilTime civil_from_epoch(int64_t t) {
    int64_t days = t / 86400;
    int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int64_t z = days + 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilTime{static_cast<int>(y + (m <= 2)), m, d,
                     static_cast<unsigned>(rem / 3600),
                     static_cast<unsigned>(rem / 60 % 60),
                     static_cast<unsigned>(rem % 60)};
}

constexpr int64_t utc_epoch(int y, unsigned mo, unsigned d, unsigned h = 0,
                            unsigned mi = 0, unsigned s = 0) {
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

// Parses strict "YYYY-MM-DDTHH:MM:SSZ". Returns nullopt on any malformation.
inline std::optional<int64_t> parse_iso8601_utc(std::string_view s) {
    if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' ||
        s[13] != ':' || s[16] != ':' || s[19] != 'Z')
        return std::nullopt;
    auto digits = [&](size_t pos, size_t len) -> int {
        int v = 0;
        for (size_t i = pos; i < pos + len; ++i) {
            if (s[i] < '0' || s[i] > '9') return -1;
            v = v * 10 + (s[i] - '0');
        }
        return v;
    };
    const int y = digits(0, 4), mo = digits(5, 2), d = digits(8, 2);
    const int h = digits(11, 2), mi = digits(14, 2), sec = digits(17, 2);
    if (y < 0 || mo < 1 || mo > 12 || d < 1 || h < 0 || h > 23 || mi < 0 ||
        mi > 59 || sec < 0 || sec > 59)
        return std::nullopt;
    constexpr int mdays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
    if (d > (mo == 2 && !leap ? 28 : mdays[mo - 1])) return std::nullopt;
    return utc_epoch(y, static_cast<unsigned>(mo), static_cast<unsigned>(d),
                     static_cast<unsigned>(h), static_cast<unsigned>(mi),
                     static_cast<unsigned>(sec));
}

inline std::string format_iso8601_utc(int64_t t) {
    const CivilTime c = civil_from_epoch(t);
    char buf[21];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02u:%02u:%02uZ", c.year,
                  c.month, c.day, c.hour, c.minute, c.second);
    return std::string(buf, 20);
}

inline int64_t require_iso8601_utc(std::string_view s) {
    const auto t = parse_iso8601_utc(s);
    if (!t)
        throw std::invalid_argument("invalid ISO-8601 UTC timestamp: " +
                                    std::string(s));
    return *t;
}

}  // namespace pulse
