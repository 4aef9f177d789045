#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "pulse/synthgen.hpp"

using namespace pulse;

namespace {

GeneratorConfig small_config(uint64_t seed = 1) {
    GeneratorConfig c;
    c.seed = seed;
    c.start_time = utc_epoch(2012, 7, 11);
    c.end_time = c.start_time + 100 * 60;  // 100 minutes
    c.base_rate = 1.0;
    c.diurnal_amplitude = 0.0;
    c.user_pool_size = 50;
    return c;
}

}  // namespace

TEST_CASE("degenerate configs are rejected", "[synthgen]") {
    auto zero_rate = small_config();
    zero_rate.base_rate = 0.0;
    CHECK_THROWS_AS(generate_stream(zero_rate), std::invalid_argument);

    auto empty_range = small_config();
    empty_range.end_time = empty_range.start_time;
    CHECK_THROWS_AS(generate_stream(empty_range), std::invalid_argument);

    auto no_users = small_config();
    no_users.user_pool_size = 0;
    CHECK_THROWS_AS(generate_stream(no_users), std::invalid_argument);

    auto weak_burst = small_config();
    weak_burst.bursts.push_back({weak_burst.start_time, 1.0, 10.0, 0.0});
    CHECK_THROWS_AS(generate_stream(weak_burst), std::invalid_argument);
}

TEST_CASE("event counts match the Poisson expectation over 50 seeds",
          "[synthgen]") {
    // 1/min over 100 minutes: mean 100, sigma 10. Each seed stays within
    // 4 sigma and the across-seed mean within 4 sigma of the mean's s.e.
    double sum = 0;
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        const auto events = generate_stream(small_config(seed));
        const auto n = static_cast<double>(events.size());
        CHECK(n >= 60.0);
        CHECK(n <= 140.0);
        sum += n;
    }
    const double mean = sum / 50.0;
    CHECK(std::abs(mean - 100.0) <= 4.0 * 10.0 / std::sqrt(50.0));
}

TEST_CASE("identical config yields byte-identical output", "[synthgen]") {
    auto config = default_generator_config(42);
    config.end_time = config.start_time + 6 * 3600;  // trim for speed
    const auto a = generate_stream(config);
    const auto b = generate_stream(config);
    std::ostringstream sa, sb;
    write_events(sa, a);
    write_events(sb, b);
    REQUIRE(sa.str() == sb.str());
    CHECK(a.size() > 1000);
}

TEST_CASE("generated stream satisfies the stated invariants", "[synthgen]") {
    auto config = small_config(9);
    config.base_rate = 120.0;  // ~12k events
    config.neutral_probability = 0.2;
    config.reply_probability = 0.3;
    const auto events = generate_stream(config);
    REQUIRE(events.size() >= 10000);

    size_t neutral = 0;
    for (size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        if (i > 0) CHECK(ev.timestamp >= events[i - 1].timestamp);
        CHECK((ev.pos >= 1 && ev.pos <= 5));
        CHECK((ev.neg >= -5 && ev.neg <= -1));
        CHECK((ev.text_length >= 1 && ev.text_length <= 160));
        neutral += ev.is_neutral() ? 1 : 0;
    }
    const double n = static_cast<double>(events.size());
    const double p = config.neutral_probability;
    const double bound = 3.0 * std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(static_cast<double>(neutral) / n - p) <= bound);
}

TEST_CASE("bursts elevate positive sentiment", "[synthgen]") {
    auto config = small_config(5);
    config.base_rate = 60.0;
    config.end_time = config.start_time + 7200;
    config.bursts.push_back(
        {config.start_time + 3600, 3.0, 30.0, 1.5});
    const auto events = generate_stream(config);

    double in_sum = 0, out_sum = 0;
    size_t in_n = 0, out_n = 0;
    const int64_t b0 = config.start_time + 3600, b1 = b0 + 1800;
    for (const auto& ev : events) {
        if (ev.timestamp >= b0 && ev.timestamp < b1) {
            in_sum += ev.pos;
            ++in_n;
        } else {
            out_sum += ev.pos;
            ++out_n;
        }
    }
    REQUIRE(in_n > 100);
    REQUIRE(out_n > 100);
    CHECK(in_sum / static_cast<double>(in_n) >
          out_sum / static_cast<double>(out_n) + 0.5);
    // Burst also multiplies the rate: ~3x the per-minute density.
    const double in_rate = static_cast<double>(in_n) / 30.0;
    const double out_rate = static_cast<double>(out_n) / 90.0;
    CHECK(in_rate > 2.0 * out_rate);
}

TEST_CASE("medal calendar matches the published table", "[synthgen]") {
    const auto medals = default_medal_events();
    REQUIRE(medals.size() == 52);
    // Row 1: 29 July 18:45 London time = 17:45 UTC.
    CHECK(format_iso8601_utc(medals[0].time) == "2012-07-29T17:45:00Z");
    CHECK(medals[0].description == "Women's road race");
    // Row 24: 4 August 01:00 London time = 00:00 UTC.
    CHECK(format_iso8601_utc(medals[23].time) == "2012-08-04T00:00:00Z");
    CHECK(medals[23].description == "Men's 10,000 m");

    const auto bursts = default_medal_calendar(2.0, 45.0, 1.0);
    REQUIRE(bursts.size() == 52);
    CHECK(bursts[0].time == medals[0].time);
    CHECK(bursts[0].magnitude == 2.0);
    CHECK(bursts[0].duration_minutes == 45.0);

    std::ostringstream os;
    write_medal_events(os, medals);
    std::istringstream is(os.str());
    const auto round = read_medal_events(is);
    REQUIRE(round.size() == 52);
    CHECK(round[11].time == medals[11].time);
    CHECK(round[11].description == medals[11].description);
}
