#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pulse/event.hpp"
#include "pulse/rng.hpp"

using namespace pulse;

namespace {

std::string header_and(const std::string& rows) {
    return std::string(kEventCsvHeader) + "\n" + rows;
}

TweetEvent make_event(std::string id, int64_t ts, int pos, int neg,
                      std::string author = "alice", std::string reply = "",
                      int len = 42) {
    TweetEvent ev;
    ev.id = std::move(id);
    ev.timestamp = ts;
    ev.author = std::move(author);
    ev.reply_to_id = std::move(reply);
    ev.pos = pos;
    ev.neg = neg;
    ev.text_length = len;
    return ev;
}

}  // namespace

TEST_CASE("parse rejects out-of-range sentiment with a reason", "[ingest]") {
    std::istringstream in(header_and(
        "t1,2012-07-11T00:00:00Z,alice,,6,-1,10\n"
        "t2,2012-07-11T00:00:01Z,bob,,3,-2,10\n"
        "t3,2012-07-11T00:00:02Z,cid,,2,-7,10\n"
        "t4,2012-07-11T00:00:03Z,dee,,2,-2,300\n"));
    const ParseResult res = parse_events(in);
    REQUIRE(res.events.size() == 1);
    CHECK(res.events[0].id == "t2");
    REQUIRE(res.rejects.size() == 3);
    CHECK(res.rejects[0].line == 2);
    CHECK(res.rejects[0].reason == "pos out of range");
    CHECK(res.rejects[1].reason == "neg out of range");
    CHECK(res.rejects[2].reason == "text_length out of range");
}

TEST_CASE("empty file with valid header parses to nothing", "[ingest]") {
    std::istringstream in(header_and(""));
    const ParseResult res = parse_events(in);
    CHECK(res.events.empty());
    CHECK(res.rejects.empty());
}

TEST_CASE("equal timestamps order by id", "[ingest]") {
    std::istringstream in(header_and(
        "z9,2012-07-11T00:00:05Z,a,,2,-1,10\n"
        "a1,2012-07-11T00:00:05Z,b,,2,-1,10\n"
        "m5,2012-07-11T00:00:04Z,c,,2,-1,10\n"));
    const ParseResult res = parse_events(in);
    REQUIRE(res.events.size() == 3);
    CHECK(res.events[0].id == "m5");
    CHECK(res.events[1].id == "a1");
    CHECK(res.events[2].id == "z9");
}

TEST_CASE("missing header aborts", "[ingest]") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_events(empty), std::runtime_error);
    std::istringstream wrong("id,when,author\na,b,c\n");
    CHECK_THROWS_AS(parse_events(wrong), std::runtime_error);
}

TEST_CASE("majority-rejected input aborts with a summary", "[ingest]") {
    std::istringstream in(header_and(
        "t1,2012-07-11T00:00:00Z,a,,9,-1,10\n"
        "t2,2012-07-11T00:00:01Z,b,,9,-1,10\n"
        "t3,2012-07-11T00:00:02Z,c,,3,-1,10\n"));
    CHECK_THROWS_WITH(parse_events(in),
                      Catch::Matchers::ContainsSubstring("over 50%"));
}

TEST_CASE("neutral filter removes exactly the joint no-sentiment case",
          "[ingest]") {
    std::vector<TweetEvent> events{
        make_event("a", 0, 1, -1),   // neutral
        make_event("b", 1, 1, -2),   // kept: only pos is neutral
        make_event("c", 2, 3, -3),   // kept: net-zero valence has sentiment
        make_event("d", 3, 1, -1),   // neutral
    };
    const auto filtered = filter_neutral(events);
    REQUIRE(filtered.size() == 2);
    CHECK(filtered[0].id == "b");
    CHECK(filtered[1].id == "c");

    const auto twice = filter_neutral(filtered);
    CHECK(twice.size() == filtered.size());
}

TEST_CASE("serialize-parse round trip is lossless on random events",
          "[ingest]") {
    SplitMix64 rng(7);
    std::vector<TweetEvent> events;
    for (int i = 0; i < 500; ++i) {
        TweetEvent ev = make_event(
            "e" + std::to_string(i),
            1342000000 + static_cast<int64_t>(rng.next_below(100000)),
            1 + static_cast<int>(rng.next_below(5)),
            -1 - static_cast<int>(rng.next_below(5)),
            "user" + std::to_string(rng.next_below(40)));
        if (rng.next_bernoulli(0.3) && i > 0)
            ev.reply_to_id = "e" + std::to_string(rng.next_below(i));
        ev.text_length = 1 + static_cast<int>(rng.next_below(160));
        events.push_back(std::move(ev));
    }
    std::ostringstream os;
    write_events(os, events);
    std::istringstream is(os.str());
    const ParseResult res = parse_events(is);
    REQUIRE(res.rejects.empty());
    REQUIRE(res.events.size() == events.size());

    // parse_events sorts; sort the originals the same way before comparing.
    std::stable_sort(events.begin(), events.end(),
                     [](const TweetEvent& a, const TweetEvent& b) {
                         if (a.timestamp != b.timestamp)
                             return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    for (size_t i = 0; i < events.size(); ++i) {
        CHECK(res.events[i].id == events[i].id);
        CHECK(res.events[i].timestamp == events[i].timestamp);
        CHECK(res.events[i].author == events[i].author);
        CHECK(res.events[i].reply_to_id == events[i].reply_to_id);
        CHECK(res.events[i].pos == events[i].pos);
        CHECK(res.events[i].neg == events[i].neg);
        CHECK(res.events[i].text_length == events[i].text_length);
    }
}

TEST_CASE("iso8601 helpers agree in both directions", "[ingest]") {
    CHECK(format_iso8601_utc(0) == "1970-01-01T00:00:00Z");
    const auto t = parse_iso8601_utc("2012-07-29T17:45:00Z");
    REQUIRE(t.has_value());
    CHECK(format_iso8601_utc(*t) == "2012-07-29T17:45:00Z");
    CHECK_FALSE(parse_iso8601_utc("2012-07-29 17:45:00Z").has_value());
    CHECK_FALSE(parse_iso8601_utc("2012-02-30T00:00:00Z").has_value());
    CHECK_FALSE(parse_iso8601_utc("2012-07-29T24:00:00Z").has_value());
}
