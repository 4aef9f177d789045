#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pulse/report.hpp"
#include "pulse/rng.hpp"

using namespace pulse;
using Catch::Approx;

namespace {

ResultRow row(std::string method, std::string ids, int size, int emo,
              int rep, double acc) {
    return {std::move(method), std::move(ids), size, emo, rep, acc, true};
}

}  // namespace

TEST_CASE("dimension summary separates best-of-subset from grand mean",
          "[report]") {
    const std::vector<ResultRow> one_subset{
        row("NB", "a+b", 2, 0, 0, 0.6),
        row("NB", "a+b", 2, 0, 1, 0.8),
    };
    auto dims = summarize_by_dimension(one_subset);
    REQUIRE(dims.size() == 1);
    CHECK(dims[0].best_accuracy == Approx(0.7));
    CHECK(dims[0].mean_accuracy == Approx(0.7));
    CHECK(dims[0].record_count == 2);

    const std::vector<ResultRow> two_subsets{
        row("NB", "a+b", 2, 0, 0, 0.6),
        row("NB", "a+b", 2, 0, 1, 0.8),
        row("NB", "a+c", 2, 0, 0, 0.9),
        row("NB", "a+c", 2, 0, 1, 0.9),
    };
    dims = summarize_by_dimension(two_subsets);
    REQUIRE(dims.size() == 1);
    CHECK(dims[0].best_accuracy == Approx(0.9));
    CHECK(dims[0].mean_accuracy == Approx(0.8));

    const std::vector<ResultRow> constant{
        row("NB", "a+b", 2, 0, 0, 0.5),
        row("NB", "a+b", 2, 0, 1, 0.5),
        row("NB", "a+c", 2, 0, 0, 0.5),
    };
    dims = summarize_by_dimension(constant);
    CHECK(dims[0].best_accuracy == Approx(0.5));
    CHECK(dims[0].mean_accuracy == Approx(0.5));
    CHECK(dims[0].stddev == Approx(0.0));
}

TEST_CASE("quartiles use exclusive median-of-halves", "[report]") {
    const Quartiles q = quartiles_of({1, 2, 3, 4, 5});
    CHECK(q.q1 == Approx(1.5));
    CHECK(q.median == Approx(3.0));
    CHECK(q.q3 == Approx(4.5));
    CHECK(q.min == 1.0);
    CHECK(q.max == 5.0);

    const Quartiles even = quartiles_of({1, 2, 3, 4});
    CHECK(even.q1 == Approx(1.5));
    CHECK(even.median == Approx(2.5));
    CHECK(even.q3 == Approx(3.5));

    const Quartiles single = quartiles_of({0.42});
    CHECK(single.min == 0.42);
    CHECK(single.q1 == 0.42);
    CHECK(single.median == 0.42);
    CHECK(single.q3 == 0.42);
    CHECK(single.max == 0.42);
}

TEST_CASE("emotion grouping respects the method filter", "[report]") {
    const std::vector<ResultRow> rows{
        row("NB", "a+b", 2, 0, 0, 0.1),
        row("NB", "a+s", 2, 1, 0, 0.2),
        row("LDA", "a+b", 2, 0, 0, 0.3),
    };
    const auto all = summarize_by_emotion(rows);
    REQUIRE(all.size() == 2);  // (2,0) and (2,1)
    CHECK(all[0].method == "ALL");
    CHECK(all[0].count == 2);

    const auto nb = summarize_by_emotion(rows, std::string("NB"));
    REQUIRE(nb.size() == 2);
    CHECK(nb[0].count == 1);

    const auto none = summarize_by_emotion(rows, std::string("SVM_RBF"));
    CHECK(none.empty());
}

TEST_CASE("emotion effect subtracts group medians and skips missing pairs",
          "[report]") {
    std::vector<ResultRow> rows;
    for (int r = 0; r < 5; ++r) {
        rows.push_back(row("NB", "a+b", 2, 0, r, 0.90));
        rows.push_back(row("NB", "a+s+t", 3, 1, r, 0.95));
    }
    std::vector<std::pair<GroupKey, GroupKey>> skipped;
    const auto effects = emotion_effect(
        rows, {{{2, 0}, {3, 1}}, {{4, 0}, {5, 1}}}, &skipped);
    REQUIRE(effects.size() == 1);
    CHECK(effects[0].median_difference == Approx(0.05));
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0].first.subset_size == 4);

    const auto identical = emotion_effect(rows, {{{2, 0}, {2, 0}}});
    REQUIRE(identical.size() == 1);
    CHECK(identical[0].median_difference == 0.0);
}

TEST_CASE("dimension best equals the max over emotional-group bests",
          "[report]") {
    SplitMix64 rng(12);
    std::vector<ResultRow> rows;
    for (int subset = 0; subset < 12; ++subset) {
        const int emo = static_cast<int>(rng.next_below(3));
        for (int r = 0; r < 4; ++r)
            rows.push_back(row("NB", "s" + std::to_string(subset), 3, emo, r,
                               0.5 + 0.4 * rng.next_double()));
    }
    const auto dims = summarize_by_dimension(rows);
    REQUIRE(dims.size() == 1);

    // Per-(emo) best of per-subset means, then the max across groups.
    std::map<std::pair<int, std::string>, std::vector<double>> by_subset;
    for (const auto& r : rows)
        by_subset[{r.emotional_count, r.subset_ids}].push_back(r.accuracy);
    double best = 0;
    for (const auto& [key, accs] : by_subset) {
        double sum = 0;
        for (const double a : accs) sum += a;
        best = std::max(best, sum / static_cast<double>(accs.size()));
    }
    CHECK(dims[0].best_accuracy == Approx(best));
}

TEST_CASE("summary CSVs have the documented layouts", "[report]") {
    const std::vector<ResultRow> rows{
        row("NB", "a+b", 2, 0, 0, 0.5),
        row("NB", "a+b", 2, 0, 1, 0.7),
    };
    std::ostringstream dim_os;
    write_dim_summary(dim_os, summarize_by_dimension(rows));
    CHECK(dim_os.str() ==
          "method,subset_size,best_accuracy,mean_accuracy,stddev,"
          "record_count\nNB,2,0.6,0.6,0.1,2\n");

    std::ostringstream box_os;
    write_box_summary(box_os, full_box_summary(rows));
    CHECK(box_os.str() ==
          "method,subset_size,emotional_count,min,q1,median,q3,max,count\n"
          "ALL,2,0,0.5,0.5,0.6,0.7,0.7,2\n"
          "NB,2,0,0.5,0.5,0.6,0.7,0.7,2\n");
}

TEST_CASE("summaries reject empty record sets", "[report]") {
    CHECK_THROWS_AS(summarize_by_dimension({}), std::invalid_argument);
    CHECK_THROWS_AS(summarize_by_emotion({}), std::invalid_argument);
}
