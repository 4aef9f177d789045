#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pulse/classify/classifier.hpp"
#include "pulse/csv.hpp"
#include "pulse/dataset.hpp"
#include "pulse/matrix.hpp"
#include "pulse/rng.hpp"

namespace pulse {

inline uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All size-k index combinations of {0..n-1} in lexicographic order.
inline void append_combinations(std::vector<std::vector<int>>& out, int n,
                                int k) {
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

inline std::vector<std::vector<int>> enumerate_subsets(
    int catalog_size, const std::vector<int>& sizes) {
    std::vector<std::vector<int>> out;
    for (const int k : sizes) {
        if (k < 1 || k > catalog_size)
            throw std::invalid_argument("subset size out of range");
        append_combinations(out, catalog_size, k);
    }
    return out;
}

// Lexicographic unranking of a size-k combination of {0..n-1}.
inline std::vector<int> unrank_combination(int n, int k, uint64_t rank) {
    std::vector<int> out;
    out.reserve(k);
    int x = 0;
    for (int i = 0; i < k; ++i) {
        for (;;) {
            const uint64_t block = binomial(
                static_cast<uint64_t>(n - 1 - x), static_cast<uint64_t>(k - 1 - i));
            if (rank < block) break;
            rank -= block;
            ++x;
        }
        out.push_back(x);
        ++x;
    }
    return out;
}

// Uniform sample of `count` distinct subsets across all requested sizes,
// ordered by global (size-major, lexicographic) rank. Degenerates to the
// exhaustive enumeration when count covers everything.
inline std::vector<std::vector<int>> sample_subsets(
    int catalog_size, const std::vector<int>& sizes, size_t count,
    uint64_t seed) {
    uint64_t total = 0;
    std::vector<uint64_t> offsets;
    for (const int k : sizes) {
        if (k < 1 || k > catalog_size)
            throw std::invalid_argument("subset size out of range");
        offsets.push_back(total);
        total += binomial(static_cast<uint64_t>(catalog_size),
                          static_cast<uint64_t>(k));
    }
    if (count >= total) return enumerate_subsets(catalog_size, sizes);

    SplitMix64 rng(seed);
    std::set<uint64_t> ranks;
    while (ranks.size() < count) ranks.insert(rng.next_below(total));

    std::vector<std::vector<int>> out;
    out.reserve(count);
    for (const uint64_t r : ranks) {
        size_t bucket = offsets.size() - 1;
        while (offsets[bucket] > r) --bucket;
        out.push_back(unrank_combination(catalog_size, sizes[bucket],
                                         r - offsets[bucket]));
    }
    return out;
}

struct HoldoutSplit {
    std::vector<size_t> train;
    std::vector<size_t> test;
};

// Deterministic uniform split: Fisher-Yates permutation under a counter-based
// generator; the first floor(train_fraction * n) indices train, the rest test.
inline HoldoutSplit holdout_split(size_t n, double train_fraction,
                                  uint64_t seed) {
    if (n < 5) throw std::invalid_argument("holdout: need at least 5 rows");
    if (!(train_fraction > 0) || !(train_fraction < 1))
        throw std::invalid_argument("holdout: train fraction must be in (0,1)");
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    SplitMix64 rng(seed);
    for (size_t i = n - 1; i > 0; --i) {
        const uint64_t j = rng.next_below(i + 1);
        std::swap(perm[i], perm[j]);
    }
    const auto n_train = static_cast<size_t>(
        std::floor(train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train >= n)
        throw std::invalid_argument("holdout: degenerate partition");
    HoldoutSplit split;
    split.train.assign(perm.begin(), perm.begin() + static_cast<long>(n_train));
    split.test.assign(perm.begin() + static_cast<long>(n_train), perm.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

enum class SubsetMode { exhaustive, sampled };

struct SweepConfig {
    Problem problem = Problem::trend;
    std::vector<ClassifierSpec> methods;
    std::vector<int> subset_sizes{2, 3, 4, 5, 6};
    SubsetMode mode = SubsetMode::exhaustive;
    size_t sample_count = 0;  // sampled mode
    int repetitions = 20;
    double train_fraction = 0.8;
    uint64_t master_seed = 0;
    int workers = 0;  // 0 = hardware concurrency

    static std::vector<ClassifierSpec> all_methods() {
        std::vector<ClassifierSpec> specs;
        for (const Method m : kAllMethods) specs.push_back({m, {}});
        return specs;
    }
};

struct SweepRecord {
    Method method = Method::NB;
    std::vector<int> subset;  // catalog indices, ascending
    int subset_size = 0;
    int emotional_count = 0;
    int repetition = 0;
    double accuracy = 0.0;
    bool converged = true;
};

namespace detail {

struct ItemOutcome {
    double accuracy = 0.0;
    bool converged = true;
};

// Majority vote of the training labels; accuracy of always answering it.
inline ItemOutcome majority_outcome(std::span<const int> labels,
                                    std::span<const size_t> train,
                                    std::span<const size_t> test) {
    size_t c1 = 0, c2 = 0;
    for (const size_t i : train) (labels[i] == 2 ? c2 : c1)++;
    const int majority = c2 > c1 ? 2 : 1;
    size_t correct = 0;
    for (const size_t i : test) correct += labels[i] == majority ? 1 : 0;
    return {static_cast<double>(correct) / static_cast<double>(test.size()),
            false};
}

}  // namespace detail

// Runs the repeated-holdout protocol over every (method, subset, repetition).
// Splits depend only on (master seed, subset ordinal, repetition) so all
// methods see identical partitions; per-record failures are flagged and
// scored as the majority-class predictor rather than aborting. The record
// stream is ordered by (method, subset ordinal, repetition) and identical
// for every worker count.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& config,
                                          const LabeledDataset& dataset) {
    if (config.methods.empty())
        throw std::invalid_argument("sweep: no methods selected");
    if (config.repetitions < 1)
        throw std::invalid_argument("sweep: repetitions must be >= 1");
    const size_t n = dataset.observations.size();
    if (n < 5) throw std::invalid_argument("sweep: dataset too small");
    const int catalog_size = static_cast<int>(dataset.catalog.size());

    const std::vector<std::vector<int>> subsets =
        config.mode == SubsetMode::sampled
            ? sample_subsets(catalog_size, config.subset_sizes,
                             config.sample_count,
                             derive_seed(config.master_seed, "subsets"))
            : enumerate_subsets(catalog_size, config.subset_sizes);

    std::vector<int> labels(n);
    Matrix full(n, dataset.catalog.size());
    for (size_t i = 0; i < n; ++i) {
        labels[i] = dataset.observations[i].label;
        for (size_t j = 0; j < dataset.catalog.size(); ++j)
            full.at(i, j) = dataset.observations[i].values[j];
    }

    const size_t n_methods = config.methods.size();
    const size_t n_subsets = subsets.size();
    const auto reps = static_cast<size_t>(config.repetitions);
    std::vector<detail::ItemOutcome> outcomes(n_methods * n_subsets * reps);

    // Which methods want the shared kernel Gram.
    std::vector<bool> method_is_svm(n_methods);
    for (size_t m = 0; m < n_methods; ++m)
        method_is_svm[m] = is_svm(config.methods[m].method);

    auto process_item = [&](size_t item) {
        const size_t ordinal = item / reps;
        const size_t rep = item % reps;
        const std::vector<int>& subset = subsets[ordinal];
        const size_t d = subset.size();
        auto slot = [&](size_t m) {
            return (m * n_subsets + ordinal) * reps + rep;
        };

        const HoldoutSplit split =
            holdout_split(n, config.train_fraction,
                          derive_seed(config.master_seed, ordinal, rep));

        bool has1 = false, has2 = false;
        for (const size_t i : split.train)
            (labels[i] == 2 ? has2 : has1) = true;
        if (!has1 || !has2) {
            const auto fallback =
                detail::majority_outcome(labels, split.train, split.test);
            for (size_t m = 0; m < n_methods; ++m) outcomes[slot(m)] = fallback;
            return;
        }

        Matrix train_raw(split.train.size(), d);
        Matrix test_raw(split.test.size(), d);
        std::vector<int> train_labels(split.train.size());
        std::vector<int> test_labels(split.test.size());
        for (size_t r = 0; r < split.train.size(); ++r) {
            train_labels[r] = labels[split.train[r]];
            for (size_t j = 0; j < d; ++j)
                train_raw.at(r, j) =
                    full.at(split.train[r], static_cast<size_t>(subset[j]));
        }
        for (size_t r = 0; r < split.test.size(); ++r) {
            test_labels[r] = labels[split.test[r]];
            for (size_t j = 0; j < d; ++j)
                test_raw.at(r, j) =
                    full.at(split.test[r], static_cast<size_t>(subset[j]));
        }

        // Shared standardized geometry for the SVM family: raw dot Grams are
        // kernel-independent, so five kernels reuse one O(n^2 d) pass.
        Matrix z_train, z_test, gram, cross;
        std::vector<double> test_self_dot, y_pm;
        bool svm_shared_ready = false;
        auto prepare_svm_shared = [&]() {
            if (svm_shared_ready) return;
            const Standardizer st = Standardizer::fit(train_raw);
            z_train = st.apply(train_raw);
            z_test = st.apply(test_raw);
            const size_t nt = z_train.rows, ne = z_test.rows;
            gram = Matrix(nt, nt);
            for (size_t i = 0; i < nt; ++i)
                for (size_t j = 0; j <= i; ++j) {
                    const double v = dot(z_train.row(i), z_train.row(j), d);
                    gram.at(i, j) = v;
                    gram.at(j, i) = v;
                }
            cross = Matrix(nt, ne);
            for (size_t i = 0; i < nt; ++i)
                for (size_t t = 0; t < ne; ++t)
                    cross.at(i, t) = dot(z_train.row(i), z_test.row(t), d);
            test_self_dot.resize(ne);
            for (size_t t = 0; t < ne; ++t)
                test_self_dot[t] = dot(z_test.row(t), z_test.row(t), d);
            y_pm = svm_labels(train_labels);
            svm_shared_ready = true;
        };

        for (size_t m = 0; m < n_methods; ++m) {
            const ClassifierSpec& spec = config.methods[m];
            detail::ItemOutcome out;
            try {
                if (!method_is_svm[m]) {
                    const TrainedModel model = fit(spec, train_raw, train_labels);
                    size_t correct = 0;
                    for (size_t t = 0; t < test_raw.rows; ++t) {
                        const int pred = predict(
                            model, std::span<const double>(test_raw.row(t), d));
                        correct += pred == test_labels[t] ? 1 : 0;
                    }
                    out.accuracy = static_cast<double>(correct) /
                                   static_cast<double>(test_raw.rows);
                    out.converged = true;
                } else {
                    prepare_svm_shared();
                    const KernelKind kind = svm_kernel(spec.method);
                    const KernelParams params = spec.kernel_params();
                    GramKernelSource source(gram, kind, params);
                    KernelRowCache cache(source);
                    const SmoResult res =
                        smo_solve(cache, y_pm, spec.svm_c(), spec.svm_tol(),
                                  spec.svm_max_passes());
                    size_t correct = 0;
                    for (size_t t = 0; t < z_test.rows; ++t) {
                        double f = res.b;
                        for (size_t i = 0; i < z_train.rows; ++i) {
                            if (res.alpha[i] <= 0) continue;
                            f += res.alpha[i] * y_pm[i] *
                                 kernel_from_dots(kind, params, cross.at(i, t),
                                                  gram.at(i, i),
                                                  test_self_dot[t]);
                        }
                        const int pred = f >= 0 ? 2 : 1;
                        correct += pred == test_labels[t] ? 1 : 0;
                    }
                    out.accuracy = static_cast<double>(correct) /
                                   static_cast<double>(z_test.rows);
                    out.converged = res.converged;
                }
            } catch (const std::exception&) {
                out = detail::majority_outcome(labels, split.train, split.test);
            }
            outcomes[slot(m)] = out;
        }
    };

    const size_t items = n_subsets * reps;
    int workers = config.workers > 0
                      ? config.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1) {
        for (size_t item = 0; item < items; ++item) process_item(item);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const size_t item = next.fetch_add(1);
                    if (item >= items) break;
                    process_item(item);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::vector<SweepRecord> records;
    records.reserve(outcomes.size());
    for (size_t m = 0; m < n_methods; ++m)
        for (size_t o = 0; o < n_subsets; ++o) {
            std::vector<FeatureId> features;
            for (const int idx : subsets[o])
                features.push_back(dataset.catalog[static_cast<size_t>(idx)]);
            const int emo = emotional_count(features);
            for (size_t r = 0; r < reps; ++r) {
                const auto& out = outcomes[(m * n_subsets + o) * reps + r];
                records.push_back({config.methods[m].method, subsets[o],
                                   static_cast<int>(subsets[o].size()), emo,
                                   static_cast<int>(r), out.accuracy,
                                   out.converged});
            }
        }
    return records;
}

// --- results CSV ---

struct ResultRow {
    std::string method;
    std::string subset_ids;  // '+'-joined sorted feature names
    int subset_size = 0;
    int emotional_count = 0;
    int repetition = 0;
    double accuracy = 0.0;
    bool converged = true;
};

inline std::string subset_ids_string(const std::vector<int>& subset,
                                     const std::vector<FeatureId>& catalog) {
    std::vector<std::string> names;
    names.reserve(subset.size());
    for (const int idx : subset)
        names.push_back(catalog[static_cast<size_t>(idx)].name());
    std::sort(names.begin(), names.end());
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += '+';
        out += names[i];
    }
    return out;
}

inline std::vector<ResultRow> to_result_rows(
    const std::vector<SweepRecord>& records,
    const std::vector<FeatureId>& catalog) {
    std::vector<ResultRow> rows;
    rows.reserve(records.size());
    for (const auto& rec : records)
        rows.push_back({std::string(method_name(rec.method)),
                        subset_ids_string(rec.subset, catalog),
                        rec.subset_size, rec.emotional_count, rec.repetition,
                        rec.accuracy, rec.converged});
    return rows;
}

inline constexpr std::string_view kResultCsvHeader =
    "method,subset_ids,subset_size,emotional_count,repetition,accuracy,"
    "converged";

inline void write_result_rows(std::ostream& os,
                              const std::vector<ResultRow>& rows) {
    os << kResultCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.method << ',' << r.subset_ids << ',' << r.subset_size << ','
           << r.emotional_count << ',' << r.repetition << ','
           << format_double(r.accuracy) << ',' << (r.converged ? 1 : 0)
           << '\n';
    }
}

inline std::vector<ResultRow> read_result_rows(std::istream& is) {
    CsvReader reader(is);
    std::vector<std::string> fields;
    if (!reader.next_row(fields))
        throw std::runtime_error("results CSV: missing header");
    {
        std::string joined;
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) joined += ',';
            joined += fields[i];
        }
        if (joined != kResultCsvHeader)
            throw std::runtime_error("results CSV: malformed header");
    }
    std::vector<ResultRow> rows;
    while (reader.next_row(fields)) {
        if (fields.size() != 7)
            throw std::runtime_error("results CSV: bad row at line " +
                                     std::to_string(reader.line_no()));
        ResultRow r;
        r.method = fields[0];
        r.subset_ids = fields[1];
        const auto size = parse_int(fields[2]);
        const auto emo = parse_int(fields[3]);
        const auto rep = parse_int(fields[4]);
        const auto acc = parse_double(fields[5]);
        if (!size || !emo || !rep || !acc)
            throw std::runtime_error("results CSV: bad row at line " +
                                     std::to_string(reader.line_no()));
        r.subset_size = static_cast<int>(*size);
        r.emotional_count = static_cast<int>(*emo);
        r.repetition = static_cast<int>(*rep);
        r.accuracy = *acc;
        r.converged = fields[6] == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace pulse
