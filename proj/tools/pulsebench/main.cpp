// pulsebench: event-stream ingestion, 15-minute window features, peak
// detection, benchmark dataset construction, classifier sweeps, and report
// aggregation behind one reproducible CLI.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pulse/dataset.hpp"
#include "pulse/event.hpp"
#include "pulse/iso8601.hpp"
#include "pulse/medals.hpp"
#include "pulse/peaks.hpp"
#include "pulse/pipeline.hpp"
#include "pulse/report.hpp"
#include "pulse/rng.hpp"
#include "pulse/sweep.hpp"
#include "pulse/synthgen.hpp"
#include "pulse/window.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void require_input(const std::string& path) {
    if (!fs::exists(path))
        throw CLI::ValidationError("missing input file: " + path);
}

std::vector<pulse::MedalEvent> load_medals(const std::string& path) {
    if (path.empty()) return pulse::default_medal_events();
    require_input(path);
    std::ifstream is(path);
    return pulse::read_medal_events(is);
}

std::vector<pulse::TweetEvent> load_events(const std::string& path,
                                           bool report_rejects = true) {
    require_input(path);
    std::ifstream is(path, std::ios::binary);
    pulse::ParseResult parsed = pulse::parse_events(is);
    if (report_rejects && !parsed.rejects.empty())
        std::cerr << "warning: " << parsed.rejects.size()
                  << " rejected rows in " << path << "\n";
    return std::move(parsed.events);
}

pulse::LabeledDataset load_dataset(const std::string& path,
                                   pulse::Problem problem) {
    require_input(path);
    std::ifstream is(path);
    return pulse::read_dataset(is, problem);
}

struct GenerateOptions {
    uint64_t seed = 42;
    std::string start = "2012-07-11T00:00:00Z";
    std::string end = "2012-08-14T00:00:00Z";
    double base_rate = 40.0;
    double diurnal_amplitude = 0.15;
    std::string calendar;  // empty = built-in medal calendar
    double burst_magnitude = pulse::kDefaultBurstMagnitude;
    double burst_duration = pulse::kDefaultBurstDurationMinutes;
    double sentiment_shift = pulse::kDefaultSentimentShift;
    int users = 5000;
    double popularity_exponent = 1.0;
    double reply_prob = 0.25;
    double neutral_prob = 0.15;
    std::string out = "stream.csv";
};

void add_generate_flags(CLI::App* cmd, GenerateOptions& o) {
    cmd->add_option("--seed", o.seed, "Generator seed");
    cmd->add_option("--start", o.start, "Stream start (ISO-8601 UTC)");
    cmd->add_option("--end", o.end, "Stream end (ISO-8601 UTC)");
    cmd->add_option("--base-rate", o.base_rate, "Expected events per minute");
    cmd->add_option("--diurnal-amplitude", o.diurnal_amplitude,
                    "Daily modulation amplitude in [0,1)");
    cmd->add_option("--calendar", o.calendar,
                    "Burst calendar CSV (time,description); default: built-in "
                    "medal calendar");
    cmd->add_option("--burst-magnitude", o.burst_magnitude,
                    "Rate multiplier inside bursts (>1)");
    cmd->add_option("--burst-duration", o.burst_duration,
                    "Burst duration in minutes");
    cmd->add_option("--sentiment-shift", o.sentiment_shift,
                    "Positive-sentiment mean shift inside bursts");
    cmd->add_option("--users", o.users, "User pool size");
    cmd->add_option("--popularity-exponent", o.popularity_exponent,
                    "Rank-frequency skew of user activity");
    cmd->add_option("--reply-prob", o.reply_prob, "Reply probability");
    cmd->add_option("--neutral-prob", o.neutral_prob,
                    "Probability of a no-sentiment event");
}

void run_generate(const GenerateOptions& o) {
    pulse::GeneratorConfig config;
    config.seed = o.seed;
    config.start_time = pulse::require_iso8601_utc(o.start);
    config.end_time = pulse::require_iso8601_utc(o.end);
    config.base_rate = o.base_rate;
    config.diurnal_amplitude = o.diurnal_amplitude;
    config.user_pool_size = o.users;
    config.user_popularity_exponent = o.popularity_exponent;
    config.reply_probability = o.reply_prob;
    config.neutral_probability = o.neutral_prob;
    const auto medals = load_medals(o.calendar);
    config.bursts = pulse::bursts_from_medals(
        medals, o.burst_magnitude, o.burst_duration, o.sentiment_shift);

    const auto events = pulse::generate_stream(config);
    pulse::atomic_write(o.out, [&](std::ostream& os) {
        pulse::write_events(os, events);
    });
    std::cout << "generate: " << events.size() << " events -> " << o.out
              << "\n";
}

struct IngestOptions {
    std::string in;
    std::string out = "events.csv";
    std::string rejects;
    bool keep_neutral = false;
};

void run_ingest(const IngestOptions& o) {
    require_input(o.in);
    std::ifstream is(o.in, std::ios::binary);
    pulse::ParseResult parsed = pulse::parse_events(is);
    if (!o.rejects.empty()) {
        pulse::atomic_write(o.rejects, [&](std::ostream& os) {
            os << "line,reason\n";
            for (const auto& r : parsed.rejects)
                os << r.line << ',' << pulse::csv_escape(r.reason) << '\n';
        });
    } else {
        for (const auto& r : parsed.rejects)
            std::cerr << "reject line " << r.line << ": " << r.reason << "\n";
    }
    const size_t parsed_count = parsed.events.size();
    std::vector<pulse::TweetEvent> events = std::move(parsed.events);
    if (!o.keep_neutral) events = pulse::filter_neutral(std::move(events));
    pulse::atomic_write(o.out, [&](std::ostream& os) {
        pulse::write_events(os, events);
    });
    std::cout << "ingest: " << parsed_count << " valid rows, "
              << parsed.rejects.size() << " rejected, "
              << parsed_count - events.size() << " neutral dropped -> "
              << o.out << "\n";
}

struct FeaturesOptions {
    std::string in;
    int window_min = 15;
    double act_delta = 0.0;   // 0 = scale-relative default
    double sent_delta = 0.0;  // 0 = scale-relative default
    std::string out = "windows.csv";
};

void run_features(const FeaturesOptions& o) {
    const auto events = load_events(o.in);
    auto windows = pulse::aggregate_windows(events, o.window_min);
    if (windows.size() < 3)
        std::cerr << "warning: fewer than 3 windows; derivatives undefined\n";
    pulse::derive_derivatives(windows);

    std::vector<double> act(windows.size()), sent(windows.size());
    for (size_t i = 0; i < windows.size(); ++i) {
        act[i] = windows[i].act;
        sent[i] = windows[i].sent;
    }
    pulse::PeakDetectionParams act_params{
        o.act_delta > 0 ? o.act_delta : pulse::suggest_delta(act),
        pulse::PeakDetect::both};
    pulse::PeakDetectionParams sent_params{
        o.sent_delta > 0 ? o.sent_delta : pulse::suggest_delta(sent),
        pulse::PeakDetect::both};
    pulse::mark_peaks(windows, act_params, sent_params);

    pulse::atomic_write(o.out, [&](std::ostream& os) {
        pulse::write_windows(os, windows);
    });
    std::cout << "features: " << windows.size() << " windows (act delta "
              << pulse::format_double(act_params.delta) << ", sent delta "
              << pulse::format_double(sent_params.delta) << ") -> " << o.out
              << "\n";
}

struct BenchmarkOptions {
    std::string problem = "trend";
    std::string windows;
    std::string medals;  // empty = built-in
    int threshold = 500;
    int tolerance_windows = 2;
    std::string out = "dataset.csv";
};

void run_benchmark(const BenchmarkOptions& o) {
    const auto problem = pulse::parse_problem(o.problem);
    if (!problem)
        throw CLI::ValidationError("unknown problem: " + o.problem);
    require_input(o.windows);
    std::ifstream is(o.windows);
    const auto windows = pulse::read_windows(is);

    pulse::LabeledDataset ds;
    switch (*problem) {
        case pulse::Problem::trend:
            ds = pulse::build_trend_dataset(windows);
            break;
        case pulse::Problem::threshold:
            ds = pulse::build_threshold_dataset(windows, o.threshold);
            break;
        case pulse::Problem::peak: {
            const auto medals = load_medals(o.medals);
            if (medals.empty())
                std::cerr << "warning: empty medal list; all peaks labeled "
                             "class 1\n";
            ds = pulse::build_peak_dataset(windows, medals,
                                           o.tolerance_windows);
            break;
        }
    }
    pulse::atomic_write(o.out, [&](std::ostream& os) {
        pulse::write_dataset(os, ds);
    });
    const auto counts = ds.class_counts();
    std::cout << "benchmark " << o.problem << ": " << ds.observations.size()
              << " observations (class 1: " << counts[0]
              << ", class 2: " << counts[1] << ") -> " << o.out << "\n";
}

struct SweepOptions {
    std::string problem = "trend";
    std::string in;
    std::string mode = "sampled";
    size_t samples = 500;
    int reps = 20;
    uint64_t seed = 42;
    double train_fraction = 0.8;
    std::string methods = "all";
    std::vector<int> sizes = {2, 3, 4, 5, 6};
    int workers = 0;
    std::string out = "results.csv";
};

std::vector<pulse::ClassifierSpec> parse_methods(const std::string& list) {
    if (list == "all") return pulse::SweepConfig::all_methods();
    std::vector<pulse::ClassifierSpec> specs;
    std::string cur;
    std::istringstream ss(list);
    while (std::getline(ss, cur, ',')) {
        const auto m = pulse::parse_method(cur);
        if (!m) throw CLI::ValidationError("unknown method: " + cur);
        specs.push_back({*m, {}});
    }
    if (specs.empty()) throw CLI::ValidationError("no methods selected");
    return specs;
}

void run_sweep_stage(const SweepOptions& o) {
    const auto problem = pulse::parse_problem(o.problem);
    if (!problem)
        throw CLI::ValidationError("unknown problem: " + o.problem);
    if (o.mode != "sampled" && o.mode != "exhaustive")
        throw CLI::ValidationError("mode must be sampled or exhaustive");
    const auto ds = load_dataset(o.in, *problem);

    pulse::SweepConfig config;
    config.problem = *problem;
    config.methods = parse_methods(o.methods);
    config.subset_sizes = o.sizes;
    config.mode = o.mode == "sampled" ? pulse::SubsetMode::sampled
                                      : pulse::SubsetMode::exhaustive;
    config.sample_count = o.samples;
    config.repetitions = o.reps;
    config.train_fraction = o.train_fraction;
    config.master_seed = o.seed;
    config.workers = o.workers;

    const auto records = pulse::run_sweep(config, ds);
    const auto rows = pulse::to_result_rows(records, ds.catalog);
    pulse::atomic_write(o.out, [&](std::ostream& os) {
        pulse::write_result_rows(os, rows);
    });
    std::cout << "sweep " << o.problem << ": " << records.size()
              << " records -> " << o.out << "\n";
}

struct ReportOptions {
    std::string in;
    std::string out_dir = "reports";
};

void run_report(const ReportOptions& o) {
    require_input(o.in);
    std::ifstream is(o.in);
    const auto rows = pulse::read_result_rows(is);
    fs::create_directories(o.out_dir);
    const auto dims = pulse::summarize_by_dimension(rows);
    const auto boxes = pulse::full_box_summary(rows);
    pulse::atomic_write(fs::path(o.out_dir) / "dim_summary.csv",
                        [&](std::ostream& os) {
                            pulse::write_dim_summary(os, dims);
                        });
    pulse::atomic_write(fs::path(o.out_dir) / "box_summary.csv",
                        [&](std::ostream& os) {
                            pulse::write_box_summary(os, boxes);
                        });
    std::cout << "report: " << rows.size() << " records -> " << o.out_dir
              << "/dim_summary.csv, box_summary.csv\n";
}

struct ReproduceOptions {
    uint64_t seed = 42;
    std::string mode = "sampled";
    size_t samples = 500;
    int reps = 20;
    std::string problem = "peak";
    std::string out_dir = "out";
    int workers = 0;
    int threshold = 500;
    int tolerance_windows = 2;
};

// One-shot pipeline: generate -> ingest -> features -> benchmark -> sweep ->
// report, with stage seeds derived from the master seed and a manifest
// recording checksums of every artifact.
void run_reproduce(const ReproduceOptions& o) {
    const auto problem = pulse::parse_problem(o.problem);
    if (o.problem != "all" && !problem)
        throw CLI::ValidationError("unknown problem: " + o.problem);
    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    pulse::PipelineManifest manifest(o.seed);
    const fs::path manifest_path = dir / "manifest.json";

    const fs::path medals_path = dir / "medals.csv";
    pulse::atomic_write(medals_path, [&](std::ostream& os) {
        pulse::write_medal_events(os, pulse::default_medal_events());
    });
    manifest.add_stage("calendar", {}, {medals_path});
    manifest.save(manifest_path);

    GenerateOptions gen;
    gen.seed = pulse::derive_seed(o.seed, "generate");
    gen.calendar = medals_path.string();
    gen.out = (dir / "stream.csv").string();
    run_generate(gen);
    manifest.add_stage("generate",
                       {{"seed", gen.seed},
                        {"start", gen.start},
                        {"end", gen.end},
                        {"base_rate", gen.base_rate}},
                       {dir / "stream.csv"});
    manifest.save(manifest_path);

    IngestOptions ing;
    ing.in = gen.out;
    ing.out = (dir / "events.csv").string();
    ing.rejects = (dir / "rejects.csv").string();
    run_ingest(ing);
    manifest.add_stage("ingest", {}, {dir / "events.csv", dir / "rejects.csv"});
    manifest.save(manifest_path);

    FeaturesOptions feat;
    feat.in = ing.out;
    feat.out = (dir / "windows.csv").string();
    run_features(feat);
    manifest.add_stage("features", {{"window_min", feat.window_min}},
                       {dir / "windows.csv"});
    manifest.save(manifest_path);

    std::vector<std::string> problems;
    if (o.problem == "all")
        problems = {"trend", "threshold", "peak"};
    else
        problems = {o.problem};

    for (const auto& prob : problems) {
        const bool suffixed = problems.size() > 1;
        auto named = [&](const std::string& stem) {
            return (dir / (suffixed ? stem + "_" + prob + ".csv"
                                    : stem + ".csv"))
                .string();
        };
        BenchmarkOptions bench;
        bench.problem = prob;
        bench.windows = feat.out;
        bench.medals = medals_path.string();
        bench.threshold = o.threshold;
        bench.tolerance_windows = o.tolerance_windows;
        bench.out = named("dataset");
        run_benchmark(bench);
        manifest.add_stage("benchmark:" + prob,
                           {{"threshold", o.threshold},
                            {"tolerance_windows", o.tolerance_windows}},
                           {bench.out});
        manifest.save(manifest_path);

        SweepOptions sweep;
        sweep.problem = prob;
        sweep.in = bench.out;
        sweep.mode = o.mode;
        sweep.samples = o.samples;
        sweep.reps = o.reps;
        sweep.seed = pulse::derive_seed(o.seed, "sweep:" + prob);
        sweep.workers = o.workers;
        sweep.out = named("results");
        run_sweep_stage(sweep);
        manifest.add_stage("sweep:" + prob,
                           {{"seed", sweep.seed},
                            {"mode", sweep.mode},
                            {"samples", sweep.samples},
                            {"reps", sweep.reps}},
                           {sweep.out});
        manifest.save(manifest_path);

        // Reports land beside the results with the standard names.
        require_input(sweep.out);
        std::ifstream is(sweep.out);
        const auto rows = pulse::read_result_rows(is);
        const auto dims = pulse::summarize_by_dimension(rows);
        const auto boxes = pulse::full_box_summary(rows);
        const auto dim_path = suffixed
                                  ? dir / ("dim_summary_" + prob + ".csv")
                                  : dir / "dim_summary.csv";
        const auto box_path = suffixed
                                  ? dir / ("box_summary_" + prob + ".csv")
                                  : dir / "box_summary.csv";
        pulse::atomic_write(dim_path, [&](std::ostream& os) {
            pulse::write_dim_summary(os, dims);
        });
        pulse::atomic_write(box_path, [&](std::ostream& os) {
            pulse::write_box_summary(os, boxes);
        });
        manifest.add_stage("report:" + prob, {}, {dim_path, box_path});
        manifest.save(manifest_path);
        std::cout << "report " << prob << " -> " << dim_path.string() << ", "
                  << box_path.string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Windowed social-stream features and classifier benchmarks"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* cmd_gen = app.add_subcommand("generate",
                                       "Generate a synthetic event stream");
    add_generate_flags(cmd_gen, gen);
    cmd_gen->add_option("--out", gen.out, "Output stream CSV")->required();

    IngestOptions ing;
    auto* cmd_ing = app.add_subcommand(
        "ingest", "Parse, validate and filter an event stream");
    cmd_ing->add_option("--in", ing.in, "Input stream CSV")->required();
    cmd_ing->add_option("--out", ing.out, "Output events CSV")->required();
    cmd_ing->add_option("--rejects", ing.rejects,
                        "Write rejected rows to this CSV");
    cmd_ing->add_flag("--keep-neutral", ing.keep_neutral,
                      "Keep no-sentiment events");

    FeaturesOptions feat;
    auto* cmd_feat = app.add_subcommand(
        "features", "Aggregate windows, derive features, mark peaks");
    cmd_feat->add_option("--in", feat.in, "Input events CSV")->required();
    cmd_feat->add_option("--window-min", feat.window_min,
                         "Window length in minutes");
    cmd_feat->add_option("--act-delta", feat.act_delta,
                         "Activity peak threshold (default: 0.5 stddev)");
    cmd_feat->add_option("--sent-delta", feat.sent_delta,
                         "Sentiment peak threshold (default: 0.5 stddev)");
    cmd_feat->add_option("--out", feat.out, "Output windows CSV")->required();

    BenchmarkOptions bench;
    auto* cmd_bench = app.add_subcommand(
        "benchmark", "Build a labeled two-class dataset");
    cmd_bench->add_option("--problem", bench.problem,
                          "trend, threshold, or peak")
        ->required();
    cmd_bench->add_option("--windows", bench.windows, "Input windows CSV")
        ->required();
    cmd_bench->add_option("--medals", bench.medals,
                          "Medal calendar CSV (default: built-in)");
    cmd_bench->add_option("--threshold", bench.threshold,
                          "Activity threshold for the threshold problem");
    cmd_bench->add_option("--tolerance-windows", bench.tolerance_windows,
                          "Co-occurrence tolerance in windows");
    cmd_bench->add_option("--out", bench.out, "Output dataset CSV")
        ->required();

    SweepOptions sweep;
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "Run the repeated-holdout feature-subset sweep");
    cmd_sweep->add_option("--problem", sweep.problem,
                          "trend, threshold, or peak");
    cmd_sweep->add_option("--in", sweep.in, "Input dataset CSV")->required();
    cmd_sweep->add_option("--mode", sweep.mode, "sampled or exhaustive");
    cmd_sweep->add_option("--samples", sweep.samples,
                          "Subset count in sampled mode");
    cmd_sweep->add_option("--reps", sweep.reps, "Holdout repetitions");
    cmd_sweep->add_option("--seed", sweep.seed, "Sweep master seed");
    cmd_sweep->add_option("--train-fraction", sweep.train_fraction,
                          "Training fraction of each split");
    cmd_sweep->add_option("--methods", sweep.methods,
                          "Comma-separated method list or 'all'");
    cmd_sweep->add_option("--sizes", sweep.sizes, "Subset sizes");
    cmd_sweep->add_option("--workers", sweep.workers,
                          "Worker threads (0 = hardware)");
    cmd_sweep->add_option("--out", sweep.out, "Output results CSV")
        ->required();

    ReportOptions rep;
    auto* cmd_rep = app.add_subcommand(
        "report", "Aggregate sweep results into summary tables");
    cmd_rep->add_option("--in", rep.in, "Input results CSV")->required();
    cmd_rep->add_option("--out-dir", rep.out_dir, "Output directory");

    ReproduceOptions repro;
    auto* cmd_repro = app.add_subcommand(
        "reproduce", "Run the full pipeline end to end");
    cmd_repro->add_option("--seed", repro.seed, "Master seed");
    cmd_repro->add_option("--mode", repro.mode, "sampled or exhaustive");
    cmd_repro->add_option("--samples", repro.samples,
                          "Subset count in sampled mode");
    cmd_repro->add_option("--reps", repro.reps, "Holdout repetitions");
    cmd_repro->add_option("--problem", repro.problem,
                          "trend, threshold, peak, or all");
    cmd_repro->add_option("--out-dir", repro.out_dir, "Artifact directory");
    cmd_repro->add_option("--workers", repro.workers,
                          "Worker threads (0 = hardware)");
    cmd_repro->add_option("--threshold", repro.threshold,
                          "Activity threshold for the threshold problem");
    cmd_repro->add_option("--tolerance-windows", repro.tolerance_windows,
                          "Co-occurrence tolerance in windows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) run_generate(gen);
        else if (cmd_ing->parsed()) run_ingest(ing);
        else if (cmd_feat->parsed()) run_features(feat);
        else if (cmd_bench->parsed()) run_benchmark(bench);
        else if (cmd_sweep->parsed()) run_sweep_stage(sweep);
        else if (cmd_rep->parsed()) run_report(rep);
        else if (cmd_repro->parsed()) run_reproduce(repro);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
