#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulse/event.hpp"
#include "pulse/iso8601.hpp"
#include "pulse/medals.hpp"
#include "pulse/rng.hpp"

namespace pulse {

// A multiplicative activity boost with a sentiment lift, active over
// [time, time + duration_minutes).
struct EventBurst {
    int64_t time = 0;  // UTC epoch seconds
    double magnitude = 1.0;
    double duration_minutes = 0.0;
    double sentiment_shift = 0.0;
};

struct GeneratorConfig {
    uint64_t seed = 0;
    int64_t start_time = 0;  // UTC epoch seconds
    int64_t end_time = 0;
    double base_rate = 1.0;           // expected events per minute
    double diurnal_amplitude = 0.0;   // [0, 1)
    std::vector<EventBurst> bursts;
    int user_pool_size = 1000;
    double user_popularity_exponent = 1.0;
    double reply_probability = 0.0;
    double neutral_probability = 0.0;

    void validate() const {
        if (start_time >= end_time)
            throw std::invalid_argument("generator: empty time range");
        if (!(base_rate > 0))
            throw std::invalid_argument("generator: base_rate must be positive");
        if (diurnal_amplitude < 0 || diurnal_amplitude >= 1)
            throw std::invalid_argument(
                "generator: diurnal_amplitude must be in [0,1)");
        if (user_pool_size <= 0)
            throw std::invalid_argument("generator: user pool must be positive");
        if (!(user_popularity_exponent > 0))
            throw std::invalid_argument(
                "generator: popularity exponent must be positive");
        if (reply_probability < 0 || reply_probability > 1 ||
            neutral_probability < 0 || neutral_probability > 1)
            throw std::invalid_argument(
                "generator: probabilities must be in [0,1]");
        for (const auto& b : bursts) {
            if (!(b.magnitude > 1))
                throw std::invalid_argument("generator: burst magnitude must exceed 1");
            if (!(b.duration_minutes > 0))
                throw std::invalid_argument("generator: burst duration must be positive");
        }
    }
};

namespace detail {

// Daily activity factor with mean 1 over a full day; crest at 20:00 UTC.
inline double diurnal_factor(double epoch_seconds, double amplitude) {
    constexpr double kPeakSecondOfDay = 72000.0;  // 20:00
    const double tod = std::fmod(epoch_seconds, 86400.0);
    return 1.0 + amplitude * std::cos(2.0 * std::numbers::pi *
                                      (tod - kPeakSecondOfDay) / 86400.0);
}

// Rank-frequency user sampler: P(rank r) proportional to r^-s.
class ZipfSampler {
public:
    ZipfSampler(int pool, double exponent) : cumulative_(pool) {
        double total = 0;
        for (int r = 0; r < pool; ++r) {
            total += std::pow(static_cast<double>(r + 1), -exponent);
            cumulative_[r] = total;
        }
    }

    int sample(SplitMix64& rng) const {
        const double u = rng.next_double() * cumulative_.back();
        const auto it =
            std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        return static_cast<int>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace detail

// Deterministic synthetic event stream: thinned inhomogeneous Poisson
// arrivals with rate = base_rate x diurnal factor x product of active burst
// magnitudes. Positive sentiment is stochastically elevated inside bursts.
// Identical config (including seed) yields an identical stream.
inline std::vector<TweetEvent> generate_stream(const GeneratorConfig& config) {
    config.validate();

    // Segment the timeline at burst boundaries so the burst product is
    // constant per segment and thinning only pays for the diurnal factor.
    std::vector<int64_t> cuts{config.start_time, config.end_time};
    for (const auto& b : config.bursts) {
        const auto burst_end =
            b.time + static_cast<int64_t>(std::llround(b.duration_minutes * 60));
        if (b.time > config.start_time && b.time < config.end_time)
            cuts.push_back(b.time);
        if (burst_end > config.start_time && burst_end < config.end_time)
            cuts.push_back(burst_end);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    SplitMix64 rng(config.seed);
    const detail::ZipfSampler users(config.user_pool_size,
                                    config.user_popularity_exponent);
    const double base_per_sec = config.base_rate / 60.0;

    constexpr double kBasePosMean = 1.8, kPosSd = 1.0;
    constexpr double kBaseNegMean = 1.6, kNegSd = 0.9;
    constexpr double kLenMean = 95.0, kLenSd = 30.0;

    std::vector<TweetEvent> events;
    events.reserve(static_cast<size_t>(
        config.base_rate *
        static_cast<double>(config.end_time - config.start_time) / 60.0 * 1.2));

    for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const int64_t seg_start = cuts[seg];
        const int64_t seg_end = cuts[seg + 1];
        double burst_factor = 1.0;
        double shift = 0.0;
        for (const auto& b : config.bursts) {
            const auto burst_end = b.time + static_cast<int64_t>(
                                                std::llround(b.duration_minutes * 60));
            if (b.time <= seg_start && seg_start < burst_end) {
                burst_factor *= b.magnitude;
                shift += b.sentiment_shift;
            }
        }
        const double lambda_max =
            base_per_sec * burst_factor * (1.0 + config.diurnal_amplitude);
        const double pos_mean = kBasePosMean + shift;

        double t = 0.0;  // offset from segment start
        const double seg_len = static_cast<double>(seg_end - seg_start);
        for (;;) {
            t += rng.next_exponential(lambda_max);
            if (t >= seg_len) break;
            const double abs_t = static_cast<double>(seg_start) + t;
            const double rate = base_per_sec * burst_factor *
                                detail::diurnal_factor(abs_t, config.diurnal_amplitude);
            if (rng.next_double() * lambda_max >= rate) continue;  // thinned out

            TweetEvent ev;
            ev.timestamp = seg_start + static_cast<int64_t>(t);

            char author[16];
            std::snprintf(author, sizeof(author), "u%06d", users.sample(rng));
            ev.author = author;

            if (rng.next_bernoulli(config.reply_probability) && !events.empty())
                ev.reply_to_id = events[rng.next_below(events.size())].id;

            ev.text_length = static_cast<int>(std::clamp<long>(
                std::lround(kLenMean + kLenSd * rng.next_normal()), 1, 160));

            if (rng.next_bernoulli(config.neutral_probability)) {
                ev.pos = 1;
                ev.neg = -1;
            } else {
                do {
                    ev.pos = static_cast<int>(std::clamp<long>(
                        std::lround(pos_mean + kPosSd * rng.next_normal()), 1, 5));
                    ev.neg = -static_cast<int>(std::clamp<long>(
                        std::lround(kBaseNegMean + kNegSd * rng.next_normal()), 1,
                        5));
                } while (ev.pos == 1 && ev.neg == -1);
            }

            char id[16];
            std::snprintf(id, sizeof(id), "e%08zu", events.size());
            ev.id = id;
            events.push_back(std::move(ev));
        }
    }
    return events;
}

inline constexpr double kDefaultBurstMagnitude = 1.7;
inline constexpr double kDefaultBurstDurationMinutes = 75.0;
inline constexpr double kDefaultSentimentShift = 1.5;

inline std::vector<EventBurst> bursts_from_medals(
    const std::vector<MedalEvent>& medals,
    double magnitude = kDefaultBurstMagnitude,
    double duration_minutes = kDefaultBurstDurationMinutes,
    double sentiment_shift = kDefaultSentimentShift) {
    std::vector<EventBurst> bursts;
    bursts.reserve(medals.size());
    for (const auto& m : medals)
        bursts.push_back({m.time, magnitude, duration_minutes, sentiment_shift});
    return bursts;
}

// The built-in medal calendar as bursts with the default burst shape.
inline std::vector<EventBurst> default_medal_calendar(
    double magnitude = kDefaultBurstMagnitude,
    double duration_minutes = kDefaultBurstDurationMinutes,
    double sentiment_shift = kDefaultSentimentShift) {
    return bursts_from_medals(default_medal_events(), magnitude,
                              duration_minutes, sentiment_shift);
}

// The stock dataset every pipeline run starts from unless overridden:
// the 34-day collection window around the 2012 games, evening-skewed
// diurnal activity, and the built-in medal calendar driving bursts.
inline GeneratorConfig default_generator_config(uint64_t seed = 42) {
    GeneratorConfig config;
    config.seed = seed;
    config.start_time = utc_epoch(2012, 7, 11);
    config.end_time = utc_epoch(2012, 8, 14);
    config.base_rate = 40.0;
    config.diurnal_amplitude = 0.15;
    config.bursts = default_medal_calendar();
    config.user_pool_size = 5000;
    config.user_popularity_exponent = 1.0;
    config.reply_probability = 0.25;
    config.neutral_probability = 0.15;
    return config;
}

}  // namespace pulse
