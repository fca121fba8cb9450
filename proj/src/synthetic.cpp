#include "elf/synthetic.hpp"

#include <array>
#include <random>

namespace elf {

namespace {

// Degree-day seasonal shapes for a cold-winter, warm-summer climate.
constexpr std::array<double, 12> kHddProfile = {950, 820, 640, 320, 110, 10,
                                                0,   0,   60,  280, 540, 830};
constexpr std::array<double, 12> kCddProfile = {0,   0,   5,   30, 110, 260,
                                                420, 390, 210, 60, 5,   0};

}  // namespace

LoadSeries make_synthetic_series(const SyntheticConfig& config) {
    if (config.years < 1) {
        fail(Errc::invalid_config, "years must be >= 1");
    }
    if (config.start_year < 1900) {
        fail(Errc::invalid_config, "start_year must be >= 1900");
    }
    if (!(config.noise_sd >= 0.0)) {
        fail(Errc::invalid_config, "noise_sd must be >= 0");
    }
    if (!(config.ar_coefficient >= 0.0 && config.ar_coefficient < 1.0)) {
        fail(Errc::invalid_config, "ar_coefficient must lie in [0, 1)");
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> weather_scale(0.75, 1.25);
    std::normal_distribution<double> noise(0.0, 1.0);

    constexpr int kBurnInYears = 10;  // forget the flat initial state
    std::array<double, 12> prev_load{};
    prev_load.fill(config.base_load);

    std::vector<MonthlyRecord> records;
    records.reserve(static_cast<std::size_t>(config.years) * 12);

    for (int step = 0; step < kBurnInYears + config.years; ++step) {
        const int year = config.start_year - kBurnInYears + step;
        for (int month = 1; month <= 12; ++month) {
            const auto m = static_cast<std::size_t>(month - 1);
            const double hdd = kHddProfile[m] * weather_scale(rng);
            const double cdd = kCddProfile[m] * weather_scale(rng);
            const double load = (1.0 - config.ar_coefficient) * config.base_load +
                                config.ar_coefficient * prev_load[m] +
                                config.hdd_weight * hdd + config.cdd_weight * cdd +
                                config.noise_sd * noise(rng);
            prev_load[m] = load;
            if (step >= kBurnInYears) {
                records.push_back({year, month, load, hdd, cdd});
            }
        }
    }
    return LoadSeries(std::move(records));
}

}  // namespace elf
