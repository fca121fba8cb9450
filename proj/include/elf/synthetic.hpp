#pragma once

#include <cstdint>

#include "elf/dataset.hpp"

namespace elf {

/// Parameters of the seeded synthetic monthly series used by tests and
/// benchmarks. Loads follow a per-month autoregression driven by seasonal
/// degree days plus i.i.d. Gaussian noise, so the conditional distribution
/// of a month's load given its same-month lag and degree days is exactly
/// linear with symmetric noise.
struct SyntheticConfig {
    int start_year = 2000;
    int years = 16;
    double base_load = 10000.0;   // long-run load level before weather
    double ar_coefficient = 0.55; // weight on the same month one year back
    double hdd_weight = 1.2;      // load per heating degree day
    double cdd_weight = 2.0;      // load per cooling degree day
    double noise_sd = 150.0;
    std::uint64_t seed = 1;
};

LoadSeries make_synthetic_series(const SyntheticConfig& config);

}  // namespace elf
