#pragma once

#include <cstdint>
#include <optional>

#include "uncprop/propagation.hpp"

namespace uncprop {

struct McConfig {
    std::uint64_t sample_count = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 65536;  // deterministic parallel partitioning
};

struct McResult {
    double mean = 0.0;
    double empirical_std = 0.0;           // sample standard deviation (n-1)
    std::uint64_t sample_count = 0;       // accepted samples
    std::uint64_t rejected_count = 0;     // samples discarded at a singularity
    double linearized_std = 0.0;          // combined uncertainty of the linearized budget
    std::optional<double> agreement_ratio;  // empirical/linearized; absent when linearized == 0

    bool operator==(const McResult&) const = default;
};

/// Sampling oracle for the linearized budget: draw the inputs from
/// independent normals N(value, unc^2), push each sample through the model,
/// and report the empirical dispersion next to the linearized one.
///
/// Results are a pure function of (seed, sample_count, chunk_size): each
/// chunk's random stream is derived from (seed, chunk_index), so runs are
/// bit-identical regardless of `worker_count` (0 = hardware concurrency;
/// it only affects wall time). Samples hitting a singularity are rejected
/// and counted; more than 0.1% rejected raises DegenerateSampling.
McResult mc_propagate(const Model& m, const InputMap& inputs, const McConfig& cfg,
                      unsigned worker_count = 0);

}  // namespace uncprop
