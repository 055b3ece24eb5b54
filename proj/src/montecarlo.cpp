#include "uncprop/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "uncprop/error.hpp"

namespace uncprop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream derivation is counter-based so chunk k's samples never depend on
// which worker ran chunk k-1.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_index) {
    return splitmix64(splitmix64(seed) + chunk_index);
}

// Box-Muller over explicitly constructed (0,1] uniforms; unlike
// std::normal_distribution the draw sequence is pinned by this file alone.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform01() {  // (0,1]: log() stays finite
        return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct ChunkStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t rejected = 0;
};

// Welford merge (order-fixed by the caller).
ChunkStats merge(const ChunkStats& a, const ChunkStats& b) {
    if (a.count == 0) return ChunkStats{b.count, b.mean, b.m2, a.rejected + b.rejected};
    if (b.count == 0) return ChunkStats{a.count, a.mean, a.m2, a.rejected + b.rejected};
    ChunkStats out;
    out.count = a.count + b.count;
    double delta = b.mean - a.mean;
    out.mean = a.mean + delta * static_cast<double>(b.count) / static_cast<double>(out.count);
    out.m2 = a.m2 + b.m2 +
             delta * delta * static_cast<double>(a.count) * static_cast<double>(b.count) /
                 static_cast<double>(out.count);
    out.rejected = a.rejected + b.rejected;
    return out;
}

}  // namespace

McResult mc_propagate(const Model& m, const InputMap& inputs, const McConfig& cfg, unsigned worker_count) {
    if (cfg.sample_count < 1) fail(errc::out_of_range, "sample_count must be >= 1");
    if (cfg.chunk_size < 1) fail(errc::out_of_range, "chunk_size must be >= 1");

    // Validates the model/input pairing and yields the linearized reference.
    PropagationResult linear = propagate_full(m, inputs);

    std::unordered_map<std::string, std::size_t> index;
    std::vector<double> centers;
    detail::check_inputs(m, inputs, index, centers);
    const std::size_t n_inputs = centers.size();
    std::vector<double> sigmas(n_inputs);
    for (const auto& [name, i] : index) sigmas[i] = inputs.at(name).unc();

    const std::uint64_t chunk_count = (cfg.sample_count + cfg.chunk_size - 1) / cfg.chunk_size;
    std::vector<ChunkStats> stats(chunk_count);

    auto run_chunk = [&](std::uint64_t chunk) {
        NormalSampler sampler(chunk_seed(cfg.seed, chunk));
        std::uint64_t begin = chunk * cfg.chunk_size;
        std::uint64_t end = std::min(begin + cfg.chunk_size, cfg.sample_count);
        ChunkStats s;
        std::vector<double> sample(n_inputs);
        for (std::uint64_t k = begin; k < end; ++k) {
            for (std::size_t i = 0; i < n_inputs; ++i) sample[i] = centers[i] + sigmas[i] * sampler.next();
            double y;
            if (!detail::eval_model_value(m, index, sample, y)) {
                ++s.rejected;
                continue;
            }
            ++s.count;
            double delta = y - s.mean;
            s.mean += delta / static_cast<double>(s.count);
            s.m2 += delta * (y - s.mean);
        }
        stats[chunk] = s;
    };

    unsigned workers = worker_count != 0 ? worker_count : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunk_count));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    ChunkStats total;
    for (const auto& s : stats) total = merge(total, s);

    // Strict: rejected/sample_count > 0.1%
    if (total.rejected * 1000 > cfg.sample_count)
        fail(errc::degenerate_sampling,
             "rejected " + std::to_string(total.rejected) + " of " + std::to_string(cfg.sample_count) +
                 " samples (>0.1%); the model is too close to a singularity for sampling to be meaningful");

    McResult r;
    r.mean = total.mean;
    r.empirical_std = total.count > 1
                          ? std::sqrt(total.m2 / static_cast<double>(total.count - 1))
                          : 0.0;
    r.sample_count = total.count;
    r.rejected_count = total.rejected;
    r.linearized_std = linear.budget.combined;
    if (r.linearized_std > 0.0) r.agreement_ratio = r.empirical_std / r.linearized_std;
    return r;
}

}  // namespace uncprop
