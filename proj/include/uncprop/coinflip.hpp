#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uncprop::coin {

/// Default seed for reproducible demos; the shipped value is locked by the
/// test suite (fair-coin convergence band at n = 10^6).
inline constexpr std::uint64_t kDefaultSeed = 20117;

/// Enumeration cap: 2^n rows.
inline constexpr int kMaxSequenceLength = 20;

struct SequenceRow {
    std::string sequence;  // e.g. "HHT"
    int heads = 0;         // exact frequency = heads / n
};

/// All 2^n flip sequences of length n, lexicographic with H before T.
struct SequenceTable {
    int n = 0;
    std::vector<SequenceRow> rows;
};

/// Head frequency of a finite flip count, with the uncertainty attached to
/// it. delta_f uses the binomial (Wald) standard error sqrt(f(1-f)/n) — a
/// toolkit convention, degenerate (zero) at f = 0 or 1.
struct FrequencyEstimate {
    double f = 0.0;
    double delta_f = 0.0;
    std::uint64_t n = 0;
};

SequenceTable enumerate_sequences(int n);  // 1 <= n <= kMaxSequenceLength

/// Reduced fraction text for heads/n: "0", "1", "2/3", ...
std::string frequency_fraction(int heads, int n);

/// Wald standard error sqrt(f(1-f)/n); requires f in [0,1], n >= 1.
double frequency_uncertainty(double f, std::uint64_t n);

bool degenerate_frequency(double f);  // f == 0 or f == 1

/// n fair flips from a seeded generator; pure function of (n, seed).
FrequencyEstimate simulate_flips(std::uint64_t n, std::uint64_t seed);

}  // namespace uncprop::coin
