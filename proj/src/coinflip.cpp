#include "uncprop/coinflip.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "uncprop/error.hpp"
#include "uncprop/numfmt.hpp"

namespace uncprop::coin {

SequenceTable enumerate_sequences(int n) {
    if (n < 1 || n > kMaxSequenceLength)
        fail(errc::out_of_range, "sequence length must be in [1, " +
                                     std::to_string(kMaxSequenceLength) + "], got " + std::to_string(n));
    SequenceTable table;
    table.n = n;
    const std::uint32_t count = 1u << n;
    table.rows.reserve(count);
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        SequenceRow row;
        row.sequence.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            row.sequence[static_cast<std::size_t>(k)] = (bits >> (n - 1 - k)) & 1u ? 'T' : 'H';
        row.heads = n - std::popcount(bits);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string frequency_fraction(int heads, int n) {
    if (n < 1 || heads < 0 || heads > n)
        fail(errc::out_of_range, "head count must be in [0, n]");
    if (heads == 0) return "0";
    if (heads == n) return "1";
    int g = std::gcd(heads, n);
    return std::to_string(heads / g) + "/" + std::to_string(n / g);
}

double frequency_uncertainty(double f, std::uint64_t n) {
    if (!(f >= 0.0 && f <= 1.0))
        fail(errc::out_of_range, "frequency must be in [0, 1], got " + format_double(f));
    if (n < 1) fail(errc::out_of_range, "flip count must be >= 1");
    return std::sqrt(f * (1.0 - f) / static_cast<double>(n));
}

bool degenerate_frequency(double f) { return f == 0.0 || f == 1.0; }

FrequencyEstimate simulate_flips(std::uint64_t n, std::uint64_t seed) {
    if (n < 1) fail(errc::out_of_range, "flip count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uint64_t heads = 0;
    std::uint64_t full_words = n / 64;
    for (std::uint64_t w = 0; w < full_words; ++w) heads += static_cast<std::uint64_t>(std::popcount(rng()));
    std::uint64_t remainder = n % 64;
    if (remainder != 0) {
        std::uint64_t mask = (std::uint64_t{1} << remainder) - 1;
        heads += static_cast<std::uint64_t>(std::popcount(rng() & mask));
    }
    FrequencyEstimate est;
    est.n = n;
    est.f = static_cast<double>(heads) / static_cast<double>(n);
    est.delta_f = frequency_uncertainty(est.f, n);
    return est;
}

}  // namespace uncprop::coin
