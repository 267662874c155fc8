#pragma once

// Typical sequences, block compression, repetition coding and the binary
// symmetric channel.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qit/entropy.hpp"
#include "qit/random.hpp"

namespace qit {

/// Finite 0/1 sequence; element 0 is the leftmost (most significant) bit.
class BitString {
public:
    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        if (bits_.empty()) throw ContractError("BitString: length must be at least 1");
        for (const auto b : bits_)
            if (b > 1) throw ContractError("BitString: entries must be 0 or 1");
    }

    static BitString parse(const std::string& s) {
        std::vector<std::uint8_t> bits;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1') throw ParseError("BitString: expected 0 or 1", 1, i + 1);
            bits.push_back(static_cast<std::uint8_t>(s[i] - '0'));
        }
        return BitString(std::move(bits));
    }

    /// Length-n string whose binary value is index.
    static BitString from_index(std::uint64_t index, std::size_t n) {
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[n - 1 - i] = static_cast<std::uint8_t>((index >> i) & 1U);
        return BitString(std::move(bits));
    }

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    std::size_t count_ones() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

    std::uint64_t to_index() const {
        if (bits_.size() > 64) throw SizeError("BitString::to_index: longer than 64 bits");
        std::uint64_t v = 0;
        for (const auto b : bits_) v = (v << 1) | b;
        return v;
    }

    std::string str() const {
        std::string s;
        for (const auto b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// ---------------------------------------------------------------------------
// Typical counts

struct TypicalCount {
    std::size_t n = 0;
    std::size_t ones = 0;                ///< round(n * p1)
    bool rounded = false;                ///< n * p1 was not an integer
    std::optional<std::uint64_t> exact;  ///< C(n, ones) when n <= 64
    double log2_count = 0.0;

    bool log_domain() const noexcept { return !exact.has_value(); }
};

/// Exact binomial coefficient; requires n <= 64 (the result then fits in 64 bits).
inline std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (n > 64) throw SizeError("binomial: exact evaluation limited to n <= 64");
    if (k > n) return 0;
    k = std::min(k, n - k);
    __extension__ using u128 = unsigned __int128;
    u128 r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::uint64_t>(r);
}

inline double log2_binomial(std::size_t n, std::size_t k) {
    if (k > n) throw DomainError("log2_binomial: k > n");
    const auto lg = [](double x) { return std::lgamma(x); };
    return (lg(n + 1.0) - lg(k + 1.0) - lg(n - k + 1.0)) / kLn2;
}

/// Number of length-n sequences with exactly round(n*p1) ones.
inline TypicalCount typical_count(std::size_t n, double p1) {
    if (n == 0) throw ContractError("typical_count: n must be positive");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw DomainError("typical_count: p1 must lie in [0, 1]");
    const double expected_ones = static_cast<double>(n) * p1;
    TypicalCount out;
    out.n = n;
    out.ones = static_cast<std::size_t>(std::llround(expected_ones));
    out.rounded = std::abs(expected_ones - static_cast<double>(out.ones)) > 1e-9;
    if (n <= 64) {
        out.exact = binomial(n, out.ones);
        out.log2_count = std::log2(static_cast<double>(*out.exact));
    } else {
        out.log2_count = log2_binomial(n, out.ones);
    }
    return out;
}

struct CompressionBits {
    double exact = 0.0;     ///< log2 of the typical count
    double stirling = 0.0;  ///< n * H(p1)
};

inline CompressionBits compression_bits(std::size_t n, double p1) {
    return {typical_count(n, p1).log2_count, static_cast<double>(n) * binary_entropy(p1)};
}

// ---------------------------------------------------------------------------
// Binary symmetric channel

/// N_C (1 - H(q)): upper bound on reliably transmitted bits.
inline double channel_capacity(std::uint64_t n_channel, double q) {
    return static_cast<double>(n_channel) * (1.0 - binary_entropy(q));
}

/// N_C H(q): bits needed to locate the flipped positions.
inline double error_pattern_bits(std::uint64_t n_channel, double q) {
    return static_cast<double>(n_channel) * binary_entropy(q);
}

inline BitString repetition_encode(std::uint8_t bit, std::size_t copies) {
    if (bit > 1) throw ContractError("repetition_encode: bit must be 0 or 1");
    if (copies % 2 == 0) throw ContractError("repetition_encode: copy count must be odd");
    return BitString(std::vector<std::uint8_t>(copies, bit));
}

/// Majority vote.
inline std::uint8_t repetition_decode(const BitString& s) {
    if (s.size() % 2 == 0) throw ContractError("repetition_decode: length must be odd");
    return s.count_ones() * 2 > s.size() ? 1 : 0;
}

/// Probability that majority decoding of n copies fails when each bit flips
/// independently with probability q.
inline double bsc_residual_error(std::size_t copies, double q) {
    if (copies % 2 == 0) throw ContractError("bsc_residual_error: copy count must be odd");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("bsc_residual_error: q must lie in [0, 1]");
    double total = 0.0;
    for (std::size_t k = copies / 2 + 1; k <= copies; ++k) {
        const double log_c = std::lgamma(copies + 1.0) - std::lgamma(k + 1.0) - std::lgamma(copies - k + 1.0);
        total += std::exp(log_c) * std::pow(q, static_cast<double>(k)) *
                 std::pow(1.0 - q, static_cast<double>(copies - k));
    }
    return total;
}

/// Empirical decoding-failure rate over independent trials.
inline double bsc_simulate(std::size_t copies, double q, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractError("bsc_simulate: trials must be positive");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("bsc_simulate: q must lie in [0, 1]");
    Rng rng(seed);
    std::uint64_t failures = 0;
    std::vector<std::uint8_t> received(copies);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto bit = static_cast<std::uint8_t>(rng.bernoulli(0.5));
        const BitString sent = repetition_encode(bit, copies);
        for (std::size_t i = 0; i < copies; ++i) received[i] = sent[i] ^ static_cast<std::uint8_t>(rng.bernoulli(q));
        if (repetition_decode(BitString(received)) != bit) ++failures;
    }
    return static_cast<double>(failures) / static_cast<double>(trials);
}

// ---------------------------------------------------------------------------
// Typical-set codebook

/// The most likely length-n strings of an i.i.d. Bernoulli(p1) source,
/// relabelled by their rank.
class TypicalCodebook {
public:
    static constexpr std::size_t kMaxLength = 20;

    TypicalCodebook(std::size_t n, double p1, double coverage) : n_(n), p1_(p1) {
        if (n == 0 || n > kMaxLength) throw ContractError("TypicalCodebook: length must lie in [1, 20]");
        if (!(p1 >= 0.0 && p1 <= 1.0)) throw DomainError("TypicalCodebook: p1 must lie in [0, 1]");
        if (!(coverage > 0.0 && coverage <= 1.0)) throw DomainError("TypicalCodebook: coverage must lie in (0, 1]");

        std::vector<double> by_ones(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            by_ones[k] = std::pow(p1, static_cast<double>(k)) * std::pow(1.0 - p1, static_cast<double>(n - k));

        const std::uint64_t total = std::uint64_t{1} << n;
        std::vector<std::uint64_t> order(total);
        std::iota(order.begin(), order.end(), std::uint64_t{0});
        auto prob = [&](std::uint64_t s) { return by_ones[static_cast<std::size_t>(std::popcount(s))]; };
        std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
            const double pa = prob(a);
            const double pb = prob(b);
            return pa != pb ? pa > pb : a < b;
        });

        double cumulative = 0.0;
        for (const auto s : order) {
            if (coverage < 1.0 && cumulative >= coverage - 1e-12) break;
            cumulative += prob(s);
            index_of_.emplace(s, typical_.size());
            typical_.push_back(s);
        }
        mass_ = cumulative;
        code_bits_ = 0;
        while ((std::uint64_t{1} << code_bits_) < typical_.size()) ++code_bits_;
    }

    std::size_t length() const noexcept { return n_; }
    std::size_t size() const noexcept { return typical_.size(); }
    std::size_t code_bits() const noexcept { return code_bits_; }
    /// Total source probability of the codebook.
    double mass() const noexcept { return mass_; }

    BitString entry(std::size_t k) const { return BitString::from_index(typical_.at(k), n_); }

    std::vector<BitString> typical() const {
        std::vector<BitString> out;
        out.reserve(typical_.size());
        for (const auto s : typical_) out.push_back(BitString::from_index(s, n_));
        return out;
    }

    double probability(const BitString& s) const {
        const auto ones = static_cast<double>(s.count_ones());
        return std::pow(p1_, ones) * std::pow(1.0 - p1_, static_cast<double>(n_) - ones);
    }

    /// Codeword index of s, or nullopt when s is atypical.
    std::optional<std::uint64_t> compress(const BitString& s) const {
        if (s.size() != n_) throw ShapeError("TypicalCodebook::compress: length mismatch");
        const auto it = index_of_.find(s.to_index());
        if (it == index_of_.end()) return std::nullopt;
        return it->second;
    }

    BitString expand(std::uint64_t index) const {
        if (index >= typical_.size()) throw ContractError("TypicalCodebook::expand: index out of range");
        return entry(static_cast<std::size_t>(index));
    }

private:
    std::size_t n_;
    double p1_;
    std::vector<std::uint64_t> typical_;
    std::unordered_map<std::uint64_t, std::uint64_t> index_of_;
    std::size_t code_bits_ = 0;
    double mass_ = 0.0;
};

inline TypicalCodebook build_codebook(std::size_t n, double p1, double coverage) {
    return TypicalCodebook(n, p1, coverage);
}

/// Draws a length-n string from the Bernoulli(p1) source.
inline BitString sample_source(std::size_t n, double p1, Rng& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bernoulli(p1));
    return BitString(std::move(bits));
}

}  // namespace qit
