// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cutstack/errors.hpp"
#include "cutstack/rational.hpp"

namespace cutstack {

// Fixed-length word over an alphabet {0, ..., r-1}, r >= 2.
//
// Storage is bit-packed for r = 2 and byte-packed for r <= 256; the binary
// distance kernel is word-level XOR + popcount, since covering search spends
// essentially all its time in distance tests.
class Codeword {
public:
    Codeword() = default;
    Codeword(std::span<const uint8_t> symbols, uint32_t alphabet);
    static Codeword from_string(const std::string& digits, uint32_t alphabet);

    uint32_t size() const { return n_; }
    uint32_t alphabet() const { return r_; }
    uint8_t symbol(uint32_t i) const;
    std::vector<uint8_t> symbols() const;
    std::string to_string() const;  // one char per symbol for r <= 36

    // Number of differing positions. Contract: equal lengths and alphabets.
    static uint32_t diff_count(const Codeword& a, const Codeword& b);

    bool operator==(const Codeword& other) const {
        return r_ == other.r_ && n_ == other.n_ && packed_ == other.packed_;
    }
    // Lexicographic order on symbol sequences (shorter word first on prefix).
    bool operator<(const Codeword& other) const;

    size_t hash() const;

private:
    uint32_t r_ = 2;
    uint32_t n_ = 0;
    bool bitpacked_ = true;
    std::vector<uint64_t> packed_;  // bits (r=2, 64 symbols/word) or bytes (8 symbols/word)
};

// (1/n) * #{i : w_i != w'_i}, exact. Contract violation on length or
// alphabet mismatch.
Rational normalized_hamming(const Codeword& w, const Codeword& w2);

// Largest diff count u with u/n < eps (strict ball membership), or -1 when
// even distance 0 fails (eps <= 0). Exact rational comparison.
long strict_ball_max_diff(uint32_t n, const Rational& eps);

struct CodewordHash {
    size_t operator()(const Codeword& w) const { return w.hash(); }
};

}  // namespace cutstack
