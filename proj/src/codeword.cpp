// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/codeword.hpp"

#include <bit>

namespace cutstack {

Codeword::Codeword(std::span<const uint8_t> symbols, uint32_t alphabet)
    : r_(alphabet), n_(static_cast<uint32_t>(symbols.size())) {
    require(alphabet >= 2 && alphabet <= 256, ErrorKind::contract,
            "codeword alphabet must be in [2, 256]");
    bitpacked_ = (alphabet == 2);
    if (bitpacked_) {
        packed_.assign((n_ + 63) / 64, 0);
        for (uint32_t i = 0; i < n_; ++i) {
            require(symbols[i] < 2, ErrorKind::contract, "codeword symbol out of alphabet");
            if (symbols[i]) packed_[i >> 6] |= (uint64_t{1} << (i & 63));
        }
    } else {
        packed_.assign((n_ + 7) / 8, 0);
        for (uint32_t i = 0; i < n_; ++i) {
            require(symbols[i] < alphabet, ErrorKind::contract, "codeword symbol out of alphabet");
            packed_[i >> 3] |= (uint64_t{symbols[i]} << ((i & 7) * 8));
        }
    }
}

Codeword Codeword::from_string(const std::string& digits, uint32_t alphabet) {
    std::vector<uint8_t> syms;
    syms.reserve(digits.size());
    for (char c : digits) {
        uint8_t v;
        if (c >= '0' && c <= '9') v = static_cast<uint8_t>(c - '0');
        else if (c >= 'a' && c <= 'z') v = static_cast<uint8_t>(c - 'a' + 10);
        else raise(ErrorKind::parse, std::string("bad symbol character '") + c + "'");
        syms.push_back(v);
    }
    return Codeword(syms, alphabet);
}

uint8_t Codeword::symbol(uint32_t i) const {
    if (bitpacked_) return (packed_[i >> 6] >> (i & 63)) & 1;
    return static_cast<uint8_t>((packed_[i >> 3] >> ((i & 7) * 8)) & 0xff);
}

std::vector<uint8_t> Codeword::symbols() const {
    std::vector<uint8_t> out(n_);
    for (uint32_t i = 0; i < n_; ++i) out[i] = symbol(i);
    return out;
}

std::string Codeword::to_string() const {
    require(r_ <= 36, ErrorKind::domain, "to_string supports alphabets up to 36");
    std::string s(n_, '?');
    for (uint32_t i = 0; i < n_; ++i) {
        const uint8_t v = symbol(i);
        s[i] = static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
    }
    return s;
}

uint32_t Codeword::diff_count(const Codeword& a, const Codeword& b) {
    require(a.n_ == b.n_ && a.r_ == b.r_, ErrorKind::contract,
            "codewords comparable only with equal length and alphabet");
    uint32_t diff = 0;
    if (a.bitpacked_) {
        for (size_t w = 0; w < a.packed_.size(); ++w)
            diff += static_cast<uint32_t>(std::popcount(a.packed_[w] ^ b.packed_[w]));
    } else {
        // Byte lanes: mark unequal bytes, then count one bit per lane.
        for (size_t w = 0; w < a.packed_.size(); ++w) {
            uint64_t x = a.packed_[w] ^ b.packed_[w];
            uint64_t lanes = (x | ((x | 0x8080808080808080ull) - 0x0101010101010101ull)) &
                             0x8080808080808080ull;
            diff += static_cast<uint32_t>(std::popcount(lanes));
        }
    }
    return diff;
}

bool Codeword::operator<(const Codeword& other) const {
    if (bitpacked_ == other.bitpacked_ && n_ == other.n_) {
        // Packed storage is little-endian in the symbol index, so the first
        // differing symbol is the lowest set bit (or byte lane) of the xor.
        for (size_t w = 0; w < packed_.size(); ++w) {
            const uint64_t diff = packed_[w] ^ other.packed_[w];
            if (!diff) continue;
            const int b = std::countr_zero(diff);
            if (bitpacked_) return ((packed_[w] >> b) & 1) == 0;
            const int lane = b & ~7;
            return ((packed_[w] >> lane) & 0xff) < ((other.packed_[w] >> lane) & 0xff);
        }
        return false;
    }
    const uint32_t m = n_ < other.n_ ? n_ : other.n_;
    for (uint32_t i = 0; i < m; ++i) {
        const uint8_t x = symbol(i), y = other.symbol(i);
        if (x != y) return x < y;
    }
    return n_ < other.n_;
}

size_t Codeword::hash() const {
    uint64_t h = 1469598103934665603ull ^ (uint64_t{r_} << 32) ^ n_;
    for (uint64_t w : packed_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
}

Rational normalized_hamming(const Codeword& w, const Codeword& w2) {
    require(w.size() > 0, ErrorKind::contract, "distance of empty codewords");
    return Rational(Codeword::diff_count(w, w2), w.size());
}

long strict_ball_max_diff(uint32_t n, const Rational& eps) {
    // Largest u >= 0 with u/n < eps  <=>  u < eps*n.
    if (eps <= 0) return -1;
    const Rational limit = eps * n;
    BigInt u = ceil_div(rat_num(limit), rat_den(limit)) - 1;  // = ceil(limit)-1, i.e. max int < limit
    if (u < 0) return -1;
    if (u >= n) return n;
    return u.convert_to<long>();
}

}  // namespace cutstack
