// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <utility>
#include <vector>

#include "cutstack/codeword.hpp"
#include "cutstack/rational.hpp"

namespace cutstack {

// Measure-weighted multiset of equal-length codewords. Entries are deduplicated
// and kept in lexicographic order; masses plus the neglected mass sum to 1.
struct WeightedNames {
    std::vector<std::pair<Codeword, Rational>> entries;
    Rational neglected_mass = 0;

    Rational defined_mass() const {
        Rational s = 0;
        for (const auto& [w, m] : entries) s += m;
        return s;
    }
    // Checks dedup order, positive masses, uniform length/alphabet, total 1.
    void check_valid() const;
};

// Accumulates (word, mass) pairs, then merges duplicates and sorts.
class NamesBuilder {
public:
    void add(Codeword w, Rational mass);
    WeightedNames finalize(Rational neglected_mass);

private:
    std::vector<std::pair<Codeword, Rational>> items_;
};

}  // namespace cutstack
