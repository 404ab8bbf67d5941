// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cutstack/codeword.hpp"
#include "cutstack/names.hpp"
#include "cutstack/rational.hpp"

namespace cutstack {

// One stack of equal-width intervals. levels[0] is the bottom; the map under
// construction sends level i to level i+1. Column measure = width * height.
struct Column {
    std::vector<uint8_t> levels;
    Rational width;

    long height() const { return static_cast<long>(levels.size()); }
    Rational measure() const { return width * height(); }
};

// A finite construction stage: the transformation restricted to its defined
// part. Levels above height-1 have no image yet; name extraction reports the
// resulting neglected mass explicitly instead of normalizing it away.
struct Tower {
    std::vector<Column> columns;
    uint32_t alphabet_size = 2;
    uint8_t spacer_symbol = 1;  // spacers join the partition's second set
    std::vector<std::string> stage_log;

    Rational total_measure() const;
    long min_height() const;
    // Height shared by all columns; contract violation if they differ.
    long uniform_height() const;
    void check_valid() const;
};

// Initial tower of single-symbol columns, e.g. {0, 1} with widths {1/2, 1/2}.
Tower make_initial_tower(const std::vector<std::pair<std::string, Rational>>& columns,
                         uint32_t alphabet_size = 2, uint8_t spacer_symbol = 1);

// Set of levels, addressed as (column index, level index).
struct LevelSet {
    std::vector<std::pair<uint32_t, uint32_t>> entries;
};

Rational level_set_measure(const Tower& t, const LevelSet& a);
void check_level_set(const Tower& t, const LevelSet& a);

// --- stage primitives -----------------------------------------------------

// Replace column col with k copies of width/k each. Measure conserved.
Tower cut(const Tower& t, size_t col, long k);

// Replace the named equal-width columns by their concatenation (first =
// bottom), placed at the first named column's position. Measure conserved.
Tower stack(const Tower& t, const std::vector<size_t>& order);

// Append `count` spacer levels on top of column col.
Tower add_spacers(const Tower& t, size_t col, long count);

// Cut each column into k and stack left to right (height k*h). k >= 1.
Tower cut_stack_each(const Tower& t, long k);

// --- paper stages ----------------------------------------------------------

// Two-approximately-independent-words stage on a single-column tower:
// C -> C1, C2 of equal width; C1 cut into k, stacked, k spacers on top;
// C2 cut into k, one spacer atop each subcolumn, stacked. Two columns of
// height k(h+1): words W^k s^k and (W s)^k.
Tower stage_two_word(const Tower& t, long k);

// One independent cutting-and-stacking round on l equal columns: each column
// supplies l bottom-role and l top-role subcolumns of width w/(2l), forming
// all l^2 ordered pairs (bottom i, top j), each of height 2h. s rounds from
// 2 columns give 2^(2^s) columns of height 2^s h. Measure conserved.
Tower stage_ics(const Tower& t, long s);

// Chacon-2-style stage, per column: cut in two, one spacer atop the right
// half, right atop left. Height 2h+1; column count unchanged.
Tower stage_weak_mixing(const Tower& t);

// Cut each column into r >= 2 subcolumns and stack left to right; T^h is
// close to the identity on the old levels afterwards.
Tower stage_rigidity(const Tower& t, long r);

// Prop 6.1 swap on a two-column tower of equal heights: C1 cut into
// 2(n_stage+2), C2 into 2; the last subcolumn of C1 changes places with the
// second subcolumn of C2. Resulting columns are grouped left family first.
struct SwapResult {
    Tower tower;
    std::vector<size_t> family1;  // regrouped C1 pieces
    std::vector<size_t> family2;  // regrouped C2 pieces
};
SwapResult stage_swap(const Tower& t, long n_stage);

// --- measurements -----------------------------------------------------------

// Length-n name distribution: per column and offset j <= h-n, the window
// word with mass = column width; masses normalized by total tower measure.
// Neglected mass (top n-1 levels of every column) is reported, never covered.
WeightedNames name_distribution(const Tower& t, long n);

// Name distribution restricted to a fixed base: offsets 0 <= j < base_rows
// only, normalized over the base, no neglected mass. Distributions at
// different n then live on the same point set, so refinement facts
// (monotone entropy) hold exactly. Requires base_rows + n <= min height.
WeightedNames name_distribution_base(const Tower& t, long n, long base_rows);

// Measure of A ∩ T^-shift A within columns, plus the measure of A sitting in
// the top `shift` levels where T^shift is not yet defined.
struct OverlapResult {
    Rational overlap;
    Rational undefined_mass;
};
OverlapResult measure_overlap(const Tower& t, const LevelSet& a, long shift);

// Image of a pre-rigidity LevelSet inside the stacked column: level (c, i)
// becomes the r copies (c, i + j*h_pre), j = 0..r-1.
LevelSet rigidity_image(const LevelSet& a, long pre_height, long r);

}  // namespace cutstack
