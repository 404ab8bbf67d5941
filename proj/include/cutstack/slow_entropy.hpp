// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <string>
#include <vector>

#include "cutstack/covers.hpp"
#include "cutstack/names.hpp"
#include "cutstack/rates.hpp"
#include "cutstack/tower.hpp"

namespace cutstack {

// Trend of value/a_n(t) over the computed n-range. A declared heuristic
// replacing the paper's limsup/liminf, never an asserted limit: least-squares
// slope of log2(ratio) over the top half of the n-grid, dead band +-0.01.
enum class Trend { rising, flat, falling };
std::string trend_name(Trend t);

struct CurveRow {
    long n = 0;
    double t = 0;
    double value = 0;       // S or H(P_n)
    double rate = 0;        // a_n(t); exp2 of rate_log2, may overflow to inf
    double ratio = 0;       // value / rate, may underflow; ratio_log2 is exact
    double rate_log2 = 0;
    double ratio_log2 = 0;
};

struct CurveReport {
    std::vector<CurveRow> rows;                 // grouped by t, n ascending
    std::vector<std::pair<double, Trend>> trends;  // per t
    std::string note;                           // labels the trend heuristic
};

// S_P(T,n,eps,delta)/a_n(t) rows for each t in the grid, from a covering
// curve table.
CurveReport slow_entropy_curves(const std::vector<CoverRow>& cover_table, const RateFamily& rate,
                                const std::vector<double>& t_grid);

// Shannon entropy (bits) of the defined-name distribution, normalized over
// defined mass. Neglected mass beyond 1% earns a stderr caveat.
double blume_entropy(const WeightedNames& names);

// H(P_n) and H(P_n)/a_n rows over an n-grid; stage towers as in
// covering_curve (tallest-needed stage per n).
CurveReport blume_curve(const std::vector<Tower>& stages, BaseSeq a,
                        const std::vector<long>& n_grid);

// The two inequalities from the entropy/covering comparison proof, with
// slack. V_n = names of mass < 2^(-t a_n); V'_n the rest.
struct Prop62Report {
    double t_an = 0;
    double entropy = 0;           // H(P_n), defined-mass normalized
    double mu_vn = 0;             // mass of V_n (normalized)
    long vprime_count = 0;        // |V'_n|
    double ineq1_lhs = 0, ineq1_rhs = 0;  // H >= t a_n mu(V_n) + |V'| t a_n 2^(-t a_n)
    bool ineq1_holds = false;
    double ineq2_lhs = 0, ineq2_rhs = 0;  // mu(V_n) <= H / (t a_n)
    bool ineq2_holds = false;
};
Prop62Report prop62_check(const WeightedNames& names, double a_n, double t);

std::string curve_report_to_csv(const CurveReport& report, const std::string& header_comment);

}  // namespace cutstack
