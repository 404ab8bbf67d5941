// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <string>
#include <vector>

#include "cutstack/rational.hpp"

namespace cutstack {

// Named base sequences for exp-of-sublinear rates and Blume curves.
enum class BaseSeq { sqrt_n, log2_n_plus_1, linear_n, const_one };
double base_seq_value(BaseSeq b, long n);
std::string base_seq_name(BaseSeq b);
BaseSeq base_seq_from_name(const std::string& name);

// Evaluable family a_n(t), monotone in t. All evaluation happens in log2
// space; 2^(t a_n) overflows direct representation long before it stops
// being interesting.
struct RateFamily {
    enum class Kind { polynomial, exp_of_sublinear, tabulated };
    Kind kind = Kind::polynomial;
    BaseSeq base = BaseSeq::sqrt_n;             // exp_of_sublinear only
    std::vector<std::pair<long, double>> grid;  // tabulated: (n, a_n), t scales it

    static RateFamily polynomial();                       // a_n(t) = n^t
    static RateFamily exp_sublinear(BaseSeq base);        // a_n(t) = 2^(t a_n)
    static RateFamily tabulated(std::vector<std::pair<long, double>> rows);

    double log2_value(long n, double t) const;
    double value(long n, double t) const;  // may overflow to +inf; display only
    std::string describe() const;
};

// Numeric probe of a_n(t) / beta^n -> 0; a diagnostic, not a proof.
struct SubexpProbe {
    std::vector<std::pair<long, double>> log2_ratios;  // sampled (n, log2(a_n(t)/beta^n))
    bool eventually_decreasing = false;
    long tail_start = 0;  // first n of the monotone decreasing tail
    std::string note;
};
SubexpProbe subexponential_probe(const RateFamily& r, double beta, double t, long n_max);

// Numeric probe of a_n/n -> 0 and a_n -> infinity for a base sequence.
struct SublinearProbe {
    bool ratio_eventually_decreasing = false;
    bool diverges = false;
    long tail_start = 0;
    std::string note;
};
SublinearProbe sublinear_probe(BaseSeq a, long n_max);
SublinearProbe sublinear_probe(const std::vector<double>& a);

// Monotonicity-in-t spot check on a sampled grid.
bool rate_monotone_in_t(const RateFamily& r, const std::vector<long>& ns,
                        const std::vector<double>& ts);

}  // namespace cutstack
