// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/rates.hpp"

#include <algorithm>
#include <cmath>

#include "cutstack/errors.hpp"

namespace cutstack {

double base_seq_value(BaseSeq b, long n) {
    require(n >= 1, ErrorKind::domain, "base sequence: n must be >= 1");
    switch (b) {
        case BaseSeq::sqrt_n: return std::sqrt(static_cast<double>(n));
        case BaseSeq::log2_n_plus_1: return std::log2(static_cast<double>(n) + 1.0);
        case BaseSeq::linear_n: return static_cast<double>(n);
        case BaseSeq::const_one: return 1.0;
    }
    return 0.0;
}

std::string base_seq_name(BaseSeq b) {
    switch (b) {
        case BaseSeq::sqrt_n: return "sqrt";
        case BaseSeq::log2_n_plus_1: return "log2p1";
        case BaseSeq::linear_n: return "linear";
        case BaseSeq::const_one: return "one";
    }
    return "?";
}

BaseSeq base_seq_from_name(const std::string& name) {
    if (name == "sqrt") return BaseSeq::sqrt_n;
    if (name == "log2p1") return BaseSeq::log2_n_plus_1;
    if (name == "linear") return BaseSeq::linear_n;
    if (name == "one") return BaseSeq::const_one;
    raise(ErrorKind::parse, "unknown base sequence '" + name + "'");
}

RateFamily RateFamily::polynomial() { return RateFamily{Kind::polynomial, BaseSeq::sqrt_n, {}}; }

RateFamily RateFamily::exp_sublinear(BaseSeq base) {
    return RateFamily{Kind::exp_of_sublinear, base, {}};
}

RateFamily RateFamily::tabulated(std::vector<std::pair<long, double>> rows) {
    require(!rows.empty(), ErrorKind::contract, "tabulated rate: empty grid");
    std::sort(rows.begin(), rows.end());
    for (const auto& [n, v] : rows) {
        (void)n;
        require(v > 0, ErrorKind::contract, "tabulated rate: values must be positive");
    }
    return RateFamily{Kind::tabulated, BaseSeq::sqrt_n, std::move(rows)};
}

double RateFamily::log2_value(long n, double t) const {
    require(n >= 1, ErrorKind::domain, "rate: n must be >= 1");
    require(t > 0, ErrorKind::domain, "rate: t must be > 0");
    switch (kind) {
        case Kind::polynomial: return t * std::log2(static_cast<double>(n));
        case Kind::exp_of_sublinear: return t * base_seq_value(base, n);
        case Kind::tabulated: {
            // Step lookup: value of the largest grid point <= n.
            double v = grid.front().second;
            for (const auto& [gn, gv] : grid) {
                if (gn > n) break;
                v = gv;
            }
            return t * std::log2(v);
        }
    }
    return 0.0;
}

double RateFamily::value(long n, double t) const { return std::exp2(log2_value(n, t)); }

std::string RateFamily::describe() const {
    switch (kind) {
        case Kind::polynomial: return "poly";
        case Kind::exp_of_sublinear: return "exp2:" + base_seq_name(base);
        case Kind::tabulated: return "tabulated[" + std::to_string(grid.size()) + "]";
    }
    return "?";
}

namespace {

// Dense up to 512, geometric beyond; always includes n_max.
std::vector<long> probe_grid(long n_max) {
    std::vector<long> ns;
    for (long n = 1; n <= n_max && n <= 512; ++n) ns.push_back(n);
    for (long n = 1024; n < n_max; n *= 2) ns.push_back(n);
    if (ns.back() != n_max) ns.push_back(n_max);
    return ns;
}

// Index where the nonincreasing suffix of v begins.
size_t decreasing_tail_start(const std::vector<double>& v) {
    size_t start = v.empty() ? 0 : v.size() - 1;
    for (size_t i = v.size(); i-- > 1;) {
        if (v[i] <= v[i - 1]) start = i - 1;
        else break;
    }
    return start;
}

}  // namespace

SubexpProbe subexponential_probe(const RateFamily& r, double beta, double t, long n_max) {
    require(beta > 1.0, ErrorKind::contract, "subexponential_probe: beta must be > 1");
    require(n_max >= 8, ErrorKind::contract, "subexponential_probe: n_max too small");
    SubexpProbe probe;
    const double lb = std::log2(beta);
    std::vector<double> vals;
    const std::vector<long> ns = probe_grid(n_max);
    for (long n : ns) {
        const double v = r.log2_value(n, t) - static_cast<double>(n) * lb;
        probe.log2_ratios.emplace_back(n, v);
        vals.push_back(v);
    }
    const size_t tail = decreasing_tail_start(vals);
    probe.tail_start = ns[tail];
    // The nonincreasing tail must cover at least the last quarter of the
    // sampled range and show real decay by the end.
    probe.eventually_decreasing =
        tail <= (3 * vals.size()) / 4 && vals.back() < vals[tail] - 1e-12;
    probe.note = "numeric probe of a_n(t)/beta^n for n <= " + std::to_string(n_max) +
                 "; not a proof of subexponential growth";
    return probe;
}

SublinearProbe sublinear_probe(BaseSeq a, long n_max) {
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) vals.push_back(base_seq_value(a, n));
    return sublinear_probe(vals);
}

SublinearProbe sublinear_probe(const std::vector<double>& a) {
    require(a.size() >= 8, ErrorKind::contract, "sublinear_probe: need at least 8 terms");
    SublinearProbe probe;
    std::vector<double> ratio(a.size());
    for (size_t i = 0; i < a.size(); ++i) ratio[i] = a[i] / static_cast<double>(i + 1);
    const size_t tail = decreasing_tail_start(ratio);
    probe.tail_start = static_cast<long>(tail + 1);
    probe.ratio_eventually_decreasing =
        tail <= (3 * ratio.size()) / 4 && ratio.back() < ratio[tail] - 1e-12;
    probe.diverges = a.back() > a[a.size() / 2] + 1e-12 && a[a.size() / 2] >= a.front() - 1e-12;
    probe.note = "numeric probe of a_n/n and a_n -> inf; not a proof";
    return probe;
}

bool rate_monotone_in_t(const RateFamily& r, const std::vector<long>& ns,
                        const std::vector<double>& ts) {
    for (long n : ns) {
        for (size_t i = 1; i < ts.size(); ++i) {
            if (ts[i - 1] >= ts[i]) continue;
            if (r.log2_value(n, ts[i]) < r.log2_value(n, ts[i - 1]) - 1e-12) return false;
        }
    }
    return true;
}

}  // namespace cutstack
