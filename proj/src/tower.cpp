// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/tower.hpp"

#include <algorithm>
#include <unordered_map>

namespace cutstack {

// --- WeightedNames ----------------------------------------------------------

void WeightedNames::check_valid() const {
    Rational total = neglected_mass;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& [w, m] = entries[i];
        require(m > 0, ErrorKind::contract, "WeightedNames: nonpositive mass");
        require(w.size() == entries[0].first.size() && w.alphabet() == entries[0].first.alphabet(),
                ErrorKind::contract, "WeightedNames: mixed lengths or alphabets");
        if (i > 0)
            require(entries[i - 1].first < w, ErrorKind::contract,
                    "WeightedNames: entries not deduplicated/sorted");
        total += m;
    }
    require(neglected_mass >= 0, ErrorKind::contract, "WeightedNames: negative neglected mass");
    require(total == 1, ErrorKind::contract, "WeightedNames: masses + neglected != 1");
}

void NamesBuilder::add(Codeword w, Rational mass) {
    items_.emplace_back(std::move(w), std::move(mass));
}

WeightedNames NamesBuilder::finalize(Rational neglected_mass) {
    std::sort(items_.begin(), items_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    WeightedNames out;
    out.neglected_mass = std::move(neglected_mass);
    for (auto& [w, m] : items_) {
        if (!out.entries.empty() && out.entries.back().first == w)
            out.entries.back().second += m;
        else
            out.entries.emplace_back(std::move(w), std::move(m));
    }
    items_.clear();
    return out;
}

// --- Tower basics -----------------------------------------------------------

Rational Tower::total_measure() const {
    Rational s = 0;
    for (const auto& c : columns) s += c.measure();
    return s;
}

long Tower::min_height() const {
    require(!columns.empty(), ErrorKind::contract, "empty tower");
    long h = columns[0].height();
    for (const auto& c : columns) h = std::min(h, c.height());
    return h;
}

long Tower::uniform_height() const {
    require(!columns.empty(), ErrorKind::contract, "empty tower");
    const long h = columns[0].height();
    for (const auto& c : columns)
        require(c.height() == h, ErrorKind::contract, "columns have unequal heights");
    return h;
}

void Tower::check_valid() const {
    require(alphabet_size >= 2 && alphabet_size <= 256, ErrorKind::contract,
            "tower alphabet out of range");
    require(spacer_symbol < alphabet_size, ErrorKind::contract, "spacer symbol out of alphabet");
    for (const auto& c : columns) {
        require(c.height() >= 1, ErrorKind::contract, "empty column");
        require(c.width > 0, ErrorKind::contract, "nonpositive column width");
        for (uint8_t s : c.levels)
            require(s < alphabet_size, ErrorKind::contract, "level symbol out of alphabet");
    }
}

Tower make_initial_tower(const std::vector<std::pair<std::string, Rational>>& columns,
                         uint32_t alphabet_size, uint8_t spacer_symbol) {
    Tower t;
    t.alphabet_size = alphabet_size;
    t.spacer_symbol = spacer_symbol;
    for (const auto& [word, width] : columns) {
        Column c;
        c.width = width;
        for (char ch : word) {
            const auto cw = Codeword::from_string(std::string(1, ch), alphabet_size);
            c.levels.push_back(cw.symbol(0));
        }
        t.columns.push_back(std::move(c));
    }
    t.check_valid();
    return t;
}

Rational level_set_measure(const Tower& t, const LevelSet& a) {
    Rational s = 0;
    for (const auto& [c, i] : a.entries) {
        (void)i;
        s += t.columns[c].width;
    }
    return s;
}

void check_level_set(const Tower& t, const LevelSet& a) {
    for (const auto& [c, i] : a.entries) {
        require(c < t.columns.size(), ErrorKind::contract, "level set: bad column index");
        require(i < t.columns[c].levels.size(), ErrorKind::contract, "level set: bad level index");
    }
}

// --- primitives -------------------------------------------------------------

Tower cut(const Tower& t, size_t col, long k) {
    require(col < t.columns.size(), ErrorKind::contract, "cut: no such column");
    require(k >= 1, ErrorKind::contract, "cut: k must be >= 1");
    Tower out = t;
    if (k == 1) return out;
    Column piece = t.columns[col];
    piece.width /= k;
    out.columns.erase(out.columns.begin() + static_cast<long>(col));
    out.columns.insert(out.columns.begin() + static_cast<long>(col),
                       static_cast<size_t>(k), piece);
    return out;
}

Tower stack(const Tower& t, const std::vector<size_t>& order) {
    require(!order.empty(), ErrorKind::contract, "stack: empty order");
    for (size_t idx : order)
        require(idx < t.columns.size(), ErrorKind::contract, "stack: no such column");
    const Rational w = t.columns[order[0]].width;
    for (size_t idx : order)
        require(t.columns[idx].width == w, ErrorKind::contract,
                "stack: only equal-width subcolumns may be stacked");

    Column merged;
    merged.width = w;
    for (size_t idx : order) {
        const auto& lv = t.columns[idx].levels;
        merged.levels.insert(merged.levels.end(), lv.begin(), lv.end());
    }

    std::vector<bool> used(t.columns.size(), false);
    for (size_t idx : order) {
        require(!used[idx], ErrorKind::contract, "stack: duplicate column index");
        used[idx] = true;
    }
    Tower out = t;
    out.columns.clear();
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i == order[0])
            out.columns.push_back(merged);
        else if (!used[i])
            out.columns.push_back(t.columns[i]);
    }
    return out;
}

Tower add_spacers(const Tower& t, size_t col, long count) {
    require(col < t.columns.size(), ErrorKind::contract, "add_spacers: no such column");
    require(count >= 0, ErrorKind::contract, "add_spacers: negative count");
    Tower out = t;
    out.columns[col].levels.insert(out.columns[col].levels.end(), static_cast<size_t>(count),
                                   t.spacer_symbol);
    return out;
}

Tower cut_stack_each(const Tower& t, long k) {
    require(k >= 1, ErrorKind::contract, "cut_stack: k must be >= 1");
    Tower out = t;
    for (auto& c : out.columns) {
        std::vector<uint8_t> word;
        word.reserve(c.levels.size() * static_cast<size_t>(k));
        for (long i = 0; i < k; ++i) word.insert(word.end(), c.levels.begin(), c.levels.end());
        c.levels = std::move(word);
        c.width /= k;
    }
    return out;
}

// --- paper stages -----------------------------------------------------------

Tower stage_two_word(const Tower& t, long k) {
    require(t.columns.size() == 1, ErrorKind::contract,
            "stage_two_word: tower must have exactly one column");
    require(k >= 1, ErrorKind::contract, "stage_two_word: k must be >= 1");
    const Column& c = t.columns[0];
    const Rational half = c.width / 2;
    const Rational sub = half / k;

    Column c1;  // W^k then k spacers
    c1.width = sub;
    for (long i = 0; i < k; ++i)
        c1.levels.insert(c1.levels.end(), c.levels.begin(), c.levels.end());
    c1.levels.insert(c1.levels.end(), static_cast<size_t>(k), t.spacer_symbol);

    Column c2;  // (W s)^k
    c2.width = sub;
    for (long i = 0; i < k; ++i) {
        c2.levels.insert(c2.levels.end(), c.levels.begin(), c.levels.end());
        c2.levels.push_back(t.spacer_symbol);
    }

    Tower out = t;
    out.columns = {std::move(c1), std::move(c2)};
    return out;
}

Tower stage_ics(const Tower& t, long s) {
    require(s >= 1, ErrorKind::contract, "stage_ics: s must be >= 1");
    const long h0 = t.uniform_height();
    (void)h0;
    const Rational w0 = t.columns[0].width;
    for (const auto& c : t.columns)
        require(c.width == w0, ErrorKind::contract, "stage_ics: columns must have equal widths");

    Tower out = t;
    for (long round = 0; round < s; ++round) {
        const size_t l = out.columns.size();
        const Rational w = out.columns[0].width / (2 * static_cast<long>(l));
        std::vector<Column> next;
        next.reserve(l * l);
        for (size_t i = 0; i < l; ++i) {
            for (size_t j = 0; j < l; ++j) {
                Column pair;
                pair.width = w;
                const auto& bot = out.columns[i].levels;
                const auto& top = out.columns[j].levels;
                pair.levels.reserve(bot.size() + top.size());
                pair.levels.insert(pair.levels.end(), bot.begin(), bot.end());
                pair.levels.insert(pair.levels.end(), top.begin(), top.end());
                next.push_back(std::move(pair));
            }
        }
        out.columns = std::move(next);
    }
    return out;
}

Tower stage_weak_mixing(const Tower& t) {
    t.uniform_height();
    Tower out = t;
    for (auto& c : out.columns) {
        std::vector<uint8_t> word;
        word.reserve(c.levels.size() * 2 + 1);
        word.insert(word.end(), c.levels.begin(), c.levels.end());
        word.insert(word.end(), c.levels.begin(), c.levels.end());
        word.push_back(t.spacer_symbol);
        c.levels = std::move(word);
        c.width /= 2;
    }
    return out;
}

Tower stage_rigidity(const Tower& t, long r) {
    require(r >= 2, ErrorKind::contract, "stage_rigidity: r must be >= 2");
    t.uniform_height();
    return cut_stack_each(t, r);
}

SwapResult stage_swap(const Tower& t, long n_stage) {
    require(t.columns.size() == 2, ErrorKind::contract,
            "stage_swap: tower must have exactly two columns");
    require(n_stage >= 0, ErrorKind::contract, "stage_swap: negative stage index");
    require(t.columns[0].height() == t.columns[1].height(), ErrorKind::contract,
            "stage_swap: columns must have equal heights");

    const long k1 = 2 * (n_stage + 2);
    Column p1 = t.columns[0];
    p1.width /= k1;
    Column p2 = t.columns[1];
    p2.width /= 2;

    SwapResult res;
    res.tower = t;
    res.tower.columns.clear();
    // family1: first k1-1 subcolumns of C1, then C2's second subcolumn.
    for (long i = 0; i < k1 - 1; ++i) {
        res.family1.push_back(res.tower.columns.size());
        res.tower.columns.push_back(p1);
    }
    res.family1.push_back(res.tower.columns.size());
    res.tower.columns.push_back(p2);
    // family2: C2's first subcolumn, then C1's last subcolumn in its place.
    res.family2.push_back(res.tower.columns.size());
    res.tower.columns.push_back(p2);
    res.family2.push_back(res.tower.columns.size());
    res.tower.columns.push_back(p1);
    return res;
}

// --- measurements -----------------------------------------------------------

WeightedNames name_distribution(const Tower& t, long n) {
    require(n >= 1, ErrorKind::contract, "name_distribution: n must be >= 1");
    require(n <= t.min_height(), ErrorKind::contract,
            "name_distribution: n exceeds a column height");
    const Rational total = t.total_measure();

    NamesBuilder builder;
    Rational neglected = 0;
    // Merge equal windows per column first; cross-column dedup happens in the
    // builder. Keeps the builder's sort small for periodic words.
    for (const auto& c : t.columns) {
        const Rational mass = c.width / total;
        std::unordered_map<Codeword, Rational, CodewordHash> local;
        const long h = c.height();
        for (long j = 0; j + n <= h; ++j) {
            Codeword w(std::span<const uint8_t>(c.levels.data() + j, static_cast<size_t>(n)),
                       t.alphabet_size);
            local[std::move(w)] += mass;
        }
        for (auto& [w, m] : local) builder.add(w, std::move(m));
        neglected += mass * (n - 1);
    }
    WeightedNames names = builder.finalize(neglected);
    return names;
}

WeightedNames name_distribution_base(const Tower& t, long n, long base_rows) {
    require(n >= 1 && base_rows >= 1, ErrorKind::contract,
            "name_distribution_base: n and base_rows must be >= 1");
    require(base_rows + n <= t.min_height() + 1, ErrorKind::contract,
            "name_distribution_base: base_rows + n exceeds a column height");
    Rational base_mass = 0;
    for (const auto& c : t.columns) base_mass += c.width * base_rows;

    NamesBuilder builder;
    for (const auto& c : t.columns) {
        const Rational mass = c.width / base_mass;
        std::unordered_map<Codeword, Rational, CodewordHash> local;
        for (long j = 0; j < base_rows; ++j) {
            Codeword w(std::span<const uint8_t>(c.levels.data() + j, static_cast<size_t>(n)),
                       t.alphabet_size);
            local[std::move(w)] += mass;
        }
        for (auto& [w, m] : local) builder.add(w, std::move(m));
    }
    return builder.finalize(0);
}

OverlapResult measure_overlap(const Tower& t, const LevelSet& a, long shift) {
    require(shift >= 1, ErrorKind::contract, "measure_overlap: shift must be >= 1");
    check_level_set(t, a);
    std::vector<std::vector<bool>> member(t.columns.size());
    for (size_t c = 0; c < t.columns.size(); ++c)
        member[c].assign(t.columns[c].levels.size(), false);
    for (const auto& [c, i] : a.entries) member[c][i] = true;

    OverlapResult res{0, 0};
    for (const auto& [c, i] : a.entries) {
        const long h = t.columns[c].height();
        if (static_cast<long>(i) + shift >= h)
            res.undefined_mass += t.columns[c].width;
        else if (member[c][i + static_cast<uint32_t>(shift)])
            res.overlap += t.columns[c].width;
    }
    return res;
}

LevelSet rigidity_image(const LevelSet& a, long pre_height, long r) {
    LevelSet out;
    out.entries.reserve(a.entries.size() * static_cast<size_t>(r));
    for (const auto& [c, i] : a.entries)
        for (long j = 0; j < r; ++j)
            out.entries.emplace_back(c, i + static_cast<uint32_t>(j * pre_height));
    return out;
}

}  // namespace cutstack
