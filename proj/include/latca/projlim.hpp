#pragma once

// Finite projective sequences: levelwise sets with step maps downwards.
// Threads (compatible tuples across all levels) witness nonemptiness, and
// the closed-image demonstration realizes a target configuration's window
// preimages as such a sequence.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "onedim.hpp"

namespace latca {

struct ProjectiveSequence {
    std::vector<i64> sizes;               // |X_0| .. |X_(N-1)|
    std::vector<std::vector<i64>> steps;  // steps[n] maps X_(n+1) into X_n

    i64 levels() const { return (i64)sizes.size(); }
};

inline ProjectiveSequence make_projective_sequence(std::vector<i64> sizes,
                                                   std::vector<std::vector<i64>> steps) {
    require(!sizes.empty(), "a sequence needs at least one level");
    require(steps.size() + 1 == sizes.size(), "one step map between consecutive levels");
    for (i64 s : sizes) require(s >= 0, "negative level size");
    for (size_t n = 0; n < steps.size(); ++n) {
        require((i64)steps[n].size() == sizes[n + 1], "step map domain mismatch");
        for (i64 v : steps[n]) require(v >= 0 && v < sizes[n], "step map value out of range");
    }
    return ProjectiveSequence{std::move(sizes), std::move(steps)};
}

// the composed map X_from -> X_to
inline std::vector<i64> composite(const ProjectiveSequence& seq, i64 from, i64 to) {
    require(0 <= to && to <= from && from < seq.levels(), "level indexes out of order");
    std::vector<i64> f((size_t)seq.sizes[(size_t)from]);
    for (i64 x = 0; x < seq.sizes[(size_t)from]; ++x) {
        i64 cur = x;
        for (i64 m = from - 1; m >= to; --m) cur = seq.steps[(size_t)m][(size_t)cur];
        f[(size_t)x] = cur;
    }
    return f;
}

inline bool limit_nonempty(const ProjectiveSequence& seq) {
    return std::all_of(seq.sizes.begin(), seq.sizes.end(), [](i64 s) { return s > 0; });
}

// every thread is the downward closure of one top element
inline std::vector<std::vector<i64>> threads(const ProjectiveSequence& seq,
                                             i64 budget = kEnumBudget) {
    i64 top = seq.levels() - 1;
    require(seq.sizes[(size_t)top] <= budget, "thread set exceeds budget");
    std::vector<std::vector<i64>> out;
    for (i64 x = 0; x < seq.sizes[(size_t)top]; ++x) {
        std::vector<i64> t((size_t)seq.levels());
        t[(size_t)top] = x;
        for (i64 n = top; n > 0; --n) t[(size_t)(n - 1)] = seq.steps[(size_t)(n - 1)][(size_t)t[(size_t)n]];
        out.push_back(std::move(t));
    }
    return out;
}

inline std::optional<std::vector<i64>> extract_limit(const ProjectiveSequence& seq) {
    if (!limit_nonempty(seq)) return std::nullopt;
    i64 top = seq.levels() - 1;
    std::vector<i64> t((size_t)seq.levels());
    t[(size_t)top] = 0;
    for (i64 n = top; n > 0; --n) t[(size_t)(n - 1)] = seq.steps[(size_t)(n - 1)][(size_t)t[(size_t)n]];
    return t;
}

// true when the sequence continues beyond its horizon by identity steps
inline bool stationary_tail(const ProjectiveSequence& seq) {
    i64 n = seq.levels();
    i64 t = n - 1;
    while (t > 0) {
        const auto& step = seq.steps[(size_t)(t - 1)];
        if (seq.sizes[(size_t)t] != seq.sizes[(size_t)(t - 1)]) break;
        bool ident = true;
        for (i64 x = 0; x < (i64)step.size() && ident; ++x) ident = step[(size_t)x] == x;
        if (!ident) break;
        --t;
    }
    return t < n - 1 || n == 1;
}

struct UniversalReport {
    std::vector<std::vector<i64>> universal;  // per level, sorted
    std::vector<i64> stabilized_at;           // first level whose image already is universal
    bool horizon_truncated = true;            // cleared only for stationary tails
};

// Elements that lift from every level of the sequence: the decreasing chain
// of images from above, recorded with its stabilization point.
inline UniversalReport universal_elements(const ProjectiveSequence& seq) {
    i64 nlev = seq.levels();
    UniversalReport rep;
    rep.universal.resize((size_t)nlev);
    rep.stabilized_at.assign((size_t)nlev, nlev - 1);
    for (i64 n = 0; n < nlev; ++n) {
        std::vector<std::vector<i64>> images;
        for (i64 m = n; m < nlev; ++m) {
            std::vector<i64> img = composite(seq, m, n);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            images.push_back(std::move(img));
        }
        rep.universal[(size_t)n] = images.back();
        for (size_t k = 0; k < images.size(); ++k)
            if (images[k] == images.back()) {
                rep.stabilized_at[(size_t)n] = n + (i64)k;
                break;
            }
    }
    rep.horizon_truncated = !stationary_tail(seq);
    return rep;
}

// ---- closed image demonstration ---------------------------------------------

// Level n holds the blocks over [-n-c, n+c] whose determined outputs agree
// with the target; the steps restrict to the central block. An empty level
// refutes membership in the image outright; nonempty levels certify it only
// up to the horizon.
struct ClosedImageDemo {
    ProjectiveSequence seq;
    std::vector<std::vector<std::vector<Sym>>> blocks;  // [level][element] = symbols
    i64 c = 0;
    i64 first_empty = -1;
};

inline ClosedImageDemo closed_image_demo(const CellularAutomaton& ca, const PeriodicConfig& y,
                                         i64 levels, i64 budget = kEnumBudget) {
    require(levels >= 1, "at least one level required");
    require(ca.dim == 1, "closed image demo needs a one-dimensional automaton");
    require(ca.target == y.alphabet, "target alphabet mismatch");
    WindowedRule wr = windowed(ca, budget);
    i64 alpha = wr.a.size();
    i64 c = std::max<i64>({-wr.lo, wr.hi, 0});
    auto block_ok_at = [&](const std::vector<Sym>& blk, i64 a, i64 g) {
        i64 idx = 0;
        for (i64 j = g + wr.lo; j <= g + wr.hi; ++j) idx = idx * alpha + blk[(size_t)(j - a)];
        return wr.table[(size_t)idx] == y.at({g});
    };
    ClosedImageDemo demo;
    demo.c = c;
    std::vector<i64> sizes;
    std::vector<std::vector<i64>> steps;
    // level 0 by enumeration, later levels by two-sided extension
    i64 len0 = 2 * c + 1;
    i64 total = checked_pow(alpha, len0);
    if (total > budget) throw budget_error("base level exceeds budget");
    std::vector<std::vector<Sym>> cur;
    for (i64 code = 0; code < total; ++code) {
        std::vector<Sym> blk = tuple_decode(code, (int)len0, alpha);
        bool ok = true;
        for (i64 g = -c - wr.lo; g <= c - wr.hi && ok; ++g) ok = block_ok_at(blk, -c, g);
        if (ok) cur.push_back(std::move(blk));
    }
    demo.blocks.push_back(cur);
    sizes.push_back((i64)cur.size());
    if (cur.empty()) demo.first_empty = 0;
    for (i64 n = 1; n < levels; ++n) {
        i64 a = -n - c, b = n + c;
        std::map<std::vector<Sym>, i64> parent_index;
        for (size_t i = 0; i < cur.size(); ++i) parent_index[cur[i]] = (i64)i;
        std::vector<std::vector<Sym>> nxt;
        std::vector<i64> step;
        if (checked_mul((i64)cur.size(), alpha * alpha) > budget)
            throw budget_error("level extension exceeds budget");
        for (size_t i = 0; i < cur.size(); ++i)
            for (i64 sl = 0; sl < alpha; ++sl)
                for (i64 sr = 0; sr < alpha; ++sr) {
                    std::vector<Sym> blk;
                    blk.reserve(cur[i].size() + 2);
                    blk.push_back((Sym)sl);
                    blk.insert(blk.end(), cur[i].begin(), cur[i].end());
                    blk.push_back((Sym)sr);
                    // only the two newly determined outputs need checking
                    i64 gl = a - wr.lo, gr = b - wr.hi;
                    bool ok = (gl > gr || block_ok_at(blk, a, gl)) &&
                              (gr <= gl || block_ok_at(blk, a, gr));
                    if (!ok) continue;
                    step.push_back((i64)i);
                    nxt.push_back(std::move(blk));
                }
        demo.blocks.push_back(nxt);
        sizes.push_back((i64)nxt.size());
        steps.push_back(std::move(step));
        if (nxt.empty() && demo.first_empty < 0) demo.first_empty = n;
        cur = std::move(nxt);
    }
    demo.seq = make_projective_sequence(std::move(sizes), std::move(steps));
    return demo;
}

// replay a level's constraints from scratch
inline bool verify_demo_block(const CellularAutomaton& ca, const PeriodicConfig& y,
                              const ClosedImageDemo& demo, i64 level, i64 element) {
    WindowedRule wr = windowed(ca);
    const std::vector<Sym>& blk = demo.blocks[(size_t)level][(size_t)element];
    i64 a = -level - demo.c, b = level + demo.c;
    i64 alpha = wr.a.size();
    for (i64 g = a - wr.lo; g <= b - wr.hi; ++g) {
        i64 idx = 0;
        for (i64 j = g + wr.lo; j <= g + wr.hi; ++j) idx = idx * alpha + blk[(size_t)(j - a)];
        if (wr.table[(size_t)idx] != y.at({g})) return false;
    }
    return true;
}

}  // namespace latca
