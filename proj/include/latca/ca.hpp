#pragma once

// Cellular automata over Z^d with a finite memory set and a local rule.
// Memory sets are kept lex-sorted; constructors reorder rule arguments to
// match, so equal automata have equal representations.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "lattice.hpp"
#include "rule.hpp"

namespace latca {

struct CellularAutomaton {
    int dim = 1;
    Alphabet source, target;
    std::vector<GroupElement> memory;
    LocalRule rule;

    bool operator==(const CellularAutomaton&) const = default;
};

inline CellularAutomaton make_ca(int dim, std::vector<GroupElement> memory, LocalRule rule) {
    require(dim >= 1, "dimension must be positive");
    require((int)memory.size() == rule.arity, "memory size must match rule arity");
    for (const auto& m : memory) {
        require((int)m.size() == dim, "memory element dimension mismatch");
        check_coord_bounds(m);
    }
    // sort memory, remapping rule arguments along the way
    std::vector<int> order((size_t)rule.arity);
    for (int i = 0; i < rule.arity; ++i) order[(size_t)i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(memory[(size_t)a], memory[(size_t)b]); });
    bool sorted = true;
    for (int i = 0; i < rule.arity; ++i) sorted &= order[(size_t)i] == i;
    if (!sorted) {
        std::vector<GroupElement> mem2((size_t)rule.arity);
        std::vector<int> perm((size_t)rule.arity);
        for (int j = 0; j < rule.arity; ++j) {
            mem2[(size_t)j] = memory[(size_t)order[(size_t)j]];
            perm[(size_t)order[(size_t)j]] = j;
        }
        memory = std::move(mem2);
        rule = permute_args(rule, perm);
    }
    for (size_t i = 1; i < memory.size(); ++i)
        require(memory[i] != memory[i - 1], "memory elements must be distinct");
    return CellularAutomaton{dim, rule.source, rule.target, std::move(memory), std::move(rule)};
}

// A configuration constant on the cosets of a full-rank period lattice; the
// only executable configuration model here.
struct PeriodicConfig {
    Alphabet alphabet;
    CosetTable periods;
    std::vector<Sym> values;  // indexed by coset representative

    Sym at(const GroupElement& g) const {
        return values[(size_t)coset_index_of(periods, g)];
    }
};

inline PeriodicConfig make_periodic_config(const Alphabet& a, const CosetTable& t,
                                           std::vector<Sym> values) {
    require((i64)values.size() == t.size, "one value per coset required");
    for (Sym s : values) require(s >= 0 && s < a.size(), "symbol out of range");
    return PeriodicConfig{a, t, std::move(values)};
}

inline bool config_equal(const PeriodicConfig& x, const PeriodicConfig& y) {
    return x.alphabet == y.alphabet && x.periods.lat.basis == y.periods.lat.basis &&
           x.values == y.values;
}

// y(h) = x(h - g)
inline PeriodicConfig translate(const PeriodicConfig& x, const GroupElement& g) {
    PeriodicConfig y = x;
    for (i64 i = 0; i < x.periods.size; ++i)
        y.values[(size_t)i] = x.at(gsub(x.periods.reps[(size_t)i], g));
    return y;
}

inline PeriodicConfig apply(const CellularAutomaton& ca, const PeriodicConfig& x) {
    require(ca.source == x.alphabet, "configuration alphabet mismatch");
    require(ca.dim == x.periods.lat.dim, "configuration dimension mismatch");
    PeriodicConfig out{ca.target, x.periods, std::vector<Sym>((size_t)x.periods.size)};
    std::vector<Sym> args((size_t)ca.rule.arity);
    for (i64 i = 0; i < x.periods.size; ++i) {
        for (int j = 0; j < ca.rule.arity; ++j)
            args[(size_t)j] = x.at(gadd(x.periods.reps[(size_t)i], ca.memory[(size_t)j]));
        out.values[(size_t)i] = eval_rule(ca.rule, args);
    }
    return out;
}

// Composition sigma . tau: memory {s+t}, rule evaluating tau on each
// s-translate and then sigma on the results. When both rules are linear the
// coefficient matrices convolve instead.
inline CellularAutomaton compose(const CellularAutomaton& sigma, const CellularAutomaton& tau,
                                 i64 budget = kEnumBudget) {
    require(sigma.dim == tau.dim, "dimension mismatch");
    require(tau.target == sigma.source, "inner target must equal outer source");
    std::set<GroupElement> sums;
    for (const auto& s : sigma.memory)
        for (const auto& t : tau.memory) sums.insert(gadd(s, t));
    std::vector<GroupElement> st(sums.begin(), sums.end());
    std::sort(st.begin(), st.end(), lex_less);
    int arity = (int)st.size();

    if (sigma.rule.kind() == RuleKind::Linear && tau.rule.kind() == RuleKind::Linear) {
        ScalarRing ring = tau.source.scalars();
        const auto& ms = std::get<LinearBody>(sigma.rule.body).mats;
        const auto& mt = std::get<LinearBody>(tau.rule.body).mats;
        i64 rows = sigma.target.rank, mid = sigma.source.rank, cols = tau.source.rank;
        std::map<GroupElement, std::vector<std::vector<Sym>>> conv;
        for (size_t i = 0; i < sigma.memory.size(); ++i)
            for (size_t j = 0; j < tau.memory.size(); ++j) {
                GroupElement g = gadd(sigma.memory[i], tau.memory[j]);
                auto& acc = conv.try_emplace(g, std::vector<std::vector<Sym>>(
                                                    (size_t)rows, std::vector<Sym>((size_t)cols, 0)))
                                .first->second;
                for (i64 r = 0; r < rows; ++r)
                    for (i64 k = 0; k < mid; ++k) {
                        Sym a = ms[i][(size_t)r][(size_t)k];
                        if (a == 0) continue;
                        for (i64 c = 0; c < cols; ++c) {
                            Sym b = mt[j][(size_t)k][(size_t)c];
                            if (b != 0)
                                acc[(size_t)r][(size_t)c] =
                                    ring.add(acc[(size_t)r][(size_t)c], ring.mul(a, b));
                        }
                    }
            }
        std::vector<std::vector<std::vector<Sym>>> mats;
        mats.reserve((size_t)arity);
        for (const auto& g : st) mats.push_back(conv.at(g));
        return make_ca(sigma.dim, st,
                       make_linear_rule(tau.source, sigma.target, arity, std::move(mats)));
    }

    LocalRule inner = tau.rule.kind() == RuleKind::Table ? tau.rule : lower_to_table(tau.rule, budget);
    LocalRule outer =
        sigma.rule.kind() == RuleKind::Table ? sigma.rule : lower_to_table(sigma.rule, budget);
    std::map<GroupElement, int> pos;
    for (int i = 0; i < arity; ++i) pos[st[(size_t)i]] = i;
    // arg positions of each inner window inside the combined memory
    std::vector<std::vector<int>> where(sigma.memory.size(),
                                        std::vector<int>(tau.memory.size()));
    for (size_t i = 0; i < sigma.memory.size(); ++i)
        for (size_t j = 0; j < tau.memory.size(); ++j)
            where[i][j] = pos.at(gadd(sigma.memory[i], tau.memory[j]));
    i64 n = table_size(tau.source, arity, budget);
    std::vector<Sym> entries((size_t)n);
    std::vector<Sym> z((size_t)arity), inner_args(tau.memory.size()),
        outer_args(sigma.memory.size());
    for (i64 idx = 0; idx < n; ++idx) {
        z = tuple_decode(idx, arity, tau.source.size());
        for (size_t i = 0; i < sigma.memory.size(); ++i) {
            for (size_t j = 0; j < tau.memory.size(); ++j)
                inner_args[j] = z[(size_t)where[i][j]];
            outer_args[i] = eval_rule(inner, inner_args);
        }
        entries[(size_t)idx] = eval_rule(outer, outer_args);
    }
    return make_ca(sigma.dim, st,
                   make_table_rule(tau.source, sigma.target, arity, std::move(entries)));
}

// Minimal memory set via the dependence test; constants shrink to the empty
// memory set.
inline CellularAutomaton minimize(const CellularAutomaton& ca, i64 budget = kEnumBudget) {
    std::vector<char> relevant((size_t)ca.rule.arity, 0);
    if (ca.rule.kind() == RuleKind::Linear) {
        const auto& mats = std::get<LinearBody>(ca.rule.body).mats;
        for (size_t i = 0; i < mats.size(); ++i)
            for (const auto& row : mats[i])
                for (Sym x : row)
                    if (x != 0) relevant[i] = 1;
        std::vector<GroupElement> mem;
        std::vector<std::vector<std::vector<Sym>>> kept;
        for (size_t i = 0; i < mats.size(); ++i)
            if (relevant[i]) {
                mem.push_back(ca.memory[i]);
                kept.push_back(mats[i]);
            }
        int kept_arity = (int)kept.size();
        return make_ca(ca.dim, mem,
                       make_linear_rule(ca.source, ca.target, kept_arity, std::move(kept)));
    }
    LocalRule table = ca.rule.kind() == RuleKind::Table ? ca.rule : lower_to_table(ca.rule, budget);
    const auto& entries = std::get<TableBody>(table.body).entries;
    i64 asz = ca.source.size();
    i64 n = (i64)entries.size();
    for (int i = 0; i < ca.rule.arity; ++i) {
        i64 stride = checked_pow(asz, ca.rule.arity - 1 - i);
        bool dep = false;
        for (i64 idx = 0; idx < n && !dep; ++idx) {
            if ((idx / stride) % asz != 0) continue;
            Sym base = entries[(size_t)idx];
            for (i64 v = 1; v < asz && !dep; ++v) dep = entries[(size_t)(idx + v * stride)] != base;
        }
        relevant[(size_t)i] = dep;
    }
    std::vector<GroupElement> mem;
    std::vector<int> keep;
    for (int i = 0; i < ca.rule.arity; ++i)
        if (relevant[(size_t)i]) {
            mem.push_back(ca.memory[(size_t)i]);
            keep.push_back(i);
        }
    int arity2 = (int)keep.size();
    i64 n2 = checked_pow(asz, arity2);
    std::vector<Sym> entries2((size_t)n2);
    for (i64 idx2 = 0; idx2 < n2; ++idx2) {
        auto digits = tuple_decode(idx2, arity2, asz);
        std::vector<Sym> full((size_t)ca.rule.arity, 0);  // ghost coordinates pinned to 0
        for (int i = 0; i < arity2; ++i) full[(size_t)keep[(size_t)i]] = digits[(size_t)i];
        entries2[(size_t)idx2] = entries[(size_t)tuple_index(full, asz)];
    }
    return make_ca(ca.dim, mem, make_table_rule(ca.source, ca.target, arity2, std::move(entries2)));
}

// View over the subgroup H through its basis coordinates. Every memory
// element must lie in H.
inline CellularAutomaton restrict_to(const CellularAutomaton& ca, const Lattice& h) {
    require(h.dim == ca.dim, "subgroup dimension mismatch");
    require(h.rank() >= 1, "trivial subgroup");
    std::vector<GroupElement> mem;
    for (const auto& m : ca.memory) {
        auto k = lattice_coordinates(h, m);
        require(k.has_value(), "memory element outside the subgroup");
        mem.push_back(*k);
    }
    return make_ca(h.rank(), std::move(mem), ca.rule);
}

inline CellularAutomaton induce_from(const CellularAutomaton& ca, const Lattice& h) {
    require(h.rank() == ca.dim, "automaton dimension must match subgroup rank");
    std::vector<GroupElement> mem;
    for (const auto& m : ca.memory) mem.push_back(lattice_embed(h, m));
    return make_ca(h.dim, std::move(mem), ca.rule);
}

// --- stock automata ---------------------------------------------------

inline GroupElement origin(int dim) { return GroupElement(dim, 0); }

inline CellularAutomaton identity_ca(const Alphabet& a, int dim = 1) {
    std::vector<Sym> t((size_t)a.size());
    for (i64 i = 0; i < a.size(); ++i) t[(size_t)i] = (Sym)i;
    return make_ca(dim, {origin(dim)}, make_table_rule(a, a, 1, std::move(t)));
}

inline CellularAutomaton constant_ca(const Alphabet& a, const Alphabet& b, Sym value,
                                     int dim = 1) {
    return make_ca(dim, {}, make_table_rule(a, b, 0, {value}));
}

inline CellularAutomaton shift_ca(const Alphabet& a, const GroupElement& g0) {
    std::vector<Sym> t((size_t)a.size());
    for (i64 i = 0; i < a.size(); ++i) t[(size_t)i] = (Sym)i;
    return make_ca((int)g0.size(), {g0}, make_table_rule(a, a, 1, std::move(t)));
}

inline CellularAutomaton majority_ca() {
    Alphabet bin = finite_alphabet(2);
    std::vector<Sym> t(8);
    for (i64 i = 0; i < 8; ++i) {
        int ones = (int)(((i >> 2) & 1) + ((i >> 1) & 1) + (i & 1));
        t[(size_t)i] = ones >= 2 ? 1 : 0;
    }
    return make_ca(1, {{-1}, {0}, {1}}, make_table_rule(bin, bin, 3, std::move(t)));
}

// flips the centre cell exactly on the marker pattern (0,_,1,0)
inline CellularAutomaton hedlund_marker_ca() {
    Alphabet bin = finite_alphabet(2);
    std::vector<Sym> t(16);
    for (i64 i = 0; i < 16; ++i) {
        auto a = tuple_decode(i, 4, 2);  // (x(-1), x(0), x(1), x(2))
        bool marker = a[0] == 0 && a[2] == 1 && a[3] == 0;
        t[(size_t)i] = marker ? 1 - a[1] : a[1];
    }
    return make_ca(1, {{-1}, {0}, {1}, {2}}, make_table_rule(bin, bin, 4, std::move(t)));
}

// birth on 3 live cells in the 3x3 block, survival when the block holds 4
// live cells including the centre
inline CellularAutomaton game_of_life_ca() {
    Alphabet bin = finite_alphabet(2);
    std::vector<GroupElement> mem;
    for (i64 i = -1; i <= 1; ++i)
        for (i64 j = -1; j <= 1; ++j) mem.push_back({i, j});
    int centre = 4;  // (0,0) in lex order
    std::vector<Sym> t(512);
    for (i64 idx = 0; idx < 512; ++idx) {
        auto a = tuple_decode(idx, 9, 2);
        int sum = 0;
        for (Sym s : a) sum += s;
        t[(size_t)idx] = (sum == 3 || (sum == 4 && a[(size_t)centre] == 1)) ? 1 : 0;
    }
    return make_ca(2, std::move(mem), make_table_rule(bin, bin, 9, std::move(t)));
}

// x(g) minus the neighbourhood average over S, with 1/|S| read in F_{p^e}
inline CellularAutomaton laplacian_ca(i64 p, i64 e, const std::vector<GroupElement>& s) {
    require(!s.empty(), "neighbourhood must be nonempty");
    int dim = (int)s[0].size();
    Alphabet f = vector_alphabet(p, e, 1);
    ScalarRing ring = f.scalars();
    require(ring.is_unit(ring.from_int((i64)s.size())), "neighbourhood size not invertible");
    Sym c = ring.neg(ring.inv(ring.from_int((i64)s.size())));
    std::vector<GroupElement> mem;
    std::vector<std::vector<std::vector<Sym>>> mats;
    GroupElement zero = origin(dim);
    for (const auto& g : s) {
        require((int)g.size() == dim, "neighbourhood dimension mismatch");
        require(g != zero, "neighbourhood must not contain the origin");
        mem.push_back(g);
        mats.push_back({{c}});
    }
    mem.push_back(zero);
    mats.push_back({{1}});
    return make_ca(dim, std::move(mem),
                   make_linear_rule(f, f, (int)s.size() + 1, std::move(mats)));
}

// x(n) - p*x(n+1) over Z/p^e
inline CellularAutomaton padic_step_ca(i64 p, i64 e) {
    Alphabet m = module_alphabet(p, e, 1);
    i64 mod = checked_pow(p, e);
    Sym neg_p = (Sym)pos_mod(-p, mod);
    return make_ca(1, {{0}, {1}},
                   make_linear_rule(m, m, 2, {{{1}}, {{neg_p}}}));
}

}  // namespace latca
