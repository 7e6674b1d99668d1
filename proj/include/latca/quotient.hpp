#pragma once

// Finite quotient dynamics: an endomorphic automaton induces a self-map of
// A^(Z^d / H) for every full-rank period subgroup H. These maps drive the
// injective-implies-surjective scans.

#include <optional>
#include <unordered_map>
#include <vector>

#include "ca.hpp"

namespace latca {

struct QuotientMap {
    CellularAutomaton ca;
    CosetTable cosets;
    // psi[t][j] = coset index of reps[t] + memory[j]
    std::vector<std::vector<i64>> psi;
    std::optional<i64> points;  // |A|^index when representable

    // one evaluation of the induced self-map, points encoded mixed-radix
    // row-major over coset indexes
    i64 eval(i64 point) const {
        i64 asz = ca.source.size();
        std::vector<Sym> digits = tuple_decode(point, (int)cosets.size, asz);
        std::vector<Sym> args((size_t)ca.rule.arity);
        i64 out = 0;
        for (i64 t = 0; t < cosets.size; ++t) {
            for (size_t j = 0; j < psi[(size_t)t].size(); ++j)
                args[j] = digits[(size_t)psi[(size_t)t][j]];
            out = out * asz + eval_rule(ca.rule, args);
        }
        return out;
    }

    PeriodicConfig embed(i64 point) const {
        return make_periodic_config(ca.source, cosets,
                                    tuple_decode(point, (int)cosets.size, ca.source.size()));
    }
};

inline QuotientMap make_quotient(const CellularAutomaton& ca, const Lattice& h) {
    require(ca.source == ca.target, "quotient dynamics needs an endomorphic automaton");
    QuotientMap q{ca, make_coset_table(h), {}, std::nullopt};
    q.psi.resize((size_t)q.cosets.size);
    for (i64 t = 0; t < q.cosets.size; ++t) {
        q.psi[(size_t)t].resize((size_t)ca.rule.arity);
        for (int j = 0; j < ca.rule.arity; ++j)
            q.psi[(size_t)t][(size_t)j] =
                coset_index_of(q.cosets, gadd(q.cosets.reps[(size_t)t], ca.memory[(size_t)j]));
    }
    try {
        q.points = checked_pow(ca.source.size(), q.cosets.size);
    } catch (const std::overflow_error&) {
        q.points = std::nullopt;
    }
    return q;
}

inline i64 quotient_points(const QuotientMap& q, i64 budget = kEnumBudget) {
    require(q.points.has_value(), "quotient state space too large to index");
    if (*q.points > budget) throw budget_error("quotient state space exceeds budget");
    return *q.points;
}

inline bool quotient_injective(const QuotientMap& q, i64 budget = kEnumBudget) {
    i64 n = quotient_points(q, budget);
    std::vector<char> hit((size_t)n, 0);
    for (i64 x = 0; x < n; ++x) {
        i64 y = q.eval(x);
        if (hit[(size_t)y]) return false;
        hit[(size_t)y] = 1;
    }
    return true;
}

inline bool quotient_surjective(const QuotientMap& q, i64 budget = kEnumBudget) {
    i64 n = quotient_points(q, budget);
    std::vector<char> hit((size_t)n, 0);
    i64 seen = 0;
    for (i64 x = 0; x < n; ++x) {
        i64 y = q.eval(x);
        if (!hit[(size_t)y]) {
            hit[(size_t)y] = 1;
            ++seen;
        }
    }
    return seen == n;
}

// embed . eval == apply . embed, checked on explicit points
inline bool quotient_commutes(const QuotientMap& q, i64 samples = 64,
                              std::uint64_t seed = 1) {
    i64 n = 0;
    try {
        n = quotient_points(q);
    } catch (const budget_error&) {
        n = 0;
    }
    std::vector<i64> pts;
    if (n > 0 && n <= samples) {
        for (i64 x = 0; x < n; ++x) pts.push_back(x);
    } else {
        std::uint64_t s = seed;
        for (i64 k = 0; k < samples; ++k) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            pts.push_back(q.points ? (i64)(s % (std::uint64_t)*q.points) : (i64)(s % 1024));
        }
    }
    for (i64 x : pts)
        if (!config_equal(apply(q.ca, q.embed(x)), q.embed(q.eval(x)))) return false;
    return true;
}

// sampled collision search for state spaces beyond the enumeration budget;
// a hit is a definite non-injectivity certificate, a miss proves nothing
inline std::optional<std::pair<i64, i64>> find_collision_sampled(const QuotientMap& q,
                                                                 i64 samples,
                                                                 std::uint64_t seed) {
    require(q.points.has_value(), "state space not indexable");
    std::unordered_map<i64, i64> images;
    std::uint64_t s = seed;
    for (i64 k = 0; k < samples; ++k) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        i64 x = (i64)(s % (std::uint64_t)*q.points);
        i64 y = q.eval(x);
        auto [it, fresh] = images.try_emplace(y, x);
        if (!fresh && it->second != x) return std::make_pair(it->second, x);
    }
    return std::nullopt;
}

struct ScanRow {
    Lattice lat;
    i64 index = 0;
    std::optional<bool> injective, surjective;
    bool commutes = true;
    bool skipped = false;
    std::string note;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    i64 checked = 0, skipped = 0, violations = 0;
};

// Sweep all full-rank subgroups up to the index bound looking for an
// injective-but-not-surjective quotient (none should exist) and for
// commutation failures.
inline ScanReport surjunctivity_scan(const CellularAutomaton& ca, i64 max_index,
                                     i64 budget = kEnumBudget) {
    ScanReport rep;
    for (const Lattice& h : sublattices_up_to_index(ca.dim, max_index)) {
        ScanRow row;
        row.lat = h;
        row.index = *lattice_index(h);
        QuotientMap q = make_quotient(ca, h);
        try {
            row.injective = quotient_injective(q, budget);
            row.surjective = quotient_surjective(q, budget);
            row.commutes = quotient_commutes(q);
            ++rep.checked;
            if ((*row.injective && !*row.surjective) || !row.commutes) {
                ++rep.violations;
                row.note = "violation";
            }
        } catch (const budget_error&) {
            row.skipped = true;
            ++rep.skipped;
            if (auto hit = find_collision_sampled(q, 4096, 9)) {
                row.injective = false;
                row.note = "sampled collision (non-exhaustive route)";
            } else {
                row.note = "budget exceeded; sampling found no collision (proves nothing)";
            }
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// a periodic configuration that exhibits the given finite pattern: the box
// is one fundamental domain of a diagonal period lattice
inline PeriodicConfig periodic_point_through_pattern(const Alphabet& a,
                                                     const GroupElement& lo,
                                                     const GroupElement& hi,
                                                     const std::vector<Sym>& pattern) {
    int dim = (int)lo.size();
    require((int)hi.size() == dim, "box corner dimension mismatch");
    std::vector<GroupElement> diag;
    std::vector<i64> sides(dim);
    i64 cells = 1;
    for (int i = 0; i < dim; ++i) {
        require(hi[(size_t)i] >= lo[(size_t)i], "empty box");
        sides[(size_t)i] = hi[(size_t)i] - lo[(size_t)i] + 1;
        cells = checked_mul(cells, sides[(size_t)i]);
        GroupElement col(dim, 0);
        col[(size_t)i] = sides[(size_t)i];
        diag.push_back(col);
    }
    require((i64)pattern.size() == cells, "pattern size must match the box");
    CosetTable t = make_coset_table(make_lattice(dim, diag));
    std::vector<Sym> values((size_t)t.size);
    for (i64 r = 0; r < t.size; ++r) {
        // the unique box point congruent to this representative
        i64 pat = 0;
        for (int i = 0; i < dim; ++i) {
            i64 coord = lo[(size_t)i] + pos_mod(t.reps[(size_t)r][(size_t)i] - lo[(size_t)i],
                                                sides[(size_t)i]);
            pat = pat * sides[(size_t)i] + (coord - lo[(size_t)i]);
        }
        values[(size_t)r] = pattern[(size_t)pat];
    }
    return make_periodic_config(a, t, std::move(values));
}

}  // namespace latca
