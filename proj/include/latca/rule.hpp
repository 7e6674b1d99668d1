#pragma once

// Local defining maps A^k -> B in three bodies: explicit tables, matrix
// families over a shared scalar ring, and coordinate polynomials over F_q.
// Tables are indexed mixed-radix row-major: argument 0 is most significant.

#include <variant>
#include <vector>

#include "alphabet.hpp"
#include "intmat.hpp"

namespace latca {

enum class RuleKind { Table, Linear, Poly };

struct TableBody {
    std::vector<Sym> entries;
    bool operator==(const TableBody&) const = default;
};

// one target_rank x source_rank matrix of scalar indexes per argument
struct LinearBody {
    std::vector<std::vector<std::vector<Sym>>> mats;
    bool operator==(const LinearBody&) const = default;
};

struct PolyTerm {
    Sym coeff = 0;
    std::vector<int> exps;  // per variable (argument-major, then coordinate)
    bool operator==(const PolyTerm&) const = default;
};

// one polynomial per target coordinate, in arity*source_rank variables
struct PolyBody {
    std::vector<std::vector<PolyTerm>> coords;
    bool operator==(const PolyBody&) const = default;
};

struct LocalRule {
    Alphabet source, target;
    int arity = 0;
    std::variant<TableBody, LinearBody, PolyBody> body;

    bool operator==(const LocalRule&) const = default;
    RuleKind kind() const { return (RuleKind)body.index(); }
};

inline i64 tuple_index(const std::vector<Sym>& args, i64 alphabet_size) {
    i64 idx = 0;
    for (Sym a : args) idx = checked_add(checked_mul(idx, alphabet_size), a);
    return idx;
}

inline std::vector<Sym> tuple_decode(i64 idx, int arity, i64 alphabet_size) {
    std::vector<Sym> args((size_t)arity);
    for (int i = arity - 1; i >= 0; --i) { args[(size_t)i] = (Sym)(idx % alphabet_size); idx /= alphabet_size; }
    return args;
}

inline i64 table_size(const Alphabet& source, int arity, i64 budget = kEnumBudget) {
    i64 n = checked_pow(source.size(), arity);
    if (n > budget) throw budget_error("rule table exceeds enumeration budget");
    return n;
}

inline LocalRule make_table_rule(const Alphabet& source, const Alphabet& target, int arity,
                                 std::vector<Sym> entries) {
    require(arity >= 0, "negative arity");
    require((i64)entries.size() == checked_pow(source.size(), arity), "table length mismatch");
    for (Sym s : entries) require(s >= 0 && s < target.size(), "table entry out of range");
    return LocalRule{source, target, arity, TableBody{std::move(entries)}};
}

inline void check_linear_compatible(const Alphabet& source, const Alphabet& target) {
    require(source.structured() && target.structured(), "linear rule needs structured alphabets");
    require(source.kind == target.kind && source.p == target.p && source.e == target.e,
            "linear rule needs a shared scalar ring");
}

inline LocalRule make_linear_rule(const Alphabet& source, const Alphabet& target, int arity,
                                  std::vector<std::vector<std::vector<Sym>>> mats) {
    check_linear_compatible(source, target);
    require((int)mats.size() == arity, "one matrix per argument required");
    i64 ss = source.scalar_size();
    for (const auto& m : mats) {
        require((i64)m.size() == target.rank, "matrix row count mismatch");
        for (const auto& row : m) {
            require((i64)row.size() == source.rank, "matrix column count mismatch");
            for (Sym x : row) require(x >= 0 && x < ss, "matrix entry not a canonical scalar");
        }
    }
    return LocalRule{source, target, arity, LinearBody{std::move(mats)}};
}

inline LocalRule make_poly_rule(const Alphabet& source, const Alphabet& target, int arity,
                                std::vector<std::vector<PolyTerm>> coords) {
    require(source.kind == AlphabetKind::Vector && target.kind == AlphabetKind::Vector &&
                source.p == target.p && source.e == target.e,
            "polynomial rule needs vector alphabets over one field");
    require((i64)coords.size() == target.rank, "one polynomial per target coordinate required");
    i64 vars = checked_mul(arity, source.rank), ss = source.scalar_size();
    for (const auto& poly : coords)
        for (const auto& term : poly) {
            require((i64)term.exps.size() == vars, "term exponent width mismatch");
            require(term.coeff >= 0 && term.coeff < ss, "coefficient not canonical");
            for (int x : term.exps) require(x >= 0, "negative exponent");
        }
    return LocalRule{source, target, arity, PolyBody{std::move(coords)}};
}

inline Sym eval_rule(const LocalRule& rule, const std::vector<Sym>& args) {
    require((int)args.size() == rule.arity, "argument count mismatch");
    for (Sym a : args) require(a >= 0 && a < rule.source.size(), "argument out of range");
    if (const auto* t = std::get_if<TableBody>(&rule.body))
        return t->entries[(size_t)tuple_index(args, rule.source.size())];
    if (const auto* l = std::get_if<LinearBody>(&rule.body)) {
        ScalarRing ring = rule.source.scalars();
        std::vector<Sym> out((size_t)rule.target.rank, 0);
        for (int m = 0; m < rule.arity; ++m) {
            std::vector<Sym> v = rule.source.decode(args[(size_t)m]);
            for (i64 r = 0; r < rule.target.rank; ++r)
                for (i64 c = 0; c < rule.source.rank; ++c) {
                    Sym coeff = l->mats[(size_t)m][(size_t)r][(size_t)c];
                    if (coeff != 0 && v[(size_t)c] != 0)
                        out[(size_t)r] = ring.add(out[(size_t)r], ring.mul(coeff, v[(size_t)c]));
                }
        }
        return rule.target.encode(out);
    }
    const auto& poly = std::get<PolyBody>(rule.body);
    ScalarRing ring = rule.source.scalars();
    std::vector<Sym> vars;
    vars.reserve((size_t)(rule.arity * rule.source.rank));
    for (Sym a : args)
        for (Sym c : rule.source.decode(a)) vars.push_back(c);
    std::vector<Sym> out((size_t)rule.target.rank, 0);
    for (size_t coord = 0; coord < poly.coords.size(); ++coord)
        for (const auto& term : poly.coords[coord]) {
            Sym acc = term.coeff;
            for (size_t v = 0; v < vars.size() && acc != 0; ++v)
                for (int k = 0; k < term.exps[v]; ++k) acc = ring.mul(acc, vars[v]);
            out[coord] = ring.add(out[coord], acc);
        }
    return rule.target.encode(out);
}

inline LocalRule lower_to_table(const LocalRule& rule, i64 budget = kEnumBudget) {
    i64 n = table_size(rule.source, rule.arity, budget);
    std::vector<Sym> entries((size_t)n);
    for (i64 idx = 0; idx < n; ++idx)
        entries[(size_t)idx] = eval_rule(rule, tuple_decode(idx, rule.arity, rule.source.size()));
    return make_table_rule(rule.source, rule.target, rule.arity, std::move(entries));
}

// g(b_0..b_{k-1}) = f(b_{perm[0]}, ..., b_{perm[k-1]})
inline LocalRule permute_args(const LocalRule& rule, const std::vector<int>& perm) {
    require((int)perm.size() == rule.arity, "permutation size mismatch");
    if (const auto* t = std::get_if<TableBody>(&rule.body)) {
        i64 n = checked_pow(rule.source.size(), rule.arity);
        std::vector<Sym> entries((size_t)n);
        for (i64 idx = 0; idx < n; ++idx) {
            auto b = tuple_decode(idx, rule.arity, rule.source.size());
            std::vector<Sym> c((size_t)rule.arity);
            for (int i = 0; i < rule.arity; ++i) c[(size_t)i] = b[(size_t)perm[(size_t)i]];
            entries[(size_t)idx] = t->entries[(size_t)tuple_index(c, rule.source.size())];
        }
        return LocalRule{rule.source, rule.target, rule.arity, TableBody{std::move(entries)}};
    }
    if (const auto* l = std::get_if<LinearBody>(&rule.body)) {
        // f's matrix i multiplies argument perm[i] of g
        LinearBody nb;
        nb.mats.resize((size_t)rule.arity);
        for (int i = 0; i < rule.arity; ++i) nb.mats[(size_t)perm[(size_t)i]] = l->mats[(size_t)i];
        return LocalRule{rule.source, rule.target, rule.arity, std::move(nb)};
    }
    const auto& poly = std::get<PolyBody>(rule.body);
    PolyBody nb = poly;
    i64 k = rule.source.rank;
    for (auto& coord : nb.coords)
        for (auto& term : coord) {
            std::vector<int> exps(term.exps.size(), 0);
            for (int i = 0; i < rule.arity; ++i)
                for (i64 c = 0; c < k; ++c) exps[(size_t)(perm[(size_t)i] * k + c)] = term.exps[(size_t)(i * k + c)];
            term.exps = std::move(exps);
        }
    return LocalRule{rule.source, rule.target, rule.arity, std::move(nb)};
}

// Does the tabulated map admit a body of the claimed kind? For Linear the
// candidate is read off the standard generators and then verified on the
// whole table; over a finite field every map is polynomial, so Poly only
// requires compatible alphabets.
inline bool is_morphism(const LocalRule& rule, RuleKind claimed, i64 budget = kEnumBudget) {
    if (claimed == RuleKind::Table) return true;
    if (claimed == RuleKind::Poly)
        return rule.source.kind == AlphabetKind::Vector &&
               rule.target.kind == AlphabetKind::Vector && rule.source.p == rule.target.p &&
               rule.source.e == rule.target.e;
    if (!rule.source.structured() || !rule.target.structured() ||
        rule.source.kind != rule.target.kind || rule.source.p != rule.target.p ||
        rule.source.e != rule.target.e)
        return false;
    LocalRule table = rule.kind() == RuleKind::Table ? rule : lower_to_table(rule, budget);
    std::vector<Sym> zeros((size_t)rule.arity, 0);
    if (eval_rule(table, zeros) != rule.target.zero()) return false;
    // candidate matrices from the images of the standard generators
    LinearBody cand;
    cand.mats.assign((size_t)rule.arity,
                     std::vector<std::vector<Sym>>((size_t)rule.target.rank,
                                                   std::vector<Sym>((size_t)rule.source.rank, 0)));
    for (int m = 0; m < rule.arity; ++m)
        for (i64 c = 0; c < rule.source.rank; ++c) {
            std::vector<Sym> gen((size_t)rule.source.rank, 0);
            gen[(size_t)c] = 1;
            std::vector<Sym> args = zeros;
            args[(size_t)m] = rule.source.encode(gen);
            std::vector<Sym> img = rule.target.decode(eval_rule(table, args));
            for (i64 r = 0; r < rule.target.rank; ++r) cand.mats[(size_t)m][(size_t)r][(size_t)c] = img[(size_t)r];
        }
    LocalRule lin{rule.source, rule.target, rule.arity, std::move(cand)};
    i64 n = table_size(rule.source, rule.arity, budget);
    const auto& entries = std::get<TableBody>(table.body).entries;
    for (i64 idx = 0; idx < n; ++idx)
        if (eval_rule(lin, tuple_decode(idx, rule.arity, rule.source.size())) != entries[(size_t)idx])
            return false;
    return true;
}

}  // namespace latca
