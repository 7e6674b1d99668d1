#pragma once

// Subgroups of Z^d as integer lattices: canonical Hermite bases, subgroup
// index, coset representatives in the fundamental box, and exact coordinate
// maps between a rank-r lattice and Z^r.

#include <algorithm>
#include <optional>
#include <vector>

#include "intmat.hpp"

namespace latca {

using GroupElement = std::vector<i64>;

inline GroupElement gadd(const GroupElement& a, const GroupElement& b) {
    GroupElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

inline GroupElement gsub(const GroupElement& a, const GroupElement& b) {
    GroupElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
    return r;
}

inline GroupElement gneg(const GroupElement& a) {
    GroupElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], -1);
    return r;
}

inline bool lex_less(const GroupElement& a, const GroupElement& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void check_coord_bounds(const GroupElement& g) {
    for (i64 c : g)
        if (c > kCoordBound || c < -kCoordBound)
            throw std::overflow_error("lattice point coordinate out of supported range");
}

struct Lattice {
    int dim = 0;
    std::vector<GroupElement> basis;  // canonical Hermite columns
    std::vector<int> pivot_rows;

    int rank() const { return (int)basis.size(); }
    bool full_rank() const { return rank() == dim; }
};

// canonical lattice spanned by arbitrary integer generators
inline Lattice make_lattice(int dim, const std::vector<GroupElement>& generators) {
    require(dim >= 1, "lattice dimension must be positive");
    for (const auto& g : generators) check_coord_bounds(g);
    HermiteForm h = column_hermite(generators, dim);
    return Lattice{dim, std::move(h.cols), std::move(h.pivot_rows)};
}

// subgroup index [Z^d : L]; nullopt when the rank is deficient (infinite index)
inline std::optional<i64> lattice_index(const Lattice& lat) {
    if (!lat.full_rank()) return std::nullopt;
    i64 idx = 1;
    for (int j = 0; j < lat.dim; ++j) idx = checked_mul(idx, lat.basis[j][j]);
    return idx;
}

// Coordinates of a point in the lattice basis, or nullopt if not a member.
// Forward substitution down the pivot rows of the Hermite basis.
inline std::optional<Vec> lattice_coordinates(const Lattice& lat, GroupElement g) {
    require((int)g.size() == lat.dim, "point dimension mismatch");
    Vec k(lat.rank(), 0);
    for (int j = 0; j < lat.rank(); ++j) {
        int p = lat.pivot_rows[j];
        if (g[p] % lat.basis[j][p] != 0) return std::nullopt;
        k[j] = g[p] / lat.basis[j][p];
        for (int i = 0; i < lat.dim; ++i)
            g[i] = checked_sub(g[i], checked_mul(k[j], lat.basis[j][i]));
    }
    for (i64 c : g)
        if (c != 0) return std::nullopt;
    return k;
}

inline bool lattice_contains(const Lattice& lat, const GroupElement& g) {
    return lattice_coordinates(lat, g).has_value();
}

// embedding Z^rank -> Z^dim through the basis
inline GroupElement lattice_embed(const Lattice& lat, const Vec& k) {
    require((int)k.size() == lat.rank(), "coordinate size mismatch");
    GroupElement g(lat.dim, 0);
    for (int j = 0; j < lat.rank(); ++j)
        for (int i = 0; i < lat.dim; ++i)
            g[i] = checked_add(g[i], checked_mul(k[j], lat.basis[j][i]));
    return g;
}

// Coset bookkeeping for a full-rank lattice: representatives are the points
// of the half-open box spanned by the Hermite diagonal, in lexicographic
// order, which doubles as the mixed-radix index order.
struct CosetTable {
    Lattice lat;
    std::vector<i64> radices;          // Hermite diagonal entries
    i64 size = 0;
    std::vector<GroupElement> reps;    // lexicographic

    i64 rep_to_index(const GroupElement& rep) const {
        i64 idx = 0;
        for (int i = 0; i < lat.dim; ++i) idx = checked_add(checked_mul(idx, radices[i]), rep[i]);
        return idx;
    }
};

// canonical representative of g + L inside the fundamental box
inline GroupElement coset_reduce(const Lattice& lat, GroupElement g) {
    require(lat.full_rank(), "coset reduction needs a full-rank lattice");
    require((int)g.size() == lat.dim, "point dimension mismatch");
    check_coord_bounds(g);
    for (int j = 0; j < lat.dim; ++j) {
        i64 q = floor_div(g[j], lat.basis[j][j]);
        if (q == 0) continue;
        for (int i = j; i < lat.dim; ++i)
            g[i] = checked_sub(g[i], checked_mul(q, lat.basis[j][i]));
    }
    return g;
}

inline CosetTable make_coset_table(const Lattice& lat, i64 budget = kEnumBudget) {
    auto idx = lattice_index(lat);
    require(idx.has_value(), "coset table needs a full-rank lattice");
    if (*idx > budget) throw budget_error("subgroup index exceeds enumeration budget");
    CosetTable t;
    t.lat = lat;
    t.size = *idx;
    t.radices.resize(lat.dim);
    for (int j = 0; j < lat.dim; ++j) t.radices[j] = lat.basis[j][j];
    t.reps.reserve((size_t)t.size);
    GroupElement cur(lat.dim, 0);
    for (i64 n = 0; n < t.size; ++n) {
        t.reps.push_back(cur);
        for (int j = lat.dim - 1; j >= 0; --j) {
            if (++cur[j] < t.radices[j]) break;
            cur[j] = 0;
        }
    }
    return t;
}

inline i64 coset_index_of(const CosetTable& t, const GroupElement& g) {
    return t.rep_to_index(coset_reduce(t.lat, g));
}

// All full-rank sublattices of Z^dim with the given index, as canonical
// Hermite bases: diagonal factorizations times the below-pivot digits.
inline void enumerate_sublattices_of_index(int dim, i64 index,
                                           std::vector<Lattice>& out) {
    // enumerate diagonals whose product is the index, then the sub-pivot digits
    std::vector<std::vector<i64>> diags;
    std::vector<i64> cur(dim, 1);
    auto rec_diag = [&](auto&& self, int pos, i64 rem) -> void {
        if (pos == dim) {
            if (rem == 1) diags.push_back(cur);
            return;
        }
        for (i64 f = 1; f <= rem; ++f)
            if (rem % f == 0) { cur[pos] = f; self(self, pos + 1, rem / f); }
    };
    rec_diag(rec_diag, 0, index);
    for (const auto& dg : diags) {
        // free positions: entry at (row j, column k) for k < j ranges over [0, dg[j])
        std::vector<std::pair<int, int>> slots;
        for (int j = 1; j < dim; ++j)
            for (int k = 0; k < j; ++k)
                if (dg[j] > 1) slots.push_back({j, k});
        std::vector<i64> choice(slots.size(), 0);
        for (;;) {
            std::vector<GroupElement> basis(dim, GroupElement(dim, 0));
            for (int j = 0; j < dim; ++j) basis[j][j] = dg[j];
            for (size_t s = 0; s < slots.size(); ++s) basis[slots[s].second][slots[s].first] = choice[s];
            Lattice lat;
            lat.dim = dim;
            lat.basis = std::move(basis);
            lat.pivot_rows.resize(dim);
            for (int j = 0; j < dim; ++j) lat.pivot_rows[j] = j;
            out.push_back(std::move(lat));
            int s = (int)slots.size() - 1;
            while (s >= 0 && ++choice[s] == dg[slots[s].first]) choice[s--] = 0;
            if (s < 0) break;
        }
    }
}

inline std::vector<Lattice> sublattices_up_to_index(int dim, i64 max_index) {
    std::vector<Lattice> out;
    for (i64 k = 1; k <= max_index; ++k) enumerate_sublattices_of_index(dim, k, out);
    return out;
}

}  // namespace latca
