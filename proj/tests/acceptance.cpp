// Acceptance suite: one timed pass/fail line per criterion, nonzero exit on
// any failure. Each criterion recomputes its expectations from independent
// oracles rather than trusting the code under test.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "latca/latca.hpp"

using namespace latca;

namespace {

int failures = 0;

void criterion(const std::string& name, i64 limit_ms, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    auto t1 = std::chrono::steady_clock::now();
    i64 ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    if (ms > limit_ms) {
        ok = false;
        note += " (over time limit)";
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << ms << " ms, limit "
              << limit_ms << " ms)" << note << "\n";
    if (!ok) ++failures;
}

PeriodicConfig config_1d(const Alphabet& a, const std::vector<Sym>& row) {
    CosetTable t = make_coset_table(make_lattice(1, {{(i64)row.size()}}));
    return make_periodic_config(a, t, row);
}

CellularAutomaton random_endo_ca(std::mt19937_64& rng, int dim, i64 alpha_n,
                                 const std::vector<GroupElement>& pool, int max_arity) {
    Alphabet a = finite_alphabet(alpha_n);
    std::vector<GroupElement> mem = pool;
    std::shuffle(mem.begin(), mem.end(), rng);
    mem.resize((size_t)(1 + (i64)(rng() % (std::uint64_t)max_arity)));
    std::vector<Sym> entries((size_t)checked_pow(alpha_n, (i64)mem.size()));
    for (auto& e : entries) e = (Sym)(rng() % (std::uint64_t)alpha_n);
    return make_ca(dim, mem, make_table_rule(a, a, (int)mem.size(), entries));
}

// -- criterion bodies ----------------------------------------------------------

bool worked_rows() {
    const std::vector<Sym> row = {0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1};
    PeriodicConfig x = config_1d(finite_alphabet(2), row);
    PeriodicConfig ym = apply(majority_ca(), x);
    std::vector<Sym> maj_interior(ym.values.begin() + 1, ym.values.begin() + 10);
    if (maj_interior != std::vector<Sym>{0, 1, 1, 1, 0, 0, 0, 0, 0}) return false;
    PeriodicConfig yk = apply(hedlund_marker_ca(), x);
    std::vector<Sym> mark_interior(yk.values.begin() + 1, yk.values.begin() + 9);
    return mark_interior == std::vector<Sym>{1, 0, 0, 1, 0, 1, 1, 0};
}

bool life_table_and_patterns() {
    CellularAutomaton gol = game_of_life_ca();
    // independent oracle: live-neighbor count, not the 9-cell sum
    for (i64 idx = 0; idx < 512; ++idx) {
        auto bits = tuple_decode(idx, 9, 2);
        Sym center = bits[4];
        int n8 = 0;
        for (int i = 0; i < 9; ++i)
            if (i != 4) n8 += bits[(size_t)i];
        Sym expect = (n8 == 3 || (center == 1 && n8 == 2)) ? 1 : 0;
        if (eval_rule(gol.rule, bits) != expect) return false;
    }
    CosetTable torus = make_coset_table(make_lattice(2, {{6, 0}, {0, 6}}));
    std::vector<Sym> grid((size_t)torus.size, 0);
    auto lit = [&](std::vector<Sym>& g, i64 r, i64 c) {
        g[(size_t)coset_index_of(torus, {r, c})] = 1;
    };
    lit(grid, 1, 1);
    lit(grid, 1, 2);
    lit(grid, 1, 3);
    PeriodicConfig blinker = make_periodic_config(gol.source, torus, grid);
    PeriodicConfig step1 = apply(gol, blinker);
    if (config_equal(step1, blinker)) return false;
    if (!config_equal(apply(gol, step1), blinker)) return false;
    std::vector<Sym> bgrid((size_t)torus.size, 0);
    lit(bgrid, 2, 2);
    lit(bgrid, 2, 3);
    lit(bgrid, 3, 2);
    lit(bgrid, 3, 3);
    PeriodicConfig block = make_periodic_config(gol.source, torus, bgrid);
    return config_equal(apply(gol, block), block);
}

bool involution_and_quotients() {
    CellularAutomaton marker = hedlund_marker_ca();
    CellularAutomaton twice = minimize(compose(marker, marker));
    if (!(twice.memory == std::vector<GroupElement>{{0}})) return false;
    if (!is_identity_ca(twice)) return false;
    for (i64 n = 1; n <= 8; ++n) {
        QuotientMap q = make_quotient(marker, make_lattice(1, {{n}}));
        if (!quotient_injective(q) || !quotient_surjective(q)) return false;
    }
    return true;
}

bool garden_of_eden_crosscheck() {
    CrosscheckReport rep = goe_crosscheck(2, 3);
    return rep.rules == 256 && rep.disagreements == 0 && rep.surjective == rep.preinjective &&
           rep.orphans_verified == rep.rules - rep.surjective &&
           rep.diamonds_verified == rep.rules - rep.preinjective;
}

bool surjunctivity_sweep() {
    Alphabet a2 = finite_alphabet(2);
    std::vector<CellularAutomaton> corpus;
    for (i64 code = 0; code < 256; ++code) {
        std::vector<Sym> entries(8);
        for (int i = 0; i < 8; ++i) entries[(size_t)i] = (Sym)((code >> i) & 1);
        corpus.push_back(
            make_ca(1, {{0}, {1}, {2}}, make_table_rule(a2, a2, 3, entries)));
    }
    std::mt19937_64 rng(5);
    Alphabet a3 = finite_alphabet(3);
    for (int trial = 0; trial < 100; ++trial) {
        int w = 1 + (int)(rng() % 3);
        std::vector<GroupElement> mem;
        for (int j = 0; j < w; ++j) mem.push_back({(i64)j});
        std::vector<Sym> entries((size_t)checked_pow(3, w));
        for (auto& e : entries) e = (Sym)(rng() % 3);
        corpus.push_back(make_ca(1, mem, make_table_rule(a3, a3, w, entries)));
    }
    int injective_seen = 0;
    for (const auto& ca : corpus) {
        WindowedRule wr = windowed(ca);
        if (!decide_injective(wr).injective) continue;
        ++injective_seen;
        if (!decide_surjective(wr).surjective) return false;
        for (i64 n = 1; n <= 10; ++n) {
            QuotientMap q = make_quotient(ca, make_lattice(1, {{n}}));
            if (!quotient_injective(q) || !quotient_surjective(q)) return false;
        }
    }
    return injective_seen >= 6;  // the shift family alone contributes six
}

bool composition_laws() {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        i64 na = 2 + (i64)(rng() % 2), nb = 2 + (i64)(rng() % 2), nc = 2 + (i64)(rng() % 2);
        Alphabet A = finite_alphabet(na), B = finite_alphabet(nb), C = finite_alphabet(nc);
        auto random_map = [&](const Alphabet& s, const Alphabet& t) {
            int arity = 1 + (int)(rng() % 2);
            std::vector<GroupElement> mem{{(i64)(rng() % 3) - 1}};
            if (arity == 2) mem.push_back({mem[0][0] + 1});
            std::vector<Sym> entries((size_t)checked_pow(s.size(), arity));
            for (auto& e : entries) e = (Sym)(rng() % (std::uint64_t)t.size());
            return make_ca(1, mem, make_table_rule(s, t, arity, entries));
        };
        CellularAutomaton tau = random_map(A, B), sigma = random_map(B, C);
        CellularAutomaton both = compose(sigma, tau);
        for (i64 p = 1; p <= 8; ++p) {
            CosetTable t = make_coset_table(make_lattice(1, {{p}}));
            for (i64 code = 0; code < checked_pow(na, p); ++code) {
                PeriodicConfig x =
                    make_periodic_config(A, t, tuple_decode(code, (int)p, na));
                if (!config_equal(apply(both, x), apply(sigma, apply(tau, x))))
                    return false;
            }
        }
    }
    // linear pairs: composed coefficients must equal the convolution formula
    for (int trial = 0; trial < 20; ++trial) {
        bool field = trial % 2 == 0;
        i64 m = field ? 3 : 8;
        auto alph = [&](i64 rank) {
            return field ? vector_alphabet(3, 1, rank) : module_alphabet(2, 3, rank);
        };
        i64 rs = 1 + (i64)(rng() % 2), rt = 1 + (i64)(rng() % 2), ru = 1 + (i64)(rng() % 2);
        auto random_linear = [&](i64 rin, i64 rout) {
            int arity = 1 + (int)(rng() % 2);
            std::vector<GroupElement> mem{{(i64)(rng() % 3) - 1}};
            if (arity == 2) mem.push_back({mem[0][0] + 1});
            std::vector<std::vector<std::vector<Sym>>> mats;
            for (int j = 0; j < arity; ++j) {
                std::vector<std::vector<Sym>> mat((size_t)rout,
                                                  std::vector<Sym>((size_t)rin));
                for (auto& rowv : mat)
                    for (auto& v : rowv) v = (Sym)(rng() % (std::uint64_t)m);
                mats.push_back(std::move(mat));
            }
            return make_ca(1, mem,
                           make_linear_rule(alph(rin), alph(rout), arity, mats));
        };
        CellularAutomaton tau = random_linear(rs, rt), sigma = random_linear(rt, ru);
        std::map<i64, std::vector<std::vector<Sym>>> conv;
        const auto& sm = std::get<LinearBody>(sigma.rule.body).mats;
        const auto& tm = std::get<LinearBody>(tau.rule.body).mats;
        for (size_t i = 0; i < sigma.memory.size(); ++i)
            for (size_t j = 0; j < tau.memory.size(); ++j) {
                i64 g = sigma.memory[i][0] + tau.memory[j][0];
                auto& acc = conv.try_emplace(g, std::vector<std::vector<Sym>>(
                                                    (size_t)ru, std::vector<Sym>((size_t)rs)))
                                .first->second;
                for (i64 r = 0; r < ru; ++r)
                    for (i64 c = 0; c < rs; ++c) {
                        i64 s = acc[(size_t)r][(size_t)c];
                        for (i64 k = 0; k < rt; ++k)
                            s += (i64)sm[i][(size_t)r][(size_t)k] *
                                 (i64)tm[j][(size_t)k][(size_t)c];
                        acc[(size_t)r][(size_t)c] = (Sym)pos_mod(s, m);
                    }
            }
        std::vector<GroupElement> mem;
        std::vector<std::vector<std::vector<Sym>>> mats;
        for (const auto& [g, mat] : conv) {
            mem.push_back({g});
            mats.push_back(mat);
        }
        CellularAutomaton expect = minimize(make_ca(
            1, mem, make_linear_rule(alph(rs), alph(ru), (int)mats.size(), mats)));
        if (!(minimize(compose(sigma, tau)) == expect)) return false;
    }
    return true;
}

bool restriction_induction_round_trips() {
    std::mt19937_64 rng(7);
    int rank_deficient_seen = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int dim = trial % 2 == 0 ? 1 : 2;
        std::vector<GroupElement> gens;
        if (dim == 1) {
            gens = {{2 + (i64)(rng() % 3)}};
        } else if (trial % 4 == 1) {
            gens = {{1 + (i64)(rng() % 3), (i64)(rng() % 3)}};  // rank deficient
        } else {
            gens = {{1 + (i64)(rng() % 3), 0}, {(i64)(rng() % 2), 1 + (i64)(rng() % 3)}};
        }
        Lattice h = make_lattice(dim, gens);
        if (h.rank() < dim) ++rank_deficient_seen;
        // memory drawn from H so the automaton is H-supported
        std::set<GroupElement> mset;
        int arity = 1 + (int)(rng() % 3);
        while ((int)mset.size() < arity) {
            GroupElement g(static_cast<size_t>(dim), 0);
            for (const auto& b : h.basis) {
                i64 k = (i64)(rng() % 5) - 2;
                for (int i = 0; i < dim; ++i) g[(size_t)i] += k * b[(size_t)i];
            }
            mset.insert(g);
        }
        std::vector<GroupElement> mem(mset.begin(), mset.end());
        i64 alpha = 2 + (i64)(rng() % 2);
        Alphabet a = finite_alphabet(alpha);
        std::vector<Sym> entries((size_t)checked_pow(alpha, (i64)mem.size()));
        for (auto& e : entries) e = (Sym)(rng() % (std::uint64_t)alpha);
        CellularAutomaton tau =
            make_ca(dim, mem, make_table_rule(a, a, (int)mem.size(), entries));

        CellularAutomaton down = restrict_to(tau, h);
        CellularAutomaton up = induce_from(down, h);
        if (!(up == tau)) return false;
        if (!(restrict_to(up, h) == down)) return false;
        // extensional equality over random periodic configurations
        CosetTable t = dim == 1 ? make_coset_table(make_lattice(1, {{6}}))
                                : make_coset_table(make_lattice(2, {{4, 0}, {0, 4}}));
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<Sym> vals((size_t)t.size);
            for (auto& v : vals) v = (Sym)(rng() % (std::uint64_t)alpha);
            PeriodicConfig x = make_periodic_config(a, t, vals);
            if (!config_equal(apply(tau, x), apply(up, x))) return false;
        }
    }
    return rank_deficient_seen >= 5;
}

bool carry_tower() {
    for (i64 p : {2, 3}) {
        TowerReport rep = padic_tower_report(p, 5);
        if (!(rep.all_bijective && rep.sizes_strictly_increasing && rep.all_match_series))
            return false;
        if ((i64)rep.rows.size() != 5) return false;
        for (const auto& row : rep.rows) {
            std::vector<i64> expect_mem;
            for (i64 k = 0; k < row.e; ++k) expect_mem.push_back(k);
            if (row.inverse_memory != expect_mem) return false;
            i64 pk = 1;
            for (i64 k = 0; k < row.e; ++k, pk *= p)
                if (row.inverse_coeffs[(size_t)k] != (Sym)pk) return false;
        }
    }
    return true;
}

bool projective_limit_suite() {
    std::mt19937_64 rng(8);
    auto random_sequence = [&](bool allow_empty) {
        i64 nlev = 1 + (i64)(rng() % 6);
        std::vector<i64> sizes;
        for (i64 n = 0; n < nlev; ++n)
            sizes.push_back((allow_empty ? 0 : 1) + (i64)(rng() % (allow_empty ? 5 : 4)));
        for (i64 n = 0; n + 1 < nlev; ++n)
            if (sizes[(size_t)n] == 0) sizes[(size_t)(n + 1)] = 0;
        std::vector<std::vector<i64>> steps;
        for (i64 n = 0; n + 1 < nlev; ++n) {
            std::vector<i64> step((size_t)sizes[(size_t)(n + 1)]);
            for (auto& v : step)
                v = (i64)(rng() % (std::uint64_t)std::max<i64>(sizes[(size_t)n], 1));
            steps.push_back(std::move(step));
        }
        return make_projective_sequence(sizes, steps);
    };
    // thread sets of the sequence and of its universal subsequence coincide
    for (int trial = 0; trial < 1500; ++trial) {
        ProjectiveSequence seq = random_sequence(true);
        UniversalReport rep = universal_elements(seq);
        std::vector<std::map<i64, i64>> reindex((size_t)seq.levels());
        std::vector<i64> sizes2;
        for (i64 n = 0; n < seq.levels(); ++n) {
            const auto& u = rep.universal[(size_t)n];
            for (size_t i = 0; i < u.size(); ++i) reindex[(size_t)n][u[i]] = (i64)i;
            sizes2.push_back((i64)u.size());
        }
        std::vector<std::vector<i64>> steps2;
        for (i64 n = 0; n + 1 < seq.levels(); ++n) {
            std::vector<i64> step;
            std::set<i64> image;
            for (i64 x : rep.universal[(size_t)(n + 1)]) {
                i64 y = seq.steps[(size_t)n][(size_t)x];
                // the universal subsequence must be closed under the steps
                if (!reindex[(size_t)n].count(y)) return false;
                image.insert(y);
                step.push_back(reindex[(size_t)n][y]);
            }
            // and its connecting maps must be surjective
            if ((i64)image.size() != sizes2[(size_t)n]) return false;
            steps2.push_back(std::move(step));
        }
        ProjectiveSequence sub = make_projective_sequence(sizes2, steps2);
        auto ts = threads(seq);
        auto ts2 = threads(sub);
        std::set<std::vector<i64>> seen, seen2;
        for (const auto& t : ts) seen.insert(t);
        for (auto t : ts2) {
            for (i64 n = 0; n < sub.levels(); ++n)
                t[(size_t)n] = rep.universal[(size_t)n][(size_t)t[(size_t)n]];
            seen2.insert(t);
        }
        if (seen != seen2) return false;
    }
    // nonempty instances always produce a checkable thread
    for (int trial = 0; trial < 200; ++trial) {
        ProjectiveSequence seq = random_sequence(false);
        auto t = extract_limit(seq);
        if (!t.has_value()) return false;
        for (i64 n = 0; n + 1 < seq.levels(); ++n)
            if (seq.steps[(size_t)n][(size_t)(*t)[(size_t)(n + 1)]] != (*t)[(size_t)n])
                return false;
    }
    // window towers agree with the periodic preimage decision
    int refuted = 0, open = 0;
    for (int trial = 0; trial < 20; ++trial) {
        i64 alpha = 2 + (i64)(rng() % 2);
        Alphabet a = finite_alphabet(alpha);
        int w = 2 + (int)(rng() % 2);
        std::vector<GroupElement> mem;
        for (int j = 0; j < w; ++j) mem.push_back({(i64)j});
        std::vector<Sym> entries((size_t)checked_pow(alpha, w));
        for (auto& e : entries) e = (Sym)(rng() % (std::uint64_t)alpha);
        CellularAutomaton ca = make_ca(1, mem, make_table_rule(a, a, w, entries));
        std::vector<Sym> row(3 + rng() % 4);
        for (auto& s : row) s = (Sym)(rng() % (std::uint64_t)alpha);
        PeriodicConfig y = config_1d(a, row);
        PreimageResult pr = preimage_periodic(ca, y);
        ClosedImageDemo demo = closed_image_demo(ca, y, 6);
        if (pr.exists) {
            if (demo.first_empty >= 0) return false;
            if (!config_equal(apply(ca, *pr.preimage), y)) return false;
            ++open;
        } else if (demo.first_empty >= 0) {
            ++refuted;
        }
        for (i64 lvl = 0; lvl < demo.seq.levels(); ++lvl)
            for (i64 e = 0; e < demo.seq.sizes[(size_t)lvl]; ++e)
                if (!verify_demo_block(ca, y, demo, lvl, e)) return false;
    }
    return refuted > 0 && open > 0;
}

bool quotient_commutation() {
    std::mt19937_64 rng(9);
    std::vector<GroupElement> pool1 = {{-1}, {0}, {1}};
    std::vector<GroupElement> pool2 = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int trial = 0; trial < 20; ++trial) {
        bool flat = trial < 10;
        CellularAutomaton ca = flat ? random_endo_ca(rng, 1, 2 + (i64)(rng() % 2), pool1, 3)
                                    : random_endo_ca(rng, 2, 2, pool2, 3);
        i64 max_index = flat ? 12 : 9;
        for (const auto& h : sublattices_up_to_index(ca.dim, max_index)) {
            QuotientMap q = make_quotient(ca, h);
            i64 points = quotient_points(q);
            if (!quotient_commutes(q, points, 1)) return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion("worked example rows", 1000, worked_rows);
    criterion("life table, blinker, block", 1000, life_table_and_patterns);
    criterion("marker involution and quotients", 5000, involution_and_quotients);
    criterion("garden of eden cross-check", 60000, garden_of_eden_crosscheck);
    criterion("surjunctivity sweep", 300000, surjunctivity_sweep);
    criterion("composition laws", 120000, composition_laws);
    criterion("restriction and induction round trips", 60000,
              restriction_induction_round_trips);
    criterion("carry-step reversibility tower", 120000, carry_tower);
    criterion("projective limit suite", 120000, projective_limit_suite);
    criterion("quotient commutation", 300000, quotient_commutation);
    std::cout << "acceptance: " << (10 - failures) << "/10 passed\n";
    return failures ? 1 : 0;
}
