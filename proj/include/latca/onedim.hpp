#pragma once

// Decision procedures for one-dimensional automata. A sliding-window
// presentation feeds a de Bruijn pair graph (injectivity, pre-injectivity,
// both with eventually periodic witnesses), a subset construction
// (surjectivity, with shortest orphan words), a product-graph cycle search
// (periodic preimages), and bounded searches for inverse rules.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ca.hpp"

namespace latca {

struct WindowedRule {
    Alphabet a, b;
    i64 lo = 0, hi = 0;
    int width = 1;
    std::vector<Sym> table;  // indexed by windows, leftmost symbol most significant
};

inline WindowedRule windowed(const CellularAutomaton& ca, i64 budget = kEnumBudget) {
    require(ca.dim == 1, "windowed form needs a one-dimensional automaton");
    WindowedRule wr{ca.source, ca.target, 0, 0, 1, {}};
    if (!ca.memory.empty()) {
        wr.lo = ca.memory.front()[0];
        wr.hi = ca.memory.back()[0];
    }
    wr.width = (int)(wr.hi - wr.lo + 1);
    i64 n = checked_pow(ca.source.size(), wr.width);
    if (n > budget) throw budget_error("window table exceeds budget");
    wr.table.resize((size_t)n);
    std::vector<Sym> args((size_t)ca.rule.arity);
    for (i64 idx = 0; idx < n; ++idx) {
        std::vector<Sym> win = tuple_decode(idx, wr.width, ca.source.size());
        for (int j = 0; j < ca.rule.arity; ++j)
            args[(size_t)j] = win[(size_t)(ca.memory[(size_t)j][0] - wr.lo)];
        wr.table[(size_t)idx] = eval_rule(ca.rule, args);
    }
    return wr;
}

inline CellularAutomaton window_ca(const WindowedRule& wr) {
    std::vector<GroupElement> memory;
    for (i64 m = wr.lo; m <= wr.hi; ++m) memory.push_back({m});
    return make_ca(1, memory, make_table_rule(wr.a, wr.b, wr.width, wr.table));
}

// A bi-infinite word with periodic tails: `left` repeats up to position 0,
// `mid` covers [0, |mid|), `right` repeats afterwards.
struct EpWord {
    std::vector<Sym> left, mid, right;

    Sym at(i64 pos) const {
        if (pos < 0) return left[(size_t)pos_mod(pos, (i64)left.size())];
        if (pos < (i64)mid.size()) return mid[(size_t)pos];
        return right[(size_t)pos_mod(pos - (i64)mid.size(), (i64)right.size())];
    }
};

inline Sym ep_image(const WindowedRule& wr, const EpWord& x, i64 pos) {
    i64 idx = 0;
    for (i64 j = pos + wr.lo; j <= pos + wr.hi; ++j)
        idx = idx * wr.a.size() + x.at(j);
    return wr.table[(size_t)idx];
}

struct PairWitness {
    EpWord x, y;
};

struct DiamondWitness {
    EpWord x, y;
    i64 win_lo = 0, win_hi = -1;  // positions outside this window agree
};

// Equality of images needs checking only across one full period of each tail
// plus the finite middle, after which periodicity carries it everywhere.
inline bool verify_pair_witness(const WindowedRule& wr, const PairWitness& pw) {
    const EpWord& x = pw.x;
    const EpWord& y = pw.y;
    if (x.left.empty() || x.right.empty() || y.left.empty() || y.right.empty()) return false;
    if (x.left.size() != y.left.size() || x.mid.size() != y.mid.size() ||
        x.right.size() != y.right.size())
        return false;
    i64 pl = (i64)x.left.size(), m = (i64)x.mid.size(), pr = (i64)x.right.size();
    bool differ = false;
    for (i64 p = -pl; p < m + pr; ++p)
        if (x.at(p) != y.at(p)) differ = true;
    if (!differ) return false;
    for (i64 p = -wr.hi - pl; p <= m - wr.lo + pr - 1; ++p)
        if (ep_image(wr, x, p) != ep_image(wr, y, p)) return false;
    return true;
}

inline bool verify_diamond_witness(const WindowedRule& wr, const DiamondWitness& dw) {
    const EpWord& x = dw.x;
    const EpWord& y = dw.y;
    if (x.left != y.left || x.right != y.right) return false;
    if (x.left.empty() || x.right.empty()) return false;
    if (x.mid.size() != y.mid.size() || x.mid == y.mid) return false;
    if (dw.win_lo > 0 || dw.win_hi < (i64)x.mid.size() - 1) return false;
    i64 pl = (i64)x.left.size(), m = (i64)x.mid.size(), pr = (i64)x.right.size();
    for (i64 p = -wr.hi - pl; p <= m - wr.lo + pr - 1; ++p)
        if (ep_image(wr, x, p) != ep_image(wr, y, p)) return false;
    return true;
}

// ---- de Bruijn pair graph ----------------------------------------------

// Vertices are ordered pairs of length (w-1) words; an edge appends one
// symbol to each side under equal output labels. Stored as forward CSR.
struct PairGraph {
    i64 alpha = 0, nv = 0, np = 0;
    std::vector<i64> offs;
    std::vector<std::int32_t> adj;
};

inline PairGraph make_pair_graph(const WindowedRule& wr) {
    require(wr.width >= 2, "pair graph needs window width at least two");
    PairGraph g;
    g.alpha = wr.a.size();
    g.nv = checked_pow(g.alpha, wr.width - 1);
    g.np = checked_mul(g.nv, g.nv);
    if (g.np > kPairEdgeBudget) throw budget_error("pair graph vertex set exceeds budget");
    i64 beta = wr.b.size();
    std::vector<i64> hist((size_t)beta, 0);
    for (Sym s : wr.table) ++hist[(size_t)s];
    i64 total = 0;
    for (i64 c : hist) total = checked_add(total, checked_mul(c, c));
    if (total > kPairEdgeBudget) throw budget_error("pair graph edge set exceeds budget");

    // per-vertex out-edges sorted by (label, appended symbol)
    std::vector<std::vector<std::pair<Sym, Sym>>> bucket((size_t)g.nv);
    for (i64 u = 0; u < g.nv; ++u) {
        auto& bu = bucket[(size_t)u];
        bu.reserve((size_t)g.alpha);
        for (i64 a = 0; a < g.alpha; ++a)
            bu.emplace_back(wr.table[(size_t)(u * g.alpha + a)], (Sym)a);
        std::sort(bu.begin(), bu.end());
    }
    g.offs.assign((size_t)g.np + 1, 0);
    for (i64 u1 = 0; u1 < g.nv; ++u1)
        for (i64 u2 = 0; u2 < g.nv; ++u2) {
            const auto& b1 = bucket[(size_t)u1];
            const auto& b2 = bucket[(size_t)u2];
            i64 deg = 0;
            size_t i = 0, j = 0;
            while (i < b1.size() && j < b2.size()) {
                if (b1[i].first < b2[j].first) ++i;
                else if (b2[j].first < b1[i].first) ++j;
                else {
                    Sym lab = b1[i].first;
                    size_t i2 = i, j2 = j;
                    while (i2 < b1.size() && b1[i2].first == lab) ++i2;
                    while (j2 < b2.size() && b2[j2].first == lab) ++j2;
                    deg += (i64)(i2 - i) * (i64)(j2 - j);
                    i = i2;
                    j = j2;
                }
            }
            g.offs[(size_t)(u1 * g.nv + u2) + 1] = deg;
        }
    for (i64 v = 0; v < g.np; ++v) g.offs[(size_t)v + 1] += g.offs[(size_t)v];
    g.adj.resize((size_t)g.offs[(size_t)g.np]);
    for (i64 u1 = 0; u1 < g.nv; ++u1)
        for (i64 u2 = 0; u2 < g.nv; ++u2) {
            const auto& b1 = bucket[(size_t)u1];
            const auto& b2 = bucket[(size_t)u2];
            i64 at = g.offs[(size_t)(u1 * g.nv + u2)];
            size_t i = 0, j = 0;
            while (i < b1.size() && j < b2.size()) {
                if (b1[i].first < b2[j].first) ++i;
                else if (b2[j].first < b1[i].first) ++j;
                else {
                    Sym lab = b1[i].first;
                    size_t i2 = i, j2 = j;
                    while (i2 < b1.size() && b1[i2].first == lab) ++i2;
                    while (j2 < b2.size() && b2[j2].first == lab) ++j2;
                    for (size_t k1 = i; k1 < i2; ++k1)
                        for (size_t k2 = j; k2 < j2; ++k2) {
                            i64 t1 = (u1 * g.alpha + b1[k1].second) % g.nv;
                            i64 t2 = (u2 * g.alpha + b2[k2].second) % g.nv;
                            g.adj[(size_t)at++] = (std::int32_t)(t1 * g.nv + t2);
                        }
                    i = i2;
                    j = j2;
                }
            }
        }
    return g;
}

struct SccInfo {
    std::vector<std::int32_t> comp;   // sink components get the smallest ids
    i64 ncomp = 0;
    std::vector<char> nontrivial;     // size above one, or a self-loop
    std::vector<std::int32_t> order;  // vertices sorted by component id ascending
};

inline SccInfo tarjan_scc(const PairGraph& g) {
    i64 n = g.np;
    SccInfo s;
    s.comp.assign((size_t)n, -1);
    std::vector<std::int32_t> num((size_t)n, -1), low((size_t)n, 0);
    std::vector<char> onstk((size_t)n, 0), selfloop((size_t)n, 0);
    std::vector<std::int32_t> stk;
    struct Frame {
        std::int32_t v;
        i64 it;
    };
    std::vector<Frame> frames;
    std::int32_t counter = 0;
    for (i64 root = 0; root < n; ++root) {
        if (num[(size_t)root] != -1) continue;
        frames.push_back({(std::int32_t)root, g.offs[(size_t)root]});
        num[(size_t)root] = low[(size_t)root] = counter++;
        stk.push_back((std::int32_t)root);
        onstk[(size_t)root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            i64 v = f.v;
            if (f.it < g.offs[(size_t)v + 1]) {
                i64 w = g.adj[(size_t)f.it++];
                if (w == v) selfloop[(size_t)v] = 1;
                if (num[(size_t)w] == -1) {
                    num[(size_t)w] = low[(size_t)w] = counter++;
                    stk.push_back((std::int32_t)w);
                    onstk[(size_t)w] = 1;
                    frames.push_back({(std::int32_t)w, g.offs[(size_t)w]});
                } else if (onstk[(size_t)w] && num[(size_t)w] < low[(size_t)v]) {
                    low[(size_t)v] = num[(size_t)w];
                }
            } else {
                frames.pop_back();
                if (!frames.empty()) {
                    i64 p = frames.back().v;
                    if (low[(size_t)v] < low[(size_t)p]) low[(size_t)p] = low[(size_t)v];
                }
                if (low[(size_t)v] == num[(size_t)v]) {
                    while (true) {
                        std::int32_t w = stk.back();
                        stk.pop_back();
                        onstk[(size_t)w] = 0;
                        s.comp[(size_t)w] = (std::int32_t)s.ncomp;
                        if (w == (std::int32_t)v) break;
                    }
                    ++s.ncomp;
                }
            }
        }
    }
    std::vector<std::int32_t> csize((size_t)s.ncomp, 0);
    for (i64 v = 0; v < n; ++v) ++csize[(size_t)s.comp[(size_t)v]];
    s.nontrivial.assign((size_t)s.ncomp, 0);
    for (i64 v = 0; v < n; ++v)
        if (csize[(size_t)s.comp[(size_t)v]] > 1 || selfloop[(size_t)v])
            s.nontrivial[(size_t)s.comp[(size_t)v]] = 1;
    // counting sort by component id
    std::vector<i64> start((size_t)s.ncomp + 1, 0);
    for (i64 v = 0; v < n; ++v) ++start[(size_t)s.comp[(size_t)v] + 1];
    for (i64 c = 0; c < s.ncomp; ++c) start[(size_t)c + 1] += start[(size_t)c];
    s.order.resize((size_t)n);
    for (i64 v = 0; v < n; ++v) s.order[(size_t)start[(size_t)s.comp[(size_t)v]]++] = (std::int32_t)v;
    return s;
}

// Edges always point from larger to equal-or-smaller component ids, so one
// pass in each direction evaluates reachability to and from seeded components.
inline std::vector<char> scc_reaches(const PairGraph& g, const SccInfo& s,
                                     const std::vector<char>& seed) {
    std::vector<char> f = seed;
    for (std::int32_t v : s.order) {
        i64 c = s.comp[(size_t)v];
        for (i64 e = g.offs[(size_t)v]; e < g.offs[(size_t)v + 1] && !f[(size_t)c]; ++e)
            if (f[(size_t)s.comp[(size_t)g.adj[(size_t)e]]]) f[(size_t)c] = 1;
    }
    return f;
}

inline std::vector<char> scc_reached_from(const PairGraph& g, const SccInfo& s,
                                          const std::vector<char>& seed) {
    std::vector<char> f = seed;
    for (i64 i = g.np - 1; i >= 0; --i) {
        std::int32_t v = s.order[(size_t)i];
        if (!f[(size_t)s.comp[(size_t)v]]) continue;
        for (i64 e = g.offs[(size_t)v]; e < g.offs[(size_t)v + 1]; ++e)
            f[(size_t)s.comp[(size_t)g.adj[(size_t)e]]] = 1;
    }
    return f;
}

struct BfsTree {
    std::vector<std::int32_t> parent;  // -2 unreached, -1 root
    std::vector<std::int32_t> visit;   // visit order
};

inline BfsTree bfs_forward(const PairGraph& g, const std::vector<i64>& seeds) {
    BfsTree t;
    t.parent.assign((size_t)g.np, -2);
    t.visit.reserve(seeds.size());
    for (i64 s : seeds)
        if (t.parent[(size_t)s] == -2) {
            t.parent[(size_t)s] = -1;
            t.visit.push_back((std::int32_t)s);
        }
    for (size_t head = 0; head < t.visit.size(); ++head) {
        i64 v = t.visit[head];
        for (i64 e = g.offs[(size_t)v]; e < g.offs[(size_t)v + 1]; ++e) {
            i64 w = g.adj[(size_t)e];
            if (t.parent[(size_t)w] == -2) {
                t.parent[(size_t)w] = (std::int32_t)v;
                t.visit.push_back((std::int32_t)w);
            }
        }
    }
    return t;
}

inline std::vector<i64> bfs_path(const BfsTree& t, i64 target) {
    std::vector<i64> path{target};
    while (t.parent[(size_t)path.back()] != -1) path.push_back(t.parent[(size_t)path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// shortest cycle through v0 inside its own strong component
inline std::vector<i64> cycle_through(const PairGraph& g, const SccInfo& s, i64 v0) {
    std::int32_t c = s.comp[(size_t)v0];
    std::vector<std::int32_t> parent((size_t)g.np, -2);
    std::vector<std::int32_t> q;
    for (i64 e = g.offs[(size_t)v0]; e < g.offs[(size_t)v0 + 1]; ++e) {
        i64 w = g.adj[(size_t)e];
        if (w == v0) return {v0, v0};
        if (s.comp[(size_t)w] == c && parent[(size_t)w] == -2) {
            parent[(size_t)w] = (std::int32_t)v0;
            q.push_back((std::int32_t)w);
        }
    }
    for (size_t head = 0; head < q.size(); ++head) {
        i64 v = q[head];
        for (i64 e = g.offs[(size_t)v]; e < g.offs[(size_t)v + 1]; ++e) {
            i64 w = g.adj[(size_t)e];
            if (w == v0) {
                std::vector<i64> path{v};
                while (path.back() != v0) path.push_back(parent[(size_t)path.back()]);
                std::reverse(path.begin(), path.end());
                path.push_back(v0);
                return path;
            }
            if (s.comp[(size_t)w] == c && parent[(size_t)w] == -2) {
                parent[(size_t)w] = (std::int32_t)v;
                q.push_back((std::int32_t)w);
            }
        }
    }
    throw std::logic_error("nontrivial component without a cycle");
}

// appended symbols along a pair path, for one side of the pair
inline std::vector<Sym> spell_path(const std::vector<i64>& path, i64 nv, i64 alpha, int side) {
    std::vector<Sym> out;
    for (size_t i = 1; i < path.size(); ++i) {
        i64 v = side == 0 ? path[i] / nv : path[i] % nv;
        out.push_back((Sym)(v % alpha));
    }
    return out;
}

struct InjectivityResult {
    bool injective = false;
    std::optional<PairWitness> witness;
};

struct PreinjectivityResult {
    bool preinjective = false;
    std::optional<DiamondWitness> witness;
};

inline InjectivityResult decide_injective(const WindowedRule& wr) {
    i64 alpha = wr.a.size();
    if (wr.width == 1) {
        std::map<Sym, Sym> seen;
        for (i64 x = 0; x < alpha; ++x) {
            auto [it, fresh] = seen.try_emplace(wr.table[(size_t)x], (Sym)x);
            if (!fresh) {
                PairWitness pw{EpWord{{it->second}, {}, {it->second}},
                               EpWord{{(Sym)x}, {}, {(Sym)x}}};
                if (!verify_pair_witness(wr, pw))
                    throw std::logic_error("pair witness failed verification");
                return {false, std::move(pw)};
            }
        }
        return {true, std::nullopt};
    }
    PairGraph g = make_pair_graph(wr);
    SccInfo s = tarjan_scc(g);
    std::vector<char> up = scc_reaches(g, s, s.nontrivial);
    std::vector<char> down = scc_reached_from(g, s, s.nontrivial);
    i64 target = -1;
    for (i64 v = 0; v < g.np && target < 0; ++v) {
        if (v / g.nv == v % g.nv) continue;
        if (up[(size_t)s.comp[(size_t)v]] && down[(size_t)s.comp[(size_t)v]]) target = v;
    }
    if (target < 0) return {true, std::nullopt};
    std::vector<i64> seeds;
    for (i64 v = 0; v < g.np; ++v)
        if (s.nontrivial[(size_t)s.comp[(size_t)v]]) seeds.push_back(v);
    BfsTree down_tree = bfs_forward(g, seeds);
    std::vector<i64> to_target = bfs_path(down_tree, target);
    i64 u_star = to_target.front();
    BfsTree fwd = bfs_forward(g, {target});
    i64 v_star = -1;
    for (std::int32_t v : fwd.visit)
        if (s.nontrivial[(size_t)s.comp[(size_t)v]]) {
            v_star = v;
            break;
        }
    std::vector<i64> from_target = bfs_path(fwd, v_star);
    std::vector<i64> mid = to_target;
    mid.insert(mid.end(), from_target.begin() + 1, from_target.end());
    std::vector<i64> cyc1 = cycle_through(g, s, u_star);
    std::vector<i64> cyc2 = cycle_through(g, s, v_star);
    PairWitness pw{EpWord{spell_path(cyc1, g.nv, alpha, 0), spell_path(mid, g.nv, alpha, 0),
                          spell_path(cyc2, g.nv, alpha, 0)},
                   EpWord{spell_path(cyc1, g.nv, alpha, 1), spell_path(mid, g.nv, alpha, 1),
                          spell_path(cyc2, g.nv, alpha, 1)}};
    if (!verify_pair_witness(wr, pw)) throw std::logic_error("pair witness failed verification");
    return {false, std::move(pw)};
}

inline PreinjectivityResult decide_preinjective(const WindowedRule& wr) {
    i64 alpha = wr.a.size();
    if (wr.width == 1) {
        std::map<Sym, Sym> seen;
        for (i64 x = 0; x < alpha; ++x) {
            auto [it, fresh] = seen.try_emplace(wr.table[(size_t)x], (Sym)x);
            if (!fresh) {
                DiamondWitness dw{EpWord{{0}, {it->second}, {0}}, EpWord{{0}, {(Sym)x}, {0}}, 0, 0};
                if (!verify_diamond_witness(wr, dw))
                    throw std::logic_error("diamond witness failed verification");
                return {false, std::move(dw)};
            }
        }
        return {true, std::nullopt};
    }
    PairGraph g = make_pair_graph(wr);
    SccInfo s = tarjan_scc(g);
    std::vector<char> diag_comp((size_t)s.ncomp, 0);
    std::vector<i64> diag;
    for (i64 u = 0; u < g.nv; ++u) {
        diag.push_back(u * g.nv + u);
        diag_comp[(size_t)s.comp[(size_t)(u * g.nv + u)]] = 1;
    }
    std::vector<char> to_diag = scc_reaches(g, s, diag_comp);
    std::vector<char> from_diag = scc_reached_from(g, s, diag_comp);
    i64 target = -1;
    for (i64 v = 0; v < g.np && target < 0; ++v) {
        if (v / g.nv == v % g.nv) continue;
        if (to_diag[(size_t)s.comp[(size_t)v]] && from_diag[(size_t)s.comp[(size_t)v]]) target = v;
    }
    if (target < 0) return {true, std::nullopt};
    BfsTree down_tree = bfs_forward(g, diag);
    std::vector<i64> to_target = bfs_path(down_tree, target);
    BfsTree fwd = bfs_forward(g, {target});
    i64 d1 = -1;
    for (std::int32_t v : fwd.visit)
        if (v / g.nv == v % g.nv) {
            d1 = v;
            break;
        }
    std::vector<i64> from_target = bfs_path(fwd, d1);
    std::vector<i64> mid = to_target;
    mid.insert(mid.end(), from_target.begin() + 1, from_target.end());
    i64 u0 = to_target.front() / g.nv;
    i64 u1 = d1 / g.nv;
    std::vector<Sym> left = tuple_decode(u0, wr.width - 1, alpha);
    std::vector<Sym> right = tuple_decode(u1, wr.width - 1, alpha);
    DiamondWitness dw{EpWord{left, spell_path(mid, g.nv, alpha, 0), right},
                      EpWord{left, spell_path(mid, g.nv, alpha, 1), right}, 0,
                      (i64)mid.size() - 2};
    if (!verify_diamond_witness(wr, dw))
        throw std::logic_error("diamond witness failed verification");
    return {false, std::move(dw)};
}

// ---- surjectivity --------------------------------------------------------

struct SurjectivityResult {
    bool surjective = false;
    std::optional<std::vector<Sym>> orphan;
    bool via_preinjectivity = false;  // decided through the Garden of Eden equivalence
};

inline bool verify_orphan(const WindowedRule& wr, const std::vector<Sym>& word,
                          i64 budget = (i64)1 << 24) {
    i64 alpha = wr.a.size();
    i64 k = (i64)word.size();
    if (k == 0) return false;
    i64 total = 0;
    bool exhaustive = true;
    try {
        total = checked_pow(alpha, k + wr.width - 1);
    } catch (const std::overflow_error&) {
        exhaustive = false;
    }
    if (exhaustive && total <= budget) {
        // no input block of the right length may produce the word
        for (i64 code = 0; code < total; ++code) {
            std::vector<Sym> blk = tuple_decode(code, (int)(k + wr.width - 1), alpha);
            bool match = true;
            for (i64 g = 0; g < k && match; ++g) {
                i64 idx = 0;
                for (int j = 0; j < wr.width; ++j) idx = idx * alpha + blk[(size_t)(g + j)];
                match = wr.table[(size_t)idx] == word[(size_t)g];
            }
            if (match) return false;
        }
        return true;
    }
    // set-valued replay over de Bruijn vertices
    i64 nv = checked_pow(alpha, wr.width - 1);
    std::vector<char> cur((size_t)nv, 1), nxt((size_t)nv);
    for (i64 g = 0; g < k; ++g) {
        std::fill(nxt.begin(), nxt.end(), 0);
        bool any = false;
        for (i64 u = 0; u < nv; ++u) {
            if (!cur[(size_t)u]) continue;
            for (i64 a = 0; a < alpha; ++a)
                if (wr.table[(size_t)(u * alpha + a)] == word[(size_t)g]) {
                    nxt[(size_t)((u * alpha + a) % nv)] = 1;
                    any = true;
                }
        }
        cur.swap(nxt);
        if (!any) return true;
    }
    return false;
}

inline SurjectivityResult decide_surjective(const WindowedRule& wr,
                                            i64 subset_budget = kSubsetVertexBudget) {
    require(subset_budget >= 1 && subset_budget <= 63, "subset budget must fit a word");
    i64 alpha = wr.a.size(), beta = wr.b.size();
    i64 nv = checked_pow(alpha, wr.width - 1);
    if (nv > subset_budget) {
        PreinjectivityResult pre = decide_preinjective(wr);
        return {pre.preinjective, std::nullopt, true};
    }
    std::vector<std::uint64_t> step((size_t)(nv * beta), 0);
    for (i64 u = 0; u < nv; ++u)
        for (i64 a = 0; a < alpha; ++a) {
            i64 e = u * alpha + a;
            step[(size_t)(u * beta + wr.table[(size_t)e])] |= 1ULL << (std::uint64_t)(e % nv);
        }
    std::uint64_t full = nv == 64 ? ~0ULL : (1ULL << (std::uint64_t)nv) - 1;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, Sym>> parent;
    parent.emplace(full, std::make_pair(full, (Sym)-1));
    std::vector<std::uint64_t> queue{full};
    for (size_t head = 0; head < queue.size(); ++head) {
        std::uint64_t m = queue[head];
        for (Sym b = 0; b < beta; ++b) {
            std::uint64_t nm = 0;
            for (std::uint64_t rest = m; rest;) {
                int u = __builtin_ctzll(rest);
                rest &= rest - 1;
                nm |= step[(size_t)((i64)u * beta + b)];
            }
            if (parent.emplace(nm, std::make_pair(m, b)).second) {
                if (nm == 0) {
                    std::vector<Sym> orphan;
                    std::uint64_t at = 0;
                    while (at != full || orphan.empty()) {
                        auto& pr = parent.at(at);
                        if (pr.second == (Sym)-1) break;
                        orphan.push_back(pr.second);
                        at = pr.first;
                    }
                    std::reverse(orphan.begin(), orphan.end());
                    if (!verify_orphan(wr, orphan))
                        throw std::logic_error("orphan failed verification");
                    return {false, std::move(orphan), false};
                }
                queue.push_back(nm);
            }
        }
    }
    return {true, std::nullopt, false};
}

// ---- periodic preimages ----------------------------------------------------

struct PreimageResult {
    bool exists = false;
    std::optional<PeriodicConfig> preimage;
};

// Any configuration mapped onto a period-n target walks the product of the
// de Bruijn graph with the n phases; a preimage exists exactly when that
// product has a cycle along matching output labels.
inline PreimageResult preimage_periodic(const CellularAutomaton& ca, const PeriodicConfig& y,
                                        i64 budget = kEnumBudget) {
    require(ca.dim == 1, "periodic preimages need a one-dimensional automaton");
    require(ca.target == y.alphabet, "target alphabet mismatch");
    require(y.periods.lat.dim == 1 && y.periods.lat.full_rank(), "target must be periodic");
    WindowedRule wr = windowed(ca, budget);
    i64 alpha = wr.a.size();
    i64 n = y.periods.size;
    std::vector<Sym> want((size_t)n);
    for (i64 i = 0; i < n; ++i) want[(size_t)i] = y.at({i - wr.lo});
    if (wr.width == 1) {
        std::vector<Sym> vals((size_t)n);
        for (i64 i = 0; i < n; ++i) {
            Sym pick = -1;
            for (i64 a = 0; a < alpha && pick < 0; ++a)
                if (wr.table[(size_t)a] == want[(size_t)i]) pick = (Sym)a;
            if (pick < 0) return {false, std::nullopt};
            vals[(size_t)i] = pick;
        }
        PeriodicConfig x = make_periodic_config(wr.a, y.periods, std::move(vals));
        if (!config_equal(apply(ca, x), y)) throw std::logic_error("preimage failed verification");
        return {true, std::move(x)};
    }
    i64 nv = checked_pow(alpha, wr.width - 1);
    i64 nstates = checked_mul(nv, n);
    if (nstates > budget) throw budget_error("product graph exceeds budget");
    // iterative coloring search for a cycle along allowed edges
    std::vector<char> color((size_t)nstates, 0);
    std::vector<i64> path, next_sym;
    for (i64 root = 0; root < nstates; ++root) {
        if (color[(size_t)root]) continue;
        path = {root};
        next_sym = {0};
        color[(size_t)root] = 1;
        while (!path.empty()) {
            i64 st = path.back();
            i64 u = st / n, i = st % n;
            bool advanced = false;
            while (next_sym.back() < alpha) {
                i64 a = next_sym.back()++;
                if (wr.table[(size_t)(u * alpha + a)] != want[(size_t)i]) continue;
                i64 nx = ((u * alpha + a) % nv) * n + (i + 1) % n;
                if (color[(size_t)nx] == 1) {
                    // cycle found: collect the tail of the path from nx
                    size_t from = 0;
                    while (path[from] != nx) ++from;
                    std::vector<i64> cyc(path.begin() + (long)from, path.end());
                    i64 len = (i64)cyc.size();
                    std::vector<Sym> vals((size_t)len);
                    i64 phase0 = cyc.front() % n;
                    for (i64 t = 0; t < len; ++t) {
                        i64 nxt_state = cyc[(size_t)((t + 1) % (i64)len)];
                        Sym ap = (Sym)((nxt_state / n) % alpha);
                        vals[(size_t)pos_mod(phase0 + t + wr.width - 1, len)] = ap;
                    }
                    CosetTable ct = make_coset_table(make_lattice(1, {{len}}));
                    PeriodicConfig x = make_periodic_config(wr.a, ct, std::move(vals));
                    PeriodicConfig out = apply(ca, x);
                    for (i64 gpos = 0; gpos < len; ++gpos)
                        if (out.at({gpos}) != y.at({gpos}))
                            throw std::logic_error("preimage failed verification");
                    return {true, std::move(x)};
                }
                if (color[(size_t)nx] == 0) {
                    color[(size_t)nx] = 1;
                    path.push_back(nx);
                    next_sym.push_back(0);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                color[(size_t)path.back()] = 2;
                path.pop_back();
                next_sym.pop_back();
            }
        }
    }
    return {false, std::nullopt};
}

// ---- inverse synthesis -----------------------------------------------------

enum class InverseStatus { Found, NotBijective, RadiusCapped, Budget };

struct InverseResult {
    InverseStatus status = InverseStatus::Budget;
    std::optional<CellularAutomaton> inverse;
    i64 radius = -1;
    std::string note;
};

inline bool is_identity_ca(const CellularAutomaton& ca, i64 budget = kEnumBudget) {
    if (!(ca.source == ca.target)) return false;
    if (ca.source.size() == 1) return true;
    CellularAutomaton m = minimize(ca, budget);
    if (m.memory.size() != 1) return false;
    for (i64 c : m.memory[0])
        if (c != 0) return false;
    LocalRule low = lower_to_table(m.rule, budget);
    const auto& tb = std::get<TableBody>(low.body);
    for (i64 s = 0; s < ca.source.size(); ++s)
        if (tb.entries[(size_t)s] != (Sym)s) return false;
    return true;
}

namespace detail {

// least solution of a*x = rhs over the field, free variables set to zero
inline std::optional<std::vector<std::vector<Sym>>> field_solve(
    const Gf& gf, std::vector<std::vector<Sym>> a, std::vector<std::vector<Sym>> rhs) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    size_t nrhs = rhs.empty() ? 0 : rhs[0].size();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        Sym inv = gf.inv(a[r][c]);
        for (size_t j = c; j < cols; ++j) a[r][j] = gf.mul(a[r][j], inv);
        for (size_t j = 0; j < nrhs; ++j) rhs[r][j] = gf.mul(rhs[r][j], inv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Sym f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = gf.sub(a[i][j], gf.mul(f, a[r][j]));
            for (size_t j = 0; j < nrhs; ++j) rhs[i][j] = gf.sub(rhs[i][j], gf.mul(f, rhs[r][j]));
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        for (size_t j = 0; j < nrhs; ++j)
            if (rhs[i][j] != 0) return std::nullopt;
    std::vector<std::vector<Sym>> x(cols, std::vector<Sym>(nrhs, 0));
    for (size_t i = 0; i < pivot_col.size(); ++i)
        for (size_t j = 0; j < nrhs; ++j) x[pivot_col[i]][j] = rhs[i][j];
    return x;
}

}  // namespace detail

inline InverseResult synthesize_inverse(const CellularAutomaton& ca, i64 max_radius = -1,
                                        i64 budget = kEnumBudget) {
    WindowedRule wr = windowed(ca, budget);
    InjectivityResult inj = decide_injective(wr);
    if (!inj.injective) return {InverseStatus::NotBijective, std::nullopt, -1, "not injective"};
    SurjectivityResult sur = decide_surjective(wr);
    if (!sur.surjective) return {InverseStatus::NotBijective, std::nullopt, -1, "not surjective"};
    i64 alpha = wr.a.size(), beta = wr.b.size();
    if (max_radius < 0) {
        try {
            max_radius = checked_pow(alpha, 2 * (wr.width - 1));
        } catch (const std::overflow_error&) {
            max_radius = kEnumBudget;
        }
        if (max_radius > kEnumBudget) max_radius = kEnumBudget;
        if (max_radius < 4) max_radius = 4;
    }
    i64 tmin = wr.lo, tmax = wr.hi;
    i64 r0 = std::max<i64>({0, tmin, -tmax});
    if (ca.rule.kind() == RuleKind::Linear) {
        const auto& lb = std::get<LinearBody>(ca.rule.body);
        ScalarRing ring = ca.source.scalars();
        i64 ka = ca.source.rank, kb = ca.target.rank;
        std::map<i64, const std::vector<std::vector<Sym>>*> coeff;
        for (size_t j = 0; j < ca.memory.size(); ++j)
            coeff[ca.memory[j][0]] = &lb.mats[j];
        for (i64 r = r0; r <= max_radius; ++r) {
            i64 gmin = tmin - r, gmax = tmax + r;
            i64 rows = (gmax - gmin + 1) * ka;
            i64 cols = (2 * r + 1) * kb;
            std::vector<std::vector<Sym>> sys((size_t)rows, std::vector<Sym>((size_t)cols, 0));
            for (i64 g = gmin; g <= gmax; ++g)
                for (i64 j = -r; j <= r; ++j) {
                    auto it = coeff.find(g - j);
                    if (it == coeff.end()) continue;
                    const auto& mt = *it->second;  // kb x ka
                    for (i64 m = 0; m < kb; ++m)
                        for (i64 c = 0; c < ka; ++c)
                            sys[(size_t)((g - gmin) * ka + c)][(size_t)((j + r) * kb + m)] =
                                mt[(size_t)m][(size_t)c];
                }
            std::vector<std::vector<Sym>> rhs((size_t)rows, std::vector<Sym>((size_t)ka, 0));
            for (i64 i = 0; i < ka; ++i) rhs[(size_t)((0 - gmin) * ka + i)][(size_t)i] = 1;
            std::vector<std::vector<Sym>> sol;
            bool ok = false;
            if (ring.field) {
                auto res = detail::field_solve(*ring.gf, sys, rhs);
                if (res) {
                    sol = std::move(*res);
                    ok = true;
                }
            } else {
                Mat a((size_t)rows, Vec((size_t)cols, 0));
                for (i64 i = 0; i < rows; ++i)
                    for (i64 j = 0; j < cols; ++j) a[(size_t)i][(size_t)j] = sys[(size_t)i][(size_t)j];
                sol.assign((size_t)cols, std::vector<Sym>((size_t)ka, 0));
                ok = true;
                for (i64 i = 0; i < ka && ok; ++i) {
                    Vec b((size_t)rows, 0);
                    for (i64 t = 0; t < rows; ++t) b[(size_t)t] = rhs[(size_t)t][(size_t)i];
                    auto res = solve_mod(a, b, ring.size);
                    if (!res) ok = false;
                    else
                        for (i64 c = 0; c < cols; ++c) sol[(size_t)c][(size_t)i] = (Sym)(*res)[(size_t)c];
                }
            }
            if (!ok) continue;
            std::vector<std::vector<std::vector<Sym>>> mats((size_t)(2 * r + 1));
            std::vector<GroupElement> memory;
            for (i64 j = -r; j <= r; ++j) {
                memory.push_back({j});
                auto& mj = mats[(size_t)(j + r)];
                mj.assign((size_t)ka, std::vector<Sym>((size_t)kb, 0));
                for (i64 i = 0; i < ka; ++i)
                    for (i64 m = 0; m < kb; ++m)
                        mj[(size_t)i][(size_t)m] = sol[(size_t)((j + r) * kb + m)][(size_t)i];
            }
            CellularAutomaton nu = minimize(make_ca(
                1, memory, make_linear_rule(ca.target, ca.source, (int)(2 * r + 1), mats)));
            try {
                if (is_identity_ca(compose(nu, ca, budget), budget) &&
                    is_identity_ca(compose(ca, nu, budget), budget))
                    return {InverseStatus::Found, std::move(nu), r, "linear route"};
            } catch (const budget_error&) {
                return {InverseStatus::Budget, std::nullopt, r, "certification exceeds budget"};
            }
        }
        return {InverseStatus::RadiusCapped, std::nullopt, max_radius, "radius cap reached"};
    }
    for (i64 r = r0; r <= max_radius; ++r) {
        i64 inputs = 0, outputs = 0;
        try {
            inputs = checked_pow(alpha, 2 * r + wr.width);
            outputs = checked_pow(beta, 2 * r + 1);
        } catch (const std::overflow_error&) {
            return {InverseStatus::Budget, std::nullopt, r, "enumeration exceeds budget"};
        }
        if (inputs > budget || outputs > budget)
            return {InverseStatus::Budget, std::nullopt, r, "enumeration exceeds budget"};
        std::vector<Sym> centre((size_t)outputs, -1);
        bool conflict = false;
        i64 blen = 2 * r + wr.width;
        for (i64 code = 0; code < inputs && !conflict; ++code) {
            std::vector<Sym> blk = tuple_decode(code, (int)blen, alpha);
            i64 word = 0;
            for (i64 g = -r; g <= r; ++g) {
                i64 idx = 0;
                for (int j = 0; j < wr.width; ++j) idx = idx * alpha + blk[(size_t)(g + r + j)];
                word = word * beta + wr.table[(size_t)idx];
            }
            Sym c = blk[(size_t)(r - wr.lo)];
            if (centre[(size_t)word] == -1) centre[(size_t)word] = c;
            else if (centre[(size_t)word] != c) conflict = true;
        }
        if (conflict) continue;
        for (Sym& c : centre)
            if (c == -1) throw std::logic_error("output word unrealized for a surjective rule");
        std::vector<GroupElement> memory;
        for (i64 j = -r; j <= r; ++j) memory.push_back({j});
        CellularAutomaton nu = minimize(
            make_ca(1, memory, make_table_rule(ca.target, ca.source, (int)(2 * r + 1), centre)),
            budget);
        try {
            if (is_identity_ca(compose(nu, ca, budget), budget) &&
                is_identity_ca(compose(ca, nu, budget), budget))
                return {InverseStatus::Found, std::move(nu), r, "table route"};
        } catch (const budget_error&) {
            return {InverseStatus::Budget, std::nullopt, r, "certification exceeds budget"};
        }
    }
    return {InverseStatus::RadiusCapped, std::nullopt, max_radius, "radius cap reached"};
}

// ---- carry tower -----------------------------------------------------------

struct TowerRow {
    i64 e = 0;
    i64 alphabet_size = 0;
    bool injective = false, surjective = false;
    std::vector<i64> inverse_memory;
    std::vector<Sym> inverse_coeffs;
    bool matches_series = false;
};

struct TowerReport {
    i64 p = 0;
    std::vector<TowerRow> rows;
    bool all_bijective = false;
    bool sizes_strictly_increasing = false;
    bool all_match_series = false;
};

// x(n) - p*x(n+1) over Z/p^e inverts by the truncated carry series
// y(n) + p*y(n+1) + ... + p^(e-1)*y(n+e-1); the report certifies each level.
inline TowerReport padic_tower_report(i64 p, i64 emax, i64 budget = kEnumBudget) {
    TowerReport rep;
    rep.p = p;
    rep.all_bijective = true;
    rep.all_match_series = true;
    for (i64 e = 1; e <= emax; ++e) {
        CellularAutomaton ca = padic_step_ca(p, e);
        WindowedRule wr = windowed(ca, budget);
        TowerRow row;
        row.e = e;
        row.alphabet_size = ca.source.size();
        row.injective = decide_injective(wr).injective;
        row.surjective = decide_surjective(wr).surjective;
        rep.all_bijective = rep.all_bijective && row.injective && row.surjective;
        InverseResult inv = synthesize_inverse(ca, -1, budget);
        if (inv.status == InverseStatus::Found) {
            const CellularAutomaton& nu = *inv.inverse;
            const auto& lb = std::get<LinearBody>(nu.rule.body);
            row.matches_series = (i64)nu.memory.size() == e;
            for (size_t j = 0; j < nu.memory.size(); ++j) {
                row.inverse_memory.push_back(nu.memory[j][0]);
                row.inverse_coeffs.push_back(lb.mats[j][0][0]);
                i64 k = nu.memory[j][0];
                row.matches_series = row.matches_series && k == (i64)j &&
                                     lb.mats[j][0][0] == (Sym)(checked_pow(p, k) % ca.source.size());
            }
        } else {
            row.matches_series = false;
            rep.all_bijective = false;
        }
        rep.all_match_series = rep.all_match_series && row.matches_series;
        rep.rows.push_back(std::move(row));
    }
    rep.sizes_strictly_increasing = true;
    for (size_t i = 1; i < rep.rows.size(); ++i)
        rep.sizes_strictly_increasing =
            rep.sizes_strictly_increasing &&
            rep.rows[i].alphabet_size > rep.rows[i - 1].alphabet_size;
    return rep;
}

// ---- full-family cross-check ------------------------------------------------

struct CrosscheckReport {
    i64 rules = 0;
    i64 surjective = 0, preinjective = 0;
    i64 disagreements = 0;
    i64 orphans_verified = 0, diamonds_verified = 0;
};

// Every rule of the family is run through both the subset construction and
// the pair graph; the Garden of Eden equivalence demands identical verdicts.
inline CrosscheckReport goe_crosscheck(i64 alpha_n, int width, i64 budget = kEnumBudget) {
    require(width >= 1, "width must be positive");
    require(checked_pow(alpha_n, width - 1) <= kSubsetVertexBudget,
            "family too large for the dual route");
    i64 entries = checked_pow(alpha_n, width);
    i64 family = checked_pow(alpha_n, entries);
    require(family <= budget, "rule family exceeds budget");
    Alphabet a = finite_alphabet(alpha_n);
    CrosscheckReport rep;
    for (i64 code = 0; code < family; ++code) {
        WindowedRule wr{a, a, 0, width - 1, width, tuple_decode(code, (int)entries, alpha_n)};
        SurjectivityResult sur = decide_surjective(wr);
        PreinjectivityResult pre = decide_preinjective(wr);
        ++rep.rules;
        if (sur.surjective) ++rep.surjective;
        if (pre.preinjective) ++rep.preinjective;
        if (sur.surjective != pre.preinjective) ++rep.disagreements;
        if (sur.orphan && verify_orphan(wr, *sur.orphan)) ++rep.orphans_verified;
        if (pre.witness && verify_diamond_witness(wr, *pre.witness)) ++rep.diamonds_verified;
    }
    return rep;
}

}  // namespace latca
