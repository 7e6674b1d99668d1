#pragma once

// JSON documents for every value the command line exchanges: lattices,
// alphabets, rules, automata, periodic configurations, decision witnesses
// and projective sequences. Serialization is canonical (sorted keys,
// compact, integers only) so documents round-trip bit for bit.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "projlim.hpp"
#include "quotient.hpp"

namespace latca {

using json = nlohmann::json;

// ---- lattice -----------------------------------------------------------------

inline json lattice_doc(const Lattice& lat) {
    json basis = json::array();
    for (const auto& c : lat.basis) basis.push_back(c);
    return json{{"basis", basis}, {"dim", lat.dim}};
}

inline Lattice lattice_from_doc(const json& j) {
    int dim = j.at("dim").get<int>();
    auto gens = j.at("basis").get<std::vector<GroupElement>>();
    return make_lattice(dim, gens);
}

// ---- alphabet ----------------------------------------------------------------

inline json alphabet_doc(const Alphabet& a) {
    switch (a.kind) {
        case AlphabetKind::Finite: return json{{"kind", "finite"}, {"size", a.n}};
        case AlphabetKind::Vector:
            return json{{"dim", a.rank}, {"kind", "vector"}, {"q", checked_pow(a.p, a.e)}};
        case AlphabetKind::Module:
            return json{{"e", a.e}, {"kind", "module"}, {"p", a.p}, {"rank", a.rank}};
    }
    throw std::logic_error("unreachable alphabet kind");
}

inline Alphabet alphabet_from_doc(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") return finite_alphabet(j.at("size").get<i64>());
    if (kind == "vector") {
        i64 q = j.at("q").get<i64>();
        require(q >= 2, "field size must be at least 2");
        i64 p = 2;
        while (q % p != 0) ++p;
        i64 e = 0, t = q;
        while (t % p == 0) { t /= p; ++e; }
        require(t == 1, "field size must be a prime power");
        return vector_alphabet(p, e, j.at("dim").get<i64>());
    }
    if (kind == "module")
        return module_alphabet(j.at("p").get<i64>(), j.at("e").get<i64>(),
                               j.at("rank").get<i64>());
    throw std::invalid_argument("unknown alphabet kind: " + kind);
}

// ---- rule --------------------------------------------------------------------

inline json rule_doc(const LocalRule& rule) {
    switch (rule.kind()) {
        case RuleKind::Table:
            return json{{"entries", std::get<TableBody>(rule.body).entries}, {"kind", "table"}};
        case RuleKind::Linear:
            return json{{"kind", "linear"}, {"matrices", std::get<LinearBody>(rule.body).mats}};
        case RuleKind::Poly: {
            json coords = json::array();
            for (const auto& poly : std::get<PolyBody>(rule.body).coords) {
                json terms = json::array();
                for (const auto& term : poly)
                    terms.push_back(json{{"coeff", term.coeff}, {"exps", term.exps}});
                coords.push_back(std::move(terms));
            }
            return json{{"coords", coords}, {"kind", "poly"}};
        }
    }
    throw std::logic_error("unreachable rule kind");
}

inline LocalRule rule_from_doc(const json& j, const Alphabet& source, const Alphabet& target,
                               int arity) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "table")
        return make_table_rule(source, target, arity,
                               j.at("entries").get<std::vector<Sym>>());
    if (kind == "linear")
        return make_linear_rule(
            source, target, arity,
            j.at("matrices").get<std::vector<std::vector<std::vector<Sym>>>>());
    if (kind == "poly") {
        std::vector<std::vector<PolyTerm>> coords;
        for (const auto& poly : j.at("coords")) {
            std::vector<PolyTerm> terms;
            for (const auto& t : poly)
                terms.push_back(PolyTerm{t.at("coeff").get<Sym>(),
                                         t.at("exps").get<std::vector<int>>()});
            coords.push_back(std::move(terms));
        }
        return make_poly_rule(source, target, arity, std::move(coords));
    }
    throw std::invalid_argument("unknown rule kind: " + kind);
}

// ---- cellular automaton ------------------------------------------------------

inline json ca_doc(const CellularAutomaton& ca) {
    return json{{"dim", ca.dim},
                {"memory", ca.memory},
                {"rule", rule_doc(ca.rule)},
                {"source", alphabet_doc(ca.source)},
                {"target", alphabet_doc(ca.target)}};
}

inline CellularAutomaton ca_from_doc(const json& j) {
    int dim = j.at("dim").get<int>();
    Alphabet source = alphabet_from_doc(j.at("source"));
    Alphabet target = alphabet_from_doc(j.at("target"));
    auto memory = j.at("memory").get<std::vector<GroupElement>>();
    LocalRule rule = rule_from_doc(j.at("rule"), source, target, (int)memory.size());
    return make_ca(dim, std::move(memory), std::move(rule));
}

// ---- periodic configuration ----------------------------------------------------

inline json config_doc(const PeriodicConfig& x) {
    return json{{"alphabet", alphabet_doc(x.alphabet)},
                {"lattice", lattice_doc(x.periods.lat)},
                {"values", x.values}};
}

inline PeriodicConfig config_from_doc(const json& j, i64 budget = kEnumBudget) {
    Alphabet a = alphabet_from_doc(j.at("alphabet"));
    Lattice lat = lattice_from_doc(j.at("lattice"));
    require(lat.full_rank(), "period lattice must have full rank");
    CosetTable t = make_coset_table(lat, budget);
    return make_periodic_config(a, t, j.at("values").get<std::vector<Sym>>());
}

// ---- witnesses ---------------------------------------------------------------

inline json epword_doc(const EpWord& w) {
    return json{{"left", w.left}, {"mid", w.mid}, {"right", w.right}};
}

inline EpWord epword_from_doc(const json& j) {
    EpWord w{j.at("left").get<std::vector<Sym>>(), j.at("mid").get<std::vector<Sym>>(),
             j.at("right").get<std::vector<Sym>>()};
    require(!w.left.empty() && !w.right.empty(), "periodic tails must be nonempty");
    return w;
}

inline json witness_orphan_doc(const std::vector<Sym>& word) {
    return json{{"kind", "orphan"}, {"word", word}};
}

inline json witness_pair_doc(const PairWitness& pw) {
    return json{{"first", epword_doc(pw.x)}, {"kind", "pair"}, {"second", epword_doc(pw.y)}};
}

inline json witness_diamond_doc(const DiamondWitness& dw) {
    return json{{"kind", "diamond"},
                {"left", epword_doc(dw.x)},
                {"right", epword_doc(dw.y)},
                {"window", json::array({dw.win_lo, dw.win_hi})}};
}

inline json witness_inverse_doc(const CellularAutomaton& inv) {
    return json{{"ca", ca_doc(inv)}, {"kind", "inverse"}};
}

inline std::vector<Sym> orphan_from_doc(const json& j) {
    require(j.at("kind").get<std::string>() == "orphan", "expected an orphan witness");
    return j.at("word").get<std::vector<Sym>>();
}

inline PairWitness pair_witness_from_doc(const json& j) {
    require(j.at("kind").get<std::string>() == "pair", "expected a pair witness");
    return PairWitness{epword_from_doc(j.at("first")), epword_from_doc(j.at("second"))};
}

inline DiamondWitness diamond_witness_from_doc(const json& j) {
    require(j.at("kind").get<std::string>() == "diamond", "expected a diamond witness");
    const auto& win = j.at("window");
    require(win.is_array() && win.size() == 2, "window must be a pair");
    return DiamondWitness{epword_from_doc(j.at("left")), epword_from_doc(j.at("right")),
                          win[0].get<i64>(), win[1].get<i64>()};
}

// ---- projective sequence -------------------------------------------------------

inline json sequence_doc(const ProjectiveSequence& s) {
    return json{{"sets", s.sizes}, {"steps", s.steps}};
}

inline ProjectiveSequence sequence_from_doc(const json& j) {
    return make_projective_sequence(j.at("sets").get<std::vector<i64>>(),
                                    j.at("steps").get<std::vector<std::vector<i64>>>());
}

// ---- files -------------------------------------------------------------------

inline std::string dump_doc(const json& j) { return j.dump() + "\n"; }

inline json read_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline void write_doc(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << dump_doc(j);
}

}  // namespace latca
