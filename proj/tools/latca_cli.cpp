// Batch front door: parse automaton and configuration documents, run the
// library operations, emit reports and traces. Exit codes: 0 success or
// property holds, 1 property-decision "no", 2 input error, 3 budget or
// inconclusive.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "latca/latca.hpp"

namespace {

using namespace latca;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Options {
    std::string ca_path, inner_path, config_path, lattice_path, out_path;
    std::string property, format = "text";
    i64 steps = 1;
    i64 budget = kEnumBudget;
    i64 horizon = 0;
    i64 max_radius = -1;
    i64 max_index = 6;
    i64 p = 2;
    i64 max_e = 5;
    i64 alphabet = 2;
    i64 width = 3;
    i64 seed = 1;
};

void emit(const Options& opt, const json& doc) {
    std::cout << dump_doc(doc);
    if (!opt.out_path.empty()) write_doc(opt.out_path, doc);
}

void emit_ca(const Options& opt, const CellularAutomaton& ca) { emit(opt, ca_doc(ca)); }

std::string join_row(const std::vector<Sym>& row) {
    std::string s;
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(row[i]);
    }
    return s;
}

int run_simulate(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    PeriodicConfig x = config_from_doc(read_doc(opt.config_path), opt.budget);
    require(opt.steps >= 0, "steps must be nonnegative");
    json trace = json::array();
    for (i64 t = 0; t < opt.steps; ++t) {
        x = apply(ca, x);
        if (opt.format == "text")
            std::cout << join_row(x.values) << "\n";
        else
            trace.push_back(x.values);
    }
    if (opt.format == "doc") emit(opt, json{{"final", config_doc(x)}, {"trace", trace}});
    else if (!opt.out_path.empty()) write_doc(opt.out_path, config_doc(x));
    return kExitYes;
}

int run_compose(const Options& opt) {
    CellularAutomaton outer = ca_from_doc(read_doc(opt.ca_path));
    CellularAutomaton inner = ca_from_doc(read_doc(opt.inner_path));
    emit_ca(opt, compose(outer, inner, opt.budget));
    return kExitYes;
}

int run_minimize(const Options& opt) {
    emit_ca(opt, minimize(ca_from_doc(read_doc(opt.ca_path)), opt.budget));
    return kExitYes;
}

int run_restrict(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    Lattice h = lattice_from_doc(read_doc(opt.lattice_path));
    emit_ca(opt, restrict_to(ca, h));
    return kExitYes;
}

int run_induce(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    Lattice h = lattice_from_doc(read_doc(opt.lattice_path));
    emit_ca(opt, induce_from(ca, h));
    return kExitYes;
}

int run_quotient(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    Lattice h = lattice_from_doc(read_doc(opt.lattice_path));
    QuotientMap q = make_quotient(ca, h);
    i64 points = quotient_points(q, opt.budget);
    bool inj = quotient_injective(q, opt.budget);
    bool surj = quotient_surjective(q, opt.budget);
    bool comm = quotient_commutes(q, 64, (std::uint64_t)opt.seed);
    if (opt.format == "doc") {
        emit(opt, json{{"commutes", comm},
                       {"injective", inj},
                       {"lattice", lattice_doc(h)},
                       {"points", points},
                       {"surjective", surj}});
    } else {
        std::cout << "points: " << points << "\n"
                  << "injective: " << (inj ? "yes" : "no") << "\n"
                  << "surjective: " << (surj ? "yes" : "no") << "\n"
                  << "commutes: " << (comm ? "yes" : "no") << "\n";
    }
    return comm ? kExitYes : kExitNo;
}

json scan_row_doc(const ScanRow& row) {
    json j{{"commutes", row.commutes},
           {"index", row.index},
           {"lattice", lattice_doc(row.lat)},
           {"skipped", row.skipped}};
    if (row.injective.has_value()) j["injective"] = *row.injective;
    if (row.surjective.has_value()) j["surjective"] = *row.surjective;
    if (!row.note.empty()) j["note"] = row.note;
    return j;
}

int run_scan(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    ScanReport rep = surjunctivity_scan(ca, opt.max_index, opt.budget);
    if (opt.format == "doc") {
        json rows = json::array();
        for (const auto& row : rep.rows) rows.push_back(scan_row_doc(row));
        emit(opt, json{{"checked", rep.checked},
                       {"rows", rows},
                       {"skipped", rep.skipped},
                       {"violations", rep.violations}});
    } else {
        for (const auto& row : rep.rows) {
            std::cout << "index " << row.index;
            if (row.skipped) {
                std::cout << " skipped";
            } else {
                std::cout << " injective=" << (*row.injective ? "yes" : "no")
                          << " surjective=" << (*row.surjective ? "yes" : "no")
                          << " commutes=" << (row.commutes ? "yes" : "no");
            }
            if (!row.note.empty()) std::cout << " (" << row.note << ")";
            std::cout << "\n";
        }
        std::cout << "checked: " << rep.checked << " skipped: " << rep.skipped
                  << " violations: " << rep.violations << "\n";
    }
    return rep.violations == 0 ? kExitYes : kExitNo;
}

int run_check(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    WindowedRule wr = windowed(ca, opt.budget);
    auto answer = [&](const std::string& name, bool yes, const json& witness) {
        if (opt.format == "doc") {
            json j{{"answer", yes}, {"property", name}};
            if (!witness.is_null()) j["witness"] = witness;
            emit(opt, j);
        } else {
            std::cout << name << ": " << (yes ? "yes" : "no") << "\n";
            if (!witness.is_null()) std::cout << dump_doc(witness);
        }
        return yes ? kExitYes : kExitNo;
    };
    if (opt.property == "injective") {
        auto r = decide_injective(wr);
        return answer("injective", r.injective,
                      r.witness ? witness_pair_doc(*r.witness) : json());
    }
    if (opt.property == "surjective") {
        auto r = decide_surjective(wr);
        return answer("surjective", r.surjective,
                      r.orphan ? witness_orphan_doc(*r.orphan) : json());
    }
    if (opt.property == "preinjective") {
        auto r = decide_preinjective(wr);
        return answer("preinjective", r.preinjective,
                      r.witness ? witness_diamond_doc(*r.witness) : json());
    }
    if (opt.property == "bijective") {
        auto inj = decide_injective(wr);
        if (!inj.injective)
            return answer("bijective", false,
                          inj.witness ? witness_pair_doc(*inj.witness) : json());
        auto surj = decide_surjective(wr);
        if (!surj.surjective)
            return answer("bijective", false,
                          surj.orphan ? witness_orphan_doc(*surj.orphan) : json());
        InverseResult inv = synthesize_inverse(ca, opt.max_radius, opt.budget);
        if (inv.status != InverseStatus::Found) {
            std::cout << "bijective: yes (inverse synthesis " << inv.note << ")\n";
            return kExitBudget;
        }
        return answer("bijective", true, witness_inverse_doc(*inv.inverse));
    }
    throw std::invalid_argument("unknown property: " + opt.property);
}

int run_invert(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    InverseResult r = synthesize_inverse(ca, opt.max_radius, opt.budget);
    switch (r.status) {
        case InverseStatus::Found: emit_ca(opt, *r.inverse); return kExitYes;
        case InverseStatus::NotBijective:
            std::cout << "not bijective: " << r.note << "\n";
            return kExitNo;
        case InverseStatus::RadiusCapped:
        case InverseStatus::Budget:
            std::cout << "inconclusive: " << r.note << "\n";
            return kExitBudget;
    }
    return kExitInput;
}

int run_tower(const Options& opt) {
    TowerReport rep = padic_tower_report(opt.p, opt.max_e, opt.budget);
    if (opt.format == "doc") {
        json rows = json::array();
        for (const auto& row : rep.rows)
            rows.push_back(json{{"alphabet", row.alphabet_size},
                                {"coeffs", row.inverse_coeffs},
                                {"e", row.e},
                                {"injective", row.injective},
                                {"memory", row.inverse_memory},
                                {"series", row.matches_series},
                                {"surjective", row.surjective}});
        emit(opt, json{{"bijective", rep.all_bijective},
                       {"increasing", rep.sizes_strictly_increasing},
                       {"p", rep.p},
                       {"rows", rows},
                       {"series", rep.all_match_series}});
    } else {
        for (const auto& row : rep.rows) {
            std::cout << "e=" << row.e << " alphabet=" << row.alphabet_size
                      << " bijective=" << (row.injective && row.surjective ? "yes" : "no")
                      << " inverse_memory=" << row.inverse_memory.size() << " coeffs=[";
            for (size_t i = 0; i < row.inverse_coeffs.size(); ++i)
                std::cout << (i ? " " : "") << row.inverse_coeffs[i];
            std::cout << "] series=" << (row.matches_series ? "yes" : "no") << "\n";
        }
    }
    bool ok = rep.all_bijective && rep.sizes_strictly_increasing && rep.all_match_series;
    return ok ? kExitYes : kExitNo;
}

int run_preimage(const Options& opt) {
    CellularAutomaton ca = ca_from_doc(read_doc(opt.ca_path));
    PeriodicConfig y = config_from_doc(read_doc(opt.config_path), opt.budget);
    PreimageResult r = preimage_periodic(ca, y, opt.budget);
    json levels;
    if (opt.horizon > 0) {
        ClosedImageDemo demo = closed_image_demo(ca, y, opt.horizon, opt.budget);
        levels = json(demo.seq.sizes);
        if (r.exists && demo.first_empty >= 0)
            throw std::logic_error("window tower refuted an actual preimage");
    }
    if (opt.format == "doc") {
        json j{{"exists", r.exists}};
        if (r.preimage) j["preimage"] = config_doc(*r.preimage);
        if (!levels.is_null()) j["levels"] = levels;
        emit(opt, j);
    } else {
        std::cout << "preimage: " << (r.exists ? "yes" : "no") << "\n";
        if (r.preimage) std::cout << dump_doc(config_doc(*r.preimage));
        if (!levels.is_null()) std::cout << "levels: " << levels.dump() << "\n";
    }
    return r.exists ? kExitYes : kExitNo;
}

int run_crosscheck(const Options& opt) {
    CrosscheckReport rep = goe_crosscheck(opt.alphabet, (int)opt.width, opt.budget);
    if (opt.format == "doc") {
        emit(opt, json{{"diamonds_verified", rep.diamonds_verified},
                       {"disagreements", rep.disagreements},
                       {"orphans_verified", rep.orphans_verified},
                       {"preinjective", rep.preinjective},
                       {"rules", rep.rules},
                       {"surjective", rep.surjective}});
    } else {
        std::cout << "rules: " << rep.rules << "\n"
                  << "surjective: " << rep.surjective << "\n"
                  << "preinjective: " << rep.preinjective << "\n"
                  << "orphans verified: " << rep.orphans_verified << "\n"
                  << "diamonds verified: " << rep.diamonds_verified << "\n"
                  << "disagreements: " << rep.disagreements << "\n";
    }
    return rep.disagreements == 0 ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"cellular automata over integer lattices with structured alphabets"};
    app.require_subcommand(1);

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "doc"}));
        sub->add_option("--out", opt.out_path, "also write the result document here");
        sub->add_option("--budget", opt.budget, "enumeration budget");
    };

    int (*action)(const Options&) = nullptr;
    auto bind = [&](CLI::App* sub, int (*fn)(const Options&)) {
        sub->callback([&action, fn] { action = fn; });
        add_format(sub);
        return sub;
    };

    auto* sim = bind(app.add_subcommand("simulate", "advance a periodic configuration"),
                     run_simulate);
    sim->add_option("--ca", opt.ca_path, "automaton document")->required();
    sim->add_option("--config", opt.config_path, "configuration document")->required();
    sim->add_option("--steps", opt.steps, "number of steps");

    auto* comp = bind(app.add_subcommand("compose", "compose two automata (outer after inner)"),
                      run_compose);
    comp->add_option("--outer", opt.ca_path, "outer automaton")->required();
    comp->add_option("--inner", opt.inner_path, "inner automaton")->required();

    auto* mini = bind(app.add_subcommand("minimize", "shrink the memory set"), run_minimize);
    mini->add_option("--ca", opt.ca_path, "automaton document")->required();

    auto* rest = bind(app.add_subcommand("restrict", "restrict to a finite-index subgroup"),
                      run_restrict);
    rest->add_option("--ca", opt.ca_path, "automaton document")->required();
    rest->add_option("--lattice", opt.lattice_path, "subgroup document")->required();

    auto* indu = bind(app.add_subcommand("induce", "induce along a finite-index subgroup"),
                      run_induce);
    indu->add_option("--ca", opt.ca_path, "automaton document")->required();
    indu->add_option("--lattice", opt.lattice_path, "subgroup document")->required();

    auto* quot = bind(app.add_subcommand("quotient", "finite quotient dynamics over a sublattice"),
                      run_quotient);
    quot->add_option("--ca", opt.ca_path, "automaton document")->required();
    quot->add_option("--lattice", opt.lattice_path, "period lattice document")->required();
    quot->add_option("--seed", opt.seed, "sampling seed");

    auto* scan = bind(app.add_subcommand("scan-surjunctivity",
                                         "sweep quotients over all sublattices up to an index"),
                      run_scan);
    scan->add_option("--ca", opt.ca_path, "automaton document")->required();
    scan->add_option("--max-index", opt.max_index, "largest subgroup index");

    auto* chk = bind(app.add_subcommand("check", "decide a property of a one-dimensional automaton"),
                     run_check);
    chk->add_option("--ca", opt.ca_path, "automaton document")->required();
    auto* grp = chk->add_option_group("property", "property to decide");
    grp->add_flag_callback("--injective", [&] { opt.property = "injective"; });
    grp->add_flag_callback("--surjective", [&] { opt.property = "surjective"; });
    grp->add_flag_callback("--preinjective", [&] { opt.property = "preinjective"; });
    grp->add_flag_callback("--bijective", [&] { opt.property = "bijective"; });
    grp->require_option(1);
    chk->add_option("--max-radius", opt.max_radius, "inverse search radius cap");

    auto* inv = bind(app.add_subcommand("invert", "synthesize the inverse automaton"), run_invert);
    inv->add_option("--ca", opt.ca_path, "automaton document")->required();
    inv->add_option("--max-radius", opt.max_radius, "inverse search radius cap");

    auto* tow = bind(app.add_subcommand("padic-tower", "carry-step reversibility tower"),
                     run_tower);
    tow->add_option("--p", opt.p, "prime base")->required();
    tow->add_option("--max-e", opt.max_e, "largest exponent");

    auto* prei = bind(app.add_subcommand("preimage", "periodic preimage search"), run_preimage);
    prei->add_option("--ca", opt.ca_path, "automaton document")->required();
    prei->add_option("--config", opt.config_path, "target configuration document")->required();
    prei->add_option("--horizon", opt.horizon, "also build the window tower to this depth");

    auto* goe = bind(app.add_subcommand("goe-crosscheck",
                                        "run both Garden of Eden routes over a rule family"),
                     run_crosscheck);
    goe->add_option("--alphabet", opt.alphabet, "alphabet size");
    goe->add_option("--width", opt.width, "window width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        return action(opt);
    } catch (const latca::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
