// detfacet: analyze, decompose and resolve determinantal facet ideals.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "detfacet/detfacet.hpp"

using namespace detfacet;

namespace {

enum Exit { Ok = 0, VerificationFailed = 1, Usage = 2, Structural = 3, Resource = 4, Invalid = 5 };

const char* kExitTable =
    "Exit codes:\n"
    "  0  success (and every requested verification passed)\n"
    "  1  a requested verification failed\n"
    "  2  usage error or unreadable document\n"
    "  3  structural precondition failed (complex has the wrong shape)\n"
    "  4  resource limit hit (step limit, permutation bound, Taylor cap)\n"
    "  5  invalid input (layout, argument, validation or configuration error)\n";

struct Settings {
    std::string file;
    std::string field;
    std::string order;
    std::size_t limit_steps = 0;
    std::size_t limit_perm = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool verify = false;
    bool pretty = false;
    std::string mode = "auto";
    std::string method = "all";
};

std::string read_input(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

struct Resolved {
    ComplexDocument doc;
    FieldChoice field;
    std::optional<std::vector<int>> order;
    GroebnerOptions gb;
    std::size_t limit_perm = 9;
    std::size_t trials = 20;
    std::uint64_t seed = 1;
};

std::vector<int> parse_order(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw ArgumentError("--order expects comma-separated variable numbers, got '" + item + "'");
        }
    }
    return out;
}

Resolved resolve(const Settings& s, const CLI::App& sub) {
    Resolved r;
    r.doc = parse_document(read_input(s.file));
    const auto& o = r.doc.options;
    r.field = parse_field(sub.count("--field") ? s.field : o.field.value_or("prime:32003"));
    if (sub.count("--order")) r.order = parse_order(s.order);
    else r.order = o.order;
    if (sub.count("--limit-steps")) r.gb.step_limit = s.limit_steps;
    else if (o.limit_steps) r.gb.step_limit = *o.limit_steps;
    if (sub.count("--limit-perm")) r.limit_perm = s.limit_perm;
    else if (o.limit_perm) r.limit_perm = *o.limit_perm;
    if (sub.count("--trials")) r.trials = s.trials;
    else if (o.trials) r.trials = *o.trials;
    if (sub.count("--seed")) r.seed = s.seed;
    else if (o.seed) r.seed = *o.seed;
    return r;
}

template <class F>
Workspace<F> workspace(const Resolved& r, F field) {
    int m = r.doc.rows, n = r.doc.columns();
    OrderPtr order;
    if (r.order) {
        int N = m * n;
        if (static_cast<int>(r.order->size()) != N)
            throw ArgumentError("--order needs a permutation of 1.." + std::to_string(N) + ", got " +
                                std::to_string(r.order->size()) + " entries");
        std::vector<int> p;
        for (int v : *r.order) p.push_back(v - 1);
        order = make_order(TermOrder::from_priority(p));
    }
    return make_workspace<F>(m, n, std::move(field), order, r.gb);
}

template <class F>
std::vector<Monomial> initial_ideal(const Workspace<F>& ws, const SimplicialComplex& complex) {
    auto gb = groebner_basis(facet_ideal(ws, complex).polynomials(), ws.gb);
    auto in = minimalize(leading_monomials(gb));
    std::sort(in.begin(), in.end(), [&](const Monomial& a, const Monomial& b) { return ws.order->compare(a, b) > 0; });
    return in;
}

Json facets_json(const std::vector<Facet>& fs) {
    Json a = Json::array();
    for (const auto& f : fs) a.push_back(f);
    return a;
}

// ---- analyze ---------------------------------------------------------

Json cmd_analyze(const Resolved& r, std::string& text) {
    auto complex = r.doc.complex();
    Json j;
    j["complex"] = {{"rows", complex.rows()}, {"facets", facets_json(complex.facets())}, {"vertices", complex.vertices()},
                    {"pure", complex.is_pure()}, {"dimension", complex.dimension()}};
    auto cd = clique_decomposition(complex);
    Json cliques = Json::array();
    std::vector<std::vector<int>> sets;
    for (const auto& c : cd.cliques) {
        cliques.push_back({{"vertices", c.vertices}, {"dim", c.dim}});
        sets.push_back(c.vertices);
    }
    j["cliques"] = cliques;
    std::ostringstream out;
    out << "cliques (" << cd.cliques.size() << "):";
    for (const auto& c : cd.cliques) out << " " << facet_to_string(c.vertices) << "/dim " << c.dim;
    out << "\n";

    auto closed = is_closed(complex, cd);
    Json cj{{"closed", closed.closed}};
    if (closed.witness) {
        const auto& w = *closed.witness;
        cj["witness"] = {{"b", w.b}, {"c", w.c}, {"k", w.k}, {"l", w.l}, {"vertex", w.vertex}};
        out << "closed: no, vertex " << w.vertex << " at position " << w.k << " of " << facet_to_string(w.b)
            << " and position " << w.l << " of " << facet_to_string(w.c) << "\n";
        try {
            auto lab = find_closed_labeling(complex, r.limit_perm);
            if (lab) {
                Json m = Json::object();
                for (auto [a, b] : *lab) m[std::to_string(a)] = b;
                cj["closed_labeling"] = m;
                out << "  a closed relabeling exists\n";
            } else {
                cj["closed_labeling"] = nullptr;
                out << "  no closed labeling exists\n";
            }
        } catch (const ResourceError& e) {
            cj["closed_labeling_error"] = e.what();
            out << "  labeling search skipped: " << e.what() << "\n";
        }
    } else {
        out << "closed: yes\n";
    }
    j["closedness"] = cj;

    try {
        auto bs = block_structure(complex);
        Json comps = Json::array();
        for (const auto& c : bs.components) comps.push_back(to_json(c));
        j["block_structure"] = {{"components", comps}};
        out << "block structure: " << bs.components.size() << " component(s)\n";
    } catch (const StructuralError& e) {
        j["block_structure"] = {{"error", e.what()}};
        out << "block structure: none (" << e.what() << ")\n";
    }

    auto cg = intersection_graph(sets);
    j["clique_graph"] = to_json(cg);
    out << "clique graph: " << cg.edges.size() << " edge(s), tree " << (cg.is_tree() ? "yes" : "no") << ", cactus "
        << (cg.is_cactus ? "yes" : "no") << "\n";
    try {
        std::vector<std::vector<int>> comps;
        if (r.doc.components) comps = *r.doc.components;
        else
            for (const auto& c : block_adjacent_chains(complex)) comps.push_back(c.vertices);
        auto g = intersection_graph(comps);
        j["component_graph"] = to_json(g);
        j["component_graph"]["components"] = comps;
        j["forest_conditions"] = to_json(check_forest_conditions(comps, complex.rows()));
        out << "component graph: " << comps.size() << " component(s), forest " << (g.is_forest ? "yes" : "no")
            << ", cactus " << (g.is_cactus ? "yes" : "no") << "\n";
    } catch (const StructuralError& e) {
        j["component_graph"] = {{"error", e.what()}};
        out << "component graph: none (" << e.what() << ")\n";
    }
    auto th = report_prime_by_theorem(complex, r.limit_perm);
    j["theorem"] = to_json(th);
    out << "prime by theorem: " << (th.prime_by_theorem ? "yes" : "not covered") << "\n";
    text = out.str();
    return j;
}

// ---- decompose -------------------------------------------------------

template <class F>
int cmd_decompose(const Resolved& r, const Settings& s, F field, Json& j, std::string& text) {
    auto ws = workspace(r, std::move(field));
    auto complex = r.doc.complex();
    DecomposeOptions opts;
    opts.mode = parse_mode(s.mode);
    opts.verify = s.verify;
    if (r.doc.components) opts.components = *r.doc.components;
    std::vector<GeneratorSet<F>> supplied;
    if (r.doc.candidates) {
        MinorExpander<F> ex(ws);
        for (const auto& list : *r.doc.candidates) {
            GeneratorSet<F> g(ws);
            for (const auto& m : list) {
                auto spec = MinorSpec::parse(m, ws.rows());
                spec.validate(ws.ring->layout);
                g.add(spec, Provenance::Mixed, ex);
            }
            supplied.push_back(std::move(g));
        }
    }
    auto rep = decompose(ws, complex, opts, supplied);
    j = to_json(rep);
    j["field"] = ws.field().name();
    std::ostringstream out;
    out << "mode " << mode_name(rep.mode);
    if (rep.mode != rep.requested) out << " (requested " << mode_name(rep.requested) << ")";
    out << ", " << rep.candidates.size() << " candidate(s)\n";
    for (const auto& n : rep.notes) out << "note: " << n << "\n";
    for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
        const auto& c = rep.candidates[i];
        out << "  [" << i << "] " << c.label << "  (" << c.generators.size() << " minors)";
        if (rep.screening) out << (std::find(rep.pruned.begin(), rep.pruned.end(), i) != rep.pruned.end() ? "  pruned" : "  kept");
        out << "\n";
    }
    if (rep.verification) {
        const auto& v = *rep.verification;
        out << "verification: containment " << (v.all_contain() ? "ok" : "FAILED") << ", intersection "
            << (v.intersection_equal ? (*v.intersection_equal ? "equal" : "DIFFERS") : "skipped") << ", incomparable "
            << (v.incomparable ? "yes" : "NO") << " -> " << (v.pass ? "pass" : "FAIL") << " (" << v.milliseconds
            << " ms)\n";
        if (!v.error.empty()) out << "error: " << v.error << "\n";
    }
    text = out.str();
    return rep.verified() && !rep.passed() ? VerificationFailed : Ok;
}

// ---- betti -----------------------------------------------------------

template <class F>
int cmd_betti(const Resolved& r, const Settings& s, F field, Json& j, std::string& text) {
    static const std::vector<std::string> methods{"formula", "linquot", "taylor", "convolution"};
    if (s.method != "all" && std::find(methods.begin(), methods.end(), s.method) == methods.end())
        throw ArgumentError("unknown method '" + s.method + "' (formula, linquot, taylor, convolution, all)");
    auto ws = workspace(r, field);
    auto complex = r.doc.complex();
    auto cd = clique_decomposition(complex);
    int m = complex.rows();
    auto in = initial_ideal(ws, complex);
    std::ostringstream out;
    Json tables = Json::object();
    std::map<std::string, GradedBettiTable> got;
    std::vector<std::string> wanted = s.method == "all" ? methods : std::vector<std::string>{s.method};
    bool single = s.method != "all";

    for (const auto& name : wanted) {
        try {
            if (name == "formula") {
                if (cd.cliques.size() != 1)
                    throw StructuralError("formula applies to a single clique; this complex has " +
                                          std::to_string(cd.cliques.size()) + " (use convolution)");
                auto t = clique_betti_table(m, cd.cliques[0]);
                if (!t) throw StructuralError("unsupported clique shape " + facet_to_string(cd.cliques[0].vertices));
                got[name] = *t;
            } else if (name == "convolution") {
                std::vector<GradedBettiTable> parts;
                for (const auto& c : cd.cliques) {
                    auto t = clique_betti_table(m, c);
                    if (!t) throw StructuralError("unsupported clique shape " + facet_to_string(c.vertices));
                    parts.push_back(*t);
                }
                got[name] = betti_convolution(parts);
            } else if (name == "linquot") {
                auto lq = linear_quotients(in);
                if (!lq.ok) {
                    std::string colon;
                    for (const auto& c : lq.failing_colon) colon += (colon.empty() ? "" : ", ") + c.to_string(ws.ring->layout);
                    throw StructuralError("quotients are not linear at generator " + std::to_string(*lq.failing_index + 1) +
                                          " (" + in[*lq.failing_index].to_string(ws.ring->layout) + "), colon (" + colon + ")");
                }
                got[name] = betti_from_linear_quotients(in, lq);
            } else {
                got[name] = taylor_strand_betti(in, ws.field(), 16).graded;
            }
            tables[name] = to_json(got[name]);
            out << name << ": " << got[name].to_string() << "\n";
        } catch (const Error& e) {
            if (single) throw;
            tables[name] = {{"error", e.what()}};
            out << name << ": unavailable (" << e.what() << ")\n";
        }
    }
    j["closed"] = is_closed(complex, cd).closed;
    j["tables"] = tables;
    bool agree = true;
    if (!single) {
        Json matrix = Json::object();
        for (const auto& [a, ta] : got)
            for (const auto& [b, tb] : got) {
                matrix[a][b] = ta == tb;
                agree = agree && ta == tb;
            }
        j["agreement"] = matrix;
        out << "agreement among available methods: " << (agree ? "yes" : "NO") << "\n";
    }
    text = out.str();
    return s.verify && !agree ? VerificationFailed : Ok;
}

// ---- gb --------------------------------------------------------------

template <class F>
int cmd_gb(const Resolved& r, const Settings& s, F field, Json& j, std::string& text) {
    auto ws = workspace(r, std::move(field));
    auto complex = r.doc.complex();
    auto gens = facet_ideal(ws, complex);
    auto report = is_groebner(gens.polynomials(), ws.order, ws.gb.step_limit);
    auto basis = groebner_basis(gens.polynomials(), ws.gb);
    std::ostringstream out;
    j["field"] = ws.field().name();
    j["generators"] = gens.size();
    j["is_gb"] = report.is_gb;
    j["closed"] = is_closed(complex).closed;
    j["pairs_examined"] = report.pairs_examined;
    j["pairs_skipped_coprime"] = report.pairs_skipped_coprime;
    out << gens.size() << " generators, Groebner basis: " << (report.is_gb ? "yes" : "no") << "\n";
    if (report.witness) {
        auto specs = gens.minors();
        j["witness"] = {{"pair", {specs[report.witness->first].to_string(), specs[report.witness->second].to_string()}},
                        {"remainder", report.witness_remainder->to_string()}};
        out << "  S-pair " << specs[report.witness->first].to_string() << ", " << specs[report.witness->second].to_string()
            << " leaves " << report.witness_remainder->to_string() << "\n";
    }
    Json leads = Json::array();
    for (const auto& g : basis) leads.push_back(g.leading_monomial().to_string(ws.ring->layout));
    j["reduced_basis_size"] = basis.size();
    j["reduced_basis_leading_terms"] = leads;
    out << "reduced basis: " << basis.size() << " elements\n";
    text = out.str();
    return s.verify && !report.is_gb ? VerificationFailed : Ok;
}

// ---- hilbert ---------------------------------------------------------

template <class F>
int cmd_hilbert(const Resolved& r, const Settings& s, F field, Json& j, std::string& text) {
    auto ws = workspace(r, std::move(field));
    auto complex = r.doc.complex();
    auto in = initial_ideal(ws, complex);
    auto h = hilbert_series(in, ws.ring->nvars());
    std::ostringstream out;
    j["hilbert"] = to_json(h);
    out << "H(t) = (" << poly_to_string(h.numerator) << ") / (1-t)^" << h.dimension << "\n"
        << "dim " << h.dimension << ", e " << h.multiplicity.get_str() << ", height " << h.height() << "\n";
    bool agree = true;
    if (is_closed(complex).closed) {
        auto rep = invariants_report(ws, complex);
        j["invariants"] = to_json(rep, ws.ring->layout);
        for (const auto& item : rep.items) {
            out << item.name << ": formula " << (item.formula.empty() ? "-" : item.formula) << ", computed "
                << (item.computed.empty() ? "-" : item.computed) << " -> "
                << (item.agree ? (*item.agree ? "agree" : "DISAGREE") : "not compared");
            if (!item.note.empty()) out << " (" << item.note << ")";
            out << "\n";
        }
        agree = rep.all_agree();
    } else {
        j["invariants"] = {{"skipped", "complex is not closed as labeled"}};
        out << "invariants: skipped, complex is not closed as labeled\n";
    }
    text = out.str();
    return s.verify && !agree ? VerificationFailed : Ok;
}

// ---- probe-universal -------------------------------------------------

template <class F>
int cmd_probe(const Resolved& r, const Settings& s, F field, Json& j, std::string& text) {
    auto ws = workspace(r, std::move(field));
    auto p = universal_gb_probe(ws, r.doc.complex(), r.trials, r.seed);
    std::ostringstream out;
    j["all_pass"] = p.all_pass;
    j["no_trials"] = p.no_trials;
    j["trials_run"] = p.trials_run;
    j["seed"] = p.seed;
    if (p.failing_trial) {
        Json order = Json::array();
        for (int v : p.failing_priority) order.push_back(ws.ring->layout.variable_name(v));
        j["failing_trial"] = *p.failing_trial;
        j["failing_order"] = order;
    }
    out << "trials " << p.trials_run << " (seed " << p.seed << "): " << (p.no_trials ? "no trials run" : p.all_pass ? "all orders pass" : "an order fails");
    if (p.failing_trial) out << " at trial " << *p.failing_trial;
    out << "\n";
    text = out.str();
    return s.verify && !p.all_pass ? VerificationFailed : Ok;
}

template <class Fn>
int with_field(const Resolved& r, Fn&& fn) {
    if (r.field.rational) return fn(RationalField{});
    return fn(PrimeField(r.field.modulus));
}

int exit_for(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return Usage;
    if (dynamic_cast<const StructuralError*>(&e)) return Structural;
    if (dynamic_cast<const ResourceError*>(&e)) return Resource;
    return Invalid;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Determinantal facet ideals: cliques, closedness, minimal primes, Betti numbers."};
    app.footer(kExitTable);
    app.require_subcommand(1);
    Settings s;

    auto common = [&](CLI::App* sub) {
        sub->add_option("file", s.file, "complex document (JSON), or - for stdin")->required();
        sub->add_option("--field", s.field, "rational or prime:P (default prime:32003)");
        sub->add_option("--order", s.order, "lex priority as comma-separated 1-based variable numbers, greatest first");
        sub->add_option("--limit-steps", s.limit_steps, "reduction step limit per Groebner computation");
        sub->add_option("--limit-perm", s.limit_perm, "largest vertex count for the closed-labeling search (default 9)");
        sub->add_option("--trials", s.trials, "random orders for probe-universal (default 20)");
        sub->add_option("--seed", s.seed, "random seed (default 1)");
        sub->add_flag("--verify", s.verify, "certify results; exit 1 when a check fails");
        sub->add_flag("--pretty", s.pretty, "human-readable output instead of JSON");
        sub->footer(kExitTable);
    };
    auto* analyze = app.add_subcommand("analyze", "cliques, closedness, block structure and intersection graphs");
    auto* dec = app.add_subcommand("decompose", "candidate minimal primes, optionally verified");
    auto* betti = app.add_subcommand("betti", "graded Betti numbers of R/J");
    auto* gb = app.add_subcommand("gb", "Groebner basis check of the minor generators");
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert series of R/in(J) and the closed-complex invariants");
    auto* probe = app.add_subcommand("probe-universal", "is_groebner under random lex orders");
    for (auto* sub : {analyze, dec, betti, gb, hilbert, probe}) common(sub);
    dec->add_option("--mode", s.mode, "auto, block, union, forest or composite")->capture_default_str();
    betti->add_option("--method", s.method, "formula, linquot, taylor, convolution or all")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        Resolved r = resolve(s, *sub);
        Json j;
        std::string text;
        int code = Ok;
        if (sub == analyze) {
            j = cmd_analyze(r, text);
        } else if (sub == dec) {
            code = with_field(r, [&](auto f) { return cmd_decompose(r, s, f, j, text); });
        } else if (sub == betti) {
            code = with_field(r, [&](auto f) { return cmd_betti(r, s, f, j, text); });
        } else if (sub == gb) {
            code = with_field(r, [&](auto f) { return cmd_gb(r, s, f, j, text); });
        } else if (sub == hilbert) {
            code = with_field(r, [&](auto f) { return cmd_hilbert(r, s, f, j, text); });
        } else {
            code = with_field(r, [&](auto f) { return cmd_probe(r, s, f, j, text); });
        }
        j["exit_code"] = code;
        if (s.pretty) std::cout << text;
        else std::cout << j.dump(2) << "\n";
        return code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    }
}
