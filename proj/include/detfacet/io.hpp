#pragma once

// JSON documents in, JSON reports out.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "detfacet/complex.hpp"
#include "detfacet/decompose.hpp"
#include "detfacet/detideal.hpp"
#include "detfacet/resolution.hpp"

namespace detfacet {

using Json = nlohmann::ordered_json;

struct DocumentOptions {
    std::optional<std::string> field;       // "rational" or "prime:P"
    std::optional<std::vector<int>> order;  // 1-based variable ids, greatest first
    std::optional<std::size_t> limit_steps;
    std::optional<std::size_t> limit_perm;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;

    bool empty() const { return !field && !order && !limit_steps && !limit_perm && !seed && !trials; }
    bool operator==(const DocumentOptions&) const = default;
};

struct ComplexDocument {
    int rows = 0;
    std::vector<Facet> facets;
    std::optional<std::vector<int>> vertices;
    std::optional<std::vector<std::vector<int>>> components;
    std::optional<std::vector<std::vector<std::string>>> candidates;  // extra primes as minor lists
    DocumentOptions options;

    bool operator==(const ComplexDocument&) const = default;

    SimplicialComplex complex() const { return SimplicialComplex(rows, facets, vertices.value_or(std::vector<int>{})); }
    int columns() const {
        int n = 0;
        for (const auto& f : facets)
            for (int v : f) n = std::max(n, v);
        if (vertices)
            for (int v : *vertices) n = std::max(n, v);
        return n;
    }
};

namespace detail {

inline std::string where(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
T field_as(const Json& j, const char* key, const char* what) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("field \"") + key + "\" must be " + what);
    }
}

inline std::vector<int> positive_list(const Json& j, const std::string& where_) {
    if (!j.is_array()) throw ParseError(where_ + " must be an array of positive integers");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<long long>() < 1 || x.get<long long>() > 1000)
            throw ParseError(where_ + " must contain positive integers");
        out.push_back(x.get<int>());
    }
    return out;
}

} // namespace detail

inline ComplexDocument parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON at " + detail::where(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError("document must be a JSON object");
    static const std::vector<std::string> known{"rows", "facets", "vertices", "components", "candidates", "options"};
    for (const auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ParseError("unknown field \"" + k + "\"");
    ComplexDocument d;
    if (!j.contains("rows")) throw ParseError("missing field \"rows\"");
    d.rows = detail::field_as<int>(j, "rows", "an integer");
    if (d.rows < 1) throw ParseError("\"rows\" must be positive");
    if (!j.contains("facets") || !j["facets"].is_array()) throw ParseError("missing array \"facets\"");
    for (std::size_t i = 0; i < j["facets"].size(); ++i)
        d.facets.push_back(detail::positive_list(j["facets"][i], "facets[" + std::to_string(i) + "]"));
    if (j.contains("vertices")) d.vertices = detail::positive_list(j["vertices"], "vertices");
    if (j.contains("components")) {
        if (!j["components"].is_array()) throw ParseError("\"components\" must be an array of vertex lists");
        std::vector<std::vector<int>> comps;
        for (std::size_t i = 0; i < j["components"].size(); ++i)
            comps.push_back(detail::positive_list(j["components"][i], "components[" + std::to_string(i) + "]"));
        d.components = comps;
    }
    if (j.contains("candidates")) {
        try {
            d.candidates = j["candidates"].get<std::vector<std::vector<std::string>>>();
        } catch (const nlohmann::json::exception&) {
            throw ParseError("\"candidates\" must be an array of arrays of minor strings");
        }
    }
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw ParseError("\"options\" must be an object");
        for (const auto& [k, v] : o.items()) {
            if (k == "field") d.options.field = detail::field_as<std::string>(o, "field", "a string");
            else if (k == "order") d.options.order = detail::positive_list(v, "options.order");
            else if (k == "limit_steps") d.options.limit_steps = detail::field_as<std::size_t>(o, "limit_steps", "a nonnegative integer");
            else if (k == "limit_perm") d.options.limit_perm = detail::field_as<std::size_t>(o, "limit_perm", "a nonnegative integer");
            else if (k == "seed") d.options.seed = detail::field_as<std::uint64_t>(o, "seed", "a nonnegative integer");
            else if (k == "trials") d.options.trials = detail::field_as<std::size_t>(o, "trials", "a nonnegative integer");
            else throw ParseError("unknown option \"" + k + "\"");
        }
    }
    return d;
}

inline Json to_json(const ComplexDocument& d) {
    Json j;
    j["rows"] = d.rows;
    j["facets"] = d.facets;
    if (d.vertices) j["vertices"] = *d.vertices;
    if (d.components) j["components"] = *d.components;
    if (d.candidates) j["candidates"] = *d.candidates;
    if (!d.options.empty()) {
        Json o = Json::object();
        if (d.options.field) o["field"] = *d.options.field;
        if (d.options.order) o["order"] = *d.options.order;
        if (d.options.limit_steps) o["limit_steps"] = *d.options.limit_steps;
        if (d.options.limit_perm) o["limit_perm"] = *d.options.limit_perm;
        if (d.options.seed) o["seed"] = *d.options.seed;
        if (d.options.trials) o["trials"] = *d.options.trials;
        j["options"] = o;
    }
    return j;
}

// "rational" or "prime:P"; an absent modulus means 32003.
struct FieldChoice {
    bool rational = false;
    std::uint32_t modulus = 32003;
    std::string name() const { return rational ? "rational" : "prime:" + std::to_string(modulus); }
};

inline FieldChoice parse_field(const std::string& s) {
    FieldChoice f;
    if (s == "rational" || s == "QQ") {
        f.rational = true;
        return f;
    }
    if (s == "prime") return f;
    if (s.rfind("prime:", 0) == 0) {
        try {
            std::size_t used = 0;
            unsigned long p = std::stoul(s.substr(6), &used);
            if (used != s.size() - 6 || p > 0xffffffffUL) throw std::invalid_argument(s);
            f.modulus = static_cast<std::uint32_t>(p);
            PrimeField check(f.modulus);  // rejects composites
            return f;
        } catch (const std::logic_error&) {
        }
    }
    throw ArgumentError("unknown field '" + s + "' (rational, prime:P)");
}

inline Json to_json(const GradedBettiTable& t) {
    Json a = Json::array();
    for (const auto& [k, v] : t.entries()) a.push_back({{"h", k.first}, {"d", k.second}, {"rank", v}});
    return {{"convention", "quotient R/I: (0,0) = 1, h = homological position"}, {"entries", a}};
}

inline GradedBettiTable betti_from_json(const Json& j) {
    GradedBettiTable t;
    for (const auto& e : j.at("entries")) {
        int h = e.at("h").get<int>();
        if (h == 0) continue;
        t.add(h, e.at("d").get<int>(), e.at("rank").get<std::uint64_t>());
    }
    return t;
}

inline Json to_json(const HilbertSummary& h) {
    Json q = Json::array();
    for (const auto& c : h.numerator) q.push_back(c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str()));
    return {{"numerator", q},
            {"numerator_text", poly_to_string(h.numerator)},
            {"variables", h.variables},
            {"dim", h.dimension},
            {"e", h.multiplicity.fits_slong_p() ? Json(h.multiplicity.get_si()) : Json(h.multiplicity.get_str())},
            {"height", h.height()}};
}

inline Json to_json(const IntersectionGraph& g) {
    Json edges = Json::array();
    for (auto [a, b] : g.edges) edges.push_back({a, b});
    return {{"order", g.order}, {"edges", edges}, {"forest", g.is_forest}, {"connected", g.is_connected},
            {"tree", g.is_tree()}, {"cactus", g.is_cactus}};
}

inline Json to_json(const ForestConditionReport& c) {
    Json pairs = Json::array();
    for (const auto& p : c.pairs)
        pairs.push_back({{"i", p.i}, {"j", p.j}, {"shared", p.shared}, {"b", p.cond_b}, {"c", p.cond_c},
                         {"explanation", p.explanation}});
    return {{"a", c.cond_a}, {"b", c.cond_b}, {"c", c.cond_c}, {"failing_triples", c.failing_triples}, {"pairs", pairs}};
}

inline Json to_json(const BlockComponent& c) {
    Json blocks = Json::array();
    for (const auto& b : c.blocks)
        blocks.push_back({{"vertices", b.vertices}, {"first", b.first}, {"last", b.last}, {"dim", b.dim}});
    return {{"vertices", c.vertices}, {"overlap_prev", c.overlap_prev}, {"blocks", blocks}};
}

inline Json intervals_json(const PrimeSequence& s) {
    Json a = Json::array();
    for (const auto& iv : s) a.push_back({iv.a, iv.b});
    return a;
}

inline Json to_json(const Verification& v) {
    Json j;
    j["contains_j"] = v.contains_j;
    j["intersection_equal"] = v.intersection_equal ? Json(*v.intersection_equal) : Json(nullptr);
    j["incomparable"] = v.incomparable;
    j["contained_in"] = v.contained_in;
    j["pass"] = v.pass;
    j["milliseconds"] = v.milliseconds;
    if (!v.error.empty()) j["error"] = v.error;
    return j;
}

template <class F>
Json to_json(const DecompositionReport<F>& rep) {
    Json j;
    j["mode"] = mode_name(rep.mode);
    j["requested_mode"] = mode_name(rep.requested);
    j["notes"] = rep.notes;
    Json groups = Json::array();
    for (std::size_t g = 0; g < rep.groups.size(); ++g) {
        Json comps = Json::array();
        const auto& st = rep.groups[g].structure;
        for (std::size_t c = 0; c < st.components.size(); ++c) {
            Json comp = to_json(st.components[c]);
            Json seqs = Json::array(), labels = Json::array();
            for (const auto& s : rep.sequences[g][c]) {
                seqs.push_back(intervals_json(s));
                Json l = Json::array();
                for (const auto& iv : s) l.push_back({st.components[c].label(iv.a), st.components[c].label(iv.b)});
                labels.push_back(l);
            }
            comp["sequences"] = seqs;
            comp["sequences_as_labels"] = labels;
            comps.push_back(comp);
        }
        groups.push_back({{"vertices", rep.groups[g].vertices}, {"components", comps}});
    }
    j["groups"] = groups;
    if (rep.graph) j["graph"] = to_json(*rep.graph);
    if (rep.conditions) j["conditions"] = to_json(*rep.conditions);
    Json cands = Json::array();
    for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
        const auto& c = rep.candidates[i];
        Json seqs = Json::array();
        for (const auto& ch : c.choices)
            seqs.push_back({{"group", ch.group}, {"component", ch.component}, {"intervals", intervals_json(ch.sequence)}});
        Json minors = Json::array();
        for (const auto& m : c.generators.minors()) minors.push_back(m.to_string());
        std::string status = "unverified";
        if (rep.screening) {
            status = std::find(rep.pruned.begin(), rep.pruned.end(), i) != rep.pruned.end() ? "pruned" : "kept";
        }
        cands.push_back({{"index", i}, {"label", c.label}, {"sequences", seqs}, {"minors", minors}, {"status", status}});
    }
    j["candidates"] = cands;
    if (rep.screening) j["screening"] = to_json(*rep.screening);
    if (rep.verification) {
        j["kept"] = rep.kept;
        j["pruned"] = rep.pruned;
        j["verification"] = to_json(*rep.verification);
    }
    j["verified"] = rep.verified();
    j["pass"] = rep.verified() ? Json(rep.passed()) : Json(nullptr);
    j["milliseconds"] = rep.milliseconds;
    return j;
}

inline Json to_json(const TheoremReport& t) {
    Json hyps = Json::array();
    for (const auto& h : t.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
    Json j{{"prime_by_theorem", t.prime_by_theorem}, {"citation", t.citation}, {"hypotheses", hyps}};
    j["closed_labeling_found"] = t.closed_labeling_found ? Json(*t.closed_labeling_found) : Json(nullptr);
    j["closed_labeling_note"] = t.closed_labeling_note;
    return j;
}

inline Json to_json(const InvariantsReport& r, const VariableLayout& layout) {
    Json items = Json::array();
    for (const auto& i : r.items)
        items.push_back({{"name", i.name},
                         {"formula", i.formula},
                         {"computed", i.computed},
                         {"agree", i.agree ? Json(*i.agree) : Json(nullptr)},
                         {"note", i.note}});
    Json in = Json::array();
    for (const auto& m : r.initial_ideal) in.push_back(m.to_string(layout));
    return {{"items", items}, {"initial_ideal", in}, {"hilbert", to_json(r.hilbert)}, {"all_agree", r.all_agree()}};
}

} // namespace detfacet
