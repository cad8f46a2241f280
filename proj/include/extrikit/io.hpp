#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "complexes.hpp"
#include "module_category.hpp"
#include "pipeline.hpp"

namespace extrikit {

using json = nlohmann::ordered_json;

inline constexpr const char* kQuiverFormat = "extrikit-quiver/1";
inline constexpr const char* kScenarioFormat = "extrikit-scenario/1";

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failure inside a scenario step; index counts from zero.
struct StepError : std::runtime_error {
    StepError(std::size_t i, const std::string& op, const std::string& what)
        : std::runtime_error("step " + std::to_string(i) + " (" + op + "): " + what), index(i), op(op)
    {
    }
    std::size_t index;
    std::string op;
};

// ---------------------------------------------------------------- parsing

inline json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1, end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " +
                         e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::string str(const json& j, const std::string& where)
{
    if (!j.is_string()) throw InputError(where + ": expected a string");
    return j.get<std::string>();
}

inline void check_format(const json& j, const char* want, const std::string& where)
{
    std::string f = str(field(j, "format", where), where + ".format");
    if (f != want) throw InputError(where + ": unsupported format '" + f + "', expected '" + want + "'");
}

}

struct ArrowSpec {
    std::string name, from, to;
    bool operator==(const ArrowSpec&) const = default;
};

struct TermSpec {
    long long coeff = 1;
    std::vector<std::string> path;
    bool operator==(const TermSpec&) const = default;
};

struct QuiverSpec {
    std::uint32_t prime = 101;
    std::vector<std::string> vertices;
    std::vector<ArrowSpec> arrows;
    std::vector<std::vector<TermSpec>> relations;
    bool operator==(const QuiverSpec&) const = default;

    Quiver quiver() const
    {
        Quiver q;
        for (auto& v : vertices) q.add_vertex(v);
        for (auto& a : arrows) q.add_arrow(a.name, a.from, a.to);
        return q;
    }
    // Needs the field prime already in force.
    AlgebraPtr algebra(std::size_t dim_cap = 64) const
    {
        RelationSet rs;
        for (auto& r : relations) {
            Relation rel;
            for (auto& t : r) rel.push_back({Fp(t.coeff), t.path});
            rs.push_back(rel);
        }
        return build_algebra(quiver(), rs, dim_cap);
    }
};

inline QuiverSpec quiver_spec_from_json(const json& j, const std::string& where = "spec")
{
    detail::check_format(j, kQuiverFormat, where);
    QuiverSpec s;
    if (j.contains("prime")) {
        if (!j["prime"].is_number_unsigned()) throw InputError(where + ".prime: expected a positive integer");
        s.prime = j["prime"].get<std::uint32_t>();
    }
    const json& vs = detail::field(j, "vertices", where);
    if (!vs.is_array()) throw InputError(where + ".vertices: expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i)
        s.vertices.push_back(detail::str(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
    const json& as = detail::field(j, "arrows", where);
    if (!as.is_array()) throw InputError(where + ".arrows: expected an array");
    for (std::size_t i = 0; i < as.size(); ++i) {
        std::string w = where + ".arrows[" + std::to_string(i) + "]";
        s.arrows.push_back({detail::str(detail::field(as[i], "name", w), w + ".name"),
                            detail::str(detail::field(as[i], "from", w), w + ".from"),
                            detail::str(detail::field(as[i], "to", w), w + ".to")});
    }
    if (j.contains("relations")) {
        const json& rs = j["relations"];
        if (!rs.is_array()) throw InputError(where + ".relations: expected an array");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::string w = where + ".relations[" + std::to_string(i) + "]";
            if (!rs[i].is_array()) throw InputError(w + ": expected an array of terms");
            std::vector<TermSpec> rel;
            for (std::size_t k = 0; k < rs[i].size(); ++k) {
                std::string wt = w + "[" + std::to_string(k) + "]";
                TermSpec t;
                if (rs[i][k].contains("coeff")) {
                    if (!rs[i][k]["coeff"].is_number_integer()) throw InputError(wt + ".coeff: expected an integer");
                    t.coeff = rs[i][k]["coeff"].get<long long>();
                }
                const json& p = detail::field(rs[i][k], "path", wt);
                if (!p.is_array()) throw InputError(wt + ".path: expected an array of arrow names");
                for (auto& a : p) t.path.push_back(detail::str(a, wt + ".path"));
                rel.push_back(t);
            }
            s.relations.push_back(rel);
        }
    }
    // Structural checks before any algebra is built.
    try {
        Quiver q = s.quiver();
        q.validate();
        for (std::size_t i = 0; i < s.relations.size(); ++i) {
            std::optional<std::pair<int, int>> ends;
            for (auto& t : s.relations[i]) {
                if (t.path.size() < 2) throw std::invalid_argument("relation paths must have length at least 2");
                int src = q.arrows[q.arrow(t.path.front())].source;
                int prev = src;
                for (auto& a : t.path) {
                    const Arrow& ar = q.arrows[q.arrow(a)];
                    if (ar.source != prev) throw std::invalid_argument("relation path is not composable at '" + a + "'");
                    prev = ar.target;
                }
                if (ends && *ends != std::make_pair(src, prev))
                    throw std::invalid_argument("relation terms are not parallel paths");
                ends = std::make_pair(src, prev);
            }
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": invalid quiver: " + e.what());
    }
    return s;
}

inline json to_json(const QuiverSpec& s)
{
    json j;
    j["format"] = kQuiverFormat;
    j["prime"] = s.prime;
    j["vertices"] = s.vertices;
    j["arrows"] = json::array();
    for (auto& a : s.arrows) j["arrows"].push_back({{"name", a.name}, {"from", a.from}, {"to", a.to}});
    j["relations"] = json::array();
    for (auto& r : s.relations) {
        json rel = json::array();
        for (auto& t : r) rel.push_back({{"coeff", t.coeff}, {"path", t.path}});
        j["relations"].push_back(rel);
    }
    return j;
}

inline QuiverSpec load_quiver_spec(const std::string& path)
{
    return quiver_spec_from_json(parse_json_text(read_file(path), path), path);
}

// An object reference: a canonical label, or the projective/injective/simple at a vertex.
struct ObjectRef {
    std::string kind;  // "label", "projective", "injective", "simple"
    std::string name;
};

// Either an explicit list or the hom-vanishing predicate.
struct Selector {
    std::vector<ObjectRef> labels;
    std::vector<ObjectRef> hom_vanishes_from, hom_vanishes_from_after_tau;
    bool predicate = false;
};

struct Step {
    std::string op;  // "restrict", "relative", "quotient", "relabel"
    Selector objects;
    std::string mode;  // relative: E_D, E^D, both
    bool proj_inj = false;
    std::vector<std::string> keep_vertices;
};

struct Scenario {
    std::string base;
    std::vector<Step> steps;
    std::vector<std::string> outputs;
};

namespace detail {

inline ObjectRef object_ref(const json& j, const std::string& where)
{
    if (j.is_string()) return {"label", j.get<std::string>()};
    if (j.is_object() && j.size() == 1) {
        auto it = j.begin();
        if (it.key() == "projective" || it.key() == "injective" || it.key() == "simple")
            return {it.key(), str(it.value(), where + "." + it.key())};
    }
    throw InputError(where + ": expected a label or {\"projective\"|\"injective\"|\"simple\": vertex}");
}

inline std::vector<ObjectRef> object_refs(const json& j, const std::string& where)
{
    if (!j.is_array()) throw InputError(where + ": expected an array");
    std::vector<ObjectRef> r;
    for (std::size_t i = 0; i < j.size(); ++i) r.push_back(object_ref(j[i], where + "[" + std::to_string(i) + "]"));
    return r;
}

inline Selector selector(const json& j, const std::string& where)
{
    Selector s;
    if (j.is_array()) {
        s.labels = object_refs(j, where);
        return s;
    }
    if (!j.is_object()) throw InputError(where + ": expected a selector");
    if (j.contains("labels")) s.labels = object_refs(j["labels"], where + ".labels");
    if (j.contains("hom_vanishes_from")) {
        s.predicate = true;
        s.hom_vanishes_from = object_refs(j["hom_vanishes_from"], where + ".hom_vanishes_from");
    }
    if (j.contains("hom_vanishes_from_after_tau")) {
        s.predicate = true;
        s.hom_vanishes_from_after_tau =
            object_refs(j["hom_vanishes_from_after_tau"], where + ".hom_vanishes_from_after_tau");
    }
    if (s.predicate && !s.labels.empty()) throw InputError(where + ": labels and predicates cannot be mixed");
    if (!s.predicate && !j.contains("labels")) throw InputError(where + ": empty selector");
    return s;
}

}

inline Scenario scenario_from_json(const json& j, const std::string& where = "scenario")
{
    detail::check_format(j, kScenarioFormat, where);
    Scenario s;
    s.base = detail::str(detail::field(j, "base", where), where + ".base");
    if (s.base != "module" && s.base != "two-term" && s.base != "hereditary-slice")
        throw InputError(where + ".base: unknown base '" + s.base + "'");
    if (j.contains("steps")) {
        const json& st = j["steps"];
        if (!st.is_array()) throw InputError(where + ".steps: expected an array");
        for (std::size_t i = 0; i < st.size(); ++i) {
            std::string w = where + ".steps[" + std::to_string(i) + "]";
            if (!st[i].is_object() || st[i].size() != 1) throw InputError(w + ": expected a single-key object");
            auto it = st[i].begin();
            Step step;
            step.op = it.key();
            const json& v = it.value();
            if (step.op == "restrict") {
                step.objects = detail::selector(v, w + ".restrict");
            } else if (step.op == "relative") {
                step.mode = detail::str(detail::field(v, "mode", w + ".relative"), w + ".relative.mode");
                if (step.mode != "E_D" && step.mode != "E^D" && step.mode != "both")
                    throw InputError(w + ".relative.mode: expected E_D, E^D or both");
                step.objects = detail::selector(detail::field(v, "objects", w + ".relative"), w + ".relative.objects");
            } else if (step.op == "quotient") {
                if (v.is_string()) {
                    if (v.get<std::string>() != "proj-inj") throw InputError(w + ".quotient: expected \"proj-inj\"");
                    step.proj_inj = true;
                } else {
                    step.objects = detail::selector(v, w + ".quotient");
                }
            } else if (step.op == "relabel") {
                const json& kv = detail::field(v, "keep_vertices", w + ".relabel");
                if (!kv.is_array()) throw InputError(w + ".relabel.keep_vertices: expected an array");
                for (auto& x : kv) step.keep_vertices.push_back(detail::str(x, w + ".relabel.keep_vertices"));
            } else {
                throw InputError(w + ": unknown step '" + step.op + "'");
            }
            s.steps.push_back(step);
        }
    }
    if (j.contains("outputs")) {
        if (!j["outputs"].is_array()) throw InputError(where + ".outputs: expected an array");
        for (auto& o : j["outputs"]) s.outputs.push_back(detail::str(o, where + ".outputs"));
    }
    return s;
}

inline Scenario load_scenario(const std::string& path)
{
    return scenario_from_json(parse_json_text(read_file(path), path), path);
}

// ---------------------------------------------------------------- graphs and DOT

struct GraphEdge {
    std::string from, to;
    std::size_t multiplicity = 1;
    bool dashed = false;
    std::string label;
};

struct Graph {
    std::string name = "g";
    bool directed = true;
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;
};

inline std::string dot_quote(const std::string& s)
{
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r + "\"";
}

inline std::string emit_dot(const Graph& g)
{
    std::vector<std::string> vs = g.vertices;
    std::sort(vs.begin(), vs.end());
    std::vector<GraphEdge> es = g.edges;
    std::sort(es.begin(), es.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.dashed, a.from, a.to, a.label) < std::tie(b.dashed, b.from, b.to, b.label);
    });
    std::ostringstream os;
    os << (g.directed ? "digraph " : "graph ") << dot_quote(g.name) << " {\n";
    for (auto& v : vs) os << "  " << dot_quote(v) << ";\n";
    const char* arrow = g.directed ? " -> " : " -- ";
    for (auto& e : es) {
        os << "  " << dot_quote(e.from) << arrow << dot_quote(e.to) << " [";
        if (e.dashed) os << "style=dashed";
        else os << "multiplicity=" << e.multiplicity;
        if (!e.label.empty()) os << ", label=" << dot_quote(e.label);
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

inline Graph ar_graph(const ARQuiver& q)
{
    Graph g;
    g.name = "ar_quiver";
    g.vertices = q.labels;
    for (auto [x, y, m] : q.solid) g.edges.push_back({q.labels[x], q.labels[y], m, false, {}});
    for (auto [x, y] : q.dashed) g.edges.push_back({q.labels[x], q.labels[y], 1, true, {}});
    return g;
}

// Sorted summand labels joined by " + ".
inline std::string rigid_name(const ExtCategory& cat, const ObjList& xs)
{
    std::vector<std::string> ls;
    for (auto x : xs) ls.push_back(cat.labels[x]);
    std::sort(ls.begin(), ls.end());
    std::string r;
    for (auto& l : ls) r += (r.empty() ? "" : " + ") + l;
    return r;
}

inline Graph mutation_graph(const ExtCategory& cat, const RigidResult& r)
{
    Graph g;
    g.name = "mutation";
    g.directed = false;
    for (auto& u : r.rigid) g.vertices.push_back(rigid_name(cat, u));
    for (auto& e : r.edges) {
        std::string a = g.vertices[e.from], b = g.vertices[e.to];
        if (b < a) std::swap(a, b);
        g.edges.push_back({a, b, 1, false, conflation_name(cat, e.conflation)});
    }
    return g;
}

// ---------------------------------------------------------------- reports

inline json checks_json(const Report& r)
{
    json a = json::array();
    for (auto& c : r.checks) {
        json x{{"name", c.name}, {"pass", c.pass}};
        if (!c.witness.empty()) x["witness"] = c.witness;
        a.push_back(x);
    }
    return a;
}

inline json report_json(const std::string& op, json inputs, json result, const Report& r = {})
{
    return {{"op", op}, {"inputs", std::move(inputs)}, {"result", std::move(result)}, {"checks", checks_json(r)}};
}

// ---------------------------------------------------------------- scenarios

struct RunResult {
    CategoryPtr category;
    std::vector<json> reports;  // one per pipeline stage
};

namespace detail {

inline std::size_t resolve_ref(const ExtCategory& cat, const ObjectRef& r)
{
    if (r.kind == "label") return cat.at(r.name);
    if (cat.size() == 0) throw std::invalid_argument("empty category");
    AlgebraPtr alg;
    if (!cat.underlying.empty()) alg = cat.underlying[0].alg;
    if (!alg) throw std::invalid_argument("vertex references need a module-backed category");
    int v = alg->quiver().vertex(r.name);
    Representation m = r.kind == "projective" ? projective(alg, v) : r.kind == "injective" ? injective(alg, v)
                                                                                           : simple(alg, v);
    auto i = find_module(cat, m);
    if (!i) throw std::invalid_argument(r.kind + " at " + r.name + " is not an object");
    return *i;
}

inline ObjList resolve_refs(const ExtCategory& cat, const std::vector<ObjectRef>& rs)
{
    ObjList out;
    for (auto& r : rs) out.push_back(resolve_ref(cat, r));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline ObjList resolve(const ExtCategory& cat, const Selector& s)
{
    if (!s.predicate) return resolve_refs(cat, s.labels);
    return select_hom_vanishing(cat, resolve_refs(cat, s.hom_vanishes_from),
                                resolve_refs(cat, s.hom_vanishes_from_after_tau));
}

inline json labels_of(const ExtCategory& cat, const ObjList& xs)
{
    json a = json::array();
    for (auto x : xs) a.push_back(cat.labels[x]);
    return a;
}

}

inline ExtCategory base_category(const AlgebraPtr& alg, const std::string& base, std::size_t cap)
{
    if (base == "module") return from_module_category(alg, cap);
    if (base == "two-term") return two_term_category(alg, cap);
    if (base == "hereditary-slice") return hereditary_slice(alg, cap);
    throw InputError("unknown base '" + base + "'");
}

// Runs the construction steps; the field prime must already be in force.
inline RunResult run_scenario(const AlgebraPtr& alg, const Scenario& sc, std::size_t cap = 512)
{
    RunResult r;
    r.category = std::make_shared<const ExtCategory>(base_category(alg, sc.base, cap));
    r.reports.push_back(report_json("base", {{"base", sc.base}},
                                    {{"objects", r.category->size()}, {"labels", r.category->labels}}));
    for (std::size_t i = 0; i < sc.steps.size(); ++i) {
        const Step& st = sc.steps[i];
        const ExtCategory& cur = *r.category;
        try {
            json inputs{{"step", i}};
            Report checks;
            checks.op = st.op;
            if (st.op == "restrict") {
                ObjList keep = detail::resolve(cur, st.objects);
                inputs["objects"] = detail::labels_of(cur, keep);
                auto next = std::make_shared<const ExtCategory>(restrict_extension_closed(r.category, keep));
                checks.add("extension-closed", true);
                r.category = next;
            } else if (st.op == "relative") {
                ObjList d = detail::resolve(cur, st.objects);
                inputs["mode"] = st.mode;
                inputs["objects"] = detail::labels_of(cur, d);
                auto rs = relative_subfunctors(cur, d);
                const Subfunctor& f = st.mode == "E_D" ? rs.lower : st.mode == "E^D" ? rs.upper : rs.both;
                auto cr = is_closed(cur, f);
                checks.add("closed on the right", cr.right);
                checks.add("closed on the left", cr.left);
                r.category = std::make_shared<const ExtCategory>(relative_category(r.category, f));
            } else if (st.op == "quotient") {
                ObjList d;
                if (st.proj_inj) {
                    auto pi = pi_objects(cur);
                    std::set_intersection(pi.projectives.begin(), pi.projectives.end(), pi.injectives.begin(),
                                          pi.injectives.end(), std::back_inserter(d));
                } else {
                    d = detail::resolve(cur, st.objects);
                }
                inputs["objects"] = detail::labels_of(cur, d);
                r.category = std::make_shared<const ExtCategory>(ideal_quotient_category(r.category, d));
            } else if (st.op == "relabel") {
                inputs["keep_vertices"] = st.keep_vertices;
                ExtCategory next = cur;
                relabel_by_vertex_quotient(next, st.keep_vertices);
                r.category = std::make_shared<const ExtCategory>(std::move(next));
            }
            r.reports.push_back(report_json(st.op, inputs,
                                            {{"objects", r.category->size()}, {"labels", r.category->labels}},
                                            checks));
        } catch (const StepError&) {
            throw;
        } catch (const std::exception& e) {
            throw StepError(i, st.op, e.what());
        }
    }
    return r;
}

// ---------------------------------------------------------------- output reports

inline json ar_quiver_report(const ExtCategory& cat, const ARQuiver& q)
{
    json solid = json::array(), dashed = json::array();
    for (auto [x, y, m] : q.solid) solid.push_back({{"from", q.labels[x]}, {"to", q.labels[y]}, {"multiplicity", m}});
    for (auto [x, y] : q.dashed) dashed.push_back({{"from", q.labels[x]}, {"to", q.labels[y]}});
    Report r;
    r.op = "ar-quiver";
    for (auto& m : q.missing) r.add("almost split extension exists", false, m);
    return report_json("ar-quiver", {{"objects", cat.size()}},
                       {{"vertices", q.labels}, {"solid", solid}, {"dashed", dashed}}, r);
}

inline json almost_split_report(const ExtCategory& cat, std::size_t c)
{
    json inputs{{"at", cat.labels[c]}};
    Report r;
    r.op = "almost-split";
    if (is_e_projective(cat, c)) {
        r.add("not E-projective", false, cat.labels[c]);
        return report_json("almost-split", inputs, nullptr, r);
    }
    auto w = almost_split_ending_at(cat, c);
    if (!w) {
        r.add("almost split extension exists", false, cat.labels[c]);
        return report_json("almost-split", inputs, nullptr, r);
    }
    r.add("AS1", w->as1);
    r.add("AS2", w->as2);
    r.add("endo-local ends", w->endo_local);
    r.add("left minimal inflation", w->left_minimal);
    r.add("right minimal deflation", w->right_minimal);
    return report_json("almost-split", inputs,
                       {{"conflation", conflation_name(cat, w->conflation)},
                        {"tau", object_name(cat, w->cls.a)}},
                       r);
}

inline json ars_report(const ExtCategory& cat)
{
    ARSDuality d = ars_duality(cat);
    Report r = verify_ars(cat, d);
    json tau = json::object();
    for (auto [x, t] : d.tau) tau[cat.labels[x]] = cat.labels[t];
    return report_json("ars", {{"objects", cat.size()}}, {{"tau", tau}}, r);
}

inline json audit_report(const ExtCategory& cat, const AuditOptions& opt)
{
    Report r = axiom_audit(cat, opt);
    return report_json("audit", {{"objects", cat.size()}, {"et4_brute", opt.et4_brute}}, {{"ok", r.ok()}}, r);
}

inline json rigid_report(const ExtCategory& cat, const RigidResult& rr)
{
    json rig = json::array(), edges = json::array();
    for (auto& u : rr.rigid) rig.push_back(rigid_name(cat, u));
    for (auto& e : rr.edges)
        edges.push_back({{"from", rig[e.from]}, {"to", rig[e.to]}, {"conflation", conflation_name(cat, e.conflation)}});
    return report_json("rigid", {{"objects", cat.size()}}, {{"maximal_rigid", rig}, {"mutation_edges", edges}});
}

inline json extriangle_report(const ExtCategory& cat)
{
    auto inv = extriangle_inventory(cat);
    json a = json::array();
    for (auto& s : inv.conflations) a.push_back(conflation_name(cat, s));
    return report_json("extriangles", {{"objects", cat.size()}}, {{"conflations", a}, {"complete", inv.complete}});
}

inline json non_exactness_json(const ExtCategory& cat)
{
    auto ne = non_exactness_report(cat);
    json nm = json::array(), npe = json::array();
    for (auto& s : ne.non_monic) nm.push_back(conflation_name(cat, s));
    for (auto& s : ne.non_epic) npe.push_back(conflation_name(cat, s));
    return report_json("non-exactness", {{"objects", cat.size()}}, {{"non_monic_inflation", nm}, {"non_epic_deflation", npe}});
}

}
