#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "extrikit/extrikit.hpp"

using namespace extrikit;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string spec, scenario, at, out;
    std::uint32_t prime = 0;
    std::size_t cap = 512;
    bool et4_brute = false;
    bool mutation_graph = false;
};

struct Loaded {
    QuiverSpec spec;
    Scenario scenario;
};

// Writes to <out>/<name> when --out is set, else to stdout.
void emit(const Options& o, const std::string& name, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(o.out) / name).string());
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json error_json(const std::string& kind, const std::string& message)
{
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

int guarded(const Options& o, const std::function<int(const ExtCategory&, const Loaded&, std::vector<json>&)>& body)
{
    try {
        Loaded in{load_quiver_spec(o.spec), load_scenario(o.scenario)};
        PrimeScope scope(o.prime ? o.prime : in.spec.prime);
        AlgebraPtr alg;
        try {
            alg = in.spec.algebra();
        } catch (const std::exception& e) {
            throw InputError(o.spec + ": " + e.what());
        }
        RunResult run = run_scenario(alg, in.scenario, o.cap);
        return body(*run.category, in, run.reports);
    } catch (const InputError& e) {
        std::cerr << dump(error_json("input", e.what()));
        return 2;
    } catch (const StepError& e) {
        json j = error_json("construction", e.what());
        j["error"]["step"] = e.index;
        j["error"]["op"] = e.op;
        std::cerr << dump(j);
        return 3;
    } catch (const std::exception& e) {
        std::cerr << dump(error_json("runtime", e.what()));
        return 4;
    }
}

json bundle(std::vector<json> reports)
{
    json a = json::array();
    for (auto& r : reports) a.push_back(std::move(r));
    return a;
}

int run_command(const Options& o)
{
    return guarded(o, [&](const ExtCategory& cat, const Loaded& in, std::vector<json>& reports) {
        bool ok = true;
        for (auto& what : in.scenario.outputs) {
            if (what == "ar-quiver") {
                auto q = ar_quiver(cat);
                std::string dot = emit_dot(ar_graph(q));
                if (!o.out.empty()) emit(o, "ar_quiver.dot", dot);
                json r = ar_quiver_report(cat, q);
                r["result"]["dot"] = dot;
                reports.push_back(r);
            } else if (what == "mutation-graph") {
                auto rr = rigid_and_mutation(cat);
                std::string dot = emit_dot(mutation_graph(cat, rr));
                if (!o.out.empty()) emit(o, "mutation_graph.dot", dot);
                json r = rigid_report(cat, rr);
                r["result"]["dot"] = dot;
                reports.push_back(r);
            } else if (what == "ars") {
                reports.push_back(ars_report(cat));
            } else if (what == "audit") {
                reports.push_back(audit_report(cat, {o.et4_brute}));
            } else if (what == "extriangles") {
                reports.push_back(extriangle_report(cat));
            } else if (what == "non-exactness") {
                reports.push_back(non_exactness_json(cat));
            } else {
                throw InputError(o.scenario + ": unknown output '" + what + "'");
            }
            for (auto& c : reports.back()["checks"])
                if (!c["pass"].get<bool>()) ok = false;
        }
        emit(o, "report.json", dump(bundle(reports)));
        return ok ? 0 : 1;
    });
}

int single(const Options& o, const std::string& file, const std::function<json(const ExtCategory&)>& make)
{
    return guarded(o, [&](const ExtCategory& cat, const Loaded&, std::vector<json>&) {
        json r = make(cat);
        emit(o, file, dump(r));
        for (auto& c : r["checks"])
            if (!c["pass"].get<bool>()) return 1;
        return 0;
    });
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Extriangulated categories from bound quiver algebras"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--prime", o.prime, "Field characteristic (overrides the spec)");
    app.add_option("--cap", o.cap, "Cap on the number of indecomposables");
    app.add_flag("--et4-brute", o.et4_brute, "Bounded ET4 search in audits");
    app.add_option("--out", o.out, "Directory for output files");

    auto inputs = [&](CLI::App* c) {
        c->add_option("spec", o.spec, "Quiver spec (JSON)")->required()->check(CLI::ExistingFile);
        c->add_option("scenario", o.scenario, "Scenario (JSON)")->required()->check(CLI::ExistingFile);
        c->fallthrough();
    };
    auto* run = app.add_subcommand("run", "Run a scenario and write its requested outputs");
    inputs(run);
    auto* audit = app.add_subcommand("audit", "Audit the axioms on the scenario result");
    inputs(audit);
    auto* arq = app.add_subcommand("ar-quiver", "Emit the AR quiver as DOT");
    inputs(arq);
    auto* as = app.add_subcommand("almost-split", "Almost split extension ending at an object");
    inputs(as);
    as->add_option("--at", o.at, "Object label")->required();
    auto* ars = app.add_subcommand("ars", "Build and verify the Auslander-Reiten-Serre duality");
    inputs(ars);
    auto* rigid = app.add_subcommand("rigid", "Maximal rigid objects");
    inputs(rigid);
    rigid->add_flag("--mutation-graph", o.mutation_graph, "Emit the mutation graph as DOT");

    CLI11_PARSE(app, argc, argv);

    if (*run) return run_command(o);
    if (*audit)
        return single(o, "audit.json", [&](const ExtCategory& cat) { return audit_report(cat, {o.et4_brute}); });
    if (*arq)
        return guarded(o, [&](const ExtCategory& cat, const Loaded&, std::vector<json>&) {
            auto q = ar_quiver(cat);
            emit(o, "ar_quiver.dot", emit_dot(ar_graph(q)));
            return q.missing.empty() ? 0 : 1;
        });
    if (*as)
        return single(o, "almost_split.json", [&](const ExtCategory& cat) {
            auto i = cat.index(o.at);
            if (!i) throw InputError("unknown object '" + o.at + "'");
            return almost_split_report(cat, *i);
        });
    if (*ars) return single(o, "ars.json", [](const ExtCategory& cat) { return ars_report(cat); });
    if (*rigid)
        return guarded(o, [&](const ExtCategory& cat, const Loaded&, std::vector<json>&) {
            auto rr = rigid_and_mutation(cat);
            if (o.mutation_graph) emit(o, "mutation_graph.dot", emit_dot(mutation_graph(cat, rr)));
            else emit(o, "rigid.json", dump(rigid_report(cat, rr)));
            return 0;
        });
    return 0;
}
