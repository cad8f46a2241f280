#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

#include "categories.hpp"

using namespace extrikit;
using namespace extrikit::testing;

namespace {

const std::string fixtures = EXTRIKIT_FIXTURES;

std::string fixture(const std::string& name) { return fixtures + "/" + name; }

struct Output {
    int code;
    std::string out;
};

Output run_cli(const std::string& args)
{
    std::string cmd = std::string(EXTRIKIT_CLI) + " " + args + " 2>/dev/null";
    Output r{-1, {}};
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle, bool with)
{
    std::size_t n = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.rfind("  \"", 0) == 0 && (line.find(needle) != std::string::npos) == with) ++n;
    return n;
}

std::size_t dot_vertices(const std::string& dot) { return count_lines_with(dot, " -> ", false); }

}

TEST(QuiverSpec, RoundTrip)
{
    QuiverSpec s = load_quiver_spec(fixture("ablossom.json"));
    EXPECT_EQ(s.vertices.size(), 11u);
    EXPECT_EQ(s.arrows.size(), 10u);
    QuiverSpec t = quiver_spec_from_json(to_json(s));
    EXPECT_EQ(s, t);
    EXPECT_EQ(to_json(t).dump(), to_json(s).dump());
}

TEST(QuiverSpec, ParseErrorHasPosition)
{
    try {
        parse_json_text("{\n  \"format\": \"extrikit-quiver/1\",\n  \"vertices\": [\"1\"\n}", "x.json");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("x.json:4:", 0), 0u) << e.what();
    }
}

TEST(QuiverSpec, NonParallelRelationRejected)
{
    try {
        load_quiver_spec(fixture("bad_relation.json"));
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("not parallel"), std::string::npos) << e.what();
    }
}

TEST(QuiverSpec, WrongFormatRejected)
{
    json j = to_json(load_quiver_spec(fixture("ka3.json")));
    j["format"] = "something-else";
    EXPECT_THROW(quiver_spec_from_json(j), InputError);
    j = to_json(load_quiver_spec(fixture("ka3.json")));
    j["arrows"][0]["to"] = "9";
    EXPECT_THROW(quiver_spec_from_json(j), InputError);
}

TEST(Scenario, UnknownStepRejected)
{
    json j = json::parse(R"({"format": "extrikit-scenario/1", "base": "module", "steps": [{"frobnicate": {}}],
                             "outputs": []})");
    EXPECT_THROW(scenario_from_json(j), InputError);
    j["steps"] = json::array();
    EXPECT_NO_THROW(scenario_from_json(j));
}

TEST(Scenario, FailingStepCarriesIndex)
{
    Scenario sc;
    sc.base = "module";
    Step st;
    st.op = "restrict";
    st.objects.labels = {{"label", "2"}, {"label", "1"}};
    sc.steps = {st};
    try {
        run_scenario(load_quiver_spec(fixture("ka3.json")).algebra(), sc);
        FAIL();
    } catch (const StepError& e) {
        EXPECT_EQ(e.index, 0u);
        EXPECT_EQ(e.op, "restrict");
    }
}

TEST(Dot, EmptyGraph)
{
    Graph g;
    g.name = "empty";
    EXPECT_EQ(emit_dot(g), "digraph \"empty\" {\n}\n");
}

TEST(Dot, SingleMeshIsSorted)
{
    Graph g;
    g.name = "mesh";
    g.vertices = {"c", "b1", "a", "b2"};
    g.edges = {{"b2", "c", 1, false, {}}, {"c", "a", 1, true, {}}, {"a", "b2", 1, false, {}},
               {"b1", "c", 1, false, {}}, {"a", "b1", 2, false, {}}};
    EXPECT_EQ(emit_dot(g), "digraph \"mesh\" {\n"
                           "  \"a\";\n  \"b1\";\n  \"b2\";\n  \"c\";\n"
                           "  \"a\" -> \"b1\" [multiplicity=2];\n"
                           "  \"a\" -> \"b2\" [multiplicity=1];\n"
                           "  \"b1\" -> \"c\" [multiplicity=1];\n"
                           "  \"b2\" -> \"c\" [multiplicity=1];\n"
                           "  \"c\" -> \"a\" [style=dashed];\n"
                           "}\n");
}

TEST(Cli, SliceQuiverIsDeterministic)
{
    std::string args = "ar-quiver " + fixture("ka3.json") + " " + fixture("ka3_slice.json");
    Output a = run_cli(args), b = run_cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(dot_vertices(a.out), 12u);
}

TEST(Cli, BadRelationIsInputError)
{
    Output r = run_cli("run " + fixture("bad_relation.json") + " " + fixture("ka3_module.json"));
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, BlossomPipeline)
{
    Output q = run_cli("ar-quiver " + fixture("ablossom.json") + " " + fixture("ablossom_e.json"));
    ASSERT_EQ(q.code, 0);
    EXPECT_EQ(dot_vertices(q.out), 8u);
    Output m = run_cli("rigid --mutation-graph " + fixture("ablossom.json") + " " + fixture("ablossom_e.json"));
    ASSERT_EQ(m.code, 0);
    EXPECT_EQ(count_lines_with(m.out, " -- ", false), 12u);
    EXPECT_EQ(count_lines_with(m.out, " -- ", true), 18u);
}

TEST(Cli, RunReportIsJson)
{
    Output r = run_cli("run " + fixture("ka3.json") + " " + fixture("ka3_relative.json"));
    ASSERT_EQ(r.code, 0);
    json j = json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.front()["op"], "base");
    for (auto& rep : j)
        for (auto& c : rep["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
}
