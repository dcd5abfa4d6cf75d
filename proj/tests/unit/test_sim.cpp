#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dynes/kb/parser.hpp"
#include "dynes/sim/simulation.hpp"
#include "reactor_oracle.hpp"

using namespace dynes;

namespace {

const char* kSmall = R"(
object x { t: number; flag: bool; }
event Hot { origin: x.t > 10; }
rule mark { if: x.t > 5; then: x.flag := true; }
)";

const SimulationOptions kFixed{nullptr, std::string("fixed")};

}  // namespace

TEST_CASE("load_scenario examples") {
    CHECK(parse_scenario("").entries.empty());
    const Scenario idle = parse_scenario("{\"tick\": 0}\n{\"tick\": 4, \"set\": {}}\n");
    REQUIRE(idle.entries.size() == 2);
    CHECK(idle.facts_at(4).empty());

    const Scenario three = parse_scenario(R"({"tick": 0, "set": {"x.t": 1}}
{"tick": 1, "set": {"x.t": {"inexact": [2, 0.5]}}}

{"tick": 2, "set": {"x.t": {"value": {"set": [3, 1]}, "cf": 0.5}}}
)");
    REQUIRE(three.entries.size() == 3);
    CHECK(three.facts_at(1)[0].value.as_inexact() == Inexact{2, 0.5});
    CHECK(three.facts_at(2)[0].value == Value::finite_set({1, 3}, 0.5));
    CHECK(parse_scenario(three.to_jsonl()) == three);

    try {
        parse_scenario("{\"tick\": 0}\n{\"tick\": 0}\n");
        FAIL("expected an error");
    } catch (const ScenarioError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("non-ascending") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario("{\"tick\": 1, \"set\": {\"x.t\": {\"bogus\": 1}}}"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("{\"tick\": \"a\"}"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("not json"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("{\"tick\": 0, \"extra\": 1}"), ScenarioError);
}

TEST_CASE("run_simulation basics") {
    const KnowledgeBase kb = parse_kb(kSmall);
    const Scenario sc = parse_scenario("{\"tick\": 1, \"set\": {\"x.t\": 12}}\n{\"tick\": 3, \"set\": {\"x.t\": 4}}\n");

    const Trace none = run_simulation(kb, sc, 0, {}, kFixed);
    CHECK(none.records.empty());
    CHECK(trace_to_jsonl(none).find('\n') == trace_to_jsonl(none).size() - 1);

    std::ostringstream streamed;
    const Trace t = run_simulation(kb, sc, 5, {}, {&streamed, std::string("fixed")});
    REQUIRE(t.records.size() == 5);
    CHECK(streamed.str() == trace_to_jsonl(t));
    CHECK(t.records[0].wm_diff.empty());
    CHECK(t.records[1].origins == std::vector<TemporalNotice>{{"Hot", "origin"}});
    CHECK(t.records[1].fired.size() == 1);

    // every external assertion shows up in exactly one input diff
    for (const auto& e : sc.entries)
        for (const auto& f : e.facts) {
            int seen = 0;
            for (const auto& r : t.records)
                for (const auto& d : r.wm_diff) seen += d.phase == "input" && d.ref == f.ref && r.tick == e.tick;
            CHECK(seen == 1);
        }

    const Scenario bad = parse_scenario("{\"tick\": 2, \"set\": {\"x.nope\": 1}}");
    try {
        run_simulation(kb, bad, 4, {}, kFixed);
        FAIL("expected an error");
    } catch (const SimulationError& e) {
        CHECK(e.tick() == 2);
        CHECK(std::string(e.what()).find("x.nope") != std::string::npos);
    }
}

TEST_CASE("traces are deterministic apart from the header timestamp") {
    const KnowledgeBase kb = load_kb_file(DYNES_DATA_DIR "/reactor.krl");
    const Scenario sc = load_scenario(DYNES_DATA_DIR "/reactor.scn.jsonl");
    const Trace a = run_simulation(kb, sc, 50, config_from_kb(kb), {nullptr, std::string("a")});
    const Trace b = run_simulation(kb, sc, 50, config_from_kb(kb), {nullptr, std::string("b")});
    CHECK(a.records == b.records);
    std::string ja = trace_to_jsonl(a), jb = trace_to_jsonl(b);
    CHECK(ja.substr(ja.find('\n')) == jb.substr(jb.find('\n')));
}

TEST_CASE("verify_replay") {
    const KnowledgeBase kb = load_kb_file(DYNES_DATA_DIR "/reactor.krl");
    const Scenario sc = load_scenario(DYNES_DATA_DIR "/reactor.scn.jsonl");
    const std::string text = trace_to_jsonl(run_simulation(kb, sc, 20, config_from_kb(kb)));

    const ReplayResult ok = verify_replay(text, kb, sc);
    CHECK(ok.ok);
    CHECK_FALSE(ok.divergent_tick);

    // tamper with the record of tick 7
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 21);
    const auto pos = lines[8].find("\"tick\":7");
    REQUIRE(pos != std::string::npos);
    lines[8].replace(pos, 8, "\"tick\":70");
    std::string edited;
    for (const auto& l : lines) edited += l + "\n";
    lines[8].replace(pos, 9, "\"tick\":7");
    const ReplayResult bad = verify_replay(edited, kb, sc);
    CHECK_FALSE(bad.ok);
    CHECK(bad.divergent_tick == 7);

    std::string truncated;
    for (std::size_t i = 0; i < 15; ++i) truncated += lines[i] + "\n";
    CHECK(verify_replay(truncated, kb, sc).divergent_tick == 14);

    const KnowledgeBase other = parse_kb(kSmall);
    CHECK_THROWS_AS(verify_replay(text, other, sc), ReplayError);
    CHECK_THROWS_AS(verify_replay(text, kb, Scenario{}), ReplayError);
    CHECK_THROWS_AS(verify_replay("", kb, sc), ReplayError);
}

TEST_CASE("reactor demo matches the step-through oracle") {
    const KnowledgeBase kb = load_kb_file(DYNES_DATA_DIR "/reactor.krl");
    const Scenario sc = load_scenario(DYNES_DATA_DIR "/reactor.scn.jsonl");
    const Trace t = run_simulation(kb, sc, 50, config_from_kb(kb), kFixed);
    const reactor_oracle::Expected want = reactor_oracle::step_through(sc, 50);

    std::vector<int> spikes, pressurized_open, pressurized_close;
    std::optional<int> alarm_tick;
    double alarm_cf = 0;
    for (const auto& r : t.records) {
        for (const auto& o : r.origins) {
            if (o.object == "Spike") spikes.push_back(r.tick);
            if (o.object == "Pressurized" && o.kind == "open") pressurized_open.push_back(r.tick);
            if (o.object == "Pressurized" && o.kind == "close") pressurized_close.push_back(r.tick);
        }
        for (const auto& c : r.control_actions)
            if (c.ref == "plant.alarm" && !alarm_tick) {
                alarm_tick = r.tick;
                alarm_cf = c.value.certainty();
            }
    }
    CHECK(spikes == want.spike_origins);
    CHECK(pressurized_open == std::vector<int>{want.open_tick});
    CHECK(pressurized_close == std::vector<int>{want.close_tick});
    CHECK(t.records[0].anomalies.size() == 1);
    REQUIRE(alarm_tick);
    CHECK(*alarm_tick == want.alarm_tick);
    CHECK(std::abs(alarm_cf - want.alarm_certainty) <= 1e-12);
}
