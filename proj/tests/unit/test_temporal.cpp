#include <doctest.h>

#include <map>

#include "dynes/kb/parser.hpp"
#include "dynes/temporal/allen.hpp"
#include "dynes/temporal/event_flow.hpp"

using namespace dynes;

namespace {

const KnowledgeBase& kb() {
    static const KnowledgeBase k = parse_kb(R"(
object x { t: number; p: number; }
event E { origin: x.t > 90; }
interval I { open: x.p > 10; close: x.p < 8; }
)");
    return k;
}

/// Feeds scripted condition truths: name -> truth at this tick.
struct Script {
    std::map<const Expr*, bool> now;
    ConditionEval eval() const {
        return [this](const Expr& e) {
            auto it = now.find(&e);
            return it != now.end() && it->second ? TruthValue::truth() : TruthValue::falsity();
        };
    }
};

const Expr& origin() { return kb().events[0].origin; }
const Expr& open() { return kb().intervals[0].open; }
const Expr& close() { return kb().intervals[0].close; }

Occurrence iv(int a, int b) { return {a, b}; }
Occurrence pt(int p) { return {p, p}; }

}  // namespace

TEST_CASE("rising edge counts origins once while the condition holds") {
    EventFlow flow(kb());
    Script s;
    const bool temps[] = {false, false, false, false, true, true, false, true};  // x.t > 90 per tick
    for (int tick = 0; tick < 8; ++tick) {
        s.now[&origin()] = temps[tick];
        const auto o = flow.interpret_tick(tick, s.eval(), 0.5);
        CHECK(o.originated(0) == (tick == 4 || tick == 7));
        if (tick == 4 || tick == 5) CHECK(flow.count(0) == 1);
    }
    CHECK(flow.count(0) == 2);
    CHECK(flow.history(0)[1].start == 7);
}

TEST_CASE("NE conditions never originate") {
    EventFlow flow(kb());
    const auto o = flow.interpret_tick(0, [](const Expr&) { return TruthValue::ne(); }, 0.5);
    CHECK(o.events.empty());
    CHECK(flow.count(0) == 0);
}

TEST_CASE("interval lifecycle and .l") {
    EventFlow flow(kb());
    Script s;
    auto step = [&](int tick, bool o, bool c) {
        s.now[&open()] = o;
        s.now[&close()] = c;
        return flow.interpret_tick(tick, s.eval(), 0.5);
    };
    const int I = 1;
    step(0, false, false);
    CHECK(flow.length(I, 0) == std::nullopt);
    step(1, true, false);
    CHECK(flow.history(I).back().open());
    CHECK(flow.length(I, 1) == 0);
    step(2, true, false);
    step(3, true, false);
    CHECK(flow.length(I, 3) == 2);
    CHECK(flow.active(I, 3));
    auto o = step(4, false, true);
    CHECK(o.closed == std::vector<int>{I});
    CHECK(flow.history(I).back() == Occurrence{1, 4});
    step(5, false, true);
    CHECK(flow.length(I, 9) == 3);
    CHECK_FALSE(flow.active(I, 5));
    CHECK(flow.count(I) == 1);
}

TEST_CASE("close before open is an anomaly without an occurrence") {
    EventFlow flow(kb());
    Script s;
    s.now[&open()] = false;
    s.now[&close()] = false;
    flow.interpret_tick(0, s.eval(), 0.5);
    flow.interpret_tick(1, s.eval(), 0.5);
    s.now[&close()] = true;
    const auto o = flow.interpret_tick(2, s.eval(), 0.5);
    REQUIRE(o.anomalies.size() == 1);
    CHECK(o.anomalies[0].tick == 2);
    CHECK(o.anomalies[0].kind == Anomaly::Kind::CloseBeforeOpen);
    CHECK(o.anomalies[0].message() == "termination of an interval before its opening");
    CHECK(flow.count(1) == 0);
    CHECK(flow.anomalies().size() == 1);
}

TEST_CASE("simultaneous open and close edges give a degenerate occurrence") {
    EventFlow flow(kb());
    Script s;
    s.now[&open()] = true;
    s.now[&close()] = true;
    flow.interpret_tick(0, s.eval(), 0.5);
    CHECK(flow.history(1).back() == Occurrence{0, 0});
    CHECK(flow.length(1, 5) == 0);
}

TEST_CASE("ticks must be consecutive") {
    EventFlow flow(kb());
    Script s;
    CHECK_THROWS_AS(flow.interpret_tick(1, s.eval(), 0.5), std::invalid_argument);
    flow.interpret_tick(0, s.eval(), 0.5);
    CHECK_THROWS_AS(flow.interpret_tick(0, s.eval(), 0.5), std::invalid_argument);
}

TEST_CASE("relation examples") {
    const auto I = TemporalKind::Interval;
    const auto E = TemporalKind::Event;
    CHECK(relation_holds(Connective::Before, iv(1, 3), I, iv(4, 6), I, 10) == TruthValue::truth());
    CHECK(relation_holds(Connective::Overlaps, iv(1, 4), I, iv(2, 6), I, 10) == TruthValue::truth());
    CHECK(relation_holds(Connective::During, pt(5), E, iv(3, 7), I, 10) == TruthValue::truth());
    CHECK(relation_holds(Connective::Starts, pt(3), E, iv(3, 7), I, 10) == TruthValue::truth());
    CHECK(relation_holds(Connective::Finishes, pt(7), E, iv(3, 7), I, 10) == TruthValue::truth());
    CHECK(relation_holds(Connective::Equals, pt(7), E, pt(7), E, 10) == TruthValue::truth());
    CHECK_THROWS_AS(relation_holds(Connective::Meets, pt(1), E, pt(2), E, 10), std::invalid_argument);
    CHECK_THROWS_AS(relation_holds(Connective::Before, iv(1, 2), I, pt(3), E, 10), std::invalid_argument);
    CHECK(relation_holds(Connective::Before, nullptr, E, nullptr, E, 3).is_ne());
}

TEST_CASE("open intervals end provisionally at now") {
    const Occurrence open{2, std::nullopt};
    const auto I = TemporalKind::Interval;
    CHECK(relation_holds(Connective::Before, open, I, iv(6, 8), I, 4) == TruthValue::truth());
    CHECK(relation_holds(Connective::Before, open, I, iv(6, 8), I, 7) == TruthValue::falsity());
    CHECK(relation_holds(Connective::Overlaps, open, I, iv(6, 8), I, 7) == TruthValue::truth());
}

TEST_CASE("exactly one of the thirteen relations holds for every interval pair") {
    using enum Connective;
    const Connective basic[] = {Before, Meets, Overlaps, Starts, During, Finishes};
    const auto I = TemporalKind::Interval;
    int pairs = 0;
    for (int x1 = 0; x1 <= 6; ++x1)
        for (int x2 = x1 + 1; x2 <= 6; ++x2)
            for (int y1 = 0; y1 <= 6; ++y1)
                for (int y2 = y1 + 1; y2 <= 6; ++y2) {
                    const Occurrence x = iv(x1, x2);
                    const Occurrence y = iv(y1, y2);
                    int holding = relation_holds(Equals, x, I, y, I, 99).degree() == 1.0;
                    for (Connective c : basic) {
                        holding += relation_holds(c, x, I, y, I, 99).degree() == 1.0;
                        holding += relation_holds(c, y, I, x, I, 99).degree() == 1.0;
                    }
                    REQUIRE(holding == 1);
                    CHECK(relation_holds(After, x, I, y, I, 99) == relation_holds(Before, y, I, x, I, 99));
                    ++pairs;
                }
    CHECK(pairs == 21 * 21);
}

TEST_CASE("exactly one of b, e, a holds for point pairs") {
    const auto E = TemporalKind::Event;
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; q <= 6; ++q) {
            int holding = 0;
            for (Connective c : {Connective::Before, Connective::Equals, Connective::After})
                holding += relation_holds(c, pt(p), E, pt(q), E, 99).degree() == 1.0;
            REQUIRE(holding == 1);
        }
}

TEST_CASE("temporal formulas") {
    const KnowledgeBase k = parse_kb(R"(
object x { t: number; p: number; b: bool; }
event E { origin: x.t > 90; }
event F { origin: x.t > 95; }
interval I { open: x.p > 10; close: x.p < 8; }
rule r1 { if: E.c > 0; then: x.b := true; }
rule r2 { if: (E b I) & (I.l > 2); then: x.b := true; }
rule r3 { if: F b E; then: x.b := true; }
rule r4 { if: ~E v x.b; then: x.b := true; }
)");
    EventFlow flow(k);
    std::map<std::string, std::vector<bool>> plan{
        {"E", {false, true, false, false, false, false, false, false}},
        {"Iopen", {false, false, false, true, true, true, true, false}},
        {"Iclose", {false, false, false, false, false, false, false, true}},
    };
    for (int tick = 0; tick < 8; ++tick) {
        flow.interpret_tick(
            tick,
            [&](const Expr& e) {
                bool v = false;
                if (&e == &k.events[0].origin) v = plan["E"][tick];
                if (&e == &k.intervals[0].open) v = plan["Iopen"][tick];
                if (&e == &k.intervals[0].close) v = plan["Iclose"][tick];
                return v ? TruthValue::truth() : TruthValue::falsity();
            },
            0.5);
    }
    CHECK(flow.history(2).back() == Occurrence{3, 7});
    CHECK(eval_temporal_formula(k.rules[0].temporal_lhs, flow, 7) == TruthValue::truth());
    CHECK(eval_temporal_formula(k.rules[1].temporal_lhs, flow, 7) == TruthValue::truth());
    CHECK(eval_temporal_formula(k.rules[2].temporal_lhs, flow, 7).is_ne());
    CHECK_THROWS_AS(eval_temporal_formula(k.rules[3].temporal_lhs, flow, 7), std::logic_error);
    const auto atoms = [](const Expr&, NodeId) { return TruthValue::falsity(); };
    CHECK(eval_temporal_formula(k.rules[3].temporal_lhs, flow, 7, atoms) == TruthValue::truth());
}
