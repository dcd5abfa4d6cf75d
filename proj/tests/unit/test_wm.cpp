#include <doctest.h>

#include "dynes/kb/parser.hpp"
#include "dynes/wm/blackboard.hpp"
#include "dynes/wm/working_memory.hpp"

using namespace dynes;

namespace {

const KnowledgeBase& kb() {
    static const KnowledgeBase k = parse_kb("object x { t: number; alarm: bool; } object y { a: number; }");
    return k;
}

}  // namespace

TEST_CASE("assert onto empty memory") {
    WorkingMemory wm(kb());
    CHECK(wm.lookup("x.t") == nullptr);
    CHECK(wm.assert_fact("x.t", Value(95.0), 4, Provenance::external()) == AssertOutcome::Inserted);
    const Fact* f = wm.lookup("x.t");
    REQUIRE(f);
    CHECK(f->value.as_crisp() == 95.0);
    CHECK(f->asserted_at == 4);
    CHECK(wm.history(f->attr).empty());
}

TEST_CASE("later assertion supersedes and archives") {
    WorkingMemory wm(kb());
    wm.assert_fact("x.t", Value(95.0), 4, Provenance::external());
    wm.assert_fact("x.t", Value(97.0), 5, Provenance::external());
    const Fact* f = wm.lookup("x.t");
    CHECK(f->value.as_crisp() == 97.0);
    REQUIRE(wm.history(f->attr).size() == 1);
    CHECK(wm.history(f->attr)[0].value.as_crisp() == 95.0);
}

TEST_CASE("equal payloads from two rules in one tick merge certainty") {
    WorkingMemory wm(kb());
    wm.assert_fact("x.alarm", Value(true, 0.5), 4, Provenance::rule("r1"));
    CHECK(wm.assert_fact("x.alarm", Value(true, 0.5), 4, Provenance::rule("r2")) == AssertOutcome::Merged);
    const Fact* f = wm.lookup("x.alarm");
    CHECK(f->value.certainty() == 0.75);
    CHECK(wm.history(f->attr).empty());
    CHECK(wm.conflicts().empty());
}

TEST_CASE("different payloads from two rules in one tick: newer wins, conflict logged") {
    WorkingMemory wm(kb());
    wm.assert_fact("x.alarm", Value(true), 4, Provenance::rule("r1"));
    CHECK(wm.assert_fact("x.alarm", Value(false), 4, Provenance::rule("r2")) == AssertOutcome::Replaced);
    CHECK(wm.lookup("x.alarm")->value.as_bool() == false);
    REQUIRE(wm.conflicts().size() == 1);
    CHECK(wm.conflicts()[0].overridden.provenance.source == "r1");
}

TEST_CASE("undeclared references and going back in time are rejected") {
    WorkingMemory wm(kb());
    CHECK_THROWS_AS(wm.assert_fact("x.q", Value(1.0), 0, Provenance::external()), UndeclaredReference);
    CHECK_THROWS_AS(wm.assert_fact(99, Value(1.0), 0, Provenance::external()), UndeclaredReference);
    wm.assert_fact("x.t", Value(1.0), 3, Provenance::external());
    CHECK_THROWS_AS(wm.assert_fact("x.t", Value(1.0), 2, Provenance::external()), std::invalid_argument);
}

TEST_CASE("stamps move only when the value changes") {
    WorkingMemory wm(kb());
    wm.assert_fact("x.t", Value(1.0), 0, Provenance::external());
    const auto s = wm.lookup("x.t")->stamp;
    CHECK(wm.assert_fact("x.t", Value(1.0), 1, Provenance::external()) == AssertOutcome::Refreshed);
    CHECK(wm.lookup("x.t")->stamp == s);
    CHECK(wm.lookup("x.t")->asserted_at == 1);
    CHECK(wm.assert_fact("x.t", Value(1.0), 1, Provenance::external()) == AssertOutcome::Unchanged);
    wm.assert_fact("x.t", Value(2.0), 2, Provenance::external());
    CHECK(wm.lookup("x.t")->stamp > s);
}

TEST_CASE("fact count per ref is one plus history length") {
    WorkingMemory wm(kb());
    for (int i = 0; i < 10; ++i) wm.assert_fact("y.a", Value(static_cast<double>(i % 3)), i, Provenance::external());
    const int a = *kb().find_attribute("y.a");
    CHECK(wm.history(a).size() + 1 == 10);
}

TEST_CASE("snapshot diff") {
    WorkingMemory wm(kb());
    const auto s0 = wm.snapshot();
    CHECK(snapshot_diff(kb(), s0, wm.snapshot()).empty());
    wm.assert_fact("y.a", Value(1.0), 0, Provenance::external());
    const auto s1 = wm.snapshot();
    auto d = snapshot_diff(kb(), s0, s1);
    REQUIRE(d.size() == 1);
    CHECK_FALSE(d[0].before);
    wm.assert_fact("x.t", Value(1.0), 0, Provenance::external());
    d = snapshot_diff(kb(), s0, wm.snapshot());
    REQUIRE(d.size() == 2);
    CHECK(d[0].ref == "x.t");
    CHECK(d[1].ref == "y.a");
}

TEST_CASE("cache entries are invalidated by their dependencies only") {
    WorkingMemory wm(kb());
    const int t = *kb().find_attribute("x.t");
    const int a = *kb().find_attribute("y.a");
    wm.cache().store(0, 1, CacheEntry{TruthValue::truth(), {t}, wm.last_stamp()});
    wm.cache().store(0, 2, CacheEntry{TruthValue::falsity(), {a}, wm.last_stamp()});
    wm.assert_fact(t, Value(3.0), 0, Provenance::external());
    CHECK(wm.cache().find(0, 1) == nullptr);
    REQUIRE(wm.cache().find(0, 2) != nullptr);
    CHECK(wm.cache().find(0, 2)->truth == TruthValue::falsity());
}

TEST_CASE("blackboard entries are handed out once") {
    Blackboard bb;
    bb.post(ControlAction{1, "r", 0, "x.alarm", Value(true)});
    bb.post(OriginNotice{1, 0, OriginNotice::Kind::Origin});
    CHECK(bb.take_controls().size() == 1);
    CHECK(bb.take_controls().empty());
    CHECK(bb.take_origins().size() == 1);
    CHECK(bb.empty());
}
