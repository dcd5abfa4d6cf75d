#include <doctest.h>

#include "dynes/engine/consultation.hpp"
#include "dynes/kb/parser.hpp"

using namespace dynes;

namespace {

const char* kExclusive = R"(
object x { a: bool; b1: bool; b2: bool; c1: bool; c2: bool; h: enum {m, n}; }
rule hm { if: x.a & x.b1 & x.b2; then: x.h := "m"; }
rule hn { if: ~x.a & x.c1 & x.c2; then: x.h := "n"; }
)";

std::vector<std::string> names(const KnowledgeBase& kb, const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int id : ids) out.push_back(kb.attribute_name(id));
    return out;
}

}  // namespace

TEST_CASE("frequency first") {
    const KnowledgeBase kb = parse_kb(R"(
object o { p: int [1, 10]; q: bool; g: bool; }
rule r1 { if: o.q & o.p > 1; then: o.g := true; }
rule r2 { if: o.p > 2; then: o.g := true; }
rule r3 { if: o.p > 3; then: o.g := true; }
rule r4 { if: o.p > 4; then: o.g := true; }
rule r5 { if: o.p > 5 & o.q; then: o.g := true; }
)");
    const int p = *kb.find_attribute("o.p");
    const int q = *kb.find_attribute("o.q");
    CHECK(rank_question_candidates({q, p}, kb) == std::vector<int>{p, q});
    CHECK(rank_question_candidates({q}, kb) == std::vector<int>{q});
}

TEST_CASE("domain size breaks frequency ties") {
    const KnowledgeBase kb = parse_kb(R"(
object o { q: enum {yes, no}; p: int [1, 10]; g: bool; }
rule r1 { if: o.q = "yes" & o.p > 3; then: o.g := true; }
)");
    CHECK(names(kb, rank_question_candidates({0, 1}, kb)) == std::vector<std::string>{"o.p", "o.q"});
}

TEST_CASE("leftmost position, then exclusive pairs, then declaration order") {
    const KnowledgeBase kb = parse_kb(R"(
object o { s: bool; t: bool; u: bool; v: bool; g: bool; }
rule r1 { if: o.t & o.s; then: o.g := true; }
rule r2 { if: o.u & o.v; then: o.g := true; }
rule r3 { if: ~o.v & o.u; then: o.g := false; }
)");
    // t and s: frequency 1, domain 2; t is leftmost
    CHECK(names(kb, rank_question_candidates({0, 1}, kb)) == std::vector<std::string>{"o.t", "o.s"});
    // u and v: frequency 2, both leftmost at 0 somewhere; v is in an exclusive pair
    CHECK(names(kb, rank_question_candidates({2, 3}, kb)) == std::vector<std::string>{"o.v", "o.u"});
    CHECK(mutually_exclusive_parameters(kb) == std::set<int>{3});
}

TEST_CASE("goal concluded without questions") {
    const KnowledgeBase kb = parse_kb(R"(
object o { g: bool; }
rule r { then: o.g := true; }
)");
    Consultation c(kb, "o.g");
    CHECK(c.next() == nullptr);
    REQUIRE(c.finished());
    CHECK(c.result().value->as_bool());
    CHECK(c.log().empty());
}

TEST_CASE("mutually exclusive evidence prunes the other rule") {
    const KnowledgeBase kb = parse_kb(kExclusive);
    Consultation c(kb, "x.h");
    const Question* q = c.next();
    REQUIRE(q);
    CHECK(q->ref == "x.a");
    c.answer(Value(true));
    std::vector<std::string> asked{"x.a"};
    while (const Question* nq = c.next()) {
        asked.push_back(nq->ref);
        c.answer(Value(true));
    }
    CHECK(asked == std::vector<std::string>{"x.a", "x.b1", "x.b2"});
    CHECK(c.result().value->as_term() == "m");
    CHECK(c.result().fired == std::vector<std::string>{"hm"});
}

TEST_CASE("all unknown gives undetermined") {
    const KnowledgeBase kb = parse_kb(kExclusive);
    Consultation c(kb, "x.h");
    int asked = 0;
    while (c.next()) {
        c.answer_unknown();
        ++asked;
    }
    CHECK(asked == 5);
    CHECK_FALSE(c.result().value);
}

TEST_CASE("answers are validated and never asked twice") {
    const KnowledgeBase kb = parse_kb(R"(
object o { p: int [1, 10]; mode: enum {on, off}; g: bool; }
rule r { if: o.p > 3 & o.mode = "on"; then: o.g := true; }
)");
    Consultation c(kb, "o.g");
    const Question* q = c.next();
    REQUIRE(q);
    CHECK(q->ref == "o.p");
    CHECK(q->domain == "int [1, 10]");
    CHECK_THROWS_AS(c.answer(Value(11.0)), InvalidAnswer);
    CHECK_THROWS_AS(c.answer(Value(true)), InvalidAnswer);
    c.answer(parse_answer("7", kb, q->attr));
    q = c.next();
    REQUIRE(q);
    CHECK(q->domain == "enum {on, off}");
    CHECK_THROWS_AS(parse_answer("maybe", kb, q->attr), InvalidAnswer);
    c.answer(parse_answer("on", kb, q->attr));
    CHECK(c.next() == nullptr);
    CHECK(c.result().value->as_bool());
    CHECK_THROWS_AS(c.answer(Value(true)), std::logic_error);
}

TEST_CASE("goal without rules is asked directly") {
    const KnowledgeBase kb = parse_kb("object o { g: number; out: number output; }");
    Consultation c(kb, "o.g");
    REQUIRE(c.next());
    c.answer(parse_answer("inexact(3, 1)", kb, 0));
    CHECK(c.next() == nullptr);
    CHECK(c.result().value->as_inexact() == Inexact{3, 1});

    Consultation out(kb, "o.out");
    CHECK(out.next() == nullptr);
    CHECK_FALSE(out.result().value);
}

TEST_CASE("subgoals are derived before asking their own parameters") {
    const KnowledgeBase kb = parse_kb(R"(
object o { fuel: bool; spark: bool; engine_ok: bool; starts: bool; battery: number [0, 15]; }
rule spark_ok { if: o.battery > 11; then: o.spark := true; }
rule runs { if: o.fuel & o.spark; then: o.engine_ok := true; }
rule start { if: o.engine_ok; then: o.starts := true; }
)");
    Consultation c(kb, "o.starts");
    std::vector<std::string> asked;
    while (const Question* q = c.next()) {
        asked.push_back(q->ref);
        c.answer(q->ref == "o.battery" ? Value(12.5) : Value(true));
    }
    CHECK(asked == std::vector<std::string>{"o.battery", "o.fuel"});
    CHECK(c.result().fired == std::vector<std::string>{"spark_ok", "runs", "start"});
}

TEST_CASE("parse_answer forms") {
    const KnowledgeBase kb = parse_kb(R"(
type T { base: number; range: [0, 100]; term hot: (50, 0) (100, 1); }
object o { t: T; b: bool; s: string; }
)");
    CHECK(parse_answer(" 42 ", kb, 0).as_crisp() == 42);
    CHECK(parse_answer("range(1, 2)", kb, 0).as_range() == Range{1, 2});
    CHECK(parse_answer("{3, 1}", kb, 0).as_set().members == std::vector<double>{1, 3});
    CHECK(parse_answer("hot", kb, 0).as_term() == "hot");
    CHECK(parse_answer("\"hot\"", kb, 0).as_term() == "hot");
    CHECK_THROWS_AS(parse_answer("cold", kb, 0), InvalidAnswer);
    CHECK(parse_answer("yes", kb, 1).as_bool());
    CHECK(parse_answer("\"any text\"", kb, 2).as_term() == "any text");
    CHECK(describe_domain(kb, 0) == "number [0, 100] or term {hot}");
}
