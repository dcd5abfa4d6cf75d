#include <doctest.h>

#include <string>

#include "dynes/kb/parser.hpp"
#include "dynes/kb/validate.hpp"

using namespace dynes;

namespace {

const char* kDecls = R"(
object x { t: number; p: number; on: bool; mode: enum {idle, run}; }
event E { origin: x.t > 90; }
event F { origin: x.t > 95; }
interval I { open: x.p > 10; close: x.p < 8; }
interval J { open: x.p > 12; close: x.p < 9; }
)";

std::vector<Diagnostic> diagnose(const std::string& rules) {
    return validate_kb(parse_kb_unchecked(std::string(kDecls) + rules));
}

bool mentions(const std::vector<Diagnostic>& ds, const std::string& text) {
    for (const auto& d : ds)
        if (d.message.find(text) != std::string::npos) return true;
    return false;
}

const char* name_of(TemporalKind k) { return k == TemporalKind::Event ? "E" : "I"; }
const char* other_of(TemporalKind k) { return k == TemporalKind::Event ? "F" : "J"; }

}  // namespace

TEST_CASE("clean knowledge base has no diagnostics") {
    CHECK(diagnose("rule r { if: E.c > 3; then: x.on := true; }").empty());
    CHECK(diagnose("rule r { if: E b F; then: x.on := true; }").empty());
}

TEST_CASE("unknown trigger") {
    const auto ds = diagnose("rule r response G { then: x.on := true; }");
    REQUIRE(ds.size() == 1);
    CHECK(mentions(ds, "unknown trigger"));
}

TEST_CASE("duplicate rule name") {
    const auto ds = diagnose("rule r1 { then: x.on := true; } rule r1 { then: x.on := false; }");
    REQUIRE(ds.size() == 1);
    CHECK(mentions(ds, "duplicate rule name"));
    CHECK(ds[0].loc.line > 1);
}

TEST_CASE("events may not meet") {
    const auto ds = diagnose("rule r { if: E m F; then: x.on := true; }");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].message == "connective m not allowed between events");
    CHECK_THROWS_AS(parse_kb(std::string(kDecls) + "rule r { if: E m F; then: x.on := true; }"), KrlError);
}

TEST_CASE("relation grammar gate accepts exactly 16 combinations") {
    int accepted = 0;
    for (TemporalKind lk : {TemporalKind::Event, TemporalKind::Interval}) {
        for (TemporalKind rk : {TemporalKind::Event, TemporalKind::Interval}) {
            for (Connective c : kAllConnectives) {
                const std::string rhs = lk == rk ? other_of(rk) : name_of(rk);
                const std::string src = std::string("rule r { if: ") + name_of(lk) + " " + connective_letter(c) +
                                        " " + rhs + "; then: x.on := true; }";
                const bool ok = diagnose(src).empty();
                CHECK(ok == relation_allowed(lk, c, rk));
                accepted += ok;
            }
        }
    }
    CHECK(accepted == 16);
}

TEST_CASE("unresolved references and bad assignments") {
    CHECK(mentions(diagnose("rule r { if: x.q > 1; then: x.on := true; }"), "unresolved reference 'x.q'"));
    CHECK(mentions(diagnose("rule r { if: G; then: x.on := true; }"), "unknown event or interval 'G'"));
    CHECK(mentions(diagnose("rule r { then: y.on := true; }"), "unknown assignment target"));
    CHECK(mentions(diagnose("rule r { then: E.c := 1; }"), "temporal object"));
    CHECK(mentions(diagnose("rule r { then: x.mode := \"off\"; }"), "is not a value of x.mode"));
    CHECK(mentions(diagnose("rule r { if: x.t; then: x.on := true; }"), "not boolean"));
}

TEST_CASE("temporal attributes") {
    CHECK(diagnose("rule r { if: I.l > 2 & E.c = 1; then: x.on := true; }").empty());
    CHECK(mentions(diagnose("rule r { if: E.c > x.t; then: x.on := true; }"), "compared with an integer"));
    CHECK(mentions(diagnose("rule r { if: E.c > 1.5; then: x.on := true; }"), "compared with an integer"));
    CHECK(mentions(diagnose("rule r { if: E.z > 1; then: x.on := true; }"), "expected .c or .l"));
    CHECK(mentions(diagnose("rule r { then: x.t := E.c; }"), "not allowed"));
    const auto ds = validate_kb(parse_kb_unchecked(std::string(kDecls) + "event G { origin: E.c > 1; }"));
    CHECK(mentions(ds, "not allowed in origin condition"));
}

TEST_CASE("periods, certainties and config keys") {
    CHECK(mentions(diagnose("rule r periodic 0 { then: x.on := true; }"), "period must be >= 1"));
    CHECK(mentions(diagnose("rule r cf 1.5 { then: x.on := true; }"), "certainty outside"));
    CHECK(mentions(diagnose("config { speed: 3; }"), "unknown config key"));
    CHECK(mentions(diagnose("config { theta_fire: 0; }"), "theta_fire"));
    CHECK(mentions(diagnose("config { firing_mode: sometimes; }"), "firing_mode"));
    CHECK(diagnose("config { max_firings: 10; alpha_levels: 5; persist_conflict_set: true; }").empty());
}

TEST_CASE("duplicate declarations") {
    CHECK(mentions(diagnose("event E { origin: x.on; }"), "duplicate event name 'E'"));
    CHECK(mentions(diagnose("object E { a: number; }"), "duplicate object name 'E'"));
    CHECK(mentions(diagnose("object y { a: number; a: bool; }"), "duplicate attribute"));
    CHECK(mentions(diagnose("object y { a: Nope; }"), "unknown type 'Nope'"));
}

TEST_CASE("resolve_kb refuses invalid input") {
    KnowledgeBase kb = parse_kb_unchecked("rule r response G { then: x.on := true; }");
    CHECK_THROWS_AS(resolve_kb(kb), std::logic_error);
}
