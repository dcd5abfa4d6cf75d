#include "dynes/kb/parser.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dynes/kb/normalize.hpp"
#include "dynes/kb/validate.hpp"
#include "kb/lexer.hpp"

namespace dynes {

std::string Diagnostic::to_string() const {
    return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags) {
    if (diags.empty()) return "invalid knowledge base";
    std::string s = diags.front().to_string();
    if (diags.size() > 1) s += " (+" + std::to_string(diags.size() - 1) + " more)";
    return s;
}

}  // namespace

KrlError::KrlError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

using krl::Tok;
using krl::Token;

// Logical nodes are conditions; attribute refs and boolean literals may be
// either a value or a condition depending on their type.
enum class Sort { Value, Truth, Either };

struct Parsed {
    NodeId id;
    Sort sort;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::string source_name) : toks_(std::move(toks)) {
        kb_.source_name = std::move(source_name);
    }

    KnowledgeBase run() {
        while (!at(Tok::End)) declaration();
        return std::move(kb_);
    }

private:
    // ── token plumbing ──
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void error_expected(std::initializer_list<std::string_view> what) const {
        std::string msg = "expected ";
        if (what.size() > 1) msg += "one of ";
        bool first = true;
        for (auto w : what) {
            if (!first) msg += ", ";
            msg += w;
            first = false;
        }
        const Token& t = peek();
        msg += " but found ";
        msg += t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
        throw KrlError({Diagnostic{t.loc, msg}});
    }
    [[noreturn]] void error_at(SourceLoc loc, std::string msg) const {
        throw KrlError({Diagnostic{loc, std::move(msg)}});
    }

    const Token& expect(Tok k) {
        if (!at(k)) error_expected({krl::describe(k)});
        return advance();
    }
    void expect_word(std::string_view w) {
        if (!at_word(w)) {
            std::string quoted = "'" + std::string(w) + "'";
            error_expected({quoted});
        }
        advance();
    }
    std::string identifier() { return expect(Tok::Ident).text; }

    double signed_number() {
        bool neg = false;
        if (at(Tok::Minus)) {
            advance();
            neg = true;
        }
        const double v = expect(Tok::Number).number;
        return neg ? -v : v;
    }

    // ── declarations ──
    void declaration() {
        if (!at(Tok::Ident)) error_expected({"'config'", "'type'", "'object'", "'event'", "'interval'", "'rule'"});
        const std::string& w = peek().text;
        if (w == "config") return config_block();
        if (w == "type") return type_decl();
        if (w == "object") return object_decl();
        if (w == "event") return event_decl();
        if (w == "interval") return interval_decl();
        if (w == "rule") return rule_decl();
        error_expected({"'config'", "'type'", "'object'", "'event'", "'interval'", "'rule'"});
    }

    void config_block() {
        advance();
        expect(Tok::LBrace);
        while (!at(Tok::RBrace)) {
            ConfigSetting s;
            s.loc = peek().loc;
            s.key = identifier();
            expect(Tok::Colon);
            if (at(Tok::Number) || at(Tok::Minus)) {
                s.value = signed_number();
            } else if (at_word("true") || at_word("false")) {
                s.value = advance().text == "true";
            } else if (at(Tok::Ident) || at(Tok::String)) {
                s.value = advance().text;
            } else {
                error_expected({"number", "identifier", "string"});
            }
            expect(Tok::Semi);
            kb_.config.push_back(std::move(s));
        }
        expect(Tok::RBrace);
    }

    std::optional<Range> optional_range() {
        if (!at(Tok::LBracket)) return std::nullopt;
        const SourceLoc loc = advance().loc;
        const double lo = signed_number();
        expect(Tok::Comma);
        const double hi = signed_number();
        expect(Tok::RBracket);
        if (!(lo <= hi)) error_at(loc, "range lower bound exceeds upper bound");
        return Range{lo, hi};
    }

    MembershipFunction breakpoint_list(bool parenthesized_list) {
        const SourceLoc loc = peek().loc;
        std::vector<Breakpoint> pts;
        auto pair = [&] {
            expect(Tok::LParen);
            Breakpoint b;
            b.x = signed_number();
            expect(Tok::Comma);
            b.mu = signed_number();
            expect(Tok::RParen);
            pts.push_back(b);
        };
        if (parenthesized_list) {
            expect(Tok::LParen);
            pair();
            while (at(Tok::Comma)) {
                advance();
                pair();
            }
            expect(Tok::RParen);
        } else {
            pair();
            while (at(Tok::LParen) || at(Tok::Comma)) {
                if (at(Tok::Comma)) advance();
                pair();
            }
        }
        try {
            return MembershipFunction(std::move(pts));
        } catch (const std::invalid_argument& e) {
            error_at(loc, e.what());
        }
    }

    std::vector<std::string> symbol_list() {
        std::vector<std::string> out;
        out.push_back(identifier());
        while (at(Tok::Comma)) {
            advance();
            out.push_back(identifier());
        }
        return out;
    }

    void type_decl() {
        advance();
        TypeDecl t;
        t.loc = peek().loc;
        t.name = identifier();
        expect(Tok::LBrace);
        while (!at(Tok::RBrace)) {
            if (at_word("base")) {
                advance();
                expect(Tok::Colon);
                const SourceLoc loc = peek().loc;
                const std::string b = identifier();
                if (b == "number") t.base = BaseType::Number;
                else if (b == "int") t.base = BaseType::Integer;
                else if (b == "bool") t.base = BaseType::Boolean;
                else if (b == "enum") t.base = BaseType::Symbol;
                else if (b == "string") t.base = BaseType::String;
                else error_at(loc, "unknown base type '" + b + "'");
                expect(Tok::Semi);
            } else if (at_word("range")) {
                advance();
                expect(Tok::Colon);
                if (!at(Tok::LBracket)) error_expected({"'['"});
                t.range = optional_range();
                expect(Tok::Semi);
            } else if (at_word("values")) {
                advance();
                expect(Tok::Colon);
                t.symbols = symbol_list();
                expect(Tok::Semi);
            } else if (at_word("term")) {
                advance();
                const SourceLoc loc = peek().loc;
                std::string term = identifier();
                expect(Tok::Colon);
                MembershipFunction mf = breakpoint_list(false);
                if (!t.terms.emplace(term, std::move(mf)).second) error_at(loc, "duplicate term '" + term + "'");
                expect(Tok::Semi);
            } else {
                error_expected({"'base'", "'range'", "'values'", "'term'", "'}'"});
            }
        }
        expect(Tok::RBrace);
        kb_.types.push_back(std::move(t));
    }

    void attribute_type(AttributeDecl& a) {
        const SourceLoc loc = peek().loc;
        const std::string w = identifier();
        a.type.loc = loc;
        if (w == "number" || w == "int") {
            a.type.base = w == "number" ? BaseType::Number : BaseType::Integer;
            a.type.range = optional_range();
        } else if (w == "bool") {
            a.type.base = BaseType::Boolean;
        } else if (w == "string") {
            a.type.base = BaseType::String;
        } else if (w == "enum") {
            a.type.base = BaseType::Symbol;
            expect(Tok::LBrace);
            a.type.symbols = symbol_list();
            expect(Tok::RBrace);
        } else {
            a.type_name = w;
        }
    }

    void object_decl() {
        advance();
        ObjectDecl o;
        o.loc = peek().loc;
        o.name = identifier();
        expect(Tok::LBrace);
        while (!at(Tok::RBrace)) {
            AttributeDecl a;
            a.loc = peek().loc;
            a.name = identifier();
            expect(Tok::Colon);
            attribute_type(a);
            if (at_word("output")) {
                advance();
                a.output = true;
            }
            expect(Tok::Semi);
            o.attributes.push_back(std::move(a));
        }
        expect(Tok::RBrace);
        kb_.objects.push_back(std::move(o));
    }

    Expr condition(std::string_view what) {
        Expr e;
        const SourceLoc loc = peek().loc;
        Parsed p = parse_or(e);
        if (p.sort == Sort::Value) error_at(loc, std::string(what) + " must be a condition, not a value");
        e.set_root(p.id);
        return normalize_lhs(e);
    }

    void event_decl() {
        advance();
        EventDecl ev;
        ev.loc = peek().loc;
        ev.name = identifier();
        expect(Tok::LBrace);
        expect_word("origin");
        expect(Tok::Colon);
        ev.origin = condition("origin condition");
        expect(Tok::Semi);
        expect(Tok::RBrace);
        kb_.events.push_back(std::move(ev));
    }

    void interval_decl() {
        advance();
        IntervalDecl iv;
        iv.loc = peek().loc;
        iv.name = identifier();
        expect(Tok::LBrace);
        bool seen_open = false;
        bool seen_close = false;
        while (!at(Tok::RBrace)) {
            const SourceLoc loc = peek().loc;
            if (at_word("open") && !seen_open) {
                advance();
                expect(Tok::Colon);
                iv.open = condition("open condition");
                seen_open = true;
            } else if (at_word("close") && !seen_close) {
                advance();
                expect(Tok::Colon);
                iv.close = condition("close condition");
                seen_close = true;
            } else {
                error_expected({"'open'", "'close'"});
            }
            (void)loc;
            expect(Tok::Semi);
        }
        if (!seen_open || !seen_close) error_at(iv.loc, "interval needs both open and close conditions");
        expect(Tok::RBrace);
        kb_.intervals.push_back(std::move(iv));
    }

    void rule_decl() {
        advance();
        Rule r;
        r.loc = peek().loc;
        r.name = identifier();
        if (at_word("conventional")) {
            advance();
        } else if (at_word("periodic")) {
            advance();
            const Token& t = expect(Tok::Number);
            if (t.number != std::floor(t.number)) error_at(t.loc, "period must be an integer tick count");
            r.kind = RuleKind::Periodic;
            r.period = static_cast<int>(t.number);
        } else if (at_word("response")) {
            advance();
            r.kind = RuleKind::Response;
            r.trigger = identifier();
        }
        if (at_word("cf")) {
            advance();
            r.cf = signed_number();
        }
        expect(Tok::LBrace);
        if (at_word("if")) {
            advance();
            expect(Tok::Colon);
            r.lhs = condition("rule antecedent");
            expect(Tok::Semi);
        }
        expect_word("then");
        expect(Tok::Colon);
        r.actions.push_back(action());
        while (at(Tok::Comma)) {
            advance();
            r.actions.push_back(action());
        }
        expect(Tok::Semi);
        expect(Tok::RBrace);
        kb_.rules.push_back(std::move(r));
    }

    Action action() {
        Action a;
        a.loc = peek().loc;
        a.object = identifier();
        expect(Tok::Dot);
        a.member = identifier();
        expect(Tok::Assign);
        const SourceLoc loc = peek().loc;
        Parsed p = parse_additive(a.value);
        if (p.sort == Sort::Truth) error_at(loc, "assigned expression must be a value");
        a.value.set_root(p.id);
        a.value = normalize_lhs(a.value);
        if (at_word("cf")) {
            advance();
            a.cf = signed_number();
        }
        return a;
    }

    // ── expressions ──
    static Node make(NodeKind k, SourceLoc loc) {
        Node n;
        n.kind = k;
        n.loc = loc;
        return n;
    }

    void require_condition(const Parsed& p, SourceLoc loc) const {
        if (p.sort == Sort::Value) error_at(loc, "expected a condition but found a value");
    }
    void require_value(const Parsed& p, SourceLoc loc) const {
        if (p.sort == Sort::Truth) error_at(loc, "expected a value but found a condition");
    }

    Parsed parse_logic_chain(Expr& e, NodeKind kind, bool (Parser::*at_op)() const, Parsed (Parser::*sub)(Expr&)) {
        const SourceLoc loc = peek().loc;
        Parsed first = (this->*sub)(e);
        if (!(this->*at_op)()) return first;
        require_condition(first, loc);
        Node n = make(kind, loc);
        n.children.push_back(first.id);
        while ((this->*at_op)()) {
            advance();
            const SourceLoc l = peek().loc;
            Parsed next = (this->*sub)(e);
            require_condition(next, l);
            n.children.push_back(next.id);
        }
        return {e.add(std::move(n)), Sort::Truth};
    }

    bool at_or() const { return at_word("v"); }
    bool at_and() const { return at(Tok::Amp); }

    Parsed parse_or(Expr& e) { return parse_logic_chain(e, NodeKind::Or, &Parser::at_or, &Parser::parse_and); }
    Parsed parse_and(Expr& e) { return parse_logic_chain(e, NodeKind::And, &Parser::at_and, &Parser::parse_not); }

    Parsed parse_not(Expr& e) {
        if (!at(Tok::Tilde)) return parse_comparison(e);
        const SourceLoc loc = advance().loc;
        const SourceLoc inner = peek().loc;
        Parsed p = parse_not(e);
        require_condition(p, inner);
        Node n = make(NodeKind::Not, loc);
        n.children.push_back(p.id);
        return {e.add(std::move(n)), Sort::Truth};
    }

    std::optional<CompareOp> comparison_op() const {
        switch (peek().kind) {
        case Tok::Gt: return CompareOp::Gt;
        case Tok::Lt: return CompareOp::Lt;
        case Tok::Eq: return CompareOp::Eq;
        case Tok::Ge: return CompareOp::Ge;
        case Tok::Le: return CompareOp::Le;
        case Tok::Ne: return CompareOp::Ne;
        default: return std::nullopt;
        }
    }

    Parsed parse_comparison(Expr& e) {
        const SourceLoc loc = peek().loc;
        Parsed lhs = parse_additive(e);
        auto op = comparison_op();
        if (!op) return lhs;
        require_value(lhs, loc);
        const SourceLoc oploc = advance().loc;
        const SourceLoc rloc = peek().loc;
        Parsed rhs = parse_additive(e);
        require_value(rhs, rloc);
        if (comparison_op()) error_at(peek().loc, "comparisons cannot be chained");
        Node n = make(NodeKind::Compare, oploc);
        n.compare = *op;
        n.children = {lhs.id, rhs.id};
        return {e.add(std::move(n)), Sort::Truth};
    }

    Parsed parse_arith_chain(Expr& e, Tok op1, ArithOp a1, Tok op2, ArithOp a2, Parsed (Parser::*sub)(Expr&)) {
        const SourceLoc loc = peek().loc;
        Parsed lhs = (this->*sub)(e);
        while (at(op1) || at(op2)) {
            require_value(lhs, loc);
            const Token& t = advance();
            const SourceLoc rloc = peek().loc;
            Parsed rhs = (this->*sub)(e);
            require_value(rhs, rloc);
            Node n = make(NodeKind::Arith, t.loc);
            n.arith = t.kind == op1 ? a1 : a2;
            n.children = {lhs.id, rhs.id};
            lhs = {e.add(std::move(n)), Sort::Value};
        }
        return lhs;
    }

    Parsed parse_additive(Expr& e) {
        return parse_arith_chain(e, Tok::Plus, ArithOp::Add, Tok::Minus, ArithOp::Sub, &Parser::parse_term);
    }
    Parsed parse_term(Expr& e) {
        return parse_arith_chain(e, Tok::Star, ArithOp::Mul, Tok::Slash, ArithOp::Div, &Parser::parse_unary);
    }

    Parsed parse_unary(Expr& e) {
        if (!at(Tok::Minus)) return parse_primary(e);
        const SourceLoc loc = advance().loc;
        const SourceLoc inner = peek().loc;
        Parsed p = parse_unary(e);
        require_value(p, inner);
        Node& target = e.node(p.id);
        if (target.kind == NodeKind::Literal && target.literal->kind() == PayloadKind::Crisp) {
            target.literal = Value(-target.literal->as_crisp());
            target.loc = loc;
            return {p.id, Sort::Value};
        }
        Node n = make(NodeKind::Negate, loc);
        n.children.push_back(p.id);
        return {e.add(std::move(n)), Sort::Value};
    }

    Parsed literal(Expr& e, Value v, SourceLoc loc, Sort sort = Sort::Value) {
        Node n = make(NodeKind::Literal, loc);
        n.literal = std::move(v);
        return {e.add(std::move(n)), sort};
    }

    Parsed parse_primary(Expr& e) {
        const Token& t = peek();
        const SourceLoc loc = t.loc;
        switch (t.kind) {
        case Tok::LParen: {
            advance();
            Parsed inner = parse_or(e);
            expect(Tok::RParen);
            return inner;
        }
        case Tok::Number: return literal(e, Value(advance().number), loc);
        case Tok::String: return literal(e, Value(advance().text), loc);
        case Tok::LBrace: {
            advance();
            std::vector<double> members{signed_number()};
            while (at(Tok::Comma)) {
                advance();
                members.push_back(signed_number());
            }
            expect(Tok::RBrace);
            return literal(e, Value::finite_set(std::move(members)), loc);
        }
        case Tok::Ident: break;
        default: error_expected({"'('", "number", "string", "identifier", "'{'"});
        }

        const std::string word = t.text;
        const bool call = peek(1).kind == Tok::LParen;
        if (word == "true" || word == "false") {
            advance();
            return literal(e, Value(word == "true"), loc, Sort::Either);
        }
        if (word == "inexact" && call) {
            advance();
            expect(Tok::LParen);
            const double c = signed_number();
            expect(Tok::Comma);
            const double h = signed_number();
            expect(Tok::RParen);
            if (!(h >= 0.0)) error_at(loc, "inexact half-width must be >= 0");
            return literal(e, Value(Inexact{c, h}), loc);
        }
        if (word == "range" && call) {
            advance();
            expect(Tok::LParen);
            const double lo = signed_number();
            expect(Tok::Comma);
            const double hi = signed_number();
            expect(Tok::RParen);
            if (!(lo <= hi)) error_at(loc, "range lower bound exceeds upper bound");
            return literal(e, Value(Range{lo, hi}), loc);
        }
        if (word == "mf" && call) {
            advance();
            return literal(e, Value(breakpoint_list(true)), loc);
        }

        advance();
        if (at(Tok::Dot)) {
            advance();
            Node n = make(NodeKind::AttrRef, loc);
            n.object = word;
            n.member = identifier();
            return {e.add(std::move(n)), Sort::Either};
        }
        if (at(Tok::Ident) && connective_from_letter(peek().text) && peek(1).kind == Tok::Ident) {
            Node n = make(NodeKind::Relation, loc);
            n.connective = *connective_from_letter(advance().text);
            n.object = word;
            n.member = identifier();
            return {e.add(std::move(n)), Sort::Truth};
        }
        Node n = make(NodeKind::TemporalVar, loc);
        n.object = word;
        return {e.add(std::move(n)), Sort::Truth};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    KnowledgeBase kb_;
};

}  // namespace

KnowledgeBase parse_kb_unchecked(std::string_view source, std::string source_name) {
    Parser p(krl::tokenize(source), std::move(source_name));
    return p.run();
}

KnowledgeBase parse_kb(std::string_view source, std::string source_name) {
    KnowledgeBase kb = parse_kb_unchecked(source, std::move(source_name));
    auto diags = validate_kb(kb);
    if (!diags.empty()) throw KrlError(std::move(diags));
    resolve_kb(kb);
    return kb;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KnowledgeBase load_kb_file(const std::filesystem::path& path) {
    return parse_kb(read_text_file(path), path.string());
}

}  // namespace dynes
