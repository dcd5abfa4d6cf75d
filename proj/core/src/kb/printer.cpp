#include "dynes/kb/printer.hpp"

#include <sstream>

#include "detail/number_format.hpp"

namespace dynes {

using detail::format_number;

namespace {

int precedence(const Node& n) {
    switch (n.kind) {
    case NodeKind::Or: return 1;
    case NodeKind::And: return 2;
    case NodeKind::Not: return 3;
    case NodeKind::Compare: return 4;
    case NodeKind::Arith: return n.arith == ArithOp::Add || n.arith == ArithOp::Sub ? 5 : 6;
    case NodeKind::Negate: return 7;
    default: return 8;
    }
}

void print_node(const Expr& e, NodeId id, int context, std::ostream& os) {
    const Node& n = e.node(id);
    const int prec = precedence(n);
    const bool parens = prec < context;
    if (parens) os << '(';
    switch (n.kind) {
    case NodeKind::Literal: os << n.literal->to_string(); break;
    case NodeKind::AttrRef:
    case NodeKind::TemporalAttr: os << n.object << '.' << n.member; break;
    case NodeKind::TemporalVar: os << n.object; break;
    case NodeKind::Relation: os << n.object << ' ' << connective_letter(n.connective) << ' ' << n.member; break;
    case NodeKind::Negate:
        os << '-';
        print_node(e, n.children[0], prec, os);
        break;
    case NodeKind::Not:
        os << '~';
        print_node(e, n.children[0], prec, os);
        break;
    case NodeKind::Arith:
        print_node(e, n.children[0], prec, os);
        os << ' ' << to_string(n.arith) << ' ';
        print_node(e, n.children[1], prec + 1, os);
        break;
    case NodeKind::Compare:
        print_node(e, n.children[0], prec + 1, os);
        os << ' ' << to_string(n.compare) << ' ';
        print_node(e, n.children[1], prec + 1, os);
        break;
    case NodeKind::And:
    case NodeKind::Or:
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) os << (n.kind == NodeKind::And ? " & " : " v ");
            // a nested chain of the same connective re-flattens on parse
            print_node(e, n.children[i], prec, os);
        }
        break;
    }
    if (parens) os << ')';
}

void print_range(const Range& r, std::ostream& os) {
    os << '[' << format_number(r.lo) << ", " << format_number(r.hi) << ']';
}

void print_points(const MembershipFunction& mf, std::ostream& os) {
    bool first = true;
    for (const auto& p : mf.points()) {
        if (!first) os << ' ';
        os << '(' << format_number(p.x) << ", " << format_number(p.mu) << ')';
        first = false;
    }
}

void print_symbols(const std::vector<std::string>& symbols, std::ostream& os) {
    for (std::size_t i = 0; i < symbols.size(); ++i) os << (i ? ", " : "") << symbols[i];
}

void print_inline_type(const TypeDecl& t, std::ostream& os) {
    os << to_string(t.base);
    if (t.base == BaseType::Symbol) {
        os << " {";
        print_symbols(t.symbols, os);
        os << '}';
    }
    if (t.range) {
        os << ' ';
        print_range(*t.range, os);
    }
}

}  // namespace

std::string print_expr(const Expr& expr) {
    if (expr.empty()) return "";
    std::ostringstream os;
    print_node(expr, expr.root(), 0, os);
    return os.str();
}

std::string print_kb(const KnowledgeBase& kb) {
    std::ostringstream os;
    bool first_block = true;
    auto block_gap = [&] {
        if (!first_block) os << '\n';
        first_block = false;
    };

    if (!kb.config.empty()) {
        block_gap();
        os << "config {\n";
        for (const auto& s : kb.config) {
            os << "  " << s.key << ": ";
            if (auto d = std::get_if<double>(&s.value)) os << format_number(*d);
            else if (auto b = std::get_if<bool>(&s.value)) os << (*b ? "true" : "false");
            else os << '"' << std::get<std::string>(s.value) << '"';
            os << ";\n";
        }
        os << "}\n";
    }
    for (const auto& t : kb.types) {
        block_gap();
        os << "type " << t.name << " {\n  base: " << to_string(t.base) << ";\n";
        if (t.range) {
            os << "  range: ";
            print_range(*t.range, os);
            os << ";\n";
        }
        if (!t.symbols.empty()) {
            os << "  values: ";
            print_symbols(t.symbols, os);
            os << ";\n";
        }
        for (const auto& [term, mf] : t.terms) {
            os << "  term " << term << ": ";
            print_points(mf, os);
            os << ";\n";
        }
        os << "}\n";
    }
    for (const auto& o : kb.objects) {
        block_gap();
        os << "object " << o.name << " {\n";
        for (const auto& a : o.attributes) {
            os << "  " << a.name << ": ";
            if (!a.type_name.empty()) os << a.type_name;
            else print_inline_type(a.type, os);
            if (a.output) os << " output";
            os << ";\n";
        }
        os << "}\n";
    }
    for (const auto& ev : kb.events) {
        block_gap();
        os << "event " << ev.name << " {\n  origin: " << print_expr(ev.origin) << ";\n}\n";
    }
    for (const auto& iv : kb.intervals) {
        block_gap();
        os << "interval " << iv.name << " {\n  open: " << print_expr(iv.open) << ";\n  close: " << print_expr(iv.close)
           << ";\n}\n";
    }
    for (const auto& r : kb.rules) {
        block_gap();
        os << "rule " << r.name;
        if (r.kind == RuleKind::Periodic) os << " periodic " << r.period;
        if (r.kind == RuleKind::Response) os << " response " << r.trigger;
        if (r.cf) os << " cf " << format_number(*r.cf);
        os << " {\n";
        if (!r.lhs.empty()) os << "  if: " << print_expr(r.lhs) << ";\n";
        os << "  then: ";
        for (std::size_t i = 0; i < r.actions.size(); ++i) {
            const auto& a = r.actions[i];
            if (i) os << ",\n        ";
            os << a.object << '.' << a.member << " := " << print_expr(a.value);
            if (a.cf) os << " cf " << format_number(*a.cf);
        }
        os << ";\n}\n";
    }
    return os.str();
}

}  // namespace dynes
