#include "dynes/engine/consultation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <climits>
#include <map>
#include <tuple>

#include "dynes/engine/conflict.hpp"
#include "dynes/kb/normalize.hpp"
#include "dynes/temporal/allen.hpp"
#include "detail/number_format.hpp"

namespace dynes {

namespace {

void attrs_under(const Expr& e, NodeId id, std::vector<int>& out) {
    const Node& n = e.node(id);
    if (n.kind == NodeKind::AttrRef) out.push_back(n.attr);
    for (NodeId c : n.children) attrs_under(e, c, out);
}

bool uses(const Expr& e, int attr) {
    if (e.empty()) return false;
    return std::any_of(e.nodes().begin(), e.nodes().end(),
                       [attr](const Node& n) { return n.kind == NodeKind::AttrRef && n.attr == attr; });
}

std::vector<NodeId> top_conjuncts(const Expr& e) {
    std::vector<NodeId> out;
    if (e.empty()) return out;
    NodeId cur = e.root();
    while (e.node(cur).kind == NodeKind::And) {
        out.push_back(e.node(cur).children[0]);
        cur = e.node(cur).children[1];
    }
    out.push_back(cur);
    return out;
}

struct Literal {
    int attr;
    std::string key;
    bool positive;
};

std::optional<Literal> polarity(const Expr& e, NodeId id) {
    const Node& n = e.node(id);
    if (n.kind == NodeKind::AttrRef) return Literal{n.attr, "", true};
    if (n.kind == NodeKind::Not) {
        auto inner = polarity(e, n.children[0]);
        if (inner) inner->positive = !inner->positive;
        return inner;
    }
    if (n.kind == NodeKind::Compare && (n.compare == CompareOp::Eq || n.compare == CompareOp::Ne)) {
        const Node& l = e.node(n.children[0]);
        const Node& r = e.node(n.children[1]);
        const Node* ref = l.kind == NodeKind::AttrRef ? &l : r.kind == NodeKind::AttrRef ? &r : nullptr;
        const Node* lit = l.kind == NodeKind::Literal ? &l : r.kind == NodeKind::Literal ? &r : nullptr;
        if (ref && lit) return Literal{ref->attr, lit->literal->to_string(), n.compare == CompareOp::Eq};
    }
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> to_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::vector<double> number_list(std::string_view s) {
    std::vector<double> out;
    while (true) {
        const auto comma = s.find(',');
        auto v = to_number(s.substr(0, comma));
        if (!v) throw InvalidAnswer("expected a number list");
        out.push_back(*v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::optional<std::string_view> call_args(std::string_view s, std::string_view name) {
    if (!s.starts_with(name)) return std::nullopt;
    s = trim(s.substr(name.size()));
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    return s.substr(1, s.size() - 2);
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

}  // namespace

std::set<int> mutually_exclusive_parameters(const KnowledgeBase& kb) {
    std::map<std::pair<int, std::string>, std::pair<std::set<int>, std::set<int>>> seen;  // rules with +, with -
    for (const Rule& r : kb.rules) {
        for (NodeId c : top_conjuncts(r.lhs)) {
            auto lit = polarity(r.lhs, c);
            if (!lit) continue;
            auto& slot = seen[{lit->attr, lit->key}];
            (lit->positive ? slot.first : slot.second).insert(r.index);
        }
    }
    std::set<int> out;
    for (const auto& [key, rules] : seen) {
        for (int p : rules.first)
            for (int n : rules.second)
                if (p != n) out.insert(key.first);
    }
    return out;
}

std::vector<int> rank_question_candidates(const std::vector<int>& candidates, const KnowledgeBase& kb) {
    const std::set<int> exclusive = mutually_exclusive_parameters(kb);
    struct Key {
        int frequency = 0;
        double domain = 0;
        int leftmost = INT_MAX;
        bool exclusive = false;
        int attr = 0;
    };
    std::vector<Key> keys;
    for (int a : candidates) {
        Key k;
        k.attr = a;
        k.domain = kb.attribute(a).type.domain_size();
        k.exclusive = exclusive.contains(a);
        for (const Rule& r : kb.rules) {
            if (!uses(r.lhs, a)) continue;
            ++k.frequency;
            for (const auto& [node, pos] : atom_positions(r.lhs)) {
                std::vector<int> under;
                attrs_under(r.lhs, node, under);
                if (std::find(under.begin(), under.end(), a) != under.end()) {
                    k.leftmost = std::min(k.leftmost, pos);
                    break;
                }
            }
        }
        keys.push_back(k);
    }
    std::stable_sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
        return std::tuple(-x.frequency, -x.domain, x.leftmost, !x.exclusive, x.attr) <
               std::tuple(-y.frequency, -y.domain, y.leftmost, !y.exclusive, y.attr);
    });
    std::vector<int> out;
    for (const auto& k : keys) out.push_back(k.attr);
    return out;
}

std::string describe_domain(const KnowledgeBase& kb, int attr) {
    const TypeDecl& t = kb.attribute(attr).type;
    std::string out;
    auto join = [](const auto& names) {
        std::string s;
        for (const auto& n : names) s += (s.empty() ? "" : ", ") + std::string(n);
        return "{" + s + "}";
    };
    switch (t.base) {
    case BaseType::Boolean: return "bool";
    case BaseType::String: return "string";
    case BaseType::Symbol: return "enum " + join(t.symbols);
    case BaseType::Number: out = "number"; break;
    case BaseType::Integer: out = "int"; break;
    }
    if (t.range) out += " [" + detail::format_number(t.range->lo) + ", " + detail::format_number(t.range->hi) + "]";
    if (!t.terms.empty()) {
        std::vector<std::string> names;
        for (const auto& [name, mf] : t.terms) names.push_back(name);
        out += " or term " + join(names);
    }
    return out;
}

void check_answer(const Value& v, const KnowledgeBase& kb, int attr) {
    const TypeDecl& t = kb.attribute(attr).type;
    const std::string& ref = kb.attribute_name(attr);
    auto fail = [&](const std::string& why) { throw InvalidAnswer(ref + ": " + why); };
    switch (t.base) {
    case BaseType::Boolean:
        if (v.kind() != PayloadKind::Boolean) fail("expected true or false");
        return;
    case BaseType::String:
        if (v.kind() != PayloadKind::Term) fail("expected a string");
        return;
    case BaseType::Symbol:
        if (v.kind() != PayloadKind::Term ||
            std::find(t.symbols.begin(), t.symbols.end(), v.as_term()) == t.symbols.end()) {
            fail("expected one of " + describe_domain(kb, attr).substr(5));
        }
        return;
    case BaseType::Number:
    case BaseType::Integer: break;
    }
    switch (v.kind()) {
    case PayloadKind::Boolean: fail("expected a number"); break;
    case PayloadKind::Term:
        if (!t.terms.contains(v.as_term())) fail("unknown term \"" + v.as_term() + "\"");
        break;
    case PayloadKind::Crisp: {
        const double x = v.as_crisp();
        if (t.base == BaseType::Integer && x != std::floor(x)) fail("expected an integer");
        if (t.range && (x < t.range->lo || x > t.range->hi)) fail("outside " + describe_domain(kb, attr));
        break;
    }
    default: break;
    }
}

Value parse_answer(std::string_view text, const KnowledgeBase& kb, int attr) {
    const TypeDecl& t = kb.attribute(attr).type;
    const std::string_view s = trim(text);
    if (s.empty()) throw InvalidAnswer("empty answer");
    Value v;
    switch (t.base) {
    case BaseType::Boolean:
        if (s == "true" || s == "yes") v = Value(true);
        else if (s == "false" || s == "no") v = Value(false);
        else throw InvalidAnswer("expected true or false");
        break;
    case BaseType::Symbol:
    case BaseType::String: v = Value(unquote(s)); break;
    case BaseType::Number:
    case BaseType::Integer:
        if (auto args = call_args(s, "inexact")) {
            const auto xs = number_list(*args);
            if (xs.size() != 2 || xs[1] < 0) throw InvalidAnswer("expected inexact(center, half_width)");
            v = Value(Inexact{xs[0], xs[1]});
        } else if (auto args = call_args(s, "range")) {
            const auto xs = number_list(*args);
            if (xs.size() != 2 || xs[0] > xs[1]) throw InvalidAnswer("expected range(lo, hi)");
            v = Value(Range{xs[0], xs[1]});
        } else if (s.front() == '{' && s.back() == '}') {
            v = Value::finite_set(number_list(s.substr(1, s.size() - 2)));
        } else if (auto x = to_number(s)) {
            v = Value(*x);
        } else {
            v = Value(unquote(s));
        }
        break;
    }
    check_answer(v, kb, attr);
    return v;
}

Consultation::Consultation(const KnowledgeBase& kb, int goal, EngineConfig config)
    : kb_(&kb),
      goal_(goal),
      config_(config),
      terms_(kb, config_),
      wm_(kb),
      flow_(kb),
      concluded_(kb.attributes.size(), false) {
    config_.validate();
    if (goal < 0 || static_cast<std::size_t>(goal) >= kb.attributes.size()) {
        throw UndeclaredReference("#" + std::to_string(goal));
    }
    for (const Rule& r : kb.rules)
        for (const Action& a : r.actions) concluded_[a.attr] = true;
}

Consultation::Consultation(const KnowledgeBase& kb, std::string_view goal, EngineConfig config)
    : Consultation(kb, [&] {
          auto id = kb.find_attribute(goal);
          if (!id) throw UndeclaredReference(std::string(goal));
          return *id;
      }(), config) {}

const Question* Consultation::next() {
    if (!pending_ && !finished_) advance();
    return pending();
}

bool Consultation::rejected(int rule) {
    if (rejected_rules_.contains(rule)) return true;
    const Rule& r = kb_->rules[rule];
    Evaluator ev(*kb_, config_, wm_, terms_);
    DepSet deps;
    const TruthValue t = truth_and(ev.truth(r.static_lhs, deps), ev.temporal_truth(r.temporal_lhs, flow_, 0, deps));
    if (t.known() && !t.satisfies(config_.theta_fire)) {
        rejected_rules_.insert(rule);
        return true;
    }
    return false;
}

std::vector<int> Consultation::relevant_rules() const {
    std::vector<int> out;
    std::vector<bool> seen_attr(kb_->attributes.size(), false);
    std::vector<int> work{goal_};
    seen_attr[goal_] = true;
    std::set<int> rules;
    while (!work.empty()) {
        const int a = work.back();
        work.pop_back();
        for (const Rule& r : kb_->rules) {
            if (rejected_rules_.contains(r.index) || fired_rules_.contains(r.index)) continue;
            const bool concludes = std::any_of(r.actions.begin(), r.actions.end(), [a](const Action& x) { return x.attr == a; });
            if (!concludes || !rules.insert(r.index).second) continue;
            for (const Node& n : r.lhs.nodes()) {
                if (n.kind != NodeKind::AttrRef || seen_attr[n.attr]) continue;
                seen_attr[n.attr] = true;
                if (concluded_[n.attr] && !wm_.lookup(n.attr)) work.push_back(n.attr);
            }
        }
    }
    return {rules.begin(), rules.end()};
}

bool Consultation::fire_ready_rules() {
    bool any = false;
    for (;;) {
        std::vector<int> rel = relevant_rules();
        std::erase_if(rel, [this](int r) { return rejected(r); });
        Evaluator ev(*kb_, config_, wm_, terms_);
        std::optional<Instantiation> best;
        for (int ri : rel) {
            const Rule& r = kb_->rules[ri];
            DepSet deps;
            const TruthValue t = truth_and(ev.truth(r.static_lhs, deps), ev.temporal_truth(r.temporal_lhs, flow_, 0, deps));
            if (!t.satisfies(config_.theta_fire)) continue;
            Instantiation inst;
            inst.rule = ri;
            inst.truth = t;
            inst.rank = {r.specificity, -1, r.certainty() * t.degree(), r.index};
            for (int a : deps)
                if (const Fact* f = wm_.lookup(a)) inst.rank.novelty = std::max(inst.rank.novelty, f->asserted_at);
            if (!best || rank_before(inst.rank, best->rank)) best = std::move(inst);
        }
        if (!best) return any;

        const Rule& r = kb_->rules[best->rule];
        fired_rules_.insert(r.index);
        std::vector<std::pair<int, Value>> results;
        bool ok = true;
        for (const Action& a : r.actions) {
            DepSet unused;
            try {
                auto v = ev.value(a.value, a.value.root(), unused);
                if (!v) {
                    ok = false;
                    break;
                }
                const double cf = std::clamp(r.certainty() * best->truth.degree() * a.certainty() * v->value.certainty(), 0.0, 1.0);
                results.emplace_back(a.attr, v->value.with_certainty(cf));
            } catch (const NegError&) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (auto& [attr, value] : results) {
            if (value.is_fuzzy()) value = Value(defuzzify(value.as_mf()).primary, value.certainty());
            wm_.assert_fact(attr, std::move(value), 0, Provenance::rule(r.name));
        }
        fired_names_.push_back(r.name);
        any = true;
        if (wm_.lookup(goal_)) return true;
    }
}

void Consultation::advance() {
    fire_ready_rules();
    if (wm_.lookup(goal_)) {
        finished_ = true;
        return;
    }
    std::vector<int> candidates;
    auto consider = [&](int a) {
        if (wm_.lookup(a) || asked_.contains(a) || concluded_[a] || kb_->attribute(a).output) return;
        if (std::find(candidates.begin(), candidates.end(), a) == candidates.end()) candidates.push_back(a);
    };
    for (int ri : relevant_rules()) {
        if (rejected(ri)) continue;
        for (const Node& n : kb_->rules[ri].lhs.nodes())
            if (n.kind == NodeKind::AttrRef) consider(n.attr);
    }
    if (!concluded_[goal_]) consider(goal_);
    if (candidates.empty()) {
        finished_ = true;
        return;
    }
    const std::vector<int> ranked = rank_question_candidates(candidates, *kb_);
    Question q;
    q.id = next_question_++;
    q.attr = ranked.front();
    q.ref = kb_->attribute_name(q.attr);
    q.domain = describe_domain(*kb_, q.attr);
    for (int a : ranked) q.candidates.push_back(kb_->attribute_name(a));
    blackboard_.post(QuestionNotice{q.id, q.attr, q.ref});
    pending_ = std::move(q);
}

void Consultation::answer(const Value& v) {
    if (!pending_) throw std::logic_error("no pending question");
    check_answer(v, *kb_, pending_->attr);
    wm_.assert_fact(pending_->attr, v, 0, Provenance::answer("q" + std::to_string(pending_->id)));
    asked_.insert(pending_->attr);
    log_.push_back({*pending_, v});
    pending_.reset();
}

void Consultation::answer_unknown() {
    if (!pending_) throw std::logic_error("no pending question");
    asked_.insert(pending_->attr);
    log_.push_back({*pending_, std::nullopt});
    pending_.reset();
}

ConsultationResult Consultation::result() const {
    if (!finished_) throw std::logic_error("consultation still running");
    ConsultationResult r;
    r.goal = kb_->attribute_name(goal_);
    if (const Fact* f = wm_.lookup(goal_)) r.value = f->value;
    r.fired = fired_names_;
    return r;
}

}  // namespace dynes
