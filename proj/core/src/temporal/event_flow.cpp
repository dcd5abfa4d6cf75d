#include "dynes/temporal/event_flow.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynes {

const char* to_string(Anomaly::Kind kind) {
    switch (kind) {
    case Anomaly::Kind::CloseBeforeOpen: return "close_before_open";
    case Anomaly::Kind::OpenWhileOpen: return "open_while_open";
    }
    return "?";
}

std::string Anomaly::message() const {
    switch (kind) {
    case Kind::CloseBeforeOpen: return "termination of an interval before its opening";
    case Kind::OpenWhileOpen: return "repeated opening of an interval that is already open";
    }
    return {};
}

bool TickOrigins::originated(int temporal) const {
    return std::find(events.begin(), events.end(), temporal) != events.end();
}

EventFlow::EventFlow(const KnowledgeBase& kb) : kb_(&kb), tracks_(kb.temporal_count()) {
    for (int t = 0; t < kb.temporal_count(); ++t) tracks_[t].kind = kb.temporal_kind(t);
}

TickOrigins EventFlow::interpret_tick(int tick, const ConditionEval& eval, double theta) {
    if (tick != last_tick_ + 1) {
        throw std::invalid_argument("non-consecutive tick " + std::to_string(tick) + " after " +
                                    std::to_string(last_tick_));
    }
    last_tick_ = tick;
    TickOrigins out;
    const int events = static_cast<int>(kb_->events.size());
    for (int t = 0; t < size(); ++t) {
        Track& tr = tracks_[t];
        if (tr.kind == TemporalKind::Event) {
            const bool sat = eval(kb_->events[t].origin).satisfies(theta);
            if (sat && !tr.was_satisfied) {
                tr.history.push_back({tick, tick});
                out.events.push_back(t);
            }
            tr.was_satisfied = sat;
            continue;
        }
        const auto& decl = kb_->intervals[t - events];
        const bool open_sat = eval(decl.open).satisfies(theta);
        const bool close_sat = eval(decl.close).satisfies(theta);
        const bool open_edge = open_sat && !tr.was_satisfied;
        const bool close_edge = close_sat && !tr.close_was_satisfied;
        tr.was_satisfied = open_sat;
        tr.close_was_satisfied = close_sat;

        const bool is_open = !tr.history.empty() && tr.history.back().open();
        if (open_edge && close_edge) {
            if (is_open) {
                tr.history.back().end = tick;
                out.closed.push_back(t);
            } else {
                tr.history.push_back({tick, tick});
                out.opened.push_back(t);
                out.closed.push_back(t);
            }
        } else if (open_edge) {
            if (is_open) {
                out.anomalies.push_back({tick, t, Anomaly::Kind::OpenWhileOpen});
            } else {
                tr.history.push_back({tick, std::nullopt});
                out.opened.push_back(t);
            }
        } else if (close_edge) {
            if (is_open) {
                tr.history.back().end = tick;
                out.closed.push_back(t);
            } else {
                out.anomalies.push_back({tick, t, Anomaly::Kind::CloseBeforeOpen});
            }
        }
    }
    anomalies_.insert(anomalies_.end(), out.anomalies.begin(), out.anomalies.end());
    return out;
}

const Occurrence* EventFlow::latest(int temporal) const {
    const auto& h = history(temporal);
    return h.empty() ? nullptr : &h.back();
}

std::optional<int> EventFlow::length(int temporal, int now) const {
    const Occurrence* occ = latest(temporal);
    if (!occ) return std::nullopt;
    if (kind(temporal) == TemporalKind::Event) return 0;
    return occ->end_or(now) - occ->start;
}

bool EventFlow::active(int temporal, int now) const {
    const Occurrence* occ = latest(temporal);
    if (!occ) return false;
    if (kind(temporal) == TemporalKind::Event) return occ->start == now;
    return occ->open() || (occ->start == now && occ->end == now);
}

}  // namespace dynes
