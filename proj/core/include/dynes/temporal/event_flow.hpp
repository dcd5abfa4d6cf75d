#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynes/kb/ast.hpp"
#include "dynes/values/truth.hpp"

namespace dynes {

/// Placement of one occurrence on the tick axis. Events are points
/// (start == *end); an interval that is still open has no end yet.
struct Occurrence {
    int start = 0;
    std::optional<int> end;

    bool open() const { return !end; }
    /// End used in relations: the close tick, or `now` while open.
    int end_or(int now) const { return end.value_or(now); }
    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct Anomaly {
    enum class Kind : std::uint8_t {
        CloseBeforeOpen,  // close edge with no open occurrence
        OpenWhileOpen,    // open edge while an occurrence is already open
    };
    int tick = 0;
    int temporal = -1;
    Kind kind = Kind::CloseBeforeOpen;

    std::string message() const;
    friend bool operator==(const Anomaly&, const Anomaly&) = default;
};

const char* to_string(Anomaly::Kind kind);

/// What interpret_tick() observed at one tick.
struct TickOrigins {
    std::vector<int> events;     // temporal ids of events that originated
    std::vector<int> opened;     // intervals that opened (degenerate ones included)
    std::vector<int> closed;     // intervals that closed
    std::vector<Anomaly> anomalies;

    bool originated(int temporal) const;
};

/// Condition truth supplier used while interpreting a tick.
using ConditionEval = std::function<TruthValue(const Expr&)>;

/// Interpretation of the event flow model: occurrence history of every
/// declared event and interval plus the anomaly log.
class EventFlow {
public:
    explicit EventFlow(const KnowledgeBase& kb);

    /// Detects rising edges of origin/open/close conditions at `tick`. A
    /// condition counts as satisfied when its truth is known and >= theta;
    /// NE is never satisfied. Ticks must be consecutive starting at 0, else
    /// std::invalid_argument.
    TickOrigins interpret_tick(int tick, const ConditionEval& eval, double theta);

    int last_tick() const { return last_tick_; }
    int size() const { return static_cast<int>(tracks_.size()); }
    TemporalKind kind(int temporal) const { return tracks_.at(temporal).kind; }
    const std::vector<Occurrence>& history(int temporal) const { return tracks_.at(temporal).history; }
    const std::vector<Anomaly>& anomalies() const { return anomalies_; }

    const Occurrence* latest(int temporal) const;
    /// .c: number of origins (events) or openings (intervals).
    int count(int temporal) const { return static_cast<int>(history(temporal).size()); }
    /// .l at `now`: 0 for an event that occurred; now - open for an open
    /// interval; close - open for the last closed one; nullopt if the
    /// object never occurred.
    std::optional<int> length(int temporal, int now) const;
    /// True iff the event originated at `now` or the interval is open.
    bool active(int temporal, int now) const;

    friend bool operator==(const EventFlow&, const EventFlow&) = default;

private:
    struct Track {
        TemporalKind kind = TemporalKind::Event;
        std::vector<Occurrence> history;
        bool was_satisfied = false;  // origin (events) or open (intervals)
        bool close_was_satisfied = false;
        friend bool operator==(const Track&, const Track&) = default;
    };

    const KnowledgeBase* kb_;
    std::vector<Track> tracks_;
    std::vector<Anomaly> anomalies_;
    int last_tick_ = -1;
};

}  // namespace dynes
