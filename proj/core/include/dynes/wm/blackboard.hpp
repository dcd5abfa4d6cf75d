#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dynes/values/value.hpp"

namespace dynes {

/// Assignment to an output attribute, to be applied to the problem domain.
struct ControlAction {
    int tick = 0;
    std::string rule;
    int attr = -1;
    std::string ref;
    Value value;
    friend bool operator==(const ControlAction&, const ControlAction&) = default;
};

struct QuestionNotice {
    std::uint64_t id = 0;
    int attr = -1;
    std::string ref;
    friend bool operator==(const QuestionNotice&, const QuestionNotice&) = default;
};

struct OriginNotice {
    enum class Kind : std::uint8_t { Origin, Open, Close };
    int tick = 0;
    int temporal = -1;
    Kind kind = Kind::Origin;
    friend bool operator==(const OriginNotice&, const OriginNotice&) = default;
};

/// Transient exchange area between the solver components. Every entry is
/// handed out by exactly one take_*() call.
class Blackboard {
public:
    void post(ControlAction a) { controls_.push_back(std::move(a)); }
    void post(QuestionNotice q) { questions_.push_back(std::move(q)); }
    void post(OriginNotice o) { origins_.push_back(o); }

    std::vector<ControlAction> take_controls() { return std::exchange(controls_, {}); }
    std::vector<QuestionNotice> take_questions() { return std::exchange(questions_, {}); }
    std::vector<OriginNotice> take_origins() { return std::exchange(origins_, {}); }

    const std::vector<ControlAction>& controls() const { return controls_; }
    const std::vector<QuestionNotice>& questions() const { return questions_; }
    const std::vector<OriginNotice>& origins() const { return origins_; }
    bool empty() const { return controls_.empty() && questions_.empty() && origins_.empty(); }

private:
    std::vector<ControlAction> controls_;
    std::vector<QuestionNotice> questions_;
    std::vector<OriginNotice> origins_;
};

}  // namespace dynes
