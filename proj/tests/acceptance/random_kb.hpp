#pragma once

// Small random knowledge bases and scenarios for differential testing.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace random_kb {

struct Case {
    std::string krl;
    std::string scenario;  // JSONL
};

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    Case next(int ticks = 20) {
        nums_ = pick(2, 4);
        bools_ = pick(0, 6 - nums_ < 2 ? 6 - nums_ : 2);
        events_ = pick(0, 2);
        intervals_ = pick(0, 3 - events_);

        std::ostringstream k;
        k << "config { max_firings: 30; }\n";
        k << "object o {";
        for (int i = 0; i < nums_; ++i) k << " n" << i << ": number [0, 10];";
        for (int i = 0; i < bools_; ++i) k << " b" << i << ": bool;";
        k << " }\n";
        for (int i = 0; i < events_; ++i) k << "event E" << i << " { origin: " << static_atom() << "; }\n";
        for (int i = 0; i < intervals_; ++i) {
            const int a = pick(0, nums_ - 1);
            k << "interval I" << i << " { open: o.n" << a << " > " << pick(4, 8) << "; close: o.n" << a << " < "
              << pick(1, 4) << "; }\n";
        }
        const int rules = pick(1, 10);
        for (int r = 0; r < rules; ++r) k << rule(r);

        std::ostringstream s;
        for (int t = 0; t < ticks; ++t) {
            if (chance(0.3)) continue;
            s << "{\"tick\":" << t << ",\"set\":{";
            const int n = pick(1, 3);
            std::vector<std::string> seen;
            bool first = true;
            for (int i = 0; i < n; ++i) {
                const bool num = bools_ == 0 || chance(0.7);
                const std::string ref = num ? "o.n" + std::to_string(pick(0, nums_ - 1)) : "o.b" + std::to_string(pick(0, bools_ - 1));
                if (std::find(seen.begin(), seen.end(), ref) != seen.end()) continue;
                seen.push_back(ref);
                if (!first) s << ",";
                first = false;
                s << "\"" << ref << "\":" << (num ? number_json() : (chance(0.5) ? "true" : "false"));
            }
            s << "}}\n";
        }
        return {k.str(), s.str()};
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    std::string num() { return "o.n" + std::to_string(pick(0, nums_ - 1)); }

    std::string number_json() {
        switch (pick(0, 3)) {
        case 0: return "{\"inexact\":[" + std::to_string(pick(1, 9)) + "," + std::to_string(pick(1, 3)) + "]}";
        case 1: {
            const int lo = pick(0, 6);
            return "{\"range\":[" + std::to_string(lo) + "," + std::to_string(lo + pick(1, 4)) + "]}";
        }
        default: return std::to_string(pick(0, 10));
        }
    }

    std::string static_atom() {
        static const char* ops[] = {">", "<", ">=", "<=", "=", "!="};
        if (bools_ > 0 && chance(0.25)) return std::string(chance(0.3) ? "~" : "") + "o.b" + std::to_string(pick(0, bools_ - 1));
        if (chance(0.2)) return num() + " " + ops[pick(0, 5)] + " " + num();
        return num() + " " + ops[pick(0, 5)] + " " + std::to_string(pick(0, 10));
    }

    std::string temporal_name(bool event) {
        return event ? "E" + std::to_string(pick(0, events_ - 1)) : "I" + std::to_string(pick(0, intervals_ - 1));
    }

    std::string temporal_atom() {
        const bool ev = events_ > 0 && (intervals_ == 0 || chance(0.5));
        switch (pick(0, 3)) {
        case 0: return temporal_name(ev) + ".c > " + std::to_string(pick(0, 2));
        case 1: return temporal_name(ev) + ".l >= " + std::to_string(pick(0, 3));
        case 2: return temporal_name(ev);
        default: break;
        }
        // relations: ee b/a/e, ei b/a/s/d/f, ii any
        static const char* ii[] = {"b", "a", "m", "o", "s", "d", "e", "f"};
        static const char* ee[] = {"b", "a", "e"};
        static const char* ei[] = {"b", "a", "s", "d", "f"};
        if (events_ > 0 && intervals_ > 0 && chance(0.4))
            return temporal_name(true) + " " + ei[pick(0, 4)] + " " + temporal_name(false);
        if (ev) return temporal_name(true) + " " + ee[pick(0, 2)] + " " + temporal_name(true);
        return temporal_name(false) + " " + ii[pick(0, 7)] + " " + temporal_name(false);
    }

    std::string atom() {
        const bool temporal = events_ + intervals_ > 0 && chance(0.35);
        std::string a = temporal ? temporal_atom() : static_atom();
        if (chance(0.15)) a = "~(" + a + ")";
        return a;
    }

    std::string rule(int r) {
        std::ostringstream out;
        out << "rule r" << r;
        const int kind = pick(0, 9);
        if (kind >= 7 && kind <= 8) out << " periodic " << pick(2, 3);
        else if (kind == 9 && events_ > 0) out << " response E" << pick(0, events_ - 1);
        if (chance(0.3)) out << " cf 0." << pick(5, 9);
        out << " {";
        const int atoms = pick(0, 3);
        if (atoms > 0) {
            out << " if: " << atom();
            for (int i = 1; i < atoms; ++i) out << (chance(0.7) ? " & " : " v ") << atom();
            out << ";";
        }
        out << " then: ";
        const int actions = pick(1, 2);
        for (int i = 0; i < actions; ++i) {
            if (i) out << ", ";
            if (bools_ > 0 && chance(0.25)) {
                out << "o.b" << pick(0, bools_ - 1) << " := " << (chance(0.5) ? "true" : "false");
            } else {
                out << num() << " := ";
                switch (pick(0, 4)) {
                case 0: out << num() << " + " << pick(0, 2); break;
                case 1: out << "inexact(" << pick(2, 8) << ", " << pick(1, 2) << ")"; break;
                case 2: out << num() << " / " << num(); break;
                default: out << pick(0, 10); break;
                }
            }
            if (chance(0.2)) out << " cf 0." << pick(5, 9);
        }
        out << "; }\n";
        return out.str();
    }

    std::mt19937_64 rng_;
    int nums_ = 0, bools_ = 0, events_ = 0, intervals_ = 0;
};

}  // namespace random_kb
