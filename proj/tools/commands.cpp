#include "commands.hpp"

#include <csignal>
#include <fstream>
#include <iostream>

#include "dynes/engine/consultation.hpp"
#include "dynes/facade/service.hpp"
#include "dynes/kb/parser.hpp"
#include "dynes/sim/simulation.hpp"

namespace dynes::cli {

namespace {

constexpr int kInvalid = 1;
constexpr int kUnreadable = 2;
constexpr int kMaxAttempts = 3;

struct Unreadable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const fs::path& p) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw Unreadable("cannot read '" + p.string() + "'");
    return read_text_file(p);
}

void print_diagnostics(const fs::path& file, const KrlError& e, std::ostream& err) {
    for (const auto& d : e.diagnostics()) err << file.string() << ':' << d.to_string() << '\n';
}

EngineConfig make_config(const KnowledgeBase& kb, const std::optional<fs::path>& sidecar) {
    EngineConfig config = config_from_kb(kb);
    if (sidecar) config = apply_config_json(slurp(*sidecar), config);
    return config;
}

std::string describe(const std::optional<Value>& v) {
    if (!v) return "undetermined";
    std::string s = v->to_string();
    if (v->certainty() != 1.0) s += " (cf " + std::to_string(v->certainty()) + ")";
    return s;
}

HttpService* g_service = nullptr;

}  // namespace

int check(const fs::path& kb, std::ostream& err) {
    try {
        parse_kb(slurp(kb), kb.string());
        return 0;
    } catch (const Unreadable& e) {
        err << "error: " << e.what() << '\n';
        return kUnreadable;
    } catch (const KrlError& e) {
        print_diagnostics(kb, e, err);
        return kInvalid;
    }
}

int run(const RunArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const KnowledgeBase kb = parse_kb(slurp(args.kb), args.kb.string());
        const Scenario sc = parse_scenario(slurp(args.scenario));
        EngineConfig config = make_config(kb, args.config);
        if (args.no_cache) config.use_cache = false;
        if (args.ticks < 0) throw std::invalid_argument("--ticks must be >= 0");

        std::ofstream trace(args.trace, std::ios::binary);
        if (!trace) throw Unreadable("cannot write '" + args.trace.string() + "'");
        const Trace t = run_simulation(kb, sc, args.ticks, config, {&trace, std::nullopt});
        for (const auto& r : t.records)
            out << "tick " << r.tick << " fired " << r.fired.size() << " origins " << r.origins.size() << '\n';
        return 0;
    } catch (const Unreadable& e) {
        err << "error: " << e.what() << '\n';
        return kUnreadable;
    } catch (const KrlError& e) {
        print_diagnostics(args.kb, e, err);
        return kInvalid;
    } catch (const ScenarioError& e) {
        err << args.scenario.string() << ": " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
}

int consult(const ConsultArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
    std::unique_ptr<KnowledgeBase> kb;
    EngineConfig config;
    try {
        kb = std::make_unique<KnowledgeBase>(parse_kb(slurp(args.kb), args.kb.string()));
        config = make_config(*kb, args.config);
    } catch (const Unreadable& e) {
        err << "error: " << e.what() << '\n';
        return kUnreadable;
    } catch (const KrlError& e) {
        print_diagnostics(args.kb, e, err);
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
    if (!kb->find_attribute(args.goal)) {
        err << "error: undeclared goal '" << args.goal << "'\n";
        return kInvalid;
    }

    Consultation c(*kb, args.goal, config);
    while (const Question* q = c.next()) {
        bool answered = false;
        for (int attempt = 0; attempt < kMaxAttempts && !answered; ++attempt) {
            out << q->ref << " [" << q->domain << "]? " << std::flush;
            std::string line;
            if (!std::getline(in, line)) break;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line == "unknown") {
                c.answer_unknown();
                answered = true;
                continue;
            }
            try {
                c.answer(parse_answer(line, *kb, q->attr));
                answered = true;
            } catch (const InvalidAnswer& e) {
                out << "invalid answer: " << e.what() << '\n';
            }
        }
        if (!answered) c.answer_unknown();
    }
    const ConsultationResult r = c.result();
    if (r.value) out << r.goal << " = " << describe(r.value) << '\n';
    else out << "undetermined\n";

    if (args.log) {
        std::ofstream log(*args.log, std::ios::binary);
        if (!log) {
            err << "error: cannot write '" << args.log->string() << "'\n";
            return kUnreadable;
        }
        log << consultation_transcript(c) << '\n';
    }
    return 0;
}

int replay(const fs::path& kb_path, const fs::path& scenario, const fs::path& trace, std::ostream& out,
           std::ostream& err) {
    try {
        const KnowledgeBase kb = parse_kb(slurp(kb_path), kb_path.string());
        const Scenario sc = parse_scenario(slurp(scenario));
        const ReplayResult r = verify_replay(slurp(trace), kb, sc);
        if (r.ok) {
            out << "replay ok\n";
            return 0;
        }
        out << "replay diverges at tick " << *r.divergent_tick << ": " << r.detail << '\n';
        return kInvalid;
    } catch (const Unreadable& e) {
        err << "error: " << e.what() << '\n';
        return kUnreadable;
    } catch (const KrlError& e) {
        print_diagnostics(kb_path, e, err);
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
}

int serve(const std::string& host, int port, const std::optional<fs::path>& static_dir, std::ostream& out,
          std::ostream& err) {
    SessionManager sessions;
    HttpService service(sessions, static_dir);
    const int bound = service.bind(host, port);
    if (bound < 0) {
        err << "error: cannot bind " << host << ':' << port << '\n';
        return kInvalid;
    }
    out << "listening on http://" << host << ':' << bound << std::endl;
    g_service = &service;
    std::signal(SIGINT, [](int) { g_service->stop(); });
    std::signal(SIGTERM, [](int) { g_service->stop(); });
    service.run();
    g_service = nullptr;
    return 0;
}

}  // namespace dynes::cli
