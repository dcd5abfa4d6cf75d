#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "dynes/engine/consultation.hpp"

namespace dynes {

/// HTTP-shaped result: status code and a JSON body.
struct ServiceResponse {
    int status = 200;
    std::string body;
};

/// Session registry behind the HTTP routes. Every operation takes and
/// returns JSON text; value literals use the trace format. Operations on one
/// session run one at a time; different sessions proceed independently.
class SessionManager {
public:
    SessionManager();
    ~SessionManager();

    /// {"kb": "<KRL source>", "mode": "simulation"|"consultation",
    ///  "goal": "obj.attr", "config": {...}} -> 201 {"id": ...}
    ServiceResponse create(std::string_view body);
    ServiceResponse state(const std::string& id);
    /// {"set": {"obj.attr": literal}} -> the tick's record
    ServiceResponse tick(const std::string& id, std::string_view body);
    ServiceResponse question(const std::string& id);
    /// {"value": literal} | {"text": "typed answer"} | {"unknown": true}
    ServiceResponse answer(const std::string& id, std::string_view body);
    ServiceResponse timeline(const std::string& id);
    ServiceResponse remove(const std::string& id);

    std::size_t size() const;

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& id) const;

    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// {"log": [{"question": {...}, "answer": literal|null}, ...],
///  "result": {"goal", "value": literal|null, "fired"}|null}
/// The same document is produced by the CLI and the service.
std::string consultation_transcript(const Consultation& c);

/// Routes of the session API on top of cpp-httplib, plus optional static
/// files served from `static_dir`.
class HttpService {
public:
    explicit HttpService(SessionManager& sessions, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~HttpService();
    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(). Call after bind().
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace dynes
