#include <httplib.h>

#include "dynes/facade/service.hpp"

namespace dynes {

struct HttpService::Impl {
    httplib::Server server;
};

namespace {

void send(httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    if (!r.body.empty()) res.set_content(r.body, "application/json");
}

}  // namespace

HttpService::HttpService(SessionManager& sessions, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
    auto& svr = impl_->server;
    SessionManager* sm = &sessions;
    const std::string id = "/sessions/([0-9a-f]+)";

    svr.Post("/sessions", [sm](const httplib::Request& req, httplib::Response& res) { send(res, sm->create(req.body)); });
    svr.Get(id + "/state", [sm](const httplib::Request& req, httplib::Response& res) {
        send(res, sm->state(req.matches[1]));
    });
    svr.Post(id + "/tick", [sm](const httplib::Request& req, httplib::Response& res) {
        send(res, sm->tick(req.matches[1], req.body));
    });
    svr.Get(id + "/question", [sm](const httplib::Request& req, httplib::Response& res) {
        send(res, sm->question(req.matches[1]));
    });
    svr.Post(id + "/answer", [sm](const httplib::Request& req, httplib::Response& res) {
        send(res, sm->answer(req.matches[1], req.body));
    });
    svr.Get(id + "/timeline", [sm](const httplib::Request& req, httplib::Response& res) {
        send(res, sm->timeline(req.matches[1]));
    });
    svr.Delete(id, [sm](const httplib::Request& req, httplib::Response& res) { send(res, sm->remove(req.matches[1])); });
    svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) res.set_content(R"({"error":"not found"})", "application/json");
    });
    if (static_dir) svr.set_mount_point("/", static_dir->string());
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpService::run() { impl_->server.listen_after_bind(); }

void HttpService::stop() { impl_->server.stop(); }

}  // namespace dynes
