#include "skoo/server.hpp"

#include "httplib.h"

namespace skoo {

struct HttpServer::Impl {
    const Service& service;
    httplib::Server server;

    explicit Impl(const Service& s) : service(s) {
        auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
            std::map<std::string, std::string> query;
            for (const auto& [key, value] : req.params) {
                query.emplace(key, value);  // first occurrence wins
            }
            HttpResponse r = service.handle(req.method, req.path, query);
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        };
        server.Get(R"(.*)", dispatch);
        auto not_allowed = [](const httplib::Request&, httplib::Response& res) {
            res.status = 405;
            res.set_content(R"({"error":"method not allowed"})", "application/json");
        };
        server.Post(R"(.*)", not_allowed);
        server.Put(R"(.*)", not_allowed);
        server.Delete(R"(.*)", not_allowed);
        server.Patch(R"(.*)", not_allowed);
    }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        return impl_->server.bind_to_any_port(host);
    }
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) {
        impl_->server.stop();
    }
}

}  // namespace skoo
