#pragma once

#include <memory>
#include <string>

#include "skoo/app.hpp"

namespace skoo {

/// HTTP front end for a Service. GET only; every other method is 405.
class HttpServer {
public:
    explicit HttpServer(const Service& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds host:port (port 0 picks a free one) and returns the bound port,
    /// or -1 on failure.
    int bind(const std::string& host, int port);

    /// Serves until stop() is called from another thread.
    bool listen();

    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace skoo
