#include "vicinity/service.hpp"

#include <charconv>
#include <chrono>
#include <optional>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vicinity/errors.hpp"
#include "vicinity/query.hpp"
#include "vicinity/serde.hpp"

namespace vicinity {

namespace {

std::optional<NodeId> parse_node_param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    const std::string v = req.get_param_value(name);
    NodeId id = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), id);
    if (ec != std::errc{} || p != v.data() + v.size()) return std::nullopt;
    return id;
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    nlohmann::json j{{"error", message}};
    res.status = status;
    res.set_content(j.dump(), "application/json");
}

}  // namespace

struct Service::Impl {
    std::shared_ptr<const Oracle> oracle;
    httplib::Server server;
    std::thread thread;
    int port = 0;

    void route(const httplib::Request& req, httplib::Response& res, bool with_path) {
        const auto s = parse_node_param(req, "s");
        const auto t = parse_node_param(req, "t");
        if (!s || !t) {
            send_error(res, 400, "parameters s and t must be nonnegative integers");
            return;
        }
        bool fallback = false;
        if (with_path && req.has_param("fallback")) {
            const std::string f = req.get_param_value("fallback");
            if (f != "0" && f != "1") {
                send_error(res, 400, "fallback must be 0 or 1");
                return;
            }
            fallback = f == "1";
        }
        try {
            const auto t0 = std::chrono::steady_clock::now();
            QueryResult qr;
            if (with_path) {
                qr = fallback ? query_with_fallback(*oracle, *s, *t, FallbackKind::Auto, true)
                              : query_path(*oracle, *s, *t);
            } else {
                qr = query_distance(*oracle, *s, *t);
            }
            const double micros =
                std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0)
                    .count();
            res.status = 200;
            res.set_content(query_result_json(qr, micros, with_path), "application/json");
        } catch (const NodeRangeError& e) {
            send_error(res, 404, e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, e.what());
        }
    }
};

Service::Service(std::shared_ptr<const Oracle> oracle, const std::string& host, int port)
    : impl_(std::make_unique<Impl>()) {
    impl_->oracle = std::move(oracle);
    auto* impl = impl_.get();

    impl->server.Get("/distance", [impl](const httplib::Request& req, httplib::Response& res) {
        impl->route(req, res, false);
    });
    impl->server.Get("/path", [impl](const httplib::Request& req, httplib::Response& res) {
        impl->route(req, res, true);
    });
    impl->server.Get("/healthz", [impl](const httplib::Request&, httplib::Response& res) {
        const Oracle& o = *impl->oracle;
        nlohmann::json j{{"status", "ok"},
                         {"fingerprint", o.graph->fingerprint()},
                         {"n", o.graph->node_count()},
                         {"m", o.graph->edge_count()},
                         {"alpha", o.alpha},
                         {"seed", o.seed},
                         {"landmark_count", o.landmarks.members.size()}};
        res.set_content(j.dump(), "application/json");
    });

    if (port == 0) {
        impl->port = impl->server.bind_to_any_port(host);
        if (impl->port <= 0) throw IoError("failed to bind ephemeral port on " + host);
    } else {
        if (!impl->server.bind_to_port(host, port))
            throw IoError("failed to bind " + host + ":" + std::to_string(port));
        impl->port = port;
    }
    impl->thread = std::thread([impl] { impl->server.listen_after_bind(); });
    impl->server.wait_until_ready();
}

Service::~Service() { stop(); }

int Service::port() const { return impl_->port; }

void Service::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
    if (impl_ && impl_->thread.joinable()) impl_->thread.join();
}

void Service::wait() {
    if (impl_ && impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace vicinity
