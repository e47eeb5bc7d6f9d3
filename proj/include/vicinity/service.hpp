#pragma once

#include <memory>
#include <string>

#include "vicinity/oracle.hpp"

namespace vicinity {

// HTTP query endpoint over an immutable oracle:
//   GET /distance?s=&t=            query result JSON
//   GET /path?s=&t=&fallback=0|1   query result JSON with path
//   GET /healthz                   index fingerprint and parameters
// 400 on malformed ids, 404 on out-of-range ids, 200 (method NOT_FOUND)
// when unanswerable. Requests are served concurrently; nothing mutates.
class Service {
public:
    // port 0 binds an ephemeral port (tests); serving starts immediately
    // on a background thread.
    Service(std::shared_ptr<const Oracle> oracle, const std::string& host, int port);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    int port() const;
    void stop();   // drains in-flight requests
    void wait();   // blocks until stopped (CLI serve mode)

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace vicinity
