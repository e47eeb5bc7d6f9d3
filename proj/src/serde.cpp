#include "vicinity/serde.hpp"

#include <nlohmann/json.hpp>

namespace vicinity {

std::string query_result_json(const QueryResult& r, double micros, bool include_path) {
    nlohmann::json j;
    if (r.distance)
        j["distance"] = *r.distance;
    else
        j["distance"] = nullptr;
    j["method"] = method_name(r.method);
    j["probes"] = r.probes;
    j["micros"] = micros;
    if (r.method == Method::Intersection) j["meeting_node"] = r.meeting_node;
    if (include_path && r.distance) j["path"] = r.path;
    if (r.unreachable) j["unreachable"] = true;
    return j.dump();
}

}  // namespace vicinity
