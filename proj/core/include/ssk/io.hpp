#ifndef SSK_IO_HPP
#define SSK_IO_HPP

#include "ssk/selfsim.hpp"

namespace ssk {

/// Graph spec document:
/// { "k": int, "sizes": [int], "theta": "trivial" | "division" | "flip"
///   | {"tables": [[[s',t'], ...], ...]} }
KGraph parse_graph_spec(const std::string& json_text);
std::string emit_graph_spec(const KGraph& graph);

/// Action spec document:
/// { "kind": "odometer" {n, m} | "gbs" {orbits: [{n, rho}]}
///   | "product_odometers" {sizes} | "lambda_one" {m: [..]}
///   | "explicit" {sigma, rho} }.
/// The explicit kind needs a graph; the named kinds build their own.
SelfSimilarKGraph parse_action_spec(const std::string& json_text,
                                    const KGraph* graph = nullptr);

/// Path document: {"words": ["011", "02"]} with per-color digit strings
/// when every edge count is < 10, integer arrays otherwise.
std::string path_to_json(const KGraph& graph, const Path& p);
Path path_from_json(const KGraph& graph, const std::string& json_text);

struct SessionConfig {
    std::string graph_json;   // empty when absent
    std::string action_json;  // empty when absent (graph-only session)
    std::uint64_t cap = kDefaultEnumerationCap;
    int depth = 5;
    int bound = 6;
    std::uint64_t seed = 0;
    std::string format = "text";

    bool operator==(const SessionConfig& o) const = default;
};

SessionConfig parse_session_config(const std::string& json_text);
std::string emit_session_config(const SessionConfig& cfg);
/// Builds the configured instance; graph-only when no action is given.
SelfSimilarKGraph build_instance(const SessionConfig& cfg);

}  // namespace ssk

#endif
