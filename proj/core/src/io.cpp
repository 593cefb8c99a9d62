#include "ssk/io.hpp"

#include <nlohmann/json.hpp>

namespace ssk {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("ParseError", "malformed JSON document");
    return j;
}

ThetaFamily theta_from_json(const json& j) {
    if (!j.contains("sizes") || !j["sizes"].is_array())
        throw Error("ConfigError", "graph spec needs a sizes array");
    std::vector<int> sizes = j["sizes"].get<std::vector<int>>();
    if (j.contains("k") && j["k"].get<int>() != static_cast<int>(sizes.size()))
        throw Error("ConfigError", "k does not match the sizes array");
    const json& th = j.contains("theta") ? j["theta"] : json("trivial");
    if (th.is_string()) {
        std::string kind = th.get<std::string>();
        if (kind == "trivial") return make_theta(ThetaKind::Trivial, sizes);
        if (kind == "division") return make_theta(ThetaKind::Division, sizes);
        if (kind == "flip") return make_theta(ThetaKind::Flip, sizes);
        throw Error("ConfigError", "unknown theta kind '" + kind + "'");
    }
    if (!th.is_object() || !th.contains("tables"))
        throw Error("ConfigError", "theta must be a kind name or {tables}");
    ThetaFamily f;
    f.k = static_cast<int>(sizes.size());
    f.sizes = sizes;
    for (const json& tab : th["tables"]) {
        std::vector<std::pair<int, int>> t;
        for (const json& cell : tab) {
            if (!cell.is_array() || cell.size() != 2)
                throw Error("ConfigError", "theta table cells must be pairs");
            t.emplace_back(cell[0].get<int>(), cell[1].get<int>());
        }
        f.tables.push_back(std::move(t));
    }
    return f;
}

}  // namespace

KGraph parse_graph_spec(const std::string& json_text) {
    return KGraph::validate(theta_from_json(parse_json(json_text)));
}

std::string emit_graph_spec(const KGraph& graph) {
    json j;
    j["k"] = graph.rank();
    j["sizes"] = graph.sizes();
    json tables = json::array();
    for (const auto& tab : graph.theta().tables) {
        json t = json::array();
        for (const auto& [sp, tp] : tab) t.push_back({sp, tp});
        tables.push_back(t);
    }
    j["theta"] = {{"tables", tables}};
    return j.dump();
}

SelfSimilarKGraph parse_action_spec(const std::string& json_text,
                                    const KGraph* graph) {
    json j = parse_json(json_text);
    std::string kind = j.value("kind", "explicit");
    if (kind == "odometer")
        return make_odometer(j.at("n").get<int>(),
                             mpz_class(j.at("m").get<long>()));
    if (kind == "gbs") {
        std::vector<std::pair<int, std::vector<mpz_class>>> orbits;
        for (const json& o : j.at("orbits")) {
            std::vector<mpz_class> rho;
            for (const json& r : o.at("rho")) rho.emplace_back(r.get<long>());
            orbits.emplace_back(o.at("n").get<int>(), std::move(rho));
        }
        return make_gbs(orbits);
    }
    if (kind == "product_odometers")
        return make_product_of_odometers(j.at("sizes").get<std::vector<int>>());
    if (kind == "lambda_one") {
        std::vector<mpz_class> m;
        for (const json& v : j.at("m")) m.emplace_back(v.get<long>());
        return make_lambda_one(m);
    }
    if (kind == "explicit") {
        if (!graph)
            throw Error("ConfigError", "explicit action needs a graph spec");
        EdgeActionSpec spec;
        spec.sigma = j.at("sigma").get<std::vector<std::vector<int>>>();
        for (const json& row : j.at("rho")) {
            std::vector<mpz_class> r;
            for (const json& v : row) r.emplace_back(v.get<long>());
            spec.rho.push_back(std::move(r));
        }
        return SelfSimilarKGraph::validate(*graph, spec);
    }
    throw Error("ConfigError", "unknown action kind '" + kind + "'");
}

std::string path_to_json(const KGraph& graph, const Path& p) {
    bool digits = true;
    for (int n : graph.sizes()) digits = digits && n < 10;
    json words = json::array();
    for (const auto& w : p.words) {
        if (digits) {
            std::string s;
            for (int l : w) s += static_cast<char>('0' + l);
            words.push_back(s);
        } else {
            words.push_back(w);
        }
    }
    return json{{"words", words}}.dump();
}

Path path_from_json(const KGraph& graph, const std::string& json_text) {
    json j = parse_json(json_text);
    Path p = Path::empty(graph.rank());
    const json& words = j.at("words");
    if (static_cast<int>(words.size()) != graph.rank())
        throw Error("ConfigError", "path words/rank mismatch");
    for (int i = 0; i < graph.rank(); ++i) {
        if (words[i].is_string()) {
            for (char c : words[i].get<std::string>()) {
                if (c < '0' || c > '9')
                    throw Error("ParseError", "bad digit in path word");
                p.words[i].push_back(c - '0');
            }
        } else {
            p.words[i] = words[i].get<std::vector<int>>();
        }
    }
    // range-check through the normalizer
    ColoredWord w;
    for (int i = 0; i < graph.rank(); ++i)
        for (int l : p.words[i]) w.push_back({i, l});
    return graph.normalize_word(w);
}

SessionConfig parse_session_config(const std::string& json_text) {
    json j = parse_json(json_text);
    SessionConfig cfg;
    if (j.contains("graph")) cfg.graph_json = j["graph"].dump();
    if (j.contains("action")) cfg.action_json = j["action"].dump();
    cfg.cap = j.value("cap", cfg.cap);
    cfg.depth = j.value("depth", cfg.depth);
    cfg.bound = j.value("bound", cfg.bound);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.format = j.value("format", cfg.format);
    if (cfg.format != "text" && cfg.format != "json")
        throw Error("ConfigError", "format must be text or json");
    return cfg;
}

std::string emit_session_config(const SessionConfig& cfg) {
    json j;
    if (!cfg.graph_json.empty()) j["graph"] = parse_json(cfg.graph_json);
    if (!cfg.action_json.empty()) j["action"] = parse_json(cfg.action_json);
    j["cap"] = cfg.cap;
    j["depth"] = cfg.depth;
    j["bound"] = cfg.bound;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    return j.dump(2);
}

SelfSimilarKGraph build_instance(const SessionConfig& cfg) {
    std::optional<KGraph> graph;
    if (!cfg.graph_json.empty()) graph = parse_graph_spec(cfg.graph_json);
    if (cfg.action_json.empty()) {
        if (!graph)
            throw Error("ConfigError", "config needs a graph or an action");
        return SelfSimilarKGraph::graph_only(*graph);
    }
    return parse_action_spec(cfg.action_json, graph ? &*graph : nullptr);
}

}  // namespace ssk
