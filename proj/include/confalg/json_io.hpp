#pragma once

// JSON wire formats:
//   NormalWord  {"s": 0, "gens": ["a", "b"], "indices": [1]}
//   ConfElement [{"coeff": "p/q", "word": NormalWord}, ...] in canonical order
//   config      {"generators": [{"name": "a", "locality": 2}, ...], "order": [...], "mode": "conformal"}

#include "confalg/freeconf.hpp"
#include "confalg/ncpoly.hpp"
#include "confalg/pseudo.hpp"
#include "confalg/scalar.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace confalg {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(const NormalWord& u, const AlgebraConfig& cfg) {
    json gens = json::array();
    for (Letter a : u.gens) gens.push_back(cfg.name(a));
    return json{{"s", u.s}, {"gens", gens}, {"indices", u.indices}};
}

inline json to_json(const ConfElement& x, const AlgebraConfig& cfg) {
    json out = json::array();
    for (const auto& [u, c] : sorted_terms(x, cfg))
        out.push_back(json{{"coeff", to_fraction_string(c)}, {"word", to_json(u, cfg)}});
    return out;
}

inline NormalWord normal_word_from_json(const json& j, const AlgebraConfig& cfg) {
    NormalWord u;
    u.s = j.at("s").get<Degree>();
    for (const auto& g : j.at("gens")) {
        auto l = cfg.find(g.get<std::string>());
        if (!l || l->is_v()) throw std::invalid_argument("unknown generator in normal word");
        u.gens.push_back(*l);
    }
    u.indices = j.at("indices").get<std::vector<Degree>>();
    require_valid(u, cfg);
    return u;
}

inline ConfElement conf_from_json(const json& j, const AlgebraConfig& cfg) {
    ConfElement x;
    for (const auto& t : j) x.add(normal_word_from_json(t.at("word"), cfg), parse_scalar(t.at("coeff").get<std::string>()));
    return x;
}

/// PElement as [{"d": k, "poly": [{"coeff": "p/q", "word": "avb"}]}].
inline json to_json(const PElement& p, const AlgebraConfig& cfg) {
    json out = json::array();
    for (const auto& [d, f] : p.parts()) {
        json poly = json::array();
        for (const auto& [w, c] : f.terms())
            poly.push_back(json{{"coeff", to_fraction_string(c)}, {"word", format_word(w, cfg)}});
        out.push_back(json{{"d", d}, {"poly", poly}});
    }
    return out;
}

inline AlgebraConfig default_config() { return AlgebraConfig({"a", "b"}, {2, 3}); }

inline AlgebraConfig config_from_json(const json& j) {
    try {
        std::vector<std::string> names;
        std::vector<unsigned> loc;
        for (const auto& g : j.at("generators")) {
            names.push_back(g.at("name").get<std::string>());
            const auto n = g.at("locality").get<long long>();
            if (n < 1) throw ConfigError("locality of '" + names.back() + "' must be >= 1");
            loc.push_back(static_cast<unsigned>(n));
        }
        if (j.contains("order")) {
            auto order = j.at("order").get<std::vector<std::string>>();
            std::vector<std::string> sorted_order = order, sorted_names = names;
            std::sort(sorted_order.begin(), sorted_order.end());
            std::sort(sorted_names.begin(), sorted_names.end());
            if (sorted_order != sorted_names) throw ConfigError("'order' must list every generator exactly once");
            std::vector<unsigned> reordered;
            for (const auto& n : order)
                reordered.push_back(loc[static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin())]);
            names = std::move(order);
            loc = std::move(reordered);
        }
        AlgebraKind kind = AlgebraKind::noncommutative;
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode == "pseudo-commutative")
                kind = AlgebraKind::commutative;
            else if (mode != "conformal")
                throw ConfigError("unknown mode '" + mode + "'");
        }
        return AlgebraConfig(std::move(names), std::move(loc), kind);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

inline AlgebraConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

}  // namespace confalg
