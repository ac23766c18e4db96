#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "plumb/errors.hpp"
#include "plumb/series.hpp"

namespace plumb {

// ordered_json keeps insertion order, which together with nlohmann's
// shortest-round-trip double formatting makes emitted reports byte-stable.
using Json = nlohmann::ordered_json;

inline Json series_to_json(const Series& s) {
    Json j;
    j["vars"] = s.vars();
    j["trunc"] = s.trunc();
    j["lower"] = s.lower();
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) { // map order = lexicographic exponent order
        Json t;
        t["exp"] = e;
        t["re"] = c.real();
        t["im"] = c.imag();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Series series_from_json(const Json& j) {
    if (!j.is_object()) throw parse_error("series JSON must be an object");
    for (const char* key : {"vars", "trunc", "terms"})
        if (!j.contains(key)) throw parse_error(std::string("series JSON missing key '") + key + "'");
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    int trunc = j.at("trunc").get<int>();
    std::vector<int> lower;
    if (j.contains("lower")) lower = j.at("lower").get<std::vector<int>>();
    Series s(vars, trunc, lower);
    const Json& terms = j.at("terms");
    if (!terms.is_array()) throw parse_error("series 'terms' must be an array");
    std::set<std::vector<int>> seen;
    for (const auto& t : terms) {
        if (!t.contains("exp") || !t.contains("re") || !t.contains("im"))
            throw parse_error("series term needs 'exp', 're' and 'im'");
        std::vector<int> exp = t.at("exp").get<std::vector<int>>();
        Complex c(t.at("re").get<double>(), t.at("im").get<double>());
        if (!seen.insert(exp).second) throw parse_error("duplicate exponent tuple in series terms");
        s = s + Series::monomial(vars, trunc, std::move(exp), c, lower);
    }
    return s;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace plumb
