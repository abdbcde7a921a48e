#include "causalabs/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace causalabs {

using nlohmann::json;

namespace {

Mat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array");
    Mat m(j.size(), j.at(0).size());
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto& row = j.at(r);
        if (!row.is_array() || row.size() != m.cols)
            throw std::invalid_argument("matrix rows must have equal length");
        for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = row.at(c).get<double>();
    }
    return m;
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void write_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace

Scm scm_from_json(const json& j) {
    std::vector<Variable> variables;
    for (const auto& v : j.at("variables")) {
        Variable var;
        var.name = v.at("name").get<std::string>();
        for (const auto& o : v.at("outcomes")) var.outcomes.push_back(o.get<std::string>());
        variables.push_back(std::move(var));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("edge must be a [parent, child] pair");
            edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        }
    std::map<std::string, Mechanism> mechanisms;
    for (const auto& [name, mj] : j.at("mechanisms").items()) {
        Mechanism mech;
        if (mj.contains("parents"))
            for (const auto& p : mj.at("parents")) mech.parents.push_back(p.get<std::string>());
        mech.matrix = mat_from_json(mj.at("matrix"));
        mechanisms[name] = std::move(mech);
    }
    return Scm(std::move(variables), std::move(edges), std::move(mechanisms));
}

json scm_to_json(const Scm& scm) {
    json j;
    j["variables"] = json::array();
    for (const auto& v : scm.variables())
        j["variables"].push_back({{"name", v.name}, {"outcomes", v.outcomes}});
    j["edges"] = json::array();
    for (const auto& [p, c] : scm.edges()) j["edges"].push_back({p, c});
    j["mechanisms"] = json::object();
    for (const auto& [name, mech] : scm.mechanisms())
        j["mechanisms"][name] = {{"parents", mech.parents}, {"matrix", mat_to_json(mech.matrix)}};
    return j;
}

Scm load_scm(const std::string& path) { return scm_from_json(read_file(path)); }

void save_scm(const Scm& scm, const std::string& path) { write_file(scm_to_json(scm), path); }

Abstraction abstraction_from_json(const json& j, const Scm& base) {
    Abstraction abs;
    for (const auto& r : j.at("relevant")) abs.relevant.push_back(r.get<std::string>());
    for (const auto& [lo, hi] : j.at("map").items()) abs.var_map[lo] = hi.get<std::string>();
    if (j.contains("alphas")) {
        for (const auto& [hv, aj] : j.at("alphas").items()) {
            if (aj.contains("low_order")) {
                std::vector<std::string> low;
                for (const auto& v : aj.at("low_order")) low.push_back(v.get<std::string>());
                const auto canonical = abs.preimage(base, hv);
                if (low != canonical)
                    throw std::invalid_argument(
                        "abstraction file: low_order for " + hv +
                        " must be the canonical base ordering of the preimage");
            }
            abs.alphas[hv] = mat_from_json(aj.at("matrix"));
        }
    }
    return abs;
}

json abstraction_to_json(const Abstraction& abs, const Scm& base) {
    json j;
    j["relevant"] = abs.relevant;
    j["map"] = json::object();
    for (const auto& [lo, hi] : abs.var_map) j["map"][lo] = hi;
    j["alphas"] = json::object();
    for (const auto& [hv, m] : abs.alphas)
        j["alphas"][hv] = {{"low_order", abs.preimage(base, hv)}, {"matrix", mat_to_json(m)}};
    return j;
}

Abstraction load_abstraction(const std::string& path, const Scm& base) {
    return abstraction_from_json(read_file(path), base);
}

void save_abstraction(const Abstraction& abs, const Scm& base, const std::string& path) {
    write_file(abstraction_to_json(abs, base), path);
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace causalabs
