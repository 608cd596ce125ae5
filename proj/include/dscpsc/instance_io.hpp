#ifndef DSCPSC_INSTANCE_IO_HPP
#define DSCPSC_INSTANCE_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dscpsc/errors.hpp"
#include "dscpsc/instance.hpp"

namespace dscpsc {

namespace detail {

using nlohmann::json;

inline std::vector<std::string> get_id_list(const json& j, const char* key,
                                            bool required) {
    if (!j.contains(key)) {
        if (required) throw ParseError(std::string("sets.") + key + " is missing");
        return {};
    }
    const json& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(std::string("sets.") + key + " must be an array");
    std::vector<std::string> out;
    for (const auto& el : arr) {
        if (!el.is_string()) throw ParseError(std::string("sets.") + key + " must hold strings");
        out.push_back(el.get<std::string>());
    }
    return out;
}

/* Read a dense nested array into t.data, validating the shape exactly. */
inline void read_nested(const json& j, const std::vector<std::size_t>& shape,
                        std::size_t dim, std::vector<double>& out, const char* key) {
    if (dim == shape.size()) {
        if (!j.is_number()) throw ParseError(std::string("params.") + key + ": expected a number");
        out.push_back(j.get<double>());
        return;
    }
    if (!j.is_array() || j.size() != shape[dim]) {
        std::ostringstream os;
        os << "params." << key << ": expected an array of length " << shape[dim]
           << " at depth " << dim;
        throw ParseError(os.str());
    }
    for (const auto& el : j) read_nested(el, shape, dim + 1, out, key);
}

inline json write_nested(const Table& t, std::size_t dim, std::size_t& cursor) {
    json j = json::array();
    if (dim + 1 == t.shape.size() || t.shape.empty()) {
        if (t.shape.empty()) return json();
        for (std::size_t i = 0; i < t.shape[dim]; ++i) j.push_back(t.data[cursor++]);
        return j;
    }
    for (std::size_t i = 0; i < t.shape[dim]; ++i)
        j.push_back(write_nested(t, dim + 1, cursor));
    return j;
}

} // namespace detail

inline ModelInstance instance_from_json(const nlohmann::json& j) {
    using detail::get_id_list;
    if (!j.is_object()) throw ParseError("instance document must be an object");
    if (!j.contains("schema") || j.at("schema") != "dscpsc/1")
        throw ParseError("instance schema must be \"dscpsc/1\"");

    ModelInstance inst;
    inst.name = j.value("name", std::string("unnamed"));
    inst.description = j.value("description", std::string());

    if (!j.contains("sets") || !j.at("sets").is_object())
        throw ParseError("sets section is missing");
    const auto& js = j.at("sets");
    InstanceSets& s = inst.sets;
    s.refineries = get_id_list(js, "refineries", true);
    s.candidate_refineries = get_id_list(js, "candidate_refineries", false);
    s.dcs = get_id_list(js, "dcs", true);
    s.candidate_dcs = get_id_list(js, "candidate_dcs", false);
    s.customers = get_id_list(js, "customers", true);
    s.modes = get_id_list(js, "modes", true);
    if (!js.contains("pipeline_mode") || !js.at("pipeline_mode").is_string())
        throw ParseError("sets.pipeline_mode is missing");
    s.pipeline_mode = js.at("pipeline_mode").get<std::string>();
    s.mode_capacity_levels = get_id_list(js, "mode_capacity_levels", true);
    s.products = get_id_list(js, "products", true);
    s.refinery_build_levels = get_id_list(js, "refinery_build_levels", false);
    s.dc_build_levels = get_id_list(js, "dc_build_levels", false);
    s.refinery_expansion_levels = get_id_list(js, "refinery_expansion_levels", false);
    s.dc_expansion_levels = get_id_list(js, "dc_expansion_levels", false);
    s.pipeline_expansion_levels = get_id_list(js, "pipeline_expansion_levels", false);
    s.tank_levels = get_id_list(js, "tank_levels", false);
    s.pipeline_build_levels = get_id_list(js, "pipeline_build_levels", false);
    s.pipeline_routes = get_id_list(js, "pipeline_routes", false);
    s.stakeholders = get_id_list(js, "stakeholders", true);
    s.regions = get_id_list(js, "regions", true);
    s.education_levels = get_id_list(js, "education_levels", true);
    s.periods = get_id_list(js, "periods", true);
    s.fields = get_id_list(js, "fields", true);

    if (!j.contains("params") || !j.at("params").is_object())
        throw ParseError("params section is missing");
    const auto& jp = j.at("params");
    for (const auto& info : table_registry()) {
        std::vector<std::size_t> shape;
        for (Ax ax : info.axes) shape.push_back(axis_size(ax, s));
        Table& t = inst.params.*(info.member);
        t.shape = shape;
        t.data.clear();
        if (!jp.contains(info.key))
            throw ValidationError(std::string("params.") + info.key + " is not total (missing)");
        std::size_t n = 1;
        for (std::size_t d : shape) n *= d;
        t.data.reserve(n);
        detail::read_nested(jp.at(info.key), shape, 0, t.data, info.key);
    }
    for (const auto& info : scalar_registry()) {
        if (!jp.contains(info.key))
            throw ValidationError(std::string("params.") + info.key + " is not total (missing)");
        if (!jp.at(info.key).is_number())
            throw ParseError(std::string("params.") + info.key + ": expected a number");
        inst.params.*(info.member) = jp.at(info.key).get<double>();
    }

    if (!j.contains("ownership") || !j.at("ownership").is_object())
        throw ParseError("ownership section is missing");
    const auto& jo = j.at("ownership");

    auto stake_index = [&s](const std::string& id) -> int {
        for (std::size_t e = 0; e < s.stakeholders.size(); ++e)
            if (s.stakeholders[e] == id) return static_cast<int>(e);
        return -1;
    };

    if (!jo.contains("refinery_owner") || !jo.at("refinery_owner").is_object())
        throw ParseError("ownership.refinery_owner is missing");
    inst.refinery_owner.assign(inst.nK() + inst.nKc(), -1);
    auto find_kall = [&](const std::string& id) -> int {
        for (std::size_t i = 0; i < s.refineries.size(); ++i)
            if (s.refineries[i] == id) return static_cast<int>(i);
        for (std::size_t i = 0; i < s.candidate_refineries.size(); ++i)
            if (s.candidate_refineries[i] == id)
                return static_cast<int>(s.refineries.size() + i);
        return -1;
    };
    for (auto it = jo.at("refinery_owner").begin(); it != jo.at("refinery_owner").end(); ++it) {
        const int ki = find_kall(it.key());
        if (ki < 0) throw ParseError("refinery_owner names unknown refinery '" + it.key() + "'");
        if (!it.value().is_string())
            throw ParseError("refinery_owner values must be stakeholder ids");
        inst.refinery_owner[ki] = stake_index(it.value().get<std::string>());
    }

    if (!jo.contains("dc_users") || !jo.at("dc_users").is_object())
        throw ParseError("ownership.dc_users is missing");
    inst.dc_users.assign(inst.nL() + inst.nLc(), {});
    auto find_lall = [&](const std::string& id) -> int {
        for (std::size_t i = 0; i < s.dcs.size(); ++i)
            if (s.dcs[i] == id) return static_cast<int>(i);
        for (std::size_t i = 0; i < s.candidate_dcs.size(); ++i)
            if (s.candidate_dcs[i] == id)
                return static_cast<int>(s.dcs.size() + i);
        return -1;
    };
    for (auto it = jo.at("dc_users").begin(); it != jo.at("dc_users").end(); ++it) {
        const int li = find_lall(it.key());
        if (li < 0) throw ParseError("dc_users names unknown dc '" + it.key() + "'");
        if (!it.value().is_array())
            throw ParseError("dc_users values must be arrays of stakeholder ids");
        std::vector<int> users;
        for (const auto& el : it.value()) {
            if (!el.is_string()) throw ParseError("dc_users entries must be stakeholder ids");
            users.push_back(stake_index(el.get<std::string>()));
        }
        std::sort(users.begin(), users.end());
        inst.dc_users[li] = std::move(users);
    }

    auto violations = validate(inst);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "instance '" << inst.name << "' has " << violations.size()
           << " validation failure(s); first: " << violations.front().str();
        throw ValidationError(os.str());
    }
    return inst;
}

inline nlohmann::json instance_to_json(const ModelInstance& inst) {
    using nlohmann::json;
    json j;
    j["schema"] = "dscpsc/1";
    j["name"] = inst.name;
    if (!inst.description.empty()) j["description"] = inst.description;

    json js;
    const InstanceSets& s = inst.sets;
    js["refineries"] = s.refineries;
    js["candidate_refineries"] = s.candidate_refineries;
    js["dcs"] = s.dcs;
    js["candidate_dcs"] = s.candidate_dcs;
    js["customers"] = s.customers;
    js["modes"] = s.modes;
    js["pipeline_mode"] = s.pipeline_mode;
    js["mode_capacity_levels"] = s.mode_capacity_levels;
    js["products"] = s.products;
    js["refinery_build_levels"] = s.refinery_build_levels;
    js["dc_build_levels"] = s.dc_build_levels;
    js["refinery_expansion_levels"] = s.refinery_expansion_levels;
    js["dc_expansion_levels"] = s.dc_expansion_levels;
    js["pipeline_expansion_levels"] = s.pipeline_expansion_levels;
    js["tank_levels"] = s.tank_levels;
    js["pipeline_build_levels"] = s.pipeline_build_levels;
    js["pipeline_routes"] = s.pipeline_routes;
    js["stakeholders"] = s.stakeholders;
    js["regions"] = s.regions;
    js["education_levels"] = s.education_levels;
    js["periods"] = s.periods;
    js["fields"] = s.fields;
    j["sets"] = js;

    json jp;
    for (const auto& info : table_registry()) {
        const Table& t = inst.params.*(info.member);
        std::size_t cursor = 0;
        if (t.shape.empty())
            jp[info.key] = json::array();
        else
            jp[info.key] = detail::write_nested(t, 0, cursor);
    }
    for (const auto& info : scalar_registry())
        jp[info.key] = inst.params.*(info.member);
    j["params"] = jp;

    json jo;
    json owners = json::object();
    for (std::size_t i = 0; i < inst.refinery_owner.size(); ++i) {
        const std::string& id = i < inst.nK() ? s.refineries[i]
                                              : s.candidate_refineries[i - inst.nK()];
        owners[id] = s.stakeholders[inst.refinery_owner[i]];
    }
    jo["refinery_owner"] = owners;
    json users = json::object();
    for (std::size_t i = 0; i < inst.dc_users.size(); ++i) {
        const std::string& id = i < inst.nL() ? s.dcs[i] : s.candidate_dcs[i - inst.nL()];
        json arr = json::array();
        for (int e : inst.dc_users[i]) arr.push_back(s.stakeholders[e]);
        users[id] = arr;
    }
    jo["dc_users"] = users;
    j["ownership"] = jo;
    return j;
}

inline ModelInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("instance file ") + path + ": " + ex.what());
    }
    return instance_from_json(j);
}

inline void save_instance(const ModelInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write instance file " + path);
    out << instance_to_json(inst).dump(1) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

} // namespace dscpsc

#endif
