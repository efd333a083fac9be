#include "anosov/io.hpp"

#include <fstream>

namespace anosov {

namespace {

std::vector<std::pair<int, int>> int_pairs(const json& j, const char* key) {
    std::vector<std::pair<int, int>> out;
    if (!j.contains(key))
        return out;
    for (const auto& e : j.at(key)) {
        if (!e.is_array() || e.size() != 2)
            throw ConfigInvalid(std::string(key) + " entries must be pairs");
        out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
}

json pairs_json(const std::vector<std::pair<int, int>>& v) {
    json a = json::array();
    for (auto [x, y] : v)
        a.push_back({x, y});
    return a;
}

template <class F>
auto converting(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("malformed ") + what + ": " + e.what());
    }
}

} // namespace

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object())
        throw ConfigInvalid(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigInvalid("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(path + ": " + e.what());
    }
}

ChainGraph chain_from_json(const json& j) {
    require_keys(j, {"vertices", "edges", "side_sharing", "marks", "vertex_identifications", "edge_identifications"},
                 "chain graph");
    return converting("chain graph", [&] {
        ChainGraph c;
        c.vertices = j.at("vertices").get<std::vector<int>>();
        c.edges = int_pairs(j, "edges");
        c.side_sharing = int_pairs(j, "side_sharing");
        if (j.contains("marks"))
            for (int m : j.at("marks").get<std::vector<int>>())
                c.marks.insert(m);
        c.vertex_identifications = int_pairs(j, "vertex_identifications");
        c.edge_identifications = int_pairs(j, "edge_identifications");
        return c;
    });
}

json chain_to_json(const ChainGraph& c) {
    return {{"vertices", c.vertices},
            {"edges", pairs_json(c.edges)},
            {"side_sharing", pairs_json(c.side_sharing)},
            {"marks", std::vector<int>(c.marks.begin(), c.marks.end())},
            {"vertex_identifications", pairs_json(c.vertex_identifications)},
            {"edge_identifications", pairs_json(c.edge_identifications)}};
}

std::pair<FiniteGraph, TreeWalk> graph_walk_from_json(const json& j) {
    require_keys(j, {"vertices", "edges", "base", "walk"}, "graph walk");
    return converting("graph walk", [&] {
        FiniteGraph g;
        g.vertices = j.at("vertices").get<std::vector<int>>();
        g.edges = int_pairs(j, "edges");
        TreeWalk w;
        w.base_vertex = j.at("base").get<int>();
        for (const auto& e : j.at("walk")) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigInvalid("walk entries must be [edge, +1 | -1]");
            int dir = e[1].get<int>();
            if (dir != 1 && dir != -1)
                throw ConfigInvalid("walk direction must be +1 or -1");
            w.edge_sequence.push_back({e[0].get<int>(), dir == -1});
        }
        return std::pair{g, w};
    });
}

json walk_to_json(const TreeWalk& w) {
    json a = json::array();
    for (const auto& e : w.edge_sequence)
        a.push_back({e.edge, e.reversed ? -1 : 1});
    return {{"base", w.base_vertex}, {"walk", a}};
}

StringLengths string_lengths_from_json(const json& j) {
    require_keys(j, {"lengths", "infinite", "topology"}, "string lengths");
    return converting("string lengths", [&] {
        StringLengths s;
        s.lengths = j.at("lengths").get<std::vector<double>>();
        s.infinite_flag = j.value("infinite", false);
        if (j.contains("topology"))
            s.topology = parse_topology(j.at("topology").get<std::string>());
        return s;
    });
}

GrowthBoundParams params_from_json(const json& j, GrowthBoundParams p) {
    require_keys(j, {"A", "B", "D_alpha0", "C1", "C2", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "t0", "a", "C_neutered"},
                 "params");
    converting("params", [&] {
        auto set = [&](const char* k, double& v) {
            if (j.contains(k))
                v = j.at(k).get<double>();
        };
        set("A", p.A);
        set("B", p.B);
        set("D_alpha0", p.D_alpha0);
        set("C1", p.C1);
        set("C2", p.C2);
        set("A1", p.A1);
        set("A2", p.A2);
        set("A3", p.A3);
        set("A4", p.A4);
        set("A5", p.A5);
        set("A6", p.A6);
        set("A7", p.A7);
        set("t0", p.t0);
        set("a", p.a);
        set("C_neutered", p.C_neutered);
        return 0;
    });
    validate_params(p);
    return p;
}

json params_to_json(const GrowthBoundParams& p) {
    return {{"A", p.A},   {"B", p.B},   {"D_alpha0", p.D_alpha0}, {"C1", p.C1}, {"C2", p.C2},
            {"A1", p.A1}, {"A2", p.A2}, {"A3", p.A3},             {"A4", p.A4}, {"A5", p.A5},
            {"A6", p.A6}, {"A7", p.A7}, {"t0", p.t0},             {"a", p.a},   {"C_neutered", p.C_neutered}};
}

json violation_to_json(const Violation& v) {
    return {{"rule", rule_name(v.rule)}, {"detail", v.detail}, {"vertices", v.vertices}, {"edges", v.edges}};
}

json violation_to_json(const BoundViolation& v) {
    return {{"rule", v.bound_name},
            {"detail", "string index " + std::to_string(v.index)},
            {"index", v.index},
            {"expected", v.expected},
            {"actual", v.actual}};
}

} // namespace anosov
