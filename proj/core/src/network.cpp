#include "mgp/network.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "mgp/errors.hpp"

namespace mgp {

namespace {

bool valid_zone_code(std::string_view code) {
    if (code.empty()) return false;
    for (unsigned char c : code) {
        if (!(std::isupper(c) || std::isdigit(c) || c == '_')) return false;
    }
    return true;
}

// strips comments ('#' to end of line) and surrounding whitespace
std::string clean_line(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    return line.substr(start);
}

}  // namespace

NetworkTopology NetworkTopology::build(const std::vector<std::string>& zone_codes,
                                       const std::vector<std::pair<std::string, std::string>>& edge_codes) {
    NetworkTopology topo;
    std::unordered_map<std::string, int> index_of;
    topo.zones_.reserve(zone_codes.size());
    for (const auto& code : zone_codes) {
        if (!valid_zone_code(code))
            throw input_error("invalid zone code '" + code + "' (expected uppercase letters, digits or '_')");
        if (!index_of.emplace(code, static_cast<int>(topo.zones_.size())).second)
            throw input_error("duplicate zone code '" + code + "'");
        topo.zones_.push_back({static_cast<int>(topo.zones_.size()), code});
    }
    topo.adj_.resize(topo.zones_.size());

    for (const auto& [code_a, code_b] : edge_codes) {
        auto it_a = index_of.find(code_a);
        auto it_b = index_of.find(code_b);
        if (it_a == index_of.end()) throw input_error("edge references unknown zone '" + code_a + "'");
        if (it_b == index_of.end()) throw input_error("edge references unknown zone '" + code_b + "'");
        if (it_a->second == it_b->second)
            throw input_error("self-loop on zone '" + code_a + "' is not allowed");
        EdgePair e = make_edge(it_a->second, it_b->second);
        if (std::find(topo.edges_.begin(), topo.edges_.end(), e) != topo.edges_.end())
            throw input_error("duplicate edge " + code_a + "-" + code_b);
        topo.edges_.push_back(e);
        topo.adj_[e.first].push_back(e.second);
        topo.adj_[e.second].push_back(e.first);
    }
    for (auto& nbrs : topo.adj_) std::sort(nbrs.begin(), nbrs.end());
    return topo;
}

const Zone& NetworkTopology::zone(int index) const {
    if (index < 0 || index >= zone_count()) throw input_error("zone index out of range");
    return zones_[static_cast<std::size_t>(index)];
}

int NetworkTopology::find_zone(std::string_view code) const {
    for (const auto& z : zones_)
        if (z.code == code) return z.index;
    return -1;
}

int NetworkTopology::require_zone(std::string_view code) const {
    int idx = find_zone(code);
    if (idx < 0) throw input_error("unknown zone '" + std::string(code) + "'");
    return idx;
}

bool NetworkTopology::has_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= zone_count() || b >= zone_count() || a == b) return false;
    const auto& nbrs = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

const std::vector<int>& NetworkTopology::neighbors(int zone) const {
    if (zone < 0 || zone >= zone_count()) throw input_error("zone index out of range");
    return adj_[static_cast<std::size_t>(zone)];
}

std::vector<std::uint8_t> NetworkTopology::adjacency_matrix() const {
    const auto n = static_cast<std::size_t>(zone_count());
    std::vector<std::uint8_t> g(n * n, 0);
    for (auto [a, b] : edges_) {
        g[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = 1;
        g[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] = 1;
    }
    return g;
}

NetworkTopology NetworkTopology::without_edge(EdgePair edge) const {
    edge = make_edge(edge.first, edge.second);
    NetworkTopology topo;
    topo.zones_ = zones_;
    topo.adj_.resize(zones_.size());
    bool found = false;
    for (auto e : edges_) {
        if (e == edge) {
            found = true;
            continue;
        }
        topo.edges_.push_back(e);
        topo.adj_[e.first].push_back(e.second);
        topo.adj_[e.second].push_back(e.first);
    }
    if (!found)
        throw input_error("cannot remove edge " + zone(edge.first).code + "-" + zone(edge.second).code +
                          ": not present");
    for (auto& nbrs : topo.adj_) std::sort(nbrs.begin(), nbrs.end());
    return topo;
}

std::vector<bool> reachable_zones(const NetworkTopology& topology, int start,
                                  std::span<const EdgePair> removed_edges) {
    const int n = topology.zone_count();
    if (start < 0 || start >= n) throw input_error("reachable_zones: zone index out of range");

    auto removed = [&](int a, int b) {
        EdgePair e = make_edge(a, b);
        return std::find(removed_edges.begin(), removed_edges.end(), e) != removed_edges.end();
    };

    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    stack.push_back(start);
    visited[static_cast<std::size_t>(start)] = true;  // mark on push
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : topology.neighbors(u)) {
            if (visited[static_cast<std::size_t>(v)] || removed(u, v)) continue;
            visited[static_cast<std::size_t>(v)] = true;
            stack.push_back(v);
        }
    }
    return visited;
}

std::vector<std::vector<int>> connected_components(const NetworkTopology& topology,
                                                   std::span<const EdgePair> removed_edges) {
    const int n = topology.zone_count();
    std::vector<bool> assigned(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> components;
    for (int z = 0; z < n; ++z) {
        if (assigned[static_cast<std::size_t>(z)]) continue;
        auto reach = reachable_zones(topology, z, removed_edges);
        std::vector<int> comp;
        for (int u = 0; u < n; ++u) {
            if (reach[static_cast<std::size_t>(u)]) {
                comp.push_back(u);
                assigned[static_cast<std::size_t>(u)] = true;
            }
        }
        components.push_back(std::move(comp));  // members already ascending
    }
    return components;
}

EdgeCut edge_cut(const NetworkTopology& topology, int from, int to) {
    if (!topology.has_edge(from, to))
        throw input_error("edge_cut: no edge between zone indices " + std::to_string(from) + " and " +
                          std::to_string(to));
    const EdgePair removed[] = {make_edge(from, to)};
    EdgeCut cut;
    cut.from = from;
    cut.to = to;
    cut.side_membership = reachable_zones(topology, from, removed);
    return cut;
}

std::vector<EdgePair> detect_cycles(const NetworkTopology& topology) {
    const int n = topology.zone_count();
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<EdgePair> back_edges;

    for (int root = 0; root < n; ++root) {
        if (visited[static_cast<std::size_t>(root)]) continue;
        // stack of (node, parent); mark on push
        std::vector<std::pair<int, int>> stack{{root, -1}};
        visited[static_cast<std::size_t>(root)] = true;
        while (!stack.empty()) {
            auto [u, parent] = stack.back();
            stack.pop_back();
            for (int v : topology.neighbors(u)) {
                if (v == parent) continue;
                if (visited[static_cast<std::size_t>(v)]) {
                    EdgePair e = make_edge(u, v);
                    if (std::find(back_edges.begin(), back_edges.end(), e) == back_edges.end())
                        back_edges.push_back(e);
                    continue;
                }
                visited[static_cast<std::size_t>(v)] = true;
                stack.push_back({v, u});
            }
        }
    }
    return back_edges;
}

NetworkTopology load_topology(std::istream& in) {
    enum class Section { None, Zones, Edges };
    Section section = Section::None;
    std::vector<std::string> zone_codes;
    std::vector<std::pair<std::string, std::string>> edge_codes;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        if (line == "zones:") {
            section = Section::Zones;
            continue;
        }
        if (line == "edges:") {
            section = Section::Edges;
            continue;
        }
        switch (section) {
            case Section::None:
                throw input_error("topology line " + std::to_string(line_no) +
                                  ": content before 'zones:' section");
            case Section::Zones: {
                if (line.find_first_of(" \t") != std::string::npos)
                    throw input_error("topology line " + std::to_string(line_no) +
                                      ": zone code must be a single token");
                zone_codes.push_back(line);
                break;
            }
            case Section::Edges: {
                std::istringstream fields(line);
                std::string a, b, extra;
                if (!(fields >> a >> b) || (fields >> extra))
                    throw input_error("topology line " + std::to_string(line_no) +
                                      ": expected 'CODE_A CODE_B'");
                edge_codes.emplace_back(a, b);
                break;
            }
        }
    }
    if (zone_codes.empty()) throw input_error("topology file declares no zones");
    try {
        return NetworkTopology::build(zone_codes, edge_codes);
    } catch (const input_error& e) {
        throw input_error(std::string("topology file: ") + e.what());
    }
}

NetworkTopology load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open topology file '" + path + "'");
    return load_topology(in);
}

}  // namespace mgp
