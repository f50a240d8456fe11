#ifndef MGP_NETWORK_HPP
#define MGP_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mgp {

/// Undirected zone pair, normalized so first < second.
using EdgePair = std::pair<int, int>;

inline EdgePair make_edge(int a, int b) { return a < b ? EdgePair{a, b} : EdgePair{b, a}; }

struct Zone {
    int index = 0;     // zero-based, contiguous within a topology
    std::string code;  // unique uppercase identifier, e.g. "NORD"
};

/// Zonal transmission network. The adjacency matrix is derived from the
/// edge list, so it is symmetric with a zero diagonal by construction.
class NetworkTopology {
public:
    NetworkTopology() = default;

    /// Builds and validates a topology from zone codes and code pairs.
    /// Rejects duplicate/malformed codes, self-loops, duplicate edges and
    /// edges referencing unknown zones.
    static NetworkTopology build(const std::vector<std::string>& zone_codes,
                                 const std::vector<std::pair<std::string, std::string>>& edge_codes);

    int zone_count() const { return static_cast<int>(zones_.size()); }
    const std::vector<Zone>& zones() const { return zones_; }
    const Zone& zone(int index) const;
    const std::vector<EdgePair>& edges() const { return edges_; }

    /// Index for a code, -1 if unknown.
    int find_zone(std::string_view code) const;
    /// Index for a code, input_error if unknown.
    int require_zone(std::string_view code) const;

    bool has_edge(int a, int b) const;
    /// Neighbor indices in ascending order.
    const std::vector<int>& neighbors(int zone) const;

    /// Row-major N*N 0/1 adjacency matrix.
    std::vector<std::uint8_t> adjacency_matrix() const;

    /// Copy of this topology with one undirected edge removed.
    NetworkTopology without_edge(EdgePair edge) const;

private:
    std::vector<Zone> zones_;
    std::vector<EdgePair> edges_;        // normalized, in first-appearance order
    std::vector<std::vector<int>> adj_;  // ascending neighbor lists
};

/// Directed view of an undirected edge together with the zones that stay
/// connected to `from` once the edge is removed.
struct EdgeCut {
    int from = 0;
    int to = 0;
    std::vector<bool> side_membership;  // length N, true = on the from side
};

/// Zones reachable from `start` with `removed_edges` deleted, as a boolean
/// vector of length N. Iterative depth-first search with an explicit stack;
/// nodes are marked when pushed (each enters the stack at most once) and
/// neighbors are scanned in ascending zone index.
std::vector<bool> reachable_zones(const NetworkTopology& topology, int start,
                                  std::span<const EdgePair> removed_edges = {});

/// Maximal connected components of the graph minus `removed_edges`.
/// Components are ordered by their smallest zone index, members ascending.
std::vector<std::vector<int>> connected_components(const NetworkTopology& topology,
                                                   std::span<const EdgePair> removed_edges = {});

/// Cut membership for the directed edge from->to: which zones end up on the
/// `from` side when the edge is removed. input_error if (from,to) is not an
/// edge of the topology.
EdgeCut edge_cut(const NetworkTopology& topology, int from, int to);

/// Non-tree edges with respect to a DFS forest. Empty iff the graph is a
/// forest; otherwise removing any returned edge reduces the cycle count.
std::vector<EdgePair> detect_cycles(const NetworkTopology& topology);

/// Topology file: a `zones:` section (one code per line) followed by an
/// `edges:` section (`CODE_A CODE_B` per line). `#` starts a comment.
NetworkTopology load_topology(std::istream& in);
NetworkTopology load_topology_file(const std::string& path);

}  // namespace mgp

#endif
