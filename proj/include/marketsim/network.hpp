#ifndef MARKETSIM_NETWORK_HPP
#define MARKETSIM_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "marketsim/rng.hpp"

namespace marketsim {

// Immutable trust network connecting investors. Undirected, no self-loops,
// no duplicate edges.
struct TrustNetwork {
    int n = 0;
    std::vector<std::vector<int>> adjacency;
    std::vector<int> degrees;

    std::size_t edge_count() const;
    // edges as (i, j) with i < j, sorted lexicographically
    std::vector<std::pair<int, int>> sorted_edges() const;
    std::uint64_t checksum() const;
};

struct DegreeDistribution {
    std::map<int, int> histogram;   // degree -> node count (degree 0 included)
    double fitted_exponent = 0.0;   // slope of log count vs log degree
    double fit_r2 = 0.0;
};

// Barabasi-Albert preferential attachment starting from a fully connected
// clique of m+1 nodes. isolated_fraction withholds that share of nodes from
// attachment entirely, leaving them with degree 0.
TrustNetwork generate_ba(int n, int m, Rng& rng, double isolated_fraction = 0.0);

// Log-log least-squares fit of the degree histogram (degree >= 1, count >= 1),
// weighted by counts so the sparse tail does not dominate.
DegreeDistribution degree_distribution(const TrustNetwork& net);

// Node of maximum degree; ties go to the lowest id.
int hub(const TrustNetwork& net);

// k nodes of smallest positive degree, ties broken by ascending id.
// Degree-0 nodes are excluded.
std::vector<int> least_connected(const TrustNetwork& net, int count);

// Plain-text edge list: header "nodes=<n>", then one "i j" pair per line
// (i < j), sorted lexicographically.
void save_network(const TrustNetwork& net, std::ostream& out);
void save_network(const TrustNetwork& net, const std::string& path);
TrustNetwork load_network(std::istream& in);
TrustNetwork load_network(const std::string& path);

} // namespace marketsim

#endif
