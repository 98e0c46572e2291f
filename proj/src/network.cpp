#include "marketsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace marketsim {

std::size_t TrustNetwork::edge_count() const {
    std::size_t sum = 0;
    for (int d : degrees) sum += static_cast<std::size_t>(d);
    return sum / 2;
}

std::vector<std::pair<int, int>> TrustNetwork::sorted_edges() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_count());
    for (int i = 0; i < n; ++i)
        for (int j : adjacency[i])
            if (i < j) edges.emplace_back(i, j);
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::uint64_t TrustNetwork::checksum() const {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(n));
    for (const auto& [i, j] : sorted_edges())
        h = splitmix64(h ^ (static_cast<std::uint64_t>(i) << 32 | static_cast<std::uint64_t>(j)));
    return h;
}

TrustNetwork generate_ba(int n, int m, Rng& rng, double isolated_fraction) {
    if (m < 1 || n <= m)
        throw std::invalid_argument("generate_ba: requires n > m >= 1");
    if (isolated_fraction < 0.0 || isolated_fraction >= 1.0)
        throw std::invalid_argument("generate_ba: isolated_fraction must be in [0, 1)");

    TrustNetwork net;
    net.n = n;
    net.adjacency.resize(n);
    net.degrees.assign(n, 0);

    // endpoint list for preferential attachment: each node appears once per link
    std::vector<int> endpoints;
    endpoints.reserve(2 * static_cast<std::size_t>(m) * n);

    auto add_edge = [&](int a, int b) {
        net.adjacency[a].push_back(b);
        net.adjacency[b].push_back(a);
        ++net.degrees[a];
        ++net.degrees[b];
        endpoints.push_back(a);
        endpoints.push_back(b);
    };

    // seed clique of m+1 nodes
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            add_edge(i, j);

    // withhold a random subset of the remaining nodes from attachment
    std::vector<char> withheld(n, 0);
    int iso = static_cast<int>(isolated_fraction * n);
    iso = std::min(iso, n - (m + 1));
    {
        std::vector<int> candidates;
        for (int v = m + 1; v < n; ++v) candidates.push_back(v);
        for (int i = 0; i < iso; ++i) {
            std::size_t pick = i + rng.uniform_int(candidates.size() - i);
            std::swap(candidates[i], candidates[pick]);
            withheld[candidates[i]] = 1;
        }
    }

    std::unordered_set<int> chosen;
    for (int v = m + 1; v < n; ++v) {
        if (withheld[v]) continue;
        chosen.clear();
        while (static_cast<int>(chosen.size()) < m) {
            int t = endpoints[rng.uniform_int(endpoints.size())];
            if (t != v) chosen.insert(t);
        }
        for (int t : chosen) add_edge(v, t);
    }
    return net;
}

DegreeDistribution degree_distribution(const TrustNetwork& net) {
    DegreeDistribution dist;
    for (int d : net.degrees) ++dist.histogram[d];

    std::vector<double> xs, ys, ws;
    for (const auto& [deg, count] : dist.histogram) {
        if (deg < 1) continue;
        xs.push_back(std::log(static_cast<double>(deg)));
        ys.push_back(std::log(static_cast<double>(count)));
        ws.push_back(static_cast<double>(count));
    }
    if (xs.size() < 3)
        throw std::runtime_error("degree_distribution: fewer than 3 distinct degrees, fit undefined");

    double W = 0, xm = 0, ym = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        W += ws[i];
        xm += ws[i] * xs[i];
        ym += ws[i] * ys[i];
    }
    xm /= W;
    ym /= W;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += ws[i] * (xs[i] - xm) * (xs[i] - xm);
        sxy += ws[i] * (xs[i] - xm) * (ys[i] - ym);
        syy += ws[i] * (ys[i] - ym) * (ys[i] - ym);
    }
    dist.fitted_exponent = sxy / sxx;
    dist.fit_r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return dist;
}

int hub(const TrustNetwork& net) {
    if (net.n < 1) throw std::invalid_argument("hub: empty network");
    int best = 0;
    for (int i = 1; i < net.n; ++i)
        if (net.degrees[i] > net.degrees[best]) best = i;
    return best;
}

std::vector<int> least_connected(const TrustNetwork& net, int count) {
    if (count < 0 || count > net.n)
        throw std::invalid_argument("least_connected: count out of range");
    std::vector<int> ids;
    for (int i = 0; i < net.n; ++i)
        if (net.degrees[i] > 0) ids.push_back(i);
    if (static_cast<int>(ids.size()) < count)
        throw std::runtime_error("least_connected: fewer positive-degree nodes than requested");
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (net.degrees[a] != net.degrees[b]) return net.degrees[a] < net.degrees[b];
        return a < b;
    });
    ids.resize(count);
    return ids;
}

void save_network(const TrustNetwork& net, std::ostream& out) {
    out << "nodes=" << net.n << "\n";
    for (const auto& [i, j] : net.sorted_edges())
        out << i << " " << j << "\n";
}

void save_network(const TrustNetwork& net, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_network: cannot open " + path);
    save_network(net, f);
}

TrustNetwork load_network(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("nodes=", 0) != 0)
        throw std::runtime_error("load_network: missing nodes= header");
    TrustNetwork net;
    net.n = std::stoi(header.substr(6));
    if (net.n < 0) throw std::runtime_error("load_network: negative node count");
    net.adjacency.resize(net.n);
    net.degrees.assign(net.n, 0);
    int i, j;
    while (in >> i >> j) {
        if (i < 0 || j < 0 || i >= net.n || j >= net.n || i == j)
            throw std::runtime_error("load_network: bad edge");
        net.adjacency[i].push_back(j);
        net.adjacency[j].push_back(i);
        ++net.degrees[i];
        ++net.degrees[j];
    }
    return net;
}

TrustNetwork load_network(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_network: cannot open " + path);
    return load_network(f);
}

} // namespace marketsim
