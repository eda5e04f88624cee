#include "graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "common.hpp"
#include "knn.hpp"

namespace glseg {

namespace {

inline double squared_distance(const double* a, const double* b,
                               std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

}  // namespace

void NeighborGraph::finalize() {
  const std::size_t n = offset_.size() - 1;
  degree_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t p = offset_[i]; p < offset_[i + 1]; ++p) d += weight_[p];
    degree_[i] = d;
  }
  normalized_.resize(weight_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = offset_[i]; p < offset_[i + 1]; ++p) {
      const std::uint32_t j = neighbor_[p];
      normalized_[p] = weight_[p] / std::sqrt(degree_[i] * degree_[j]);
    }
  }
}

NeighborGraph NeighborGraph::build(const FeatureMatrix& features,
                                   const GraphConfig& cfg) {
  const std::size_t n = features.rows;
  require(cfg.scale_rank >= 1 && cfg.scale_rank <= cfg.neighbors,
          ErrorCode::invalid_config,
          "graph config requires 1 <= M <= N (got M=" +
              std::to_string(cfg.scale_rank) +
              ", N=" + std::to_string(cfg.neighbors) + ")");
  require(cfg.neighbors < n, ErrorCode::invalid_config,
          "graph config requires N < n (got N=" +
              std::to_string(cfg.neighbors) + ", n=" + std::to_string(n) +
              ")");

  const KnnResult knn = knn_search(features, cfg.neighbors);
  const std::vector<double> tau = local_scales(knn, cfg.scale_rank);

  // union rule: edge iff i in nn(j) or j in nn(i)
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t j : knn.neighbors_of(i)) {
      adj[i].push_back(j);
      adj[j].push_back(static_cast<std::uint32_t>(i));
    }
  }

  NeighborGraph g;
  g.offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    g.offset_[i + 1] = g.offset_[i] + adj[i].size();
  }
  g.neighbor_.reserve(g.offset_[n]);
  for (std::size_t i = 0; i < n; ++i)
    g.neighbor_.insert(g.neighbor_.end(), adj[i].begin(), adj[i].end());
  g.weight_.assign(g.offset_[n], 0.0);

  // one kernel evaluation per unordered pair, mirrored to both rows
  const double* data = features.values.data();
  const std::size_t d = features.cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = g.offset_[i]; p < g.offset_[i + 1]; ++p) {
      const std::uint32_t j = g.neighbor_[p];
      if (j <= i) continue;
      const double dist2 = squared_distance(data + i * d, data + j * d, d);
      const double w = std::exp(-dist2 / (tau[i] * tau[j]));
      g.weight_[p] = w;
      const auto row = g.neighbors(j);
      const auto it = std::lower_bound(row.begin(), row.end(),
                                       static_cast<std::uint32_t>(i));
      g.weight_[g.offset_[j] + (it - row.begin())] = w;
    }
  }

  g.finalize();
  // every vertex has at least its own N >= 1 neighbors, so d_i > 0
  for (std::size_t i = 0; i < n; ++i) assert(g.degree_[i] > 0.0);
  return g;
}

NeighborGraph NeighborGraph::from_edges(
    std::size_t n,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>&
        edges) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (const auto& [a, b, w] : edges) {
    require(a < n && b < n, ErrorCode::invalid_argument,
            "edge endpoint out of range");
    require(a != b, ErrorCode::invalid_argument, "self-loops are not allowed");
    require(w > 0.0, ErrorCode::invalid_argument,
            "edge weights must be positive");
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
  }
  NeighborGraph g;
  g.offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    for (std::size_t p = 1; p < adj[i].size(); ++p)
      require(adj[i][p].first != adj[i][p - 1].first,
              ErrorCode::invalid_argument, "duplicate edge in edge list");
    g.offset_[i + 1] = g.offset_[i] + adj[i].size();
  }
  g.neighbor_.reserve(g.offset_[n]);
  g.weight_.reserve(g.offset_[n]);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, w] : adj[i]) {
      g.neighbor_.push_back(j);
      g.weight_.push_back(w);
    }
  }
  g.finalize();
  return g;
}

void SymmetricLaplacian::apply(std::span<const double> x,
                               std::span<double> y) const {
  const std::size_t n = graph_.order();
  require(x.size() == n && y.size() == n, ErrorCode::size_mismatch,
          "laplacian apply: vector length does not match graph order");
  for (std::size_t i = 0; i < n; ++i) {
    double acc = x[i];
    const auto nbr = graph_.neighbors(i);
    const auto what = graph_.normalized(i);
    for (std::size_t p = 0; p < nbr.size(); ++p) acc -= what[p] * x[nbr[p]];
    y[i] = acc;
  }
}

std::vector<double> SymmetricLaplacian::to_dense() const {
  const std::size_t n = graph_.order();
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    dense[i * n + i] = 1.0;
    const auto nbr = graph_.neighbors(i);
    const auto what = graph_.normalized(i);
    for (std::size_t p = 0; p < nbr.size(); ++p)
      dense[i * n + nbr[p]] = -what[p];
  }
  return dense;
}

void write_edges_csv(const NeighborGraph& graph, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write edge CSV: " + path);
  out << "i,j,w\n";
  char buf[40];
  for (std::size_t i = 0; i < graph.order(); ++i) {
    const auto nbr = graph.neighbors(i);
    const auto w = graph.weights(i);
    for (std::size_t p = 0; p < nbr.size(); ++p) {
      if (nbr[p] <= i) continue;
      std::snprintf(buf, sizeof buf, "%.17g", w[p]);
      out << i << ',' << nbr[p] << ',' << buf << '\n';
    }
  }
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

}  // namespace glseg
