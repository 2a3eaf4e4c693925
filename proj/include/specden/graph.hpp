#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "specden/linalg.hpp"
#include "specden/random.hpp"

namespace specden {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

// Undirected weighted graph with 1-based vertex ids. Besides explicit edges,
// a graph may carry an implicit "overlay": an equal weight between every pair
// of member vertices, self-loops included. The overlay is never materialized;
// walk sampling treats it as a uniform jump over the member set, which is
// exact because all overlay weights are equal. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  int vertex_count() const { return n_; }
  int64_t edge_count() const { return static_cast<int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  double degree(int v) const { return degrees_[static_cast<size_t>(v)]; }
  const std::vector<double>& degrees() const { return degrees_; }

  bool has_overlay() const { return overlay_weight_ > 0.0; }
  double overlay_weight() const { return overlay_weight_; }
  bool overlay_all() const { return overlay_all_; }
  int64_t overlay_count() const {
    return overlay_all_ ? n_ : static_cast<int64_t>(overlay_members_.size());
  }
  const std::vector<int>& overlay_members() const { return overlay_members_; }
  bool overlay_member(int v) const {
    if (!has_overlay()) return false;
    if (overlay_all_) return true;
    return overlay_flag_[static_cast<size_t>(v)] != 0;
  }

  // Total weight between u and v (explicit plus overlay contribution).
  double weight_between(int u, int v) const;

  // Explicit neighbors of v as (neighbor, weight) spans into the CSR arrays.
  int64_t adj_begin(int v) const { return offsets_[static_cast<size_t>(v)]; }
  int64_t adj_end(int v) const { return offsets_[static_cast<size_t>(v) + 1]; }
  int neighbor_at(int64_t idx) const { return neighbors_[static_cast<size_t>(idx)]; }
  double weight_at(int64_t idx) const { return weights_[static_cast<size_t>(idx)]; }

  bool operator==(const WeightedGraph& other) const;

  friend WeightedGraph build_graph_with_overlay(int n, std::vector<Edge> edges,
                                                double overlay_weight, bool overlay_all,
                                                std::vector<int> overlay_members);
  friend int walk_step(const WeightedGraph& g, int v, RandomSource& rng);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;  // canonical sorted list, u <= v
  std::vector<int64_t> offsets_;
  std::vector<int> neighbors_;
  std::vector<double> weights_;
  std::vector<double> cumweights_;  // per-vertex running sums for inverse-CDF sampling
  std::vector<double> degrees_;
  double overlay_weight_ = 0.0;
  bool overlay_all_ = false;
  std::vector<int> overlay_members_;  // sorted, used when !overlay_all_
  std::vector<uint8_t> overlay_flag_;
};

struct WalkTranscript {
  int m = 0;
  int T = 0;
  std::vector<std::vector<int>> walks;  // m rows of T+1 labels each

  bool operator==(const WalkTranscript& other) const {
    return m == other.m && T == other.T && walks == other.walks;
  }
};

// Builds a graph from an undirected edge list. Rejects out-of-range vertices,
// negative weights, duplicate undirected edges, and zero-degree vertices.
WeightedGraph build_graph(int n, std::vector<Edge> edges);
WeightedGraph build_graph_with_overlay(int n, std::vector<Edge> edges,
                                       double overlay_weight, bool overlay_all,
                                       std::vector<int> overlay_members);

// One transition of the edge-weighted random walk from v.
int walk_step(const WeightedGraph& g, int v, RandomSource& rng);

// m independent walks of T steps. Walk i draws from rng.derive(i), so the
// transcript is independent of batching or thread scheduling. starts empty
// means uniformly random start vertices.
WalkTranscript run_walks(const WeightedGraph& g, int m, int T,
                         const std::vector<int>& starts, RandomSource rng);

// Materializes D^{-1/2} A D^{-1/2} for oracle use; guarded by size.
DenseMatrix dense_normalized_adjacency(const WeightedGraph& g, int size_guard = 8192);

// Row-stochastic walk matrix D^{-1} A (same eigenvalues as the normalized one).
DenseMatrix dense_walk_matrix(const WeightedGraph& g, int size_guard = 8192);

// Relabels vertices through a permutation (perm[old] = new, 1-based).
WeightedGraph relabel_with_permutation(const WeightedGraph& g, const std::vector<int>& perm);

// Text format: optional "# overlay W [k v1..vk]" header, then "n m", then
// m lines "u v w". Write-then-read round-trips to an identical graph.
void write_graph_file(const std::string& path, const WeightedGraph& g);
WeightedGraph read_graph_file(const std::string& path);

}  // namespace specden
