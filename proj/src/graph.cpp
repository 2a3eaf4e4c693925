#include "specden/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "specden/errors.hpp"

namespace specden {

namespace {

void check_vertex(int v, int n, const char* who) {
  if (v < 1 || v > n) {
    throw std::invalid_argument(std::string(who) + ": vertex " + std::to_string(v) +
                                " out of range [1, " + std::to_string(n) + "]");
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

double WeightedGraph::weight_between(int u, int v) const {
  check_vertex(u, n_, "weight_between");
  check_vertex(v, n_, "weight_between");
  double w = 0.0;
  for (int64_t i = adj_begin(u); i < adj_end(u); ++i) {
    if (neighbor_at(i) == v) {
      w += weight_at(i);
      break;
    }
  }
  if (overlay_member(u) && overlay_member(v)) w += overlay_weight_;
  return w;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
  return n_ == other.n_ && overlay_weight_ == other.overlay_weight_ &&
         overlay_all_ == other.overlay_all_ && overlay_members_ == other.overlay_members_ &&
         neighbors_ == other.neighbors_ && weights_ == other.weights_ &&
         offsets_ == other.offsets_;
}

WeightedGraph build_graph(int n, std::vector<Edge> edges) {
  return build_graph_with_overlay(n, std::move(edges), 0.0, false, {});
}

WeightedGraph build_graph_with_overlay(int n, std::vector<Edge> edges,
                                       double overlay_weight, bool overlay_all,
                                       std::vector<int> overlay_members) {
  if (n < 1) throw std::invalid_argument("build_graph: vertex count must be positive");
  if (overlay_weight < 0.0) throw std::invalid_argument("build_graph: negative overlay weight");

  for (auto& e : edges) {
    check_vertex(e.u, n, "build_graph");
    check_vertex(e.v, n, "build_graph");
    if (!(e.w >= 0.0)) throw std::invalid_argument("build_graph: negative edge weight");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(edges[i].u) +
                                  ", " + std::to_string(edges[i].v) + ")");
    }
  }

  WeightedGraph g;
  g.n_ = n;
  g.overlay_weight_ = overlay_weight;
  if (overlay_weight > 0.0) {
    g.overlay_all_ = overlay_all;
    if (!overlay_all) {
      std::sort(overlay_members.begin(), overlay_members.end());
      overlay_members.erase(std::unique(overlay_members.begin(), overlay_members.end()),
                            overlay_members.end());
      if (overlay_members.empty()) {
        throw std::invalid_argument("build_graph: overlay without members");
      }
      for (int v : overlay_members) check_vertex(v, n, "build_graph overlay");
      g.overlay_members_ = std::move(overlay_members);
      g.overlay_flag_.assign(static_cast<size_t>(n) + 1, 0);
      for (int v : g.overlay_members_) g.overlay_flag_[static_cast<size_t>(v)] = 1;
    }
  }

  // CSR with both endpoint directions; self-loop stored once per vertex.
  std::vector<int64_t> counts(static_cast<size_t>(n) + 2, 0);
  for (const auto& e : edges) {
    counts[static_cast<size_t>(e.u) + 1]++;
    if (e.u != e.v) counts[static_cast<size_t>(e.v) + 1]++;
  }
  g.offsets_.assign(static_cast<size_t>(n) + 2, 0);
  for (int v = 1; v <= n + 1; ++v) {
    g.offsets_[static_cast<size_t>(v)] = g.offsets_[static_cast<size_t>(v) - 1] +
                                         counts[static_cast<size_t>(v)];
  }
  const int64_t slots = g.offsets_[static_cast<size_t>(n) + 1];
  g.neighbors_.assign(static_cast<size_t>(slots), 0);
  g.weights_.assign(static_cast<size_t>(slots), 0.0);
  std::vector<int64_t> fill(g.offsets_.begin(), g.offsets_.end());
  for (const auto& e : edges) {
    int64_t& iu = fill[static_cast<size_t>(e.u)];
    g.neighbors_[static_cast<size_t>(iu)] = e.v;
    g.weights_[static_cast<size_t>(iu)] = e.w;
    ++iu;
    if (e.u != e.v) {
      int64_t& iv = fill[static_cast<size_t>(e.v)];
      g.neighbors_[static_cast<size_t>(iv)] = e.u;
      g.weights_[static_cast<size_t>(iv)] = e.w;
      ++iv;
    }
  }
  // Edge insertion order above keeps each vertex's list sorted except for the
  // mixed u/v fill; sort per vertex for determinism.
  for (int v = 1; v <= n; ++v) {
    const int64_t b = g.offsets_[static_cast<size_t>(v)];
    const int64_t e = g.offsets_[static_cast<size_t>(v) + 1];
    std::vector<std::pair<int, double>> row;
    row.reserve(static_cast<size_t>(e - b));
    for (int64_t i = b; i < e; ++i) {
      row.emplace_back(g.neighbors_[static_cast<size_t>(i)], g.weights_[static_cast<size_t>(i)]);
    }
    std::sort(row.begin(), row.end());
    for (int64_t i = b; i < e; ++i) {
      g.neighbors_[static_cast<size_t>(i)] = row[static_cast<size_t>(i - b)].first;
      g.weights_[static_cast<size_t>(i)] = row[static_cast<size_t>(i - b)].second;
    }
  }

  g.cumweights_.assign(static_cast<size_t>(slots), 0.0);
  g.degrees_.assign(static_cast<size_t>(n) + 1, 0.0);
  const double member_overlay_total =
      g.overlay_weight_ * static_cast<double>(g.overlay_all_ ? n : g.overlay_members_.size());
  for (int v = 1; v <= n; ++v) {
    double run = 0.0;
    for (int64_t i = g.offsets_[static_cast<size_t>(v)];
         i < g.offsets_[static_cast<size_t>(v) + 1]; ++i) {
      run += g.weights_[static_cast<size_t>(i)];
      g.cumweights_[static_cast<size_t>(i)] = run;
    }
    double deg = run;
    if (g.overlay_member(v)) deg += member_overlay_total;
    if (!(deg > 0.0)) {
      throw std::invalid_argument("build_graph: vertex " + std::to_string(v) +
                                  " has nonpositive degree");
    }
    g.degrees_[static_cast<size_t>(v)] = deg;
  }
  g.edges_ = std::move(edges);
  return g;
}

int walk_step(const WeightedGraph& g, int v, RandomSource& rng) {
  check_vertex(v, g.n_, "walk_step");
  const double deg = g.degrees_[static_cast<size_t>(v)];
  double u = rng.next_double() * deg;
  if (g.overlay_member(v)) {
    const double ow = g.overlay_weight_;
    const int64_t k = g.overlay_count();
    const double overlay_total = ow * static_cast<double>(k);
    if (u < overlay_total) {
      // Uniform jump over the member set (all overlay edges share one weight).
      int64_t idx = static_cast<int64_t>(u / ow);
      if (idx >= k) idx = k - 1;
      return g.overlay_all_ ? static_cast<int>(idx) + 1
                            : g.overlay_members_[static_cast<size_t>(idx)];
    }
    u -= overlay_total;
  }
  const int64_t b = g.adj_begin(v);
  const int64_t e = g.adj_end(v);
  const auto first = g.cumweights_.begin() + b;
  const auto last = g.cumweights_.begin() + e;
  auto it = std::upper_bound(first, last, u);
  if (it == last) --it;  // rounding at the top of the CDF
  return g.neighbors_[static_cast<size_t>(b + (it - first))];
}

WalkTranscript run_walks(const WeightedGraph& g, int m, int T,
                         const std::vector<int>& starts, RandomSource rng) {
  if (m < 1 || T < 1) throw std::invalid_argument("run_walks: m and T must be >= 1");
  if (!starts.empty() && static_cast<int>(starts.size()) != m) {
    throw std::invalid_argument("run_walks: starts size must equal m");
  }
  for (int s : starts) check_vertex(s, g.vertex_count(), "run_walks");

  WalkTranscript t;
  t.m = m;
  t.T = T;
  t.walks.assign(static_cast<size_t>(m), {});
  for (int i = 0; i < m; ++i) {
    RandomSource wr = rng.derive(static_cast<uint64_t>(i));
    auto& walk = t.walks[static_cast<size_t>(i)];
    walk.reserve(static_cast<size_t>(T) + 1);
    int v = starts.empty() ? wr.next_vertex(g.vertex_count()) : starts[static_cast<size_t>(i)];
    walk.push_back(v);
    for (int s = 0; s < T; ++s) {
      v = walk_step(g, v, wr);
      walk.push_back(v);
    }
  }
  return t;
}

DenseMatrix dense_normalized_adjacency(const WeightedGraph& g, int size_guard) {
  const int n = g.vertex_count();
  if (n > size_guard) {
    throw std::invalid_argument("dense_normalized_adjacency: size guard exceeded (n=" +
                                std::to_string(n) + ")");
  }
  DenseMatrix m(n);
  if (g.has_overlay()) {
    const double ow = g.overlay_weight();
    if (g.overlay_all()) {
      for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) m.at(u - 1, v - 1) = ow;
      }
    } else {
      for (int u : g.overlay_members()) {
        for (int v : g.overlay_members()) m.at(u - 1, v - 1) = ow;
      }
    }
  }
  for (int u = 1; u <= n; ++u) {
    for (int64_t i = g.adj_begin(u); i < g.adj_end(u); ++i) {
      m.at(u - 1, g.neighbor_at(i) - 1) += g.weight_at(i);
    }
  }
  for (int u = 1; u <= n; ++u) {
    const double du = g.degree(u);
    for (int v = 1; v <= n; ++v) {
      if (m.at(u - 1, v - 1) != 0.0) {
        m.at(u - 1, v - 1) /= std::sqrt(du * g.degree(v));
      }
    }
  }
  return m;
}

DenseMatrix dense_walk_matrix(const WeightedGraph& g, int size_guard) {
  const int n = g.vertex_count();
  if (n > size_guard) {
    throw std::invalid_argument("dense_walk_matrix: size guard exceeded (n=" +
                                std::to_string(n) + ")");
  }
  DenseMatrix m(n);
  if (g.has_overlay()) {
    const double ow = g.overlay_weight();
    if (g.overlay_all()) {
      for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) m.at(u - 1, v - 1) = ow;
      }
    } else {
      for (int u : g.overlay_members()) {
        for (int v : g.overlay_members()) m.at(u - 1, v - 1) = ow;
      }
    }
  }
  for (int u = 1; u <= n; ++u) {
    for (int64_t i = g.adj_begin(u); i < g.adj_end(u); ++i) {
      m.at(u - 1, g.neighbor_at(i) - 1) += g.weight_at(i);
    }
  }
  for (int u = 1; u <= n; ++u) {
    const double du = g.degree(u);
    for (int v = 1; v <= n; ++v) m.at(u - 1, v - 1) /= du;
  }
  return m;
}

WeightedGraph relabel_with_permutation(const WeightedGraph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n + 1) {
    throw std::invalid_argument("relabel_with_permutation: permutation size mismatch");
  }
  std::vector<uint8_t> seen(static_cast<size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    const int p = perm[static_cast<size_t>(v)];
    check_vertex(p, n, "relabel_with_permutation");
    if (seen[static_cast<size_t>(p)]) {
      throw std::invalid_argument("relabel_with_permutation: not a permutation");
    }
    seen[static_cast<size_t>(p)] = 1;
  }
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) {
    e.u = perm[static_cast<size_t>(e.u)];
    e.v = perm[static_cast<size_t>(e.v)];
  }
  std::vector<int> members;
  if (g.has_overlay() && !g.overlay_all()) {
    members.reserve(g.overlay_members().size());
    for (int v : g.overlay_members()) members.push_back(perm[static_cast<size_t>(v)]);
  }
  return build_graph_with_overlay(n, std::move(edges), g.overlay_weight(), g.overlay_all(),
                                  std::move(members));
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw io_error("write_graph_file: cannot open " + path);
  if (g.has_overlay()) {
    out << "# overlay " << format_double(g.overlay_weight());
    if (!g.overlay_all()) {
      out << ' ' << g.overlay_members().size();
      for (int v : g.overlay_members()) out << ' ' << v;
    }
    out << '\n';
  }
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
  if (!out) throw io_error("write_graph_file: write failed for " + path);
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_graph_file: cannot open " + path);

  double overlay_weight = 0.0;
  bool overlay_all = false;
  std::vector<int> members;
  std::string line;
  std::string body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tag;
      hs >> tag;
      if (tag == "overlay") {
        size_t k = 0;
        if (!(hs >> overlay_weight)) throw io_error("read_graph_file: malformed overlay header");
        if (hs >> k) {
          members.resize(k);
          for (size_t i = 0; i < k; ++i) {
            if (!(hs >> members[i])) throw io_error("read_graph_file: malformed overlay members");
          }
          overlay_all = false;
        } else {
          overlay_all = true;
        }
      }
      continue;
    }
    body = line;
    break;
  }
  if (body.empty()) throw io_error("read_graph_file: missing header line in " + path);
  std::istringstream hs(body);
  int n = 0;
  int64_t m = 0;
  if (!(hs >> n >> m) || n < 1 || m < 0) {
    throw io_error("read_graph_file: malformed size line in " + path);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw io_error("read_graph_file: truncated edge list");
    if (!line.empty() && line[0] == '#') {
      --i;
      continue;
    }
    std::istringstream es(line);
    Edge e;
    if (!(es >> e.u >> e.v >> e.w)) throw io_error("read_graph_file: malformed edge line");
    edges.push_back(e);
  }
  try {
    return build_graph_with_overlay(n, std::move(edges), overlay_weight,
                                    overlay_weight > 0.0 && overlay_all, std::move(members));
  } catch (const std::invalid_argument& ex) {
    throw io_error(std::string("read_graph_file: ") + ex.what());
  }
}

}  // namespace specden
