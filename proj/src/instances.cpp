#include "specden/instances.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specden {

namespace {

constexpr int64_t kVertexGuard = int64_t(1) << 25;

void require_odd_ell(int ell, const char* who) {
  if (ell < 3 || ell % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": ell must be odd and >= 3, got " +
                                std::to_string(ell));
  }
}

void append_cycle(std::vector<Edge>& edges, int base, int len, double w) {
  for (int i = 0; i + 1 < len; ++i) edges.push_back({base + i, base + i + 1, w});
  edges.push_back({base + len - 1, base, w});
}

// The disjoint-cycle block shared by both hard instances: 2n cycles of
// length ell (G1) or n cycles of length 2*ell (G2), ring weight 1/4.
std::vector<Edge> ring_block(int ell, int64_t n, Which which) {
  std::vector<Edge> edges;
  const int cycle_len = which == Which::G1 ? ell : 2 * ell;
  const int64_t cycle_count = which == Which::G1 ? 2 * n : n;
  edges.reserve(static_cast<size_t>(cycle_count) * cycle_len);
  for (int64_t c = 0; c < cycle_count; ++c) {
    append_cycle(edges, static_cast<int>(c * cycle_len) + 1, cycle_len, 0.25);
  }
  return edges;
}

}  // namespace

int64_t mom_default_n(int ell) {
  require_odd_ell(ell, "mom_default_n");
  return (int64_t(1) << ell) / 4 + ((int64_t(1) << ell) % 4 != 0 ? 1 : 0);
}

int64_t rw_default_n(int ell) {
  require_odd_ell(ell, "rw_default_n");
  if (2 * ell >= 62) throw std::invalid_argument("rw_default_n: ell too large");
  return int64_t(2) << (2 * ell);
}

WeightedGraph gen_mom_instance(int ell, Which which, std::optional<int64_t> n_override) {
  require_odd_ell(ell, "gen_mom_instance");
  const int64_t n = n_override.value_or(mom_default_n(ell));
  if (n < 1) throw std::invalid_argument("gen_mom_instance: n must be >= 1");
  const int64_t cycle_vertices = 2 * n * ell;
  const int64_t total_vertices = 4 * n * ell;
  if (total_vertices > kVertexGuard) {
    throw std::invalid_argument("gen_mom_instance: vertex guard exceeded (" +
                                std::to_string(total_vertices) + ")");
  }
  std::vector<Edge> edges = ring_block(ell, n, which);
  for (int64_t v = cycle_vertices + 1; v <= total_vertices; ++v) {
    edges.push_back({static_cast<int>(v), static_cast<int>(v), 1.0});
  }
  std::vector<int> members(static_cast<size_t>(cycle_vertices));
  for (int64_t v = 1; v <= cycle_vertices; ++v) members[static_cast<size_t>(v - 1)] = static_cast<int>(v);
  const double overlay = 1.0 / (4.0 * static_cast<double>(n) * ell);
  return build_graph_with_overlay(static_cast<int>(total_vertices), std::move(edges), overlay,
                                  false, std::move(members));
}

WeightedGraph gen_rw_instance(int ell, Which which, std::optional<int64_t> n_override) {
  require_odd_ell(ell, "gen_rw_instance");
  const int64_t n = n_override.value_or(rw_default_n(ell));
  if (n < 1) throw std::invalid_argument("gen_rw_instance: n must be >= 1");
  const int64_t total_vertices = 2 * n * ell;
  if (total_vertices > kVertexGuard) {
    throw std::invalid_argument("gen_rw_instance: vertex guard exceeded (" +
                                std::to_string(total_vertices) + ")");
  }
  std::vector<Edge> edges = ring_block(ell, n, which);
  const double overlay = 1.0 / (4.0 * static_cast<double>(n) * ell);
  return build_graph_with_overlay(static_cast<int>(total_vertices), std::move(edges), overlay,
                                  true, {});
}

WeightedGraph gen_mixture_instance(int ell, double alpha, int64_t n, Which which) {
  require_odd_ell(ell, "gen_mixture_instance");
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("gen_mixture_instance: alpha must be in (0.5, 1)");
  }
  const double an = alpha * static_cast<double>(n);
  const double bn = (1.0 - alpha) * static_cast<double>(n);
  if (std::fabs(an - std::llround(an)) > 1e-9 || std::fabs(bn - std::llround(bn)) > 1e-9) {
    throw std::invalid_argument(
        "gen_mixture_instance: alpha*n and (1-alpha)*n must be integers");
  }
  const int64_t long_cycles = which == Which::G1 ? std::llround(an) : std::llround(bn);
  const int64_t short_cycles = 2 * (which == Which::G1 ? std::llround(bn) : std::llround(an));
  const int64_t total_vertices = 2 * n * ell;
  if (total_vertices > kVertexGuard) {
    throw std::invalid_argument("gen_mixture_instance: vertex guard exceeded");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(total_vertices));
  int base = 1;
  for (int64_t c = 0; c < long_cycles; ++c) {
    append_cycle(edges, base, 2 * ell, 1.0);
    base += 2 * ell;
  }
  for (int64_t c = 0; c < short_cycles; ++c) {
    append_cycle(edges, base, ell, 1.0);
    base += ell;
  }
  return build_graph(static_cast<int>(total_vertices), std::move(edges));
}

WeightedGraph relabel_random(const WeightedGraph& g, RandomSource& rng) {
  const std::vector<int> perm = random_permutation(g.vertex_count(), rng);
  return relabel_with_permutation(g, perm);
}

Jar make_jar(double alpha, int64_t n, JarCase which) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("make_jar: alpha must be in (0.5, 1)");
  }
  const double an = alpha * static_cast<double>(n);
  if (std::fabs(an - std::llround(an)) > 1e-9) {
    throw std::invalid_argument("make_jar: alpha*n must be an integer");
  }
  Jar jar;
  jar.total = n;
  jar.alpha = alpha;
  jar.which = which;
  jar.red_count = which == JarCase::CASE1 ? std::llround(an) : n - std::llround(an);
  return jar;
}

std::vector<Marble> draw_marbles(const Jar& jar, int64_t s, bool replacement,
                                 RandomSource& rng) {
  if (s < 0) throw std::invalid_argument("draw_marbles: negative draw count");
  if (!replacement && s > jar.total) {
    throw std::invalid_argument("draw_marbles: cannot draw " + std::to_string(s) +
                                " without replacement from " + std::to_string(jar.total));
  }
  std::vector<Marble> out;
  out.reserve(static_cast<size_t>(s));
  int64_t red = jar.red_count;
  int64_t remaining = jar.total;
  for (int64_t i = 0; i < s; ++i) {
    const bool is_red = rng.next_below(static_cast<uint64_t>(remaining)) <
                        static_cast<uint64_t>(red);
    out.push_back(is_red ? Marble::RED : Marble::BLUE);
    if (!replacement) {
      --remaining;
      if (is_red) --red;
    }
  }
  return out;
}

}  // namespace specden
