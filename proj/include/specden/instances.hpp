#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specden/graph.hpp"
#include "specden/random.hpp"

namespace specden {

enum class Which { G1, G2 };

// Paper-default scale parameters.
int64_t mom_default_n(int ell);  // ceil(2^ell / 4)
int64_t rw_default_n(int ell);   // 2 * 2^(2*ell)

// Moment-hardness pair: 2n ell-cycles (G1) or n 2ell-cycles (G2) with ring
// weight 1/4 and an implicit 1/(4nl) overlay over the 2nl cycle vertices,
// plus 2nl isolated unit self-loop vertices. 4nl vertices, all degree 1.
WeightedGraph gen_mom_instance(int ell, Which which,
                               std::optional<int64_t> n_override = std::nullopt);

// Walk-hardness pair: same rings and overlay, no isolated block; 2nl vertices.
WeightedGraph gen_rw_instance(int ell, Which which,
                              std::optional<int64_t> n_override = std::nullopt);

// Unweighted cycle mixtures: G1 has alpha*n cycles of length 2*ell and
// 2*(1-alpha)*n cycles of length ell; G2 swaps the proportions. 2nl vertices,
// all degree 2.
WeightedGraph gen_mixture_instance(int ell, double alpha, int64_t n, Which which);

// Isomorphic copy under a uniformly random permutation of vertex labels.
WeightedGraph relabel_random(const WeightedGraph& g, RandomSource& rng);

enum class JarCase { CASE1, CASE2 };
enum class Marble : uint8_t { RED, BLUE };

// Jar of n marbles, alpha*n red in CASE1 and (1-alpha)*n red in CASE2.
struct Jar {
  int64_t total = 0;
  int64_t red_count = 0;
  JarCase which = JarCase::CASE1;
  double alpha = 0.0;
};

Jar make_jar(double alpha, int64_t n, JarCase which);

// s draws; without replacement removes marbles sequentially.
std::vector<Marble> draw_marbles(const Jar& jar, int64_t s, bool replacement,
                                 RandomSource& rng);

}  // namespace specden
