#pragma once

#include <cstdint>
#include <vector>

#include "specden/graph.hpp"
#include "specden/instances.hpp"
#include "specden/random.hpp"

namespace specden {

// One run of the lazy-labelling coupling between walk transcripts on the two
// overlay instances (2n ell-cycles vs n 2ell-cycles, canonical weights).
struct CouplingOutcome {
  WalkTranscript s1;
  WalkTranscript s2;
  bool equal = false;
  bool event1_held = false;  // no cycle revisited across segments, either graph
  bool event2_held = false;  // every segment took < ell ring steps
  int64_t reset_count = 0;
  int max_segment_steps = 0;
};

// Simulates the coupled pair of m walks of T steps: shared left/right moves
// with probability 1/4 each, independent uniform RESET with probability 1/2,
// labels drawn lazily from one shared permutation. Marginals equal the walk
// transcript distributions of the two relabeled instances.
CouplingOutcome coupling_run(int ell, int64_t n, int m, int T, RandomSource& rng);

// min(1, 2 m^2 T^2 / n + m T / 2^ell).
double tv_bound(double m, double T, double n, int ell);

enum class LoopGuess { G1, G2, UNKNOWN };

struct LoopCounts {
  int64_t lag_ell = 0;
  int64_t lag_two_ell = 0;
};

// Counts label repeats at lags ell and 2*ell whose windows contain no
// repeated label (a completed ring loop leaves exactly this trace).
LoopCounts loop_detector_counts(const WalkTranscript& t, int ell);

// Majority vote over the two lag counts; UNKNOWN on ties and empty counts.
LoopGuess loop_detector(const WalkTranscript& t, int ell);

struct ProbeResult {
  int cycle_length = 0;
  int64_t steps_used = 0;
};

// Adaptive ring probe for overlay instances: estimates a node's two ring
// neighbors from r one-step walks (retrying with doubled r up to 3 attempts),
// then walks the ring until it returns to the start. Returns the cycle length.
ProbeResult adaptive_cycle_probe(const WeightedGraph& g, int r, RandomSource& rng,
                                 int max_ring_len = 1 << 20);

struct GameResult {
  int64_t trials = 0;
  int64_t successes = 0;
  double advantage = 0.0;          // success rate - 1/2
  double theoretical_bound = 0.0;  // min(1, 2 s^2 / n + sqrt(s/2) * eps)
};

// Jar-distinguishing game: per trial the case is a fair coin, s marbles are
// drawn, and the guess is the red-count threshold test (ties -> coin).
GameResult marble_experiment(double alpha, int64_t n, int64_t s, bool replacement,
                             int64_t trials, RandomSource rng, int threads = 1);

}  // namespace specden
