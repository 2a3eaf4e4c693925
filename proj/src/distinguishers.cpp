#include "specden/distinguishers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "specden/errors.hpp"
#include "specden/parallel.hpp"

namespace specden {

namespace {

// Lazily materialized uniform injective labelling of 1..n_labels.
class LazyLabels {
 public:
  LazyLabels(int64_t n_labels, RandomSource& rng) : n_(n_labels), rng_(rng) {}

  int label_at(size_t index) {
    while (pi_.size() <= index) {
      int candidate;
      do {
        candidate = static_cast<int>(rng_.next_below(static_cast<uint64_t>(n_))) + 1;
      } while (used_.contains(candidate));
      used_.insert(candidate);
      pi_.push_back(candidate);
    }
    return pi_[index];
  }

 private:
  int64_t n_;
  RandomSource& rng_;
  std::vector<int> pi_;
  std::unordered_set<int> used_;
};

struct CoupledWalker {
  int64_t cycle_count;
  int cycle_len;
  std::unordered_map<int64_t, int> labels;  // node id -> label
  std::unordered_set<int64_t> visited_cycles;
  int64_t cycle = 0;
  int pos = 0;

  int64_t node_id() const { return cycle * cycle_len + pos; }

  void jump_uniform(RandomSource& rng, bool& event1) {
    const int64_t node = static_cast<int64_t>(
        rng.next_below(static_cast<uint64_t>(cycle_count) * cycle_len));
    cycle = node / cycle_len;
    pos = static_cast<int>(node % cycle_len);
    if (!visited_cycles.insert(cycle).second) event1 = false;
  }

  void step(int dir) { pos = (pos + dir + cycle_len) % cycle_len; }

  // Returns the node's label, assigning the shared fresh one on first visit.
  int observe(LazyLabels& pi, size_t fresh_index) {
    const auto [it, inserted] = labels.try_emplace(node_id(), 0);
    if (inserted) it->second = pi.label_at(fresh_index);
    return it->second;
  }
};

}  // namespace

CouplingOutcome coupling_run(int ell, int64_t n, int m, int T, RandomSource& rng) {
  if (ell < 3 || ell % 2 == 0) {
    throw std::invalid_argument("coupling_run: ell must be odd and >= 3");
  }
  if (n < 1 || m < 1 || T < 0) throw std::invalid_argument("coupling_run: bad parameters");

  const int64_t n_labels = 2 * n * ell;
  LazyLabels pi(n_labels, rng);
  CoupledWalker w1{2 * n, ell, {}, {}, 0, 0};
  CoupledWalker w2{n, 2 * ell, {}, {}, 0, 0};

  CouplingOutcome out;
  out.event1_held = true;
  out.event2_held = true;
  out.s1.m = m;
  out.s1.T = T;
  out.s1.walks.assign(static_cast<size_t>(m), {});
  out.s2 = out.s1;

  size_t fresh = 0;  // shared permutation cursor
  int segment_steps = 0;
  for (int k = 0; k < m; ++k) {
    auto& walk1 = out.s1.walks[static_cast<size_t>(k)];
    auto& walk2 = out.s2.walks[static_cast<size_t>(k)];
    walk1.reserve(static_cast<size_t>(T) + 1);
    walk2.reserve(static_cast<size_t>(T) + 1);

    w1.jump_uniform(rng, out.event1_held);
    w2.jump_uniform(rng, out.event1_held);
    out.max_segment_steps = std::max(out.max_segment_steps, segment_steps);
    segment_steps = 0;
    walk1.push_back(w1.observe(pi, fresh));
    walk2.push_back(w2.observe(pi, fresh));
    ++fresh;

    for (int i = 0; i < T; ++i) {
      const double u = rng.next_double();
      if (u < 0.25) {
        w1.step(+1);
        w2.step(+1);
        if (++segment_steps >= ell) out.event2_held = false;
      } else if (u < 0.5) {
        w1.step(-1);
        w2.step(-1);
        if (++segment_steps >= ell) out.event2_held = false;
      } else {
        w1.jump_uniform(rng, out.event1_held);
        w2.jump_uniform(rng, out.event1_held);
        ++out.reset_count;
        out.max_segment_steps = std::max(out.max_segment_steps, segment_steps);
        segment_steps = 0;
      }
      walk1.push_back(w1.observe(pi, fresh));
      walk2.push_back(w2.observe(pi, fresh));
      ++fresh;
    }
  }
  out.max_segment_steps = std::max(out.max_segment_steps, segment_steps);
  out.equal = out.s1.walks == out.s2.walks;
  return out;
}

double tv_bound(double m, double T, double n, int ell) {
  if (m <= 0.0 || T <= 0.0 || n <= 0.0 || ell < 1) {
    throw std::invalid_argument("tv_bound: positive arguments required");
  }
  const double mt = m * T;
  const double bound = 2.0 * mt * mt / n + mt / std::ldexp(1.0, ell);
  return std::clamp(bound, 0.0, 1.0);
}

LoopCounts loop_detector_counts(const WalkTranscript& t, int ell) {
  LoopCounts counts;
  for (const auto& walk : t.walks) {
    const int len = static_cast<int>(walk.size());
    // reach[i] = one past the longest all-distinct window starting at i.
    std::vector<int> reach(static_cast<size_t>(len), 0);
    {
      std::unordered_map<int, int> mult;
      mult.reserve(static_cast<size_t>(len) * 2);
      int r = 0;
      for (int i = 0; i < len; ++i) {
        if (r < i) r = i;
        while (r < len) {
          auto [it, fresh] = mult.try_emplace(walk[static_cast<size_t>(r)], 0);
          if (!fresh && it->second > 0) break;
          it->second = 1;
          ++r;
        }
        reach[static_cast<size_t>(i)] = r;
        mult[walk[static_cast<size_t>(i)]] = 0;
      }
    }
    for (int lag : {ell, 2 * ell}) {
      for (int i = 0; i + lag < len; ++i) {
        if (walk[static_cast<size_t>(i)] == walk[static_cast<size_t>(i + lag)] &&
            reach[static_cast<size_t>(i)] >= i + lag) {
          (lag == ell ? counts.lag_ell : counts.lag_two_ell)++;
        }
      }
    }
  }
  return counts;
}

LoopGuess loop_detector(const WalkTranscript& t, int ell) {
  const LoopCounts c = loop_detector_counts(t, ell);
  if (c.lag_ell > c.lag_two_ell) return LoopGuess::G1;
  if (c.lag_two_ell > c.lag_ell) return LoopGuess::G2;
  return LoopGuess::UNKNOWN;
}

ProbeResult adaptive_cycle_probe(const WeightedGraph& g, int r, RandomSource& rng,
                                 int max_ring_len) {
  if (r < 1) throw std::invalid_argument("adaptive_cycle_probe: r must be >= 1");
  ProbeResult res;

  // Two modal endpoints of r one-step walks; ambiguity retries with 2r, 4r.
  auto ring_neighbors = [&](int v) -> std::pair<int, int> {
    for (int attempt = 0; attempt < 3; ++attempt) {
      const int samples = r << attempt;
      std::unordered_map<int, int> freq;
      for (int s = 0; s < samples; ++s) freq[walk_step(g, v, rng)]++;
      res.steps_used += samples;
      std::vector<std::pair<int, int>> top;  // (count, node)
      for (const auto& [node, count] : freq) top.emplace_back(count, node);
      std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      if (top.size() < 2) continue;
      if (top.size() > 2 && top[1].first == top[2].first) continue;  // ambiguous
      return {top[0].second, top[1].second};
    }
    throw numerical_error("adaptive_cycle_probe: modal neighbors still ambiguous after retries");
  };

  const int start = rng.next_vertex(g.vertex_count());
  auto [first, second] = ring_neighbors(start);
  int prev = start;
  int cur = first;
  ++res.steps_used;
  int moves = 1;
  while (cur != start) {
    if (moves > max_ring_len) {
      throw numerical_error("adaptive_cycle_probe: no return within the ring-length cap");
    }
    auto [a, b] = ring_neighbors(cur);
    const int next = (a == prev) ? b : a;
    prev = cur;
    cur = next;
    ++res.steps_used;
    ++moves;
  }
  res.cycle_length = moves;
  return res;
}

GameResult marble_experiment(double alpha, int64_t n, int64_t s, bool replacement,
                             int64_t trials, RandomSource rng, int threads) {
  if (trials < 1) throw std::invalid_argument("marble_experiment: trials must be >= 1");
  const Jar jar1 = make_jar(alpha, n, JarCase::CASE1);
  const Jar jar2 = make_jar(alpha, n, JarCase::CASE2);
  if (!replacement && s > n) {
    throw std::invalid_argument("marble_experiment: s exceeds jar size without replacement");
  }

  constexpr int64_t kChunk = 1024;
  const int64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<int64_t> wins(static_cast<size_t>(chunks), 0);
  parallel_units(chunks, threads, [&](int64_t c) {
    const int64_t lo = c * kChunk;
    const int64_t hi = std::min<int64_t>(lo + kChunk, trials);
    int64_t hits = 0;
    for (int64_t t = lo; t < hi; ++t) {
      RandomSource tr = rng.derive(static_cast<uint64_t>(t));
      const bool case1 = tr.next_coin();
      const auto draws = draw_marbles(case1 ? jar1 : jar2, s, replacement, tr);
      int64_t reds = 0;
      for (Marble mb : draws) reds += (mb == Marble::RED) ? 1 : 0;
      bool guess_case1;
      if (2 * reds > s) {
        guess_case1 = true;
      } else if (2 * reds < s) {
        guess_case1 = false;
      } else {
        guess_case1 = tr.next_coin();
      }
      hits += (guess_case1 == case1) ? 1 : 0;
    }
    wins[static_cast<size_t>(c)] = hits;
  });

  GameResult res;
  res.trials = trials;
  for (int64_t w : wins) res.successes += w;
  res.advantage = static_cast<double>(res.successes) / static_cast<double>(trials) - 0.5;
  const double eps = 2.0 * alpha - 1.0;
  const double sd = static_cast<double>(s);
  res.theoretical_bound =
      std::clamp(2.0 * sd * sd / static_cast<double>(n) + std::sqrt(sd / 2.0) * eps, 0.0, 1.0);
  return res;
}

}  // namespace specden
