#include "specden/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "specden/chebyshev.hpp"
#include "specden/diff_spectrum.hpp"
#include "specden/distinguishers.hpp"
#include "specden/errors.hpp"
#include "specden/graph.hpp"
#include "specden/instances.hpp"
#include "specden/linalg.hpp"
#include "specden/measure.hpp"
#include "specden/moments.hpp"
#include "specden/reconstruct.hpp"
#include "specden/spectra.hpp"

namespace specden {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }

  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

SpectralMeasure dense_spectrum_of(const WeightedGraph& g) {
  return SpectralMeasure::from_values(
      dense_symmetric_eigenvalues(dense_normalized_adjacency(g)), -1.0, 1.0);
}

WeightedGraph cycle_graph(int len) {
  std::vector<Edge> edges;
  for (int i = 1; i < len; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({len, 1, 1.0});
  return build_graph(len, std::move(edges));
}

// The 4-vertex common-degree pair whose walk-matrix difference has
// eigenvalues {-1, 0, 0, 1}.
std::pair<WeightedGraph, WeightedGraph> four_vertex_pair() {
  WeightedGraph g1 = build_graph(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 1, 1.0}});
  WeightedGraph g2 = build_graph(4, {{1, 3, 1.0}, {3, 2, 1.0}, {2, 4, 1.0}, {4, 1, 1.0}});
  return {std::move(g1), std::move(g2)};
}

// --- criteria -------------------------------------------------------------

void c1_cycle_w1(Check& c) {
  for (int ell : {3, 5, 7, 9, 11, 101}) {
    const double w1 = wasserstein1(cycle_spectrum(ell), cycle_spectrum_even(2 * ell));
    c.require(std::fabs(w1 - 1.0 / ell) <= 1e-10,
              "ell=" + std::to_string(ell) + " W1=" + fmt(w1));
  }
}

void c2_mom_w1(Check& c) {
  for (int ell : {5, 7, 9}) {
    const auto [p1, p2] = mom_instance_spectrum(ell, mom_default_n(ell));
    const double w1 = wasserstein1(p1, p2);
    c.require(std::fabs(w1 - 1.0 / (4.0 * ell)) <= 1e-10,
              "ell=" + std::to_string(ell) + " closed-form W1=" + fmt(w1));
  }
  const double dense_w1 = wasserstein1(dense_spectrum_of(gen_mom_instance(5, Which::G1, 8)),
                                       dense_spectrum_of(gen_mom_instance(5, Which::G2, 8)));
  c.require(std::fabs(dense_w1 - 0.05) <= 1e-6, "dense 160-vertex W1=" + fmt(dense_w1));
  c.note("dense W1=" + fmt(dense_w1));
}

void c3_moment_gaps(Check& c) {
  const int kmax = 200;
  for (int ell : {5, 7, 9}) {
    const auto [p1, p2] = mom_instance_spectrum(ell, mom_default_n(ell));
    const MomentVector m1 = exact_moments(p1, kmax);
    const MomentVector m2 = exact_moments(p2, kmax);
    const MomentGapReport gaps = moment_gap_report(m1, m2);
    const double rel_cap = std::ldexp(1.0, -ell + 2);
    for (int j = 1; j <= kmax; ++j) {
      const double add = gaps.additive[static_cast<size_t>(j) - 1];
      if (j < ell) {
        c.require(add <= 1e-12, "ell=" + std::to_string(ell) + " j=" + std::to_string(j) +
                                    " additive gap " + fmt(add));
      } else {
        c.require(gaps.relative_defined[static_cast<size_t>(j) - 1] != 0 &&
                      gaps.relative[static_cast<size_t>(j) - 1] <= rel_cap,
                  "ell=" + std::to_string(ell) + " j=" + std::to_string(j) +
                      " relative gap " + fmt(gaps.relative[static_cast<size_t>(j) - 1]));
      }
      for (const MomentVector* m : {&m1, &m2}) {
        const double v = m->moment(j);
        c.require(v >= 0.5 - 1e-9 && v <= 1.0 + 1e-9,
                  "ell=" + std::to_string(ell) + " j=" + std::to_string(j) +
                      " moment outside [1/2,1]: " + fmt(v));
      }
    }
  }
}

void c4_rw_w1(Check& c) {
  for (int ell : {5, 7, 9}) {
    const auto [p1, p2] = rw_instance_spectrum(ell, rw_default_n(ell));
    const double w1 = wasserstein1(p1, p2);
    c.require(std::fabs(w1 - 1.0 / (2.0 * ell)) <= 1e-10,
              "ell=" + std::to_string(ell) + " closed-form W1=" + fmt(w1));
    const double dense_w1 = wasserstein1(dense_spectrum_of(gen_rw_instance(ell, Which::G1, 4)),
                                         dense_spectrum_of(gen_rw_instance(ell, Which::G2, 4)));
    c.require(std::fabs(dense_w1 - 1.0 / (2.0 * ell)) <= 1e-8,
              "ell=" + std::to_string(ell) + " dense W1=" + fmt(dense_w1));
  }
}

void c5_coupling(Check& c, bool full) {
  const int64_t runs = full ? 100000 : 20000;
  struct Params {
    int ell;
    int64_t n;
    int m;
    int T;
  };
  for (const Params p : {Params{5, 2048, 4, 16}, Params{7, 32768, 8, 32}}) {
    RandomSource rng(0x5EED0005ull + p.ell);
    int64_t neq = 0;
    int64_t implication_violations = 0;
    for (int64_t r = 0; r < runs; ++r) {
      RandomSource rr = rng.derive(static_cast<uint64_t>(r));
      const CouplingOutcome out = coupling_run(p.ell, p.n, p.m, p.T, rr);
      if (!out.equal) ++neq;
      if (out.event1_held && out.event2_held && !out.equal) ++implication_violations;
    }
    const double phat = static_cast<double>(neq) / static_cast<double>(runs);
    const double bound = tv_bound(p.m, p.T, static_cast<double>(p.n), p.ell);
    const double sigma = std::sqrt(phat * (1.0 - phat) / static_cast<double>(runs));
    c.require(implication_violations == 0,
              "ell=" + std::to_string(p.ell) + ": events held but transcripts differed in " +
                  std::to_string(implication_violations) + " runs");
    c.require(phat <= bound + 3.0 * sigma, "ell=" + std::to_string(p.ell) + " P[S1!=S2]=" +
                                               fmt(phat) + " > bound " + fmt(bound));
    c.note("ell=" + std::to_string(p.ell) + " P[S1!=S2]=" + fmt(phat) + " bound=" + fmt(bound));
  }
}

void c6_loop_detector(Check& c) {
  const int ell = 5;
  const WeightedGraph base = gen_rw_instance(ell, Which::G1, 2048);
  const int seeds = 50;
  int success_big = 0;
  int success_small = 0;
  for (int s = 0; s < seeds; ++s) {
    RandomSource rng(0x10095EEDull, static_cast<uint64_t>(s));
    const WeightedGraph g = relabel_random(base, rng);
    {
      const WalkTranscript t = run_walks(g, 10000, 100, {}, rng.derive(1));
      const LoopGuess guess = loop_detector(t, ell);
      RandomSource coin = rng.derive(2);
      if (guess == LoopGuess::G1 || (guess == LoopGuess::UNKNOWN && coin.next_coin())) {
        ++success_big;
      }
    }
    {
      const WalkTranscript t = run_walks(g, 10, 10, {}, rng.derive(3));
      const LoopGuess guess = loop_detector(t, ell);
      RandomSource coin = rng.derive(4);
      if (guess == LoopGuess::G1 || (guess == LoopGuess::UNKNOWN && coin.next_coin())) {
        ++success_small;
      }
    }
  }
  c.require(success_big >= 45, "mT=1e6 success " + std::to_string(success_big) + "/50 < 45");
  c.require(success_small <= 32, "mT=100 success " + std::to_string(success_small) + "/50 > 32");
  c.require(success_small >= 18, "mT=100 success " + std::to_string(success_small) + "/50 < 18");
  c.note("mT=1e6: " + std::to_string(success_big) + "/50; mT=100: " +
         std::to_string(success_small) + "/50");
}

void c7_adaptive_probe(Check& c) {
  const int r = 64;
  for (int ell : {5, 9}) {
    const int64_t budget = 3 * (2 * ell) * r + 2 * ell;
    int success = 0;
    int64_t worst_steps = 0;
    for (Which which : {Which::G1, Which::G2}) {
      const WeightedGraph g = gen_rw_instance(ell, which);
      const int expected = which == Which::G1 ? ell : 2 * ell;
      for (int s = 0; s < 50; ++s) {
        RandomSource rng(0xADA97E5ull + ell, static_cast<uint64_t>(s));
        try {
          const ProbeResult res = adaptive_cycle_probe(g, r, rng);
          worst_steps = std::max(worst_steps, res.steps_used);
          if (res.cycle_length == expected && res.steps_used <= budget) ++success;
        } catch (const numerical_error&) {
          // ambiguous probe counts as a failure
        }
      }
    }
    c.require(success >= 95, "ell=" + std::to_string(ell) + " success " +
                                 std::to_string(success) + "/100 < 95");
    c.note("ell=" + std::to_string(ell) + ": " + std::to_string(success) +
           "/100, max steps " + std::to_string(worst_steps) + "/" + std::to_string(budget));
  }
}

void c8_marble(Check& c, bool full, int threads) {
  const int64_t trials = full ? 100000 : 20000;
  const double alpha = 0.6;  // eps = 0.2
  const int64_t n = 1250;
  double rate_prev = -1.0;
  for (int64_t s : {int64_t(1), int64_t(6), int64_t(60)}) {
    const GameResult res =
        marble_experiment(alpha, n, s, false, trials, RandomSource(0x3A9B1E5ull, 0), threads);
    const double rate = static_cast<double>(res.successes) / static_cast<double>(res.trials);
    if (s == 6) {
      c.require(rate <= 0.75, "s=6 success rate " + fmt(rate) + " > 3/4");
      c.note("s=6 rate=" + fmt(rate) + " tv-bound=" + fmt(res.theoretical_bound));
    }
    c.require(rate > rate_prev, "success rate not monotone at s=" + std::to_string(s));
    rate_prev = rate;
  }
}

void c9_mixture(Check& c) {
  const auto [p1, p2] = mixture_spectrum(3, 0.75, 4);
  const double w1 = wasserstein1(p1, p2);
  c.require(std::fabs(w1 - 1.0 / 6.0) <= 1e-10, "closed-form W1=" + fmt(w1));
  const double dense_w1 =
      wasserstein1(dense_spectrum_of(gen_mixture_instance(3, 0.75, 4, Which::G1)),
                   dense_spectrum_of(gen_mixture_instance(3, 0.75, 4, Which::G2)));
  c.require(std::fabs(dense_w1 - 1.0 / 6.0) <= 1e-8, "dense W1=" + fmt(dense_w1));
}

void c10_chebyshev_pair(Check& c) {
  for (int ell : {3, 5, 7, 9, 11}) {
    const auto [p, q] = kv_pair(ell);
    const MomentVector mp = exact_moments(p, ell);
    const MomentVector mq = exact_moments(q, ell);
    for (int j = 1; j < ell; ++j) {
      c.require(std::fabs(mp.moment(j) - mq.moment(j)) <= 1e-12,
                "ell=" + std::to_string(ell) + " moment " + std::to_string(j) + " differs");
    }
    const double w1 = wasserstein1(p, q);
    c.require(std::fabs(w1 - 2.0 / ell) <= 1e-10,
              "ell=" + std::to_string(ell) + " W1=" + fmt(w1));
    try {
      const LegBoundReport rep = verify_leg_bound(p, q, ell);
      c.require(rep.bound <= rep.w1 + 1e-10, "ell=" + std::to_string(ell) + " bound " +
                                                 fmt(rep.bound) + " > W1 " + fmt(rep.w1));
      if (ell == 3) {
        c.require(std::fabs(rep.c - 4.0) <= 1e-9, "ell=3 c=" + fmt(rep.c));
        c.require(std::fabs(rep.bound - 1.0 / 3.0) <= 1e-9, "ell=3 bound=" + fmt(rep.bound));
        c.require(std::fabs(rep.w1 - 2.0 / 3.0) <= 1e-10, "ell=3 W1=" + fmt(rep.w1));
      }
    } catch (const std::exception& ex) {
      c.require(false, "ell=" + std::to_string(ell) + " verify_leg_bound threw: " + ex.what());
    }
  }
}

void c11_diff_spectrum(Check& c, bool full, int threads) {
  const auto [g1, g2] = four_vertex_pair();
  const SpectralMeasure exact = exact_diff_spectrum(g1, g2);
  const MomentVector exact_m = exact_moments(exact, 4);

  const int runs = full ? 100 : 20;
  const int need = full ? 85 : 17;
  int within = 0;
  for (int s = 0; s < runs; ++s) {
    const DiffMomentEstimate est = estimate_diff_moments(
        g1, g2, 4, 0.05, 0.1, RandomSource(0xD1FF5EEDull, static_cast<uint64_t>(s)),
        2000000000, threads);
    bool ok = true;
    for (int j = 1; j <= 4; ++j) {
      ok = ok && std::fabs(est.moments[static_cast<size_t>(j) - 1] - exact_m.moment(j)) <= 0.05;
    }
    if (ok) ++within;
  }
  c.require(within >= need, "moment estimates within theta in " + std::to_string(within) + "/" +
                                std::to_string(runs) + " runs (need " + std::to_string(need) +
                                ")");
  c.note("theta-accurate runs: " + std::to_string(within) + "/" + std::to_string(runs));

  // Signed-aggregation identity on random common-degree pairs.
  RandomSource rng(0x51671D00ull);
  double worst_gap = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    RandomSource rr = rng.derive(static_cast<uint64_t>(rep));
    const double scale = 0.5 + rr.next_double();
    auto random_cycle_pair = [&](RandomSource& r2) {
      const std::vector<int> perm = random_permutation(6, r2);
      std::vector<Edge> edges;
      for (int i = 1; i <= 6; ++i) {
        edges.push_back({perm[static_cast<size_t>(i)],
                         perm[static_cast<size_t>(i % 6 + 1)], scale});
      }
      return build_graph(6, std::move(edges));
    };
    const WeightedGraph h1 = random_cycle_pair(rr);
    const WeightedGraph h2 = random_cycle_pair(rr);
    const DenseMatrix m1 = dense_walk_matrix(h1);
    const DenseMatrix m0 = dense_walk_matrix(h2);
    const DenseMatrix diff = subtract(m1, m0);
    DenseMatrix diff_power = diff;
    for (int j = 1; j <= 5; ++j) {
      if (j > 1) diff_power = matmul(diff_power, diff);
      double signed_sum = 0.0;
      for (uint32_t pat = 0; pat < (uint32_t(1) << j); ++pat) {
        DenseMatrix prod = DenseMatrix::identity(6);
        for (int i = 0; i < j; ++i) prod = matmul(prod, ((pat >> i) & 1u) ? m1 : m0);
        const int zeros = j - __builtin_popcount(pat);
        signed_sum += (zeros % 2 == 0 ? 1.0 : -1.0) * trace(prod) / 6.0;
      }
      worst_gap = std::max(worst_gap, std::fabs(signed_sum - trace(diff_power) / 6.0));
    }
  }
  c.require(worst_gap <= 1e-10, "signed-aggregation identity gap " + fmt(worst_gap));

  DiffPipelineOptions opts;
  opts.k = 6;
  opts.theta = full ? 0.1 : 0.2;  // quick mode trims the per-pattern sample count
  opts.delta = 0.1;
  opts.budget_cap_steps = 4000000000;
  opts.threads = threads;
  const DiffPipelineResult pipe =
      diff_spectrum_pipeline(g1, g2, RandomSource(0xD1FF717Eull), opts);
  c.require(pipe.w1_to_exact.has_value() && *pipe.w1_to_exact <= 0.2,
            "pipeline W1 to exact spectrum " +
                (pipe.w1_to_exact ? fmt(*pipe.w1_to_exact) : std::string("missing")));
  if (pipe.w1_to_exact) c.note("pipeline W1=" + fmt(*pipe.w1_to_exact));
}

void c12_sde(Check& c, bool full, int threads) {
  const WeightedGraph r200 = cycle_graph(200);
  const SpectralMeasure truth = dense_spectrum_of(r200);
  const int seeds = full ? 50 : 10;
  const int need = full ? 45 : 9;
  int within = 0;
  double worst = 0.0;
  SdeOptions opts;
  opts.threads = threads;
  for (int s = 0; s < seeds; ++s) {
    const SdeResult res =
        sde_pipeline(r200, 0.25, RandomSource(0x5DE5EEDull, static_cast<uint64_t>(s)), opts);
    const double w1 = wasserstein1(res.recon.measure, truth);
    worst = std::max(worst, w1);
    if (w1 <= 0.25) ++within;
  }
  c.require(within >= need, "W1 <= 0.25 in " + std::to_string(within) + "/" +
                                std::to_string(seeds) + " seeds (need " + std::to_string(need) +
                                ")");
  c.note("W1<=0.25 in " + std::to_string(within) + "/" + std::to_string(seeds) +
         " seeds, worst " + fmt(worst));

  {
    MomentVector zeros;
    zeros.values = {0.0, 0.0, 0.0, 0.0};
    const ReconstructionResult rec = solve_moment_lp(zeros, -1.0, 1.0, 17);
    const double w1 = wasserstein1(rec.measure, SpectralMeasure::point_mass(0.0, -1.0, 1.0));
    c.require(rec.residual <= 1e-9 && w1 <= 1e-9,
              "zero-moment LP: residual " + fmt(rec.residual) + ", W1 to delta_0 " + fmt(w1));
  }
  {
    MomentVector pm;
    pm.values = {0.0, 1.0, 0.0, 1.0};
    const ReconstructionResult rec = solve_moment_lp(pm, -1.0, 1.0, 17);
    const SpectralMeasure target =
        SpectralMeasure::from_atoms({{-1.0, 0.5}, {1.0, 0.5}}, -1.0, 1.0);
    const double w1 = wasserstein1(rec.measure, target);
    c.require(rec.residual <= 1e-9 && w1 <= 1e-9,
              "pm-one LP: residual " + fmt(rec.residual) + ", W1 to half masses " + fmt(w1));
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool full, int threads) {
  struct Spec {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Spec> specs = {
      {1, "cycle pair W1 = 1/ell", [](Check& c) { c1_cycle_w1(c); }},
      {2, "overlay instance W1 = 1/(4 ell)", [](Check& c) { c2_mom_w1(c); }},
      {3, "moment gaps of the overlay pair", [](Check& c) { c3_moment_gaps(c); }},
      {4, "ring instance W1 = 1/(2 ell)", [](Check& c) { c4_rw_w1(c); }},
      {5, "coupling TV bound and event implication",
       [full](Check& c) { c5_coupling(c, full); }},
      {6, "loop-detector phase transition", [](Check& c) { c6_loop_detector(c); }},
      {7, "adaptive ring probe", [](Check& c) { c7_adaptive_probe(c); }},
      {8, "marble threshold game", [full, threads](Check& c) { c8_marble(c, full, threads); }},
      {9, "mixture W1 = (2 alpha - 1)/ell", [](Check& c) { c9_mixture(c); }},
      {10, "matched-moment pair and Lipschitz witness",
       [](Check& c) { c10_chebyshev_pair(c); }},
      {11, "alternating-walk difference moments",
       [full, threads](Check& c) { c11_diff_spectrum(c, full, threads); }},
      {12, "moment-LP reconstruction pipeline",
       [full, threads](Check& c) { c12_sde(c, full, threads); }},
  };

  std::vector<CriterionResult> results;
  results.reserve(specs.size());
  for (const auto& spec : specs) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      spec.run(c);
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    CriterionResult r;
    r.id = spec.id;
    r.name = spec.name;
    r.passed = c.ok;
    r.detail = c.detail.str();
    r.seconds = std::chrono::duration<double>(stop - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace specden
