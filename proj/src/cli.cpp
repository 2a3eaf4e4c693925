#include "specden/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
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
#include "specden/report.hpp"
#include "specden/spectra.hpp"
#include "specden/verify.hpp"

namespace specden {

namespace {

using nlohmann::json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Which parse_which(const std::string& w) {
  if (w == "g1") return Which::G1;
  if (w == "g2") return Which::G2;
  throw std::invalid_argument("--which must be g1 or g2");
}

json measure_to_json(const SpectralMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"value", a.value}, {"mass", a.mass}});
  return {{"atoms", atoms}, {"lo", m.lo()}, {"hi", m.hi()}};
}

void emit_report(const std::string& path, ExperimentReport report, double seconds) {
  report.wall_clock_seconds = seconds;
  if (!path.empty()) write_report(path, report);
}

WeightedGraph generate_instance(const std::string& variant, int ell,
                                std::optional<int64_t> n, double alpha, Which which) {
  if (variant == "mom") return gen_mom_instance(ell, which, n);
  if (variant == "rw") return gen_rw_instance(ell, which, n);
  if (variant == "mixture") {
    if (!n) throw std::invalid_argument("mixture requires --n");
    return gen_mixture_instance(ell, alpha, *n, which);
  }
  throw std::invalid_argument("unknown variant " + variant);
}

MomentVector moments_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open moments file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw io_error("malformed moments JSON " + path + ": " + ex.what());
  }
  const json* arr = nullptr;
  if (j.contains("moments") && j["moments"].is_array()) {
    arr = &j["moments"];
  } else if (j.contains("measured") && j["measured"].contains("moments")) {
    arr = &j["measured"]["moments"];
  }
  if (arr == nullptr) throw io_error("no \"moments\" array in " + path);
  MomentVector m;
  for (const auto& v : *arr) m.values.push_back(v.get<double>());
  if (m.values.empty()) throw io_error("empty moments array in " + path);
  return m;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"spectral density estimation laboratory for graph random walks"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (never changes measured values)");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a hard-instance graph file");
  std::string gen_variant{"rw"};
  int gen_ell = 5;
  std::optional<int64_t> gen_n;
  double gen_alpha = 0.75;
  std::string gen_which{"g1"};
  uint64_t gen_seed = 0;
  bool gen_relabel = false;
  std::string gen_out;
  gen->add_option("--variant", gen_variant, "mom | rw | mixture")->required();
  gen->add_option("--ell", gen_ell, "odd cycle length >= 3")->required();
  gen->add_option("--n", gen_n, "cycle-count scale (default: paper value)");
  gen->add_option("--alpha", gen_alpha, "mixture proportion in (0.5, 1)");
  gen->add_option("--which", gen_which, "g1 | g2")->required();
  gen->add_option("--seed", gen_seed, "seed for --relabel");
  gen->add_flag("--relabel", gen_relabel, "apply a random vertex relabeling");
  gen->add_option("--out", gen_out, "output graph file")->required();

  // --- spectrum ---
  auto* spectrum = app.add_subcommand("spectrum", "exact or dense spectrum as CSV");
  std::string sp_graph;
  std::string sp_variant;
  int sp_ell = 5;
  std::optional<int64_t> sp_n;
  double sp_alpha = 0.75;
  std::string sp_which{"g1"};
  std::string sp_out;
  spectrum->add_option("--graph", sp_graph, "graph file (dense eigensolve)");
  spectrum->add_option("--variant", sp_variant, "cycle | cycle-even | mom | rw | mixture");
  spectrum->add_option("--ell", sp_ell, "cycle parameter");
  spectrum->add_option("--n", sp_n, "cycle-count scale");
  spectrum->add_option("--alpha", sp_alpha, "mixture proportion");
  spectrum->add_option("--which", sp_which, "g1 | g2");
  spectrum->add_option("--out", sp_out, "output CSV")->required();

  // --- moments ---
  auto* moments_cmd = app.add_subcommand("moments", "exact or walk-estimated raw moments");
  std::string mo_graph;
  int mo_k = 8;
  bool mo_exact = false;
  int64_t mo_walks = 0;
  uint64_t mo_seed = 0;
  std::string mo_json;
  moments_cmd->add_option("--graph", mo_graph, "graph file")->required();
  moments_cmd->add_option("--k", mo_k, "number of moments")->required();
  moments_cmd->add_flag("--exact", mo_exact, "dense-trace oracle instead of walks");
  moments_cmd->add_option("--walks", mo_walks, "walks per moment");
  moments_cmd->add_option("--seed", mo_seed, "random seed");
  moments_cmd->add_option("--json", mo_json, "output report")->required();

  // --- reconstruct ---
  auto* rec = app.add_subcommand("reconstruct", "moment-matching LP reconstruction");
  std::string rc_moments;
  int rc_k = 0;
  int rc_grid = 0;
  std::string rc_interval{"-1,1"};
  std::string rc_weights{"uniform"};
  std::string rc_out;
  std::string rc_json;
  rec->add_option("--moments", rc_moments, "JSON file with a moments array")->required();
  rec->add_option("--k", rc_k, "use only the first k moments");
  rec->add_option("--grid", rc_grid, "grid size (default 4k+1)");
  rec->add_option("--interval", rc_interval, "a,b support interval");
  rec->add_option("--weights", rc_weights, "uniform | decay (3^-j)");
  rec->add_option("--out", rc_out, "output spectrum CSV")->required();
  rec->add_option("--json", rc_json, "output report");

  // --- sde ---
  auto* sde = app.add_subcommand("sde", "walk-based spectral density estimation");
  std::string sd_graph;
  double sd_eps = 0.25;
  uint64_t sd_seed = 0;
  int64_t sd_budget = 20000000;
  std::string sd_json;
  std::string sd_out;
  sde->add_option("--graph", sd_graph, "graph file")->required();
  sde->add_option("--eps", sd_eps, "target W1 accuracy in (0, 1/2)")->required();
  sde->add_option("--seed", sd_seed, "random seed");
  sde->add_option("--budget-cap", sd_budget, "max total walk steps");
  sde->add_option("--json", sd_json, "output report")->required();
  sde->add_option("--out", sd_out, "optional spectrum CSV");

  // --- diff ---
  auto* diff = app.add_subcommand("diff", "difference-spectrum estimation via alternating walks");
  std::string df_g1;
  std::string df_g2;
  std::optional<double> df_eps;
  std::optional<int> df_k;
  std::optional<double> df_theta;
  double df_delta = 0.1;
  uint64_t df_seed = 0;
  int64_t df_budget = 2000000000;
  std::string df_json;
  std::string df_out;
  diff->add_option("--g1", df_g1, "first graph file")->required();
  diff->add_option("--g2", df_g2, "second graph file")->required();
  diff->add_option("--exact-eps", df_eps, "exact mode: eps (k and theta from the bound)");
  diff->add_option("--k", df_k, "relaxed mode: moment count");
  diff->add_option("--theta", df_theta, "relaxed mode: per-moment accuracy");
  diff->add_option("--delta", df_delta, "failure probability");
  diff->add_option("--seed", df_seed, "random seed");
  diff->add_option("--budget-cap", df_budget, "max total walk steps");
  diff->add_option("--json", df_json, "output report")->required();
  diff->add_option("--out", df_out, "optional spectrum CSV");

  // --- couple ---
  auto* couple = app.add_subcommand("couple", "lazy-labelling coupling experiment");
  int cp_ell = 5;
  int64_t cp_n = 0;
  int cp_m = 4;
  int cp_T = 16;
  int64_t cp_trials = 10000;
  uint64_t cp_seed = 0;
  std::string cp_json;
  couple->add_option("--ell", cp_ell, "odd cycle length")->required();
  couple->add_option("--n", cp_n, "cycle-count scale (default 2*4^ell)");
  couple->add_option("--m", cp_m, "walks per transcript")->required();
  couple->add_option("--T", cp_T, "steps per walk")->required();
  couple->add_option("--trials", cp_trials, "coupling runs")->required();
  couple->add_option("--seed", cp_seed, "random seed");
  couple->add_option("--json", cp_json, "output report")->required();

  // --- distinguish ---
  auto* dist = app.add_subcommand("distinguish", "transcript and jar distinguishers");
  std::string di_variant;
  int di_ell = 5;
  std::optional<int64_t> di_n;
  int di_m = 100;
  int di_T = 100;
  int di_r = 64;
  int64_t di_seeds = 50;
  std::string di_which{"g1"};
  double di_alpha = 0.6;
  int64_t di_s = 6;
  bool di_replacement = false;
  int64_t di_trials = 100000;
  uint64_t di_seed = 0;
  std::string di_json;
  dist->add_option("--variant", di_variant, "loop | adaptive | marble")->required();
  dist->add_option("--ell", di_ell, "odd cycle length");
  dist->add_option("--n", di_n, "scale (cycles or marbles)");
  dist->add_option("--m", di_m, "walks per transcript (loop)");
  dist->add_option("--T", di_T, "steps per walk (loop)");
  dist->add_option("--r", di_r, "one-step walks per probe (adaptive)");
  dist->add_option("--seeds", di_seeds, "number of seeded repetitions");
  dist->add_option("--which", di_which, "g1 | g2");
  dist->add_option("--alpha", di_alpha, "red fraction (marble)");
  dist->add_option("--s", di_s, "draws per trial (marble)");
  dist->add_flag("--replacement", di_replacement, "draw with replacement (marble)");
  dist->add_option("--trials", di_trials, "trials (marble)");
  dist->add_option("--seed", di_seed, "random seed");
  dist->add_option("--json", di_json, "output report")->required();

  // --- cheb ---
  auto* cheb = app.add_subcommand("cheb", "matched-moment pair and Lipschitz witness");
  int ch_ell = 3;
  std::string ch_json;
  cheb->add_option("--ell", ch_ell, "odd >= 3")->required();
  cheb->add_option("--json", ch_json, "output report")->required();

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::string vf_budget{"quick"};
  std::string vf_json;
  verify->add_option("--budget", vf_budget, "quick | full");
  verify->add_option("--json", vf_json, "output report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Stopwatch clock;
    if (*gen) {
      WeightedGraph g =
          generate_instance(gen_variant, gen_ell, gen_n, gen_alpha, parse_which(gen_which));
      if (gen_relabel) {
        RandomSource rng(gen_seed);
        g = relabel_random(g, rng);
      }
      write_graph_file(gen_out, g);
      std::cout << "wrote " << gen_out << " (" << g.vertex_count() << " vertices, "
                << g.edge_count() << " explicit edges)\n";
    } else if (*spectrum) {
      SpectralMeasure m;
      if (!sp_graph.empty()) {
        m = SpectralMeasure::from_values(
            dense_symmetric_eigenvalues(dense_normalized_adjacency(read_graph_file(sp_graph))),
            -1.0, 1.0);
      } else if (sp_variant == "cycle") {
        m = cycle_spectrum(sp_ell);
      } else if (sp_variant == "cycle-even") {
        m = cycle_spectrum_even(2 * sp_ell);
      } else if (sp_variant == "mom") {
        const auto pair = mom_instance_spectrum(sp_ell, sp_n.value_or(mom_default_n(sp_ell)));
        m = parse_which(sp_which) == Which::G1 ? pair.first : pair.second;
      } else if (sp_variant == "rw") {
        const auto pair = rw_instance_spectrum(sp_ell, sp_n.value_or(rw_default_n(sp_ell)));
        m = parse_which(sp_which) == Which::G1 ? pair.first : pair.second;
      } else if (sp_variant == "mixture") {
        if (!sp_n) throw std::invalid_argument("mixture requires --n");
        const auto pair = mixture_spectrum(sp_ell, sp_alpha, *sp_n);
        m = parse_which(sp_which) == Which::G1 ? pair.first : pair.second;
      } else {
        throw std::invalid_argument("spectrum: need --graph or a valid --variant");
      }
      write_measure_csv(sp_out, m);
      std::cout << "wrote " << sp_out << " (" << m.size() << " atoms)\n";
    } else if (*moments_cmd) {
      const WeightedGraph g = read_graph_file(mo_graph);
      MomentVector m;
      if (mo_exact) {
        m = exact_moments_dense(g, mo_k);
      } else {
        if (mo_walks < 1) throw std::invalid_argument("moments: need --exact or --walks W");
        m = estimate_moments_walks(g, mo_k, mo_walks, RandomSource(mo_seed), threads);
      }
      ExperimentReport rep;
      rep.experiment = "moments";
      rep.seed = mo_seed;
      rep.parameters = {{"graph", mo_graph},
                        {"k", mo_k},
                        {"mode", mo_exact ? "exact" : "walks"},
                        {"walks", mo_walks}};
      rep.measured = {{"moments", m.values},
                      {"accuracy", m.accuracy == MomentAccuracy::EXACT ? "exact" : "additive"},
                      {"delta", m.delta}};
      emit_report(mo_json, rep, clock.seconds());
      std::cout << "wrote " << mo_json << '\n';
    } else if (*rec) {
      MomentVector m = moments_from_file(rc_moments);
      if (rc_k > 0) {
        if (rc_k > m.k()) throw std::invalid_argument("reconstruct: --k exceeds moments given");
        m.values.resize(static_cast<size_t>(rc_k));
      }
      double lo = -1.0;
      double hi = 1.0;
      if (std::sscanf(rc_interval.c_str(), "%lf,%lf", &lo, &hi) != 2) {
        throw std::invalid_argument("reconstruct: --interval must be a,b");
      }
      std::vector<double> weights;
      if (rc_weights == "decay") {
        for (int j = 1; j <= m.k(); ++j) weights.push_back(std::pow(3.0, -j));
      } else if (rc_weights != "uniform") {
        throw std::invalid_argument("reconstruct: --weights must be uniform or decay");
      }
      const int grid = rc_grid > 0 ? rc_grid : 4 * m.k() + 1;
      const ReconstructionResult res = solve_moment_lp(m, lo, hi, grid, weights);
      write_measure_csv(rc_out, res.measure);
      if (!rc_json.empty()) {
        ExperimentReport rep;
        rep.experiment = "reconstruct";
        rep.parameters = {{"moments", rc_moments}, {"k", m.k()},    {"grid", grid},
                          {"lo", lo},              {"hi", hi},      {"weights", rc_weights}};
        rep.measured = {{"residual", res.residual},
                        {"lp_pivots", res.lp_pivots},
                        {"atoms", res.measure.size()}};
        emit_report(rc_json, rep, clock.seconds());
      }
      std::cout << "wrote " << rc_out << " (residual " << res.residual << ")\n";
    } else if (*sde) {
      const WeightedGraph g = read_graph_file(sd_graph);
      SdeOptions opts;
      opts.budget_cap_steps = sd_budget;
      opts.threads = threads;
      const SdeResult res = sde_pipeline(g, sd_eps, RandomSource(sd_seed), opts);
      if (!sd_out.empty()) write_measure_csv(sd_out, res.recon.measure);
      ExperimentReport rep;
      rep.experiment = "sde";
      rep.seed = sd_seed;
      rep.parameters = {{"graph", sd_graph}, {"eps", sd_eps}, {"budget_cap", sd_budget}};
      rep.measured = {{"k", res.k},
                      {"walks_per_moment", res.walks_per_moment},
                      {"steps_used", res.steps_used},
                      {"steps_requested", res.steps_requested},
                      {"budget_limited", res.budget_limited},
                      {"delta_target", res.delta_target},
                      {"delta_achieved", res.delta_achieved},
                      {"residual", res.recon.residual},
                      {"moments", res.moments.values},
                      {"spectrum", measure_to_json(res.recon.measure)}};
      emit_report(sd_json, rep, clock.seconds());
      std::cout << "wrote " << sd_json << '\n';
      if (res.budget_limited) {
        std::cerr << "sde: budget cap trimmed the walk budget (partial report)\n";
        return 3;
      }
    } else if (*diff) {
      const WeightedGraph g1 = read_graph_file(df_g1);
      const WeightedGraph g2 = read_graph_file(df_g2);
      DiffPipelineOptions opts;
      opts.eps = df_eps;
      opts.k = df_k;
      opts.theta = df_theta;
      opts.delta = df_delta;
      opts.budget_cap_steps = df_budget;
      opts.threads = threads;
      const DiffPipelineResult res = diff_spectrum_pipeline(g1, g2, RandomSource(df_seed), opts);
      if (!df_out.empty()) write_measure_csv(df_out, res.recon.measure);
      ExperimentReport rep;
      rep.experiment = "diff";
      rep.seed = df_seed;
      rep.parameters = {{"g1", df_g1},
                        {"g2", df_g2},
                        {"k", res.estimate.k},
                        {"theta", res.estimate.theta},
                        {"delta", res.estimate.delta},
                        {"budget_cap", df_budget}};
      rep.measured = {{"moments", res.estimate.moments},
                      {"total_steps", res.estimate.total_steps},
                      {"residual", res.recon.residual},
                      {"spectrum", measure_to_json(res.recon.measure)}};
      if (res.w1_to_exact) rep.references["w1_to_exact_spectrum"] = *res.w1_to_exact;
      emit_report(df_json, rep, clock.seconds());
      std::cout << "wrote " << df_json << '\n';
    } else if (*couple) {
      const int64_t n = cp_n > 0 ? cp_n : rw_default_n(cp_ell);
      RandomSource rng(cp_seed);
      int64_t neq = 0;
      int64_t e1_fail = 0;
      int64_t e2_fail = 0;
      int64_t violations = 0;
      for (int64_t t = 0; t < cp_trials; ++t) {
        RandomSource tr = rng.derive(static_cast<uint64_t>(t));
        const CouplingOutcome out = coupling_run(cp_ell, n, cp_m, cp_T, tr);
        neq += out.equal ? 0 : 1;
        e1_fail += out.event1_held ? 0 : 1;
        e2_fail += out.event2_held ? 0 : 1;
        violations += (out.event1_held && out.event2_held && !out.equal) ? 1 : 0;
      }
      const double trials = static_cast<double>(cp_trials);
      ExperimentReport rep;
      rep.experiment = "couple";
      rep.seed = cp_seed;
      rep.parameters = {{"ell", cp_ell}, {"n", n}, {"m", cp_m}, {"T", cp_T},
                        {"trials", cp_trials}};
      rep.measured = {{"p_neq", static_cast<double>(neq) / trials},
                      {"event1_fail_rate", static_cast<double>(e1_fail) / trials},
                      {"event2_fail_rate", static_cast<double>(e2_fail) / trials},
                      {"implication_violations", violations}};
      rep.references = {{"tv_bound", tv_bound(cp_m, cp_T, static_cast<double>(n), cp_ell)},
                        {"event1_bound", std::min(1.0, 2.0 * double(cp_m) * cp_m * cp_T * cp_T /
                                                           static_cast<double>(n))},
                        {"event2_bound", std::min(1.0, double(cp_m) * cp_T /
                                                           std::ldexp(1.0, cp_ell))}};
      emit_report(cp_json, rep, clock.seconds());
      std::cout << "wrote " << cp_json << '\n';
    } else if (*dist) {
      ExperimentReport rep;
      rep.experiment = "distinguish-" + di_variant;
      rep.seed = di_seed;
      if (di_variant == "loop") {
        const int64_t n = di_n.value_or(rw_default_n(di_ell));
        const Which which = parse_which(di_which);
        const WeightedGraph base = gen_rw_instance(di_ell, which, n);
        int64_t success = 0;
        for (int64_t s = 0; s < di_seeds; ++s) {
          RandomSource rng(di_seed, static_cast<uint64_t>(s));
          const WeightedGraph g = relabel_random(base, rng);
          const WalkTranscript t = run_walks(g, di_m, di_T, {}, rng.derive(1));
          const LoopGuess guess = loop_detector(t, di_ell);
          RandomSource coin = rng.derive(2);
          const LoopGuess truth = which == Which::G1 ? LoopGuess::G1 : LoopGuess::G2;
          if (guess == truth || (guess == LoopGuess::UNKNOWN && coin.next_coin())) ++success;
        }
        rep.parameters = {{"ell", di_ell}, {"n", n},          {"m", di_m},
                          {"T", di_T},     {"which", di_which}, {"seeds", di_seeds}};
        rep.measured = {{"success_rate",
                         static_cast<double>(success) / static_cast<double>(di_seeds)}};
      } else if (di_variant == "adaptive") {
        const Which which = parse_which(di_which);
        const WeightedGraph g = gen_rw_instance(di_ell, which, di_n);
        const int expected = which == Which::G1 ? di_ell : 2 * di_ell;
        int64_t success = 0;
        int64_t max_steps = 0;
        for (int64_t s = 0; s < di_seeds; ++s) {
          RandomSource rng(di_seed, static_cast<uint64_t>(s));
          try {
            const ProbeResult res = adaptive_cycle_probe(g, di_r, rng);
            max_steps = std::max(max_steps, res.steps_used);
            if (res.cycle_length == expected) ++success;
          } catch (const numerical_error&) {
          }
        }
        rep.parameters = {{"ell", di_ell},
                          {"n", di_n.value_or(rw_default_n(di_ell))},
                          {"r", di_r},
                          {"which", di_which},
                          {"seeds", di_seeds}};
        rep.measured = {{"success_rate",
                         static_cast<double>(success) / static_cast<double>(di_seeds)},
                        {"max_steps", max_steps}};
        rep.references = {{"step_budget", 3 * (2 * di_ell) * di_r + 2 * di_ell}};
      } else if (di_variant == "marble") {
        if (!di_n) throw std::invalid_argument("marble requires --n");
        const GameResult res = marble_experiment(di_alpha, *di_n, di_s, di_replacement,
                                                 di_trials, RandomSource(di_seed), threads);
        rep.parameters = {{"alpha", di_alpha},
                          {"n", *di_n},
                          {"s", di_s},
                          {"replacement", di_replacement},
                          {"trials", di_trials}};
        rep.measured = {{"successes", res.successes},
                        {"success_rate",
                         static_cast<double>(res.successes) / static_cast<double>(res.trials)},
                        {"advantage", res.advantage}};
        rep.references = {{"tv_bound", res.theoretical_bound}};
      } else {
        throw std::invalid_argument("distinguish: unknown variant " + di_variant);
      }
      emit_report(di_json, rep, clock.seconds());
      std::cout << "wrote " << di_json << '\n';
    } else if (*cheb) {
      const auto [p, q] = kv_pair(ch_ell);
      const LegBoundReport res = verify_leg_bound(p, q, ch_ell);
      ExperimentReport rep;
      rep.experiment = "cheb";
      rep.parameters = {{"ell", ch_ell}};
      rep.measured = {{"c", res.c},
                      {"bound", res.bound},
                      {"w1", res.w1},
                      {"witness", res.witness},
                      {"p", measure_to_json(p)},
                      {"q", measure_to_json(q)}};
      rep.references = {{"w1_closed_form", 2.0 / ch_ell}};
      emit_report(ch_json, rep, clock.seconds());
      std::cout << "wrote " << ch_json << '\n';
    } else if (*verify) {
      if (vf_budget != "quick" && vf_budget != "full") {
        throw std::invalid_argument("verify: --budget must be quick or full");
      }
      const auto results = run_acceptance(vf_budget == "full", threads);
      json jcrit = json::array();
      bool all_pass = true;
      for (const auto& r : results) {
        std::printf("%s criterion %2d: %s%s%s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.empty() ? "" : " - ", r.detail.c_str(), r.seconds);
        jcrit.push_back({{"id", r.id},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"detail", r.detail},
                         {"seconds", r.seconds}});
        all_pass = all_pass && r.passed;
      }
      if (!vf_json.empty()) {
        ExperimentReport rep;
        rep.experiment = "verify";
        rep.parameters = {{"budget", vf_budget}};
        rep.measured = {{"criteria", jcrit}, {"all_passed", all_pass}};
        emit_report(vf_json, rep, clock.seconds());
      }
      std::cout << (all_pass ? "all criteria passed" : "some criteria FAILED") << '\n';
    }
    return 0;
  } catch (const io_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const budget_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  } catch (const numerical_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  }
}

}  // namespace specden
