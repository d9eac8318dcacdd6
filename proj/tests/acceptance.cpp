// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Library results are checked against the enumeration oracles in
// support/reference.hpp wherever enumeration is affordable.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bgnd/dynamics.hpp"
#include "bgnd/error.hpp"
#include "bgnd/estimate.hpp"
#include "bgnd/eval.hpp"
#include "bgnd/gametheory.hpp"
#include "bgnd/io.hpp"
#include "bgnd/oracle.hpp"
#include "support/builders.hpp"
#include "support/reference.hpp"

#ifndef BGND_CLI_PATH
#error "BGND_CLI_PATH must point at the command-line binary"
#endif

using namespace bgnd;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first few failure descriptions of one criterion.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what());
  }
};

struct Verdict {
  std::string name;
  bool ok = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::map<int, Verdict> verdicts;

void verdict(int id, const std::string& name, bool ok, const std::string& detail,
             const std::vector<std::string>& notes = {}) {
  verdicts[id] = {name, ok, detail, notes};
}

void verdict(int id, const std::string& name, const Tally& t, const std::string& detail) {
  verdict(id, name, t.failures == 0 && t.checks > 0,
          detail + " (" + std::to_string(t.checks) + " checks, " + std::to_string(t.failures) + " failed)",
          t.notes);
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

// ------------------------------------------------------------ the corpus

struct CorpusEntry {
  std::uint64_t seed;
  Instance instance;
};

// Draws desk-scale generator settings from `seed`: up to 4 agents, 3 types,
// 8 nodes, 12 edges, one cost term with alpha in {1.5, 2, 2.5, 3}.
GeneratorParams corpus_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 1);
  GeneratorParams p;
  p.seed = seed;
  p.agents = 1 + rng() % 4;
  p.types_per_agent = 1 + rng() % 3;
  p.nodes = 3 + rng() % 6;
  p.edge_density = 0.2 + 0.1 * static_cast<double>(rng() % 5);
  p.max_edges = 12;
  p.alphas = {std::array<double, 4>{1.5, 2.0, 2.5, 3.0}[rng() % 4]};
  p.xi_min = 0.5;
  p.xi_max = 3.0;
  p.request_kind = std::array<RequestKind, 3>{RequestKind::Routing, RequestKind::SetConnectivity,
                                              RequestKind::Explicit}[rng() % 3];
  p.explicit_resources = 4 + rng() % 5;
  return p;
}

std::vector<CorpusEntry> build_corpus(std::size_t count) {
  std::vector<CorpusEntry> out;
  for (std::uint64_t seed = 1; out.size() < count; ++seed)
    out.push_back({seed, generate_instance(corpus_params(seed))});
  return out;
}

// Rough upper bound on the reference enumerator's work for E[OPT].
double reference_work(const Instance& inst) {
  double worst = 1.0;
  for (const auto& a : inst.agents) {
    std::size_t most = 0;
    for (const auto& r : a.types) most = std::max(most, ref::candidates(inst, r).size());
    worst *= static_cast<double>(most);
  }
  return worst * static_cast<double>(type_profile_count(inst));
}

// Random feasible strategy tables from the full candidate lists.
StrategyProfile random_feasible(const Instance& inst, std::mt19937_64& rng) {
  StrategyProfile s(inst.agent_count());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (const auto& r : inst.agents[i].types) {
      const auto c = candidate_actions(inst, r);
      s[i].push_back(c[rng() % c.size()]);
    }
  return s;
}

// Explicit-resource instance with one fixed action per type; the strategy is
// that action. Used for the estimator probes.
struct Probe {
  Instance inst;
  StrategyProfile s;
};

Probe random_probe(std::mt19937_64& rng, double alpha) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Probe probe;
  const std::size_t m = 2 + rng() % 5;
  const std::size_t n = 1 + rng() % 4;
  for (std::size_t e = 0; e < m; ++e)
    probe.inst.resources.push_back(build::resource("e" + std::to_string(e), build::power(0.1 + 3 * unit(rng), alpha)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t types = 1 + rng() % 3;
    Agent agent;
    Strategy strategy;
    double sum = 0.0;
    for (std::size_t t = 0; t < types; ++t) {
      std::vector<ResourceIndex> ids;
      for (ResourceIndex e = 0; e < m; ++e)
        if (rng() % 2) ids.push_back(e);
      if (ids.empty()) ids.push_back(rng() % m);
      agent.types.push_back(ExplicitRequest{{Action(ids)}});
      strategy.emplace_back(ids);
      agent.prior.push_back(unit(rng) + 1e-3);
      sum += agent.prior.back();
    }
    for (auto& p : agent.prior) p /= sum;
    probe.inst.agents.push_back(agent);
    probe.s.push_back(strategy);
  }
  return probe;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// ------------------------------------------------------------- criteria

// 1, 5 and 8 all walk the same corpus, so they share one pass.
void corpus_criteria(std::size_t count) {
  const auto t0 = Clock::now();
  const auto corpus = build_corpus(count);
  Tally bcr, descent, initial;
  double worst_ratio = 0.0, worst_initial = 0.0;
  std::size_t moves = 0, crosschecked = 0, too_large = 0, alpha2_instances = 0;

  for (const auto& [seed, inst] : corpus) {
    const std::string tag = "seed " + std::to_string(seed);
    const ActionOracle oracle;
    const double rho = oracle.describe(inst).rho;
    const auto trace = run_dynamics(inst, oracle, {.diagnostics = true, .threads = 0});
    const auto constants = trace.constants;
    if (inst.max_exponent() == 2.0 && rho == 1.0) {
      ++alpha2_instances;
      bcr.expect(std::abs(constants.bcr_bound() - 10.4721359549995794) <= 1e-6, tag + ": alpha 2 bound is not 10.47");
    }

    // criterion 1
    BcrReport report;
    try {
      report = bcr_report(inst, trace.final_profile, constants, {}, 0);
    } catch (const TooLargeError& e) {
      ++too_large;
      bcr.expect(false, tag + ": " + e.what());
      continue;
    }
    const double cost_ref = ref::social_cost(inst, trace.final_profile);
    bcr.expect(close_rel(report.exact_cost, cost_ref, 1e-9),
               [&] { return tag + ": C(s) " + fmt(report.exact_cost, 17) + " vs enumeration " + fmt(cost_ref, 17); });
    if (reference_work(inst) <= 2e6) {
      ++crosschecked;
      const double opt_ref = ref::expected_opt(inst);
      bcr.expect(close_rel(report.expected_opt, opt_ref, 1e-9),
                 [&] { return tag + ": E[OPT] " + fmt(report.expected_opt, 17) + " vs " + fmt(opt_ref, 17); });
    }
    const double ratio = report.exact_cost / report.expected_opt;
    worst_ratio = std::max(worst_ratio, ratio / constants.bcr_bound());
    bcr.expect(ratio >= 1.0 - 1e-9, [&] { return tag + ": ratio " + fmt(ratio) + " below 1"; });
    bcr.expect(ratio <= constants.bcr_bound() + 1e-6,
               [&] { return tag + ": ratio " + fmt(ratio) + " exceeds bound " + fmt(constants.bcr_bound()); });
    bcr.expect(trace.rounds.size() <= constants.R, tag + ": more rounds than R");

    // criterion 5: replay the committed moves and recompute the potential independently
    StrategyProfile current = trace.initial;
    double previous = ref::potential(inst, current);
    descent.expect(close_rel(trace.initial_diagnostics->potential, previous, 1e-9), tag + ": initial potential");
    for (const auto& round : trace.rounds) {
      if (!round.chosen) break;
      ++moves;
      current[*round.chosen] = compute_abr(inst, *round.chosen, current, oracle).strategy;
      const double now = ref::potential(inst, current);
      descent.expect(now < previous, [&] {
        return tag + " round " + std::to_string(round.round) + ": potential " + fmt(previous, 17) + " -> " +
               fmt(now, 17);
      });
      descent.expect(close_rel(round.after->potential, now, 1e-9), tag + ": recorded potential disagrees with enumeration");
      previous = now;
    }
    descent.expect(current == trace.final_profile, tag + ": replay diverged from the trace");

    // criterion 8
    const double c0 = ref::social_cost(inst, trace.initial);
    const double n = static_cast<double>(inst.agent_count());
    const double limit = rho * std::pow(n, inst.max_exponent() - 1) * report.expected_opt;
    worst_initial = std::max(worst_initial, c0 / limit);
    initial.expect(c0 <= limit * (1 + 1e-9),
                   [&] { return tag + ": C(s0) " + fmt(c0) + " > " + fmt(limit); });
  }
  const double elapsed = seconds_since(t0);
  bcr.expect(elapsed < 300.0, "corpus took " + fmt(elapsed) + " s");
  bcr.expect(alpha2_instances > 0, "no alpha 2 instance with an exact oracle in the corpus");
  descent.expect(moves >= 50, "only " + std::to_string(moves) + " committed moves in the corpus");

  verdict(1, "BCR bound", bcr,
          std::to_string(corpus.size()) + " instances, max ratio/bound " + fmt(worst_ratio, 4) + ", E[OPT] cross-checked on " +
              std::to_string(crosschecked) + ", over caps " + std::to_string(too_large) + ", " + fmt(elapsed, 3) + " s");
  verdict(5, "potential descent", descent, std::to_string(moves) + " committed moves");
  verdict(8, "initial-profile bound", initial, "max C(s0)/limit " + fmt(worst_initial, 4));
}

void quadratic_exactness() {
  Tally t;
  std::mt19937_64 rng(2024);
  std::size_t probes = 0;
  double worst = 0.0;
  while (probes < 12000) {
    const auto probe = random_probe(rng, 2.0);
    for (std::size_t i = 0; i < probe.inst.agent_count(); ++i)
      for (ResourceIndex e = 0; e < probe.inst.resource_count(); ++e, ++probes) {
        const double est = estimate_cost_share(probe.inst, i, e, probe.s);
        const double exact = exact_cost_share(probe.inst, i, e, probe.s);
        const double enumerated = ref::exact_share(probe.inst, i, e, probe.s);
        worst = std::max({worst, std::abs(est - exact), std::abs(est - enumerated)});
        t.expect(std::abs(est - exact) <= 1e-9 && std::abs(est - enumerated) <= 1e-9, [&] {
          return "estimate " + fmt(est, 17) + " exact " + fmt(exact, 17) + " enumerated " + fmt(enumerated, 17);
        });
      }
  }
  verdict(2, "quadratic exactness", t, std::to_string(probes) + " probes, max gap " + fmt(worst, 3));
}

void estimator_sandwich() {
  Tally t;
  std::mt19937_64 rng(77);
  std::size_t probes = 0;
  for (double alpha : {1.2, 1.5, 1.8, 2.5, 3.0, 4.0}) {
    for (int trial = 0; trial < 400; ++trial) {
      const auto probe = random_probe(rng, alpha);
      const auto eta = estimation_params(probe.inst);
      for (std::size_t i = 0; i < probe.inst.agent_count(); ++i)
        for (ResourceIndex e = 0; e < probe.inst.resource_count(); ++e, ++probes) {
          const double est = estimate_cost_share(probe.inst, i, e, probe.s);
          const double exact = ref::exact_share(probe.inst, i, e, probe.s);
          // 1e-12 relative slack absorbs rounding when the two sides coincide
          t.expect(est / eta.eta_low <= exact * (1 + 1e-12) && exact <= est * eta.eta_high * (1 + 1e-12), [&] {
            return "alpha " + fmt(alpha) + ": " + fmt(est / eta.eta_low, 17) + " <= " + fmt(exact, 17) +
                   " <= " + fmt(est * eta.eta_high, 17);
          });
        }
    }
  }
  verdict(3, "estimator sandwich", t, std::to_string(probes) + " probes over 6 exponents");
}

void potential_identity() {
  Tally t;
  std::mt19937_64 rng(4242);
  std::size_t deviations = 0;
  for (std::uint64_t seed = 1; deviations < 1200; ++seed) {
    GeneratorParams p = corpus_params(seed);
    p.nodes = std::min<std::size_t>(p.nodes, 6);
    p.max_edges = 9;
    if (p.request_kind == RequestKind::SetConnectivity) p.request_kind = RequestKind::Routing;
    const Instance inst = generate_instance(p);
    const double k = std::ceil(inst.max_exponent());
    for (int trial = 0; trial < 6; ++trial, ++deviations) {
      const auto s = random_feasible(inst, rng);
      const std::size_t i = rng() % inst.agent_count();
      auto deviated = s;
      deviated[i] = random_feasible(inst, rng)[i];
      const double d_phi = ref::potential(inst, s) - ref::potential(inst, deviated);
      const double d_cost = ref::individual_cost(inst, i, s) - ref::individual_cost(inst, i, deviated);
      t.expect(std::abs(d_phi - d_cost) <= 1e-9,
               [&] { return "seed " + std::to_string(seed) + ": dPhi " + fmt(d_phi, 17) + " dC " + fmt(d_cost, 17); });
      const double phi = potential_expected(inst, s);
      const double cost = exact_social_cost(inst, s);
      t.expect(close_rel(phi, ref::potential(inst, s), 1e-9) && close_rel(cost, ref::social_cost(inst, s), 1e-9),
               "seed " + std::to_string(seed) + ": library expectation disagrees with enumeration");
      t.expect(phi <= cost * (1 + 1e-12) && cost <= k * phi * (1 + 1e-12),
               [&] { return "seed " + std::to_string(seed) + ": Phi " + fmt(phi) + " C " + fmt(cost) + " K " + fmt(k); });
    }
  }
  verdict(4, "potential identity, K-bound", t, std::to_string(deviations) + " deviations");
}

void smoothness() {
  Tally t;
  const double alphas[] = {1.1, 1.5, 2.0, 2.5, 3.0, 4.0};
  std::size_t settings = 0;
  for (double a : alphas)
    for (double rho : {1.0, 2.0})
      for (double eta_low : {1.0, 1.2})
        for (double eta_high : {1.0, 1.5}) {
          ++settings;
          const auto p = smoothness_params(a, rho, eta_low, eta_high);
          const std::string tag = "alpha " + fmt(a) + " rho " + fmt(rho) + " eta " + fmt(eta_low) + "/" + fmt(eta_high);
          t.expect(p.scale * p.mu < 1 - 1 / a, tag + ": scale*mu " + fmt(p.scale * p.mu));
          // every exponent up to alpha_max shares the pair
          std::vector<double> exps;
          for (double b = 1.0; b < a; b += 0.5) exps.push_back(b);
          exps.push_back(a);
          t.expect(verify_smoothness_inequality(p.lambda, p.mu, exps), tag + ": library grid check");
          // independent grid, same relative slack
          for (double b : exps)
            for (int x = 0; x <= 50; ++x)
              for (int y = 0; y <= 50; ++y) {
                const double lhs = y * std::pow(x + y, b - 1);
                const double rhs = p.lambda * std::pow(y, b) + p.mu * std::pow(x, b);
                t.expect(lhs <= rhs * (1 + 1e-9), [&] {
                  return tag + " exponent " + fmt(b) + " at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
                });
              }
        }
  verdict(6, "smoothness validity", t, std::to_string(settings) + " parameter settings, x, y <= 50");
}

void constants() {
  Tally t;
  const double phi = (1 + std::sqrt(5.0)) / 2;
  t.expect(std::abs(gamma_root(2.0) - phi) <= 1e-9, "gamma_root(2) = " + fmt(gamma_root(2.0), 17));
  // Dobinski: B_n = e^-1 sum_k k^n / k!
  const double bell[] = {1, 2, 5, 15, 52};
  for (int n = 1; n <= 5; ++n) {
    double series = 0.0, fact = 1.0;
    for (int k = 1; k < 60; ++k) {
      fact *= k;
      series += std::pow(k, n) / fact;
    }
    series /= std::exp(1.0);
    t.expect(std::abs(bell_fractional(n) - bell[n - 1]) <= 1e-9 && std::abs(series - bell[n - 1]) <= 1e-9,
             "B_" + std::to_string(n) + " = " + fmt(bell_fractional(n), 17));
  }
  for (double z = 0.01; z < 1.0; z += 0.01) {
    const double b = b_const_root(z);
    const double residual = 2 * b * b * b - (z + 2) * b * b - 2;
    t.expect(std::abs(residual) <= 1e-9 && b > 1, "b root residual " + fmt(residual) + " at z " + fmt(z));
  }
  verdict(7, "constant cross-checks", t, "gamma(2), Bell 1..5, b roots on 99 points");
}

void oracles() {
  Tally t;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t graphs = 0, steiner_graphs = 0;
  double worst = 0.0;
  auto random_graph = [&](std::size_t max_edges, bool directed) {
    Graph g;
    g.node_count = 2 + rng() % 6;
    g.directed = directed;
    const std::size_t m = 1 + rng() % max_edges;
    for (std::size_t k = 0; k < m; ++k) {
      const NodeIndex a = rng() % g.node_count;
      NodeIndex b = rng() % g.node_count;
      if (b == a) b = (a + 1) % g.node_count;
      g.edges.push_back({a, b, k});
    }
    WeightVector w(m);
    for (auto& x : w) x = rng() % 4 == 0 ? std::floor(4 * unit(rng)) : 5 * unit(rng);
    return std::pair{g, w};
  };
  while (graphs < 200) {
    const auto [g, w] = random_graph(12, rng() % 2 == 0);
    const NodeIndex u = rng() % g.node_count, v = rng() % g.node_count;
    const auto best = ref::min_path_weight(g, u, v, w);
    ++graphs;
    try {
      const Action a = shortest_path(g, u, v, w);
      t.expect(best.has_value() && std::abs(total_weight(a, w) - *best) <= 1e-9,
               "shortest path " + fmt(total_weight(a, w)) + " vs " + (best ? fmt(*best) : "unreachable"));
      std::vector<std::size_t> ids(a.resources().begin(), a.resources().end());
      t.expect(ref::mask_connects(g, [&] {
                 std::uint64_t mask = 0;
                 for (auto e : ids) mask |= std::uint64_t{1} << e;
                 return mask;
               }(), std::vector<std::size_t>{u, v}) || g.directed,
               "shortest path does not join its endpoints");
    } catch (const UnsatisfiableError&) {
      t.expect(!best.has_value(), "shortest path reported unreachable but a path exists");
    }
  }
  while (steiner_graphs < 150) {
    const auto [g, w] = random_graph(10, false);
    std::vector<NodeIndex> terminals;
    for (NodeIndex x = 0; x < g.node_count; ++x)
      if (rng() % 2) terminals.push_back(x);
    if (terminals.empty()) terminals.push_back(0);
    const auto best = ref::min_steiner_weight(g, terminals, w);
    ++steiner_graphs;
    try {
      const Action a = steiner_mst(g, terminals, w);
      const double got = total_weight(a, w);
      t.expect(best.has_value() && got <= 2 * *best + 1e-9,
               "steiner " + fmt(got) + " vs optimum " + (best ? fmt(*best) : "none"));
      if (best && *best > 0) worst = std::max(worst, got / *best);
      std::uint64_t mask = 0;
      for (auto e : a.resources()) mask |= std::uint64_t{1} << e;
      t.expect(ref::mask_connects(g, mask, terminals), "steiner tree does not connect its terminals");
    } catch (const UnsatisfiableError&) {
      t.expect(!best.has_value(), "steiner reported disconnected but a tree exists");
    }
  }
  verdict(9, "oracle correctness", t,
          std::to_string(graphs) + " shortest-path graphs, " + std::to_string(steiner_graphs) +
              " steiner graphs, worst steiner ratio " + fmt(worst, 4));
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + BGND_CLI_PATH + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  Tally t;
  const fs::path dir = fs::temp_directory_path() / "bgnd_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto q = [&](const std::string& name) { return "'" + (dir / name).string() + "'"; };
  const char* kinds[] = {"routing", "set_connectivity", "explicit"};
  for (int k = 0; k < 6; ++k) {
    const std::string seed = std::to_string(100 + k);
    const std::string gen = "gen --seed " + seed + " --n 4 --types 3 --nodes 7 --alpha 2.5 --kind " + kinds[k % 3];
    t.expect(run_cli(gen + " -o " + q("a.json")) == 0 && run_cli(gen + " -o " + q("b.json")) == 0,
             "gen failed for seed " + seed);
    t.expect(slurp(dir / "a.json") == slurp(dir / "b.json"), "gen output differs for seed " + seed);
    const std::string solve = "solve " + q("a.json") + (k % 2 ? " --diagnostics" : "");
    t.expect(run_cli(solve + " -o " + q("r1.json")) == 0 && run_cli(solve + " -o " + q("r2.json")) == 0,
             "solve failed for seed " + seed);
    const std::string first = slurp(dir / "r1.json");
    t.expect(!first.empty() && first == slurp(dir / "r2.json"), "solve output differs for seed " + seed);
    t.expect(run_cli("--threads 1 " + solve + " -o " + q("r3.json")) == 0 && first == slurp(dir / "r3.json"),
             "single-threaded solve differs for seed " + seed);
    t.expect(run_cli("eval " + q("a.json") + " " + q("r1.json")) == 0, "eval did not exit 0 for seed " + seed);
  }
  fs::remove_all(dir);
  verdict(10, "determinism", t, "6 generated instances, solve run three times each");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<std::pair<const char*, std::function<void()>>> steps = {
      {"corpus", [] { corpus_criteria(240); }},
      {"quadratic", quadratic_exactness},
      {"sandwich", estimator_sandwich},
      {"potential", potential_identity},
      {"smoothness", smoothness},
      {"constants", constants},
      {"oracles", oracles},
      {"determinism", determinism},
  };
  for (const auto& [name, fn] : steps) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::printf("%s step aborted: %s\n", name, e.what());
    }
  }
  const char* names[] = {"",
                         "BCR bound",
                         "quadratic exactness",
                         "estimator sandwich",
                         "potential identity, K-bound",
                         "potential descent",
                         "smoothness validity",
                         "constant cross-checks",
                         "initial-profile bound",
                         "oracle correctness",
                         "determinism"};
  int failed = 0;
  for (int id = 1; id <= 10; ++id) {
    const auto it = verdicts.find(id);
    const Verdict v = it != verdicts.end() ? it->second : Verdict{names[id], false, "did not run", {}};
    if (!v.ok) ++failed;
    std::printf("criterion %2d %-28s %s  %s\n", id, v.name.c_str(), v.ok ? "PASS" : "FAIL", v.detail.c_str());
    for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
  }
  std::printf("acceptance: %s (%d failing, %.1f s)\n", failed ? "FAIL" : "PASS", failed, seconds_since(t0));
  return failed ? 1 : 0;
}
