// Command-line front end: instance generation, decomposition reports,
// sampling, exact small-instance diagnostics, coupling experiments,
// windability verdicts and partition-function estimation.

#include "icechain/chain.hpp"
#include "icechain/configuration.hpp"
#include "icechain/constraint.hpp"
#include "icechain/counting.hpp"
#include "icechain/coupling.hpp"
#include "icechain/decomposition.hpp"
#include "icechain/exactness.hpp"
#include "icechain/graph.hpp"
#include "icechain/windability.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace icechain;
using nlohmann::json;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ICECHAIN_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

json decomposition_report(const LabeledGraph& g, DeltaConvention conv) {
  Decomposition d = decompose(g);
  json circuits = json::array();
  for (const Circuit& c : d.circuits) {
    json edges = json::array();
    for (const Hop& h : c.hops) edges.push_back(h.edge);
    circuits.push_back({{"id", c.id},
                        {"edges", edges},
                        {"delta", d.delta(c.id, conv)},
                        {"delta_neighbor", d.delta_neighbor[c.id]},
                        {"delta_intersection", d.delta_intersection[c.id]},
                        {"neighbors", d.neighbors(c.id)},
                        {"self_intersections", d.self_intersections[c.id]}});
  }
  json adjacency = json::array();
  for (int i = 0; i < d.n; ++i)
    for (int j : d.neighbors(i))
      if (j > i)
        adjacency.push_back({{"i", i}, {"j", j}, {"shared_vertices", d.shared_vertices(i, j)}});
  return json{{"n", d.n},
              {"convention", to_string(conv)},
              {"circuits", circuits},
              {"adjacency", adjacency},
              {"delta_max", d.delta_max(conv)},
              {"flags",
               {{"two_by_two_free", d.two_by_two_free()},
                {"coherent", d.coherent},
                {"self_intersection_free", d.self_intersection_free()}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"six-vertex circuit dynamics toolkit"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string gen_family, gen_out;
  int gen_rows = 2, gen_cols = 2, gen_k = 3, gen_vertices = 4;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--family", gen_family, "theta|fig2|torus|chain|random")->required();
  gen->add_option("--rows", gen_rows, "torus rows");
  gen->add_option("--cols", gen_cols, "torus cols");
  gen->add_option("--k", gen_k, "chain length");
  gen->add_option("--vertices", gen_vertices, "random instance vertex count");
  gen->add_option("--seed", gen_seed, "random seed (or ICECHAIN_SEED)");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // --- decompose ---
  auto* dec = app.add_subcommand("decompose", "circuit decomposition report");
  std::string dec_in, dec_out, dec_conv = "intersection";
  dec->add_option("--in", dec_in, "instance file")->required();
  dec->add_option("--convention", dec_conv, "neighbor|intersection");
  dec->add_option("--out", dec_out, "output path (default stdout)");

  // --- sample ---
  auto* smp = app.add_subcommand("sample", "run the single-circuit dynamics");
  std::string smp_in, smp_out, smp_b = "1/2", smp_conv = "intersection",
              smp_format = "bits";
  std::uint64_t smp_steps = 1000, smp_burn = 0, smp_thin = 1;
  std::optional<std::uint64_t> smp_seed;
  smp->add_option("--in", smp_in, "instance file")->required();
  smp->add_option("--b", smp_b, "weight b as a rational string");
  smp->add_option("--steps", smp_steps, "number of recorded configurations");
  smp->add_option("--burn-in", smp_burn, "steps discarded before recording");
  smp->add_option("--thin", smp_thin, "steps between recorded configurations");
  smp->add_option("--seed", smp_seed, "seed (or ICECHAIN_SEED)");
  smp->add_option("--convention", smp_conv, "neighbor|intersection");
  smp->add_option("--format", smp_format, "bits|orientation");
  smp->add_option("--out", smp_out, "output path (default stdout), one JSON per line");

  // --- exact ---
  auto* exa = app.add_subcommand("exact", "exact small-instance diagnostics");
  std::string exa_in, exa_out, exa_b = "1/2", exa_conv = "intersection";
  int exa_tmax = -1, exa_cap = 20;
  bool exa_report = false;
  exa->add_option("--in", exa_in, "instance file")->required();
  exa->add_option("--b", exa_b, "weight b as a rational string");
  exa->add_option("--convention", exa_conv, "neighbor|intersection");
  exa->add_option("--tmax", exa_tmax, "emit the TV curve up to this time");
  exa->add_option("--cap", exa_cap, "maximum circuit count for enumeration");
  exa->add_flag("--report", exa_report, "print |Omega|, Z, residuals, chain verdicts");
  exa->add_option("--out", exa_out, "output path (default stdout)");

  // --- couple ---
  auto* cpl = app.add_subcommand("couple", "path-coupling diagnostics");
  std::string cpl_in, cpl_out, cpl_b = "1/3", cpl_conv = "intersection", cpl_mode = "bound";
  int cpl_trials = 200, cpl_threads = 1;
  double cpl_eps = 0.01;
  std::optional<std::uint64_t> cpl_seed;
  cpl->add_option("--in", cpl_in, "instance file")->required();
  cpl->add_option("--b", cpl_b, "weight b as a rational string");
  cpl->add_option("--mode", cpl_mode, "drift|coalesce|bound");
  cpl->add_option("--convention", cpl_conv, "neighbor|intersection");
  cpl->add_option("--trials", cpl_trials, "coalescence trials");
  cpl->add_option("--threads", cpl_threads, "worker threads for coalescence trials");
  cpl->add_option("--eps", cpl_eps, "target accuracy for the mixing bound");
  cpl->add_option("--seed", cpl_seed, "seed (or ICECHAIN_SEED)");
  cpl->add_option("--out", cpl_out, "output path (default stdout)");

  // --- windable ---
  auto* wnd = app.add_subcommand("windable", "decide windability of a constraint function");
  std::string wnd_fn, wnd_file, wnd_b = "1", wnd_a = "1", wnd_c = "1", wnd_out;
  wnd->add_option("--fn", wnd_fn, "fstar|six-vertex");
  wnd->add_option("--fn-file", wnd_file, "constraint function JSON file");
  wnd->add_option("--b", wnd_b, "b parameter");
  wnd->add_option("--a", wnd_a, "a parameter (six-vertex)");
  wnd->add_option("--c", wnd_c, "c parameter (six-vertex)");
  wnd->add_option("--out", wnd_out, "output path (default stdout)");

  // --- estimate-z ---
  auto* ez = app.add_subcommand("estimate-z", "approximate the partition function");
  std::string ez_in, ez_out, ez_b = "1/2", ez_conv = "intersection";
  double ez_eps = 0.05, ez_conf = 0.95;
  std::optional<std::uint64_t> ez_seed;
  ez->add_option("--in", ez_in, "instance file")->required();
  ez->add_option("--b", ez_b, "weight b as a rational string");
  ez->add_option("--eps", ez_eps, "relative error target");
  ez->add_option("--confidence", ez_conf, "confidence level");
  ez->add_option("--seed", ez_seed, "seed (or ICECHAIN_SEED)");
  ez->add_option("--convention", ez_conv, "neighbor|intersection");
  ez->add_option("--out", ez_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      LabeledGraph g;
      if (gen_family == "theta") g = gen_theta();
      else if (gen_family == "fig2") g = gen_fig2();
      else if (gen_family == "torus") g = gen_torus(gen_rows, gen_cols);
      else if (gen_family == "chain") g = gen_chain(gen_k);
      else if (gen_family == "random") g = gen_random(gen_vertices, resolve_seed(gen_seed));
      else throw std::invalid_argument("unknown family: " + gen_family);
      write_output(gen_out, graph_to_json(g).dump(2) + "\n");
    } else if (dec->parsed()) {
      LabeledGraph g = load_graph(dec_in);
      json report = decomposition_report(g, convention_from_string(dec_conv));
      write_output(dec_out, report.dump(2) + "\n");
    } else if (smp->parsed()) {
      LabeledGraph g = load_graph(smp_in);
      Decomposition d = decompose(g);
      GlauberChain chain(d, parse_rational(smp_b), convention_from_string(smp_conv),
                         resolve_seed(smp_seed));
      if (smp_format != "bits" && smp_format != "orientation")
        throw std::invalid_argument("unknown sample format: " + smp_format);
      std::string lines;
      chain.run(smp_burn);
      for (std::uint64_t t = 0; t < smp_steps; ++t) {
        chain.run(smp_thin == 0 ? 1 : smp_thin);
        json record{{"t", t}, {"sigma", chain.state().to_string()}};
        if (smp_format == "orientation") {
          json edges = json::object();
          auto orient = to_orientation(chain.state(), g, d);
          for (std::size_t e = 0; e < orient.size(); ++e)
            edges[std::to_string(e)] = {{"tail", orient[e].tail}, {"head", orient[e].head}};
          record["edges"] = std::move(edges);
        }
        lines += record.dump();
        lines += '\n';
      }
      write_output(smp_out, lines);
    } else if (exa->parsed()) {
      LabeledGraph g = load_graph(exa_in);
      Decomposition d = decompose(g);
      Rational b = parse_rational(exa_b);
      DeltaConvention conv = convention_from_string(exa_conv);
      StateSpace space = enumerate_omega(d, exa_cap);
      std::vector<Rational> mu = exact_mu(d, b, conv, space);
      TransitionMatrix P = transition_matrix(d, b, conv, space);
      if (exa_tmax >= 0) {
        std::vector<double> curve = tv_curve(P, mu, exa_tmax);
        std::string csv = "t,delta_max\n";
        char buf[64];
        for (std::size_t t = 0; t < curve.size(); ++t) {
          std::snprintf(buf, sizeof buf, "%zu,%.15g\n", t, curve[t]);
          csv += buf;
        }
        write_output(exa_out, csv);
      } else {
        Rational z = exact_partition(d, b, conv, exa_cap);
        json report{{"omega", space.size()},
                    {"Z", rational_str(z)},
                    {"b", rational_str(b)},
                    {"convention", to_string(conv)},
                    {"detailed_balance_residual", rational_str(check_detailed_balance(P, mu))},
                    {"stationarity_residual", rational_str(stationarity_residual(P, mu))},
                    {"irreducible_aperiodic", check_irreducible_aperiodic(P)},
                    {"mu_all_zero", rational_str(mu[space.index.at(0)])}};
        (void)exa_report;
        write_output(exa_out, report.dump(2) + "\n");
      }
    } else if (cpl->parsed()) {
      LabeledGraph g = load_graph(cpl_in);
      Decomposition d = decompose(g);
      Rational b = parse_rational(cpl_b);
      DeltaConvention conv = convention_from_string(cpl_conv);
      int delta = d.delta_max(conv);
      json report{{"n", d.n},
                  {"delta", delta},
                  {"b", rational_str(b)},
                  {"convention", to_string(conv)}};
      if (cpl_mode == "bound") {
        MixingBound mb = mixing_bound(d.n, delta, b, cpl_eps);
        report["eps"] = cpl_eps;
        report["proven_region"] = mb.proven_region;
        if (mb.proven_region) {
          report["beta"] = mb.beta;
          report["tau"] = mb.tau;
        } else {
          report["note"] = "outside proven region (needs delta >= 2 and 0 < b <= 1/delta)";
        }
      } else if (cpl_mode == "drift") {
        StateSpace space = enumerate_omega(d);
        auto phi = all_pairs_phi(space, d, b, conv);
        auto pairs = all_adjacent_pairs(space, d);
        bool all_within = true;
        bool applicable = true;
        Rational worst_margin;
        bool first = true;
        for (const auto& pair : pairs) {
          DriftReport dr = exact_drift(pair, d, b, conv, space, phi);
          if (!dr.bound_applicable) {
            applicable = false;
            break;
          }
          Rational margin = dr.bound - dr.n_times_drift;  // >= 0 when within
          if (first || margin < worst_margin) worst_margin = margin;
          first = false;
          if (dr.n_times_drift > dr.bound) all_within = false;
        }
        report["pairs"] = pairs.size();
        report["two_by_two_free"] = d.two_by_two_free();
        report["has_isolated_circuit"] = d.has_isolated_circuit();
        if (!applicable) {
          report["bound_check"] =
              "skipped (not two-by-two-intersection free or b outside (0, 1/delta])";
        } else if (!first) {
          report["all_within_bound"] = all_within;
          report["worst_margin"] = rational_str(worst_margin);
        }
      } else if (cpl_mode == "coalesce") {
        CoalescenceStats st = coalescence_experiment(d, b, conv, cpl_trials,
                                                     resolve_seed(cpl_seed), cpl_threads);
        report["trials"] = st.trials;
        report["median"] = st.median;
        report["p95"] = st.p95;
        report["mean"] = st.mean;
        report["capped"] = st.capped;
        MixingBound mb = mixing_bound(d.n, delta, b, cpl_eps);
        if (mb.proven_region) report["tau_bound"] = mb.tau;
      } else {
        throw std::invalid_argument("unknown mode: " + cpl_mode);
      }
      write_output(cpl_out, report.dump(2) + "\n");
    } else if (wnd->parsed()) {
      ConstraintFunction4 f;
      if (!wnd_file.empty()) {
        std::ifstream in(wnd_file);
        if (!in) throw std::runtime_error("cannot open " + wnd_file);
        json j;
        in >> j;
        f = constraint_from_json(j);
      } else if (wnd_fn == "fstar") {
        f = make_fstar(parse_rational(wnd_b));
      } else if (wnd_fn == "six-vertex") {
        f = make_six_vertex(parse_rational(wnd_a), parse_rational(wnd_b),
                            parse_rational(wnd_c));
      } else {
        throw std::invalid_argument("pass --fn fstar|six-vertex or --fn-file");
      }
      WindabilityVerdict v = is_windable(f);
      json report{{"verdict", v.windable ? "windable" : "unwindable"},
                  {"verified", v.verified}};
      if (v.windable) {
        json witness = json::object();
        for (std::size_t i = 0; i < v.witness.size(); ++i)
          if (v.witness[i] != 0)
            witness[v.system.variables[i].label] = rational_str(v.witness[i]);
        report["witness_nonzero"] = witness;
      } else {
        json cert = json::array();
        for (const auto& [label, coeff] : v.certificate)
          cert.push_back({{"equation", label}, {"coefficient", rational_str(coeff)}});
        report["certificate"] = cert;
      }
      write_output(wnd_out, report.dump(2) + "\n");
    } else if (ez->parsed()) {
      LabeledGraph g = load_graph(ez_in);
      Decomposition d = decompose(g);
      Estimate est = estimate_Z(d, parse_rational(ez_b), ez_eps, ez_conf,
                                resolve_seed(ez_seed), convention_from_string(ez_conv));
      json report{{"z_hat", est.z_hat},
                  {"eps", est.eps},
                  {"confidence", est.confidence},
                  {"seed", est.seed},
                  {"stages", est.stages},
                  {"total_samples", est.total_samples},
                  {"total_steps", est.total_steps},
                  {"proven_burn_in", est.proven_burn_in},
                  {"sample_cap_hit", est.sample_cap_hit}};
      write_output(ez_out, report.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
