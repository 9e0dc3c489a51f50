// specaug: command-line front end for the augmentation pipeline.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "specaug/augment.hpp"
#include "specaug/errors.hpp"
#include "specaug/io.hpp"
#include "specaug/oracles.hpp"
#include "specaug/sdp.hpp"
#include "specaug/selftest.hpp"
#include "specaug/sparsifier.hpp"

using namespace specaug;

namespace {

void emit(const Json& j, const std::string& path) {
  const std::string text = dump_json(j) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

struct Common {
  std::string graph, candidates, config, json;
  RunConfig cfg;
  bool seed_given = false;
};

void add_common(CLI::App* app, Common& c, bool with_candidates) {
  app->add_option("--graph", c.graph, "Base graph edge-list file")->required()->check(CLI::ExistingFile);
  if (with_candidates)
    app->add_option("--candidates", c.candidates, "Candidate edge-list file")->required()->check(CLI::ExistingFile);
  app->add_option("--config", c.config, "JSON config file (flags override it)")->check(CLI::ExistingFile);
  app->add_option("--json", c.json, "Write the JSON report here instead of stdout");
}

// Config precedence: defaults < SPECAUG_SEED < --config file < explicit flags.
void resolve(CLI::App* app, Common& c, const RunConfig& flags) {
  RunConfig cfg;
  cfg.seed = default_seed_from_env();
  if (!c.config.empty()) load_config_json(c.config, cfg);
  auto given = [&](const char* name) {
    const auto* opt = app->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--q")) cfg.q = flags.q;
  if (given("--eps")) cfg.eps = flags.eps;
  if (given("--delta-prime")) cfg.delta_prime = flags.delta_prime;
  if (given("--k")) cfg.k = flags.k;
  if (given("--seed")) cfg.seed = flags.seed;
  if (given("--retries")) cfg.retries = flags.retries;
  if (given("--c-reject")) cfg.c_reject = flags.c_reject;
  if (given("--tol")) cfg.tol = flags.tol;
  if (given("--approx")) cfg.backend = "approx";
  if (given("--backend")) cfg.backend = flags.backend;
  cfg.output = c.json;
  cfg.validate();
  c.cfg = cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral augmentation: SDP solver, subgraph sparsifier and augmenter"};
  app.require_subcommand(1);
  RunConfig flags;
  int exit_code = 0;

  Common aug;
  auto* a = app.add_subcommand("augment", "Find a small weighted edge set raising λ₂");
  add_common(a, aug, true);
  a->add_option("--k", flags.k, "Edge budget");
  a->add_option("--q", flags.q, "Potential exponent (>= 10)");
  a->add_option("--eps", flags.eps, "Sparsifier accuracy (<= 1/20)");
  a->add_option("--delta-prime", flags.delta_prime, "SDP accuracy");
  a->add_option("--seed", flags.seed, "Random seed");
  a->add_option("--retries", flags.retries, "Sparsifier retry budget");
  a->add_option("--c-reject", flags.c_reject, "Reject threshold constant");
  a->add_option("--backend", flags.backend, "exact | approx");
  a->callback([&] {
    resolve(a, aug, flags);
    const WeightedGraph g = parse_graph_file(aug.graph);
    const auto cand = make_candidates(g, pairs_of(parse_candidate_file(aug.candidates, g.n())));
    AugmentOptions opt;
    opt.q = aug.cfg.q;
    opt.eps = aug.cfg.eps;
    opt.delta_prime = aug.cfg.delta_prime;
    opt.seed = aug.cfg.seed;
    opt.c_reject = aug.cfg.c_reject;
    opt.retries = aug.cfg.retries;
    opt.backend = aug.cfg.backend == "approx" ? Backend::Approx : Backend::Exact;
    const auto r = augment(g, cand, aug.cfg.k, opt);
    emit(augment_report(r, aug.cfg), aug.json);
    exit_code = r.status == AugmentStatus::Accepted ? 0 : r.status == AugmentStatus::Reject ? 2 : 3;
  });

  Common sdp;
  double gamma = 0.5;
  bool sketch = false;
  auto* s = app.add_subcommand("sdp-check", "Run the MWU solver at one γ");
  add_common(s, sdp, true);
  s->add_option("--gamma", gamma, "Target level γ in (0, 1]")->required();
  s->add_option("--k", flags.k, "Edge budget");
  s->add_option("--delta-prime", flags.delta_prime, "Accuracy δ′");
  s->add_option("--seed", flags.seed, "Random seed (sketch path)");
  s->add_option("--tol", flags.tol, "Verification tolerance");
  s->add_flag("--sketch", sketch, "Use the JL-sketched MWU update");
  s->callback([&] {
    resolve(s, sdp, flags);
    const WeightedGraph g = parse_graph_file(sdp.graph);
    const auto inst = make_instance(g, pairs_of(parse_candidate_file(sdp.candidates, g.n())), sdp.cfg.k, gamma);
    SolveOptions opt;
    opt.delta_prime = sdp.cfg.delta_prime;
    opt.use_sketch = sketch;
    opt.seed = sdp.cfg.seed;
    const auto r = solve_psdp(inst, opt);
    emit(sdp_report(inst, r, sdp.cfg), sdp.json);
  });

  Common sp;
  bool approx = false;
  auto* p = app.add_subcommand("sparsify", "Subgraph sparsifier of weighted candidates");
  add_common(p, sp, true);
  p->add_option("--k", flags.k, "Budget");
  p->add_option("--eps", flags.eps, "Accuracy (<= 1/20)");
  p->add_option("--q", flags.q, "Potential exponent (>= 10)");
  p->add_option("--seed", flags.seed, "Random seed");
  p->add_option("--retries", flags.retries, "Retry budget");
  p->add_flag("--approx", approx, "Use the approximate resistance backend");
  p->callback([&] {
    resolve(p, sp, flags);
    const WeightedGraph g = parse_graph_file(sp.graph);
    auto w = parse_candidate_file(sp.candidates, g.n());
    std::erase_if(w, [](const Edge& e) { return e.w <= 0.0; });
    const auto inst = setup_instance(g, w, default_regularization(g, w), sp.cfg.k);
    SparsifyOptions opt;
    opt.eps = sp.cfg.eps;
    opt.q = sp.cfg.q;
    opt.seed = sp.cfg.seed;
    opt.retries = sp.cfg.retries;
    opt.backend = sp.cfg.backend == "approx" ? Backend::Approx : Backend::Exact;
    emit(sparsify_report(inst, run_sparsifier(inst, opt), sp.cfg), sp.json);
  });

  Common ss;
  auto* x = app.add_subcommand("spectral-sparsify", "Spectral sparsifier of one graph (X = 0 mode)");
  add_common(x, ss, false);
  x->add_option("--eps", flags.eps, "Accuracy (<= 1/20)");
  x->add_option("--q", flags.q, "Potential exponent (>= 10)");
  x->add_option("--seed", flags.seed, "Random seed");
  x->add_option("--retries", flags.retries, "Retry budget");
  x->callback([&] {
    resolve(x, ss, flags);
    const WeightedGraph h = parse_graph_file(ss.graph);
    const auto inst = setup_spectral_instance(h, default_regularization(h, {}));
    SparsifyOptions opt;
    opt.eps = ss.cfg.eps;
    opt.q = ss.cfg.q;
    opt.seed = ss.cfg.seed;
    opt.retries = ss.cfg.retries;
    emit(sparsify_report(inst, run_sparsifier(inst, opt), ss.cfg), ss.json);
  });

  auto* o = app.add_subcommand("oracle", "Reference optima for small instances");
  o->require_subcommand(1);
  Common ob, oa;
  int steps = 500;
  auto* ob_cmd = o->add_subcommand("brute", "Best unit-weight k-subset by enumeration");
  add_common(ob_cmd, ob, true);
  ob_cmd->add_option("--k", flags.k, "Budget")->required();
  ob_cmd->callback([&] {
    resolve(ob_cmd, ob, flags);
    const WeightedGraph g = parse_graph_file(ob.graph);
    const auto cand = make_candidates(g, pairs_of(parse_candidate_file(ob.candidates, g.n()))).edges;
    emit(brute_report(brute_force_opt_binary(g, cand, ob.cfg.k), cand, ob.cfg.k), ob.json);
  });
  auto* oa_cmd = o->add_subcommand("ascent", "Supergradient lower bound on the weighted optimum");
  add_common(oa_cmd, oa, true);
  oa_cmd->add_option("--k", flags.k, "Budget")->required();
  oa_cmd->add_option("--steps", steps, "Ascent steps per restart");
  oa_cmd->add_option("--seed", flags.seed, "Random seed");
  oa_cmd->callback([&] {
    resolve(oa_cmd, oa, flags);
    const WeightedGraph g = parse_graph_file(oa.graph);
    const auto cand = make_candidates(g, pairs_of(parse_candidate_file(oa.candidates, g.n()))).edges;
    emit(ascent_report(weighted_opt_ascent(g, cand, oa.cfg.k, steps, oa.cfg.seed), cand, oa.cfg.k), oa.json);
  });

  auto* t = app.add_subcommand("selftest", "Run the built-in invariant checks");
  t->callback([&] { exit_code = run_selftest(std::cout) == 0 ? 0 : 1; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const RetryExhausted& e) {
    std::cerr << "retry exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
