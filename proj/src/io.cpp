#include "specaug/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "specaug/errors.hpp"

namespace specaug {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, int col, const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

struct Token {
  std::string text;
  int col = 0;
};

std::vector<Token> tokenize(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const size_t s = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(s, i - s), static_cast<int>(s) + 1});
  }
  return out;
}

long parse_int(const Token& t, const std::string& src, int line) {
  char* end = nullptr;
  const long v = std::strtol(t.text.c_str(), &end, 10);
  if (end == t.text.c_str() || *end != '\0') parse_fail(src, line, t.col, "expected an integer, got '" + t.text + "'");
  return v;
}

double parse_real(const Token& t, const std::string& src, int line) {
  char* end = nullptr;
  const double v = std::strtod(t.text.c_str(), &end);
  if (end == t.text.c_str() || *end != '\0') parse_fail(src, line, t.col, "expected a number, got '" + t.text + "'");
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open file: " + path);
  return f;
}

std::string fmt_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<size_t>(indent) * (depth + 1), ' ') : "";
  const std::string pad_close = indent > 0 ? std::string(static_cast<size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += pad_close;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && v.is_primitive();
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) {
          out += ",";
          if (!flat) out += nl;
          else if (indent > 0) out += " ";
        }
        first = false;
        if (!flat) out += pad;
        dump_rec(v, indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += pad_close;
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::MatrixXd matrix_from(const Json& a) {
  const Eigen::Index r = static_cast<Eigen::Index>(a.size());
  const Eigen::Index c = r > 0 ? static_cast<Eigen::Index>(a[0].size()) : 0;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = a[i][j].get<double>();
  return m;
}

Eigen::VectorXd vector_from(const Json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = a[i].get<double>();
  return v;
}

double num_or(const Json& j, const char* key, double dflt = 0.0) {
  if (!j.contains(key) || j[key].is_null()) return dflt;
  return j[key].get<double>();
}

Json certificate_json(const SdpIterate& c) {
  return Json{{"Z", matrix_json(c.Z)}, {"v", c.v}, {"beta", vector_json(c.beta)}};
}

}  // namespace

WeightedGraph parse_graph(std::istream& in, const std::string& source) {
  std::string raw;
  int line = 0, n = -1;
  std::vector<Edge> edges;
  std::vector<int> edge_line;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;
    if (n < 0) {
      if (tok[0].text != "n" || tok.size() != 2) parse_fail(source, line, tok[0].col, "expected header 'n <count>'");
      n = static_cast<int>(parse_int(tok[1], source, line));
      if (n < 1) parse_fail(source, line, tok[1].col, "vertex count must be positive");
      continue;
    }
    if (tok.size() != 3) parse_fail(source, line, tok[0].col, "expected 'u v w'");
    const long u = parse_int(tok[0], source, line), v = parse_int(tok[1], source, line);
    const double w = parse_real(tok[2], source, line);
    if (u < 0 || u >= n) parse_fail(source, line, tok[0].col, "vertex out of range");
    if (v < 0 || v >= n) parse_fail(source, line, tok[1].col, "vertex out of range");
    if (u == v) parse_fail(source, line, tok[0].col, "self-loop");
    if (!std::isfinite(w)) parse_fail(source, line, tok[2].col, "weight must be finite");
    if (w < 0.0) parse_fail(source, line, tok[2].col, "weight must be nonnegative");
    for (size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u))
        parse_fail(source, line, tok[0].col,
                   "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + "), first seen at line " +
                       std::to_string(edge_line[i]));
    }
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    edge_line.push_back(line);
  }
  if (n < 0) throw InputError(source + ": missing header 'n <count>'");
  try {
    return WeightedGraph(n, edges);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

WeightedGraph parse_graph_file(const std::string& path) {
  auto f = open_or_throw(path);
  return parse_graph(f, path);
}

std::vector<Edge> parse_candidates(std::istream& in, int n, const std::string& source) {
  std::string raw;
  int line = 0;
  std::vector<Edge> out;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;
    if (tok[0].text == "n") continue;
    if (tok.size() != 2 && tok.size() != 3) parse_fail(source, line, tok[0].col, "expected 'u v' or 'u v w'");
    const long u = parse_int(tok[0], source, line), v = parse_int(tok[1], source, line);
    const double w = tok.size() == 3 ? parse_real(tok[2], source, line) : 1.0;
    if (u < 0 || u >= n) parse_fail(source, line, tok[0].col, "vertex out of range");
    if (v < 0 || v >= n) parse_fail(source, line, tok[1].col, "vertex out of range");
    if (u == v) parse_fail(source, line, tok[0].col, "self-loop");
    if (!std::isfinite(w)) parse_fail(source, line, tok[2].col, "weight must be finite");
    if (w < 0.0) parse_fail(source, line, tok[2].col, "weight must be nonnegative");
    out.push_back({static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)), w});
  }
  return out;
}

std::vector<Edge> parse_candidate_file(const std::string& path, int n) {
  auto f = open_or_throw(path);
  return parse_candidates(f, n, path);
}

std::vector<VertexPair> pairs_of(const std::vector<Edge>& edges) {
  std::vector<VertexPair> p;
  p.reserve(edges.size());
  for (const auto& e : edges) p.emplace_back(e.u, e.v);
  return p;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

void RunConfig::validate() const {
  if (!(q >= 10.0)) throw InputError("config: q must be at least 10");
  if (!(eps > 0.0 && eps <= 0.05 + 1e-12)) throw InputError("config: eps must lie in (0, 1/20]");
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) throw InputError("config: delta' must lie in (0, 1)");
  if (retries < 1) throw InputError("config: retry budget must be at least 1");
  if (backend != "exact" && backend != "approx") throw InputError("config: backend must be exact or approx");
  if (!(tol > 0.0)) throw InputError("config: tolerance must be positive");
  if (!(c_reject > 0.0)) throw InputError("config: c_reject must be positive");
}

void load_config_json(const std::string& path, RunConfig& cfg) {
  auto f = open_or_throw(path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const std::exception& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw InputError(path + ": config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& key = it.key();
    const auto& v = it.value();
    if (key == "q") cfg.q = v.get<double>();
    else if (key == "eps") cfg.eps = v.get<double>();
    else if (key == "delta_prime") cfg.delta_prime = v.get<double>();
    else if (key == "k") cfg.k = v.get<int>();
    else if (key == "seed") cfg.seed = v.get<uint64_t>();
    else if (key == "backend") cfg.backend = v.get<std::string>();
    else if (key == "tol") cfg.tol = v.get<double>();
    else if (key == "retries") cfg.retries = v.get<int>();
    else if (key == "c_reject") cfg.c_reject = v.get<double>();
    else if (key == "output") cfg.output = v.get<std::string>();
    else throw InputError(path + ": unknown config key '" + key + "'");
  }
  cfg.validate();
}

Json config_json(const RunConfig& c) {
  return Json{{"q", c.q},           {"eps", c.eps}, {"delta_prime", c.delta_prime}, {"k", c.k},
              {"seed", c.seed},     {"backend", c.backend}, {"tol", c.tol},         {"retries", c.retries},
              {"c_reject", c.c_reject}};
}

uint64_t default_seed_from_env() {
  const char* s = std::getenv("SPECAUG_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw InputError("SPECAUG_SEED must be an unsigned integer");
  return v;
}

Json edges_json(const std::vector<Edge>& edges) {
  Json a = Json::array();
  for (const auto& e : edges) a.push_back(Json::array({e.u, e.v, e.w}));
  return a;
}

Json augment_report(const AugmentResult& r, const RunConfig& cfg) {
  Json j;
  j["version"] = kVersion;
  j["command"] = "augment";
  j["status"] = status_name(r.status);
  j["reason"] = r.reason;
  j["config"] = config_json(cfg);
  j["seed"] = cfg.seed;
  j["delta"] = r.delta;
  j["gamma0"] = r.gamma0;
  j["last_gamma"] = r.last_gamma;
  j["gamma_used"] = r.gamma_used;
  j["sdp_rounds"] = r.sdp_rounds;
  j["reject_threshold"] = r.reject_threshold;
  j["F"] = edges_json(r.F);
  j["lambda2_base"] = r.lambda2_base;
  j["lambda2_estimate"] = r.lambda2_estimate;
  Json cert;
  cert["lambda2_exact"] = r.lambda2_exact;
  cert["F_size"] = r.F.size();
  cert["support_cap"] = r.support_cap;
  cert["weight_total"] = r.weight_total;
  cert["weight_cap"] = r.weight_cap;
  cert["dual_certificate_verified"] = r.certificate_verified;
  j["certification"] = cert;
  j["certificate"] = r.certificate ? certificate_json(*r.certificate) : Json(nullptr);
  Json audit = Json::array();
  for (const auto& a : r.audit) {
    audit.push_back(Json{{"gamma", a.gamma},
                         {"feasible", a.feasible},
                         {"sdp_rounds", a.sdp_rounds},
                         {"sdp_lambda", a.sdp_lambda},
                         {"sdp_support", a.sdp_support},
                         {"sparsifier_attempts", a.sparsifier_attempts},
                         {"sparsifier_iterations", a.sparsifier_iterations},
                         {"sparsifier_samples", a.sparsifier_samples},
                         {"F_size", a.F_size},
                         {"lambda2_exact", a.lambda2_exact},
                         {"lambda2_estimate", a.lambda2_estimate},
                         {"threshold", a.threshold},
                         {"outcome", a.outcome}});
  }
  j["audit"] = audit;
  return j;
}

AugmentResult augment_result_from_json(const Json& j) {
  AugmentResult r;
  const std::string st = j.at("status").get<std::string>();
  if (st == "accepted") r.status = AugmentStatus::Accepted;
  else if (st == "reject") r.status = AugmentStatus::Reject;
  else if (st == "retry_exhausted") r.status = AugmentStatus::RetryExhausted;
  else throw InputError("unknown status '" + st + "'");
  r.reason = j.at("reason").get<std::string>();
  r.delta = num_or(j, "delta");
  r.gamma0 = num_or(j, "gamma0");
  r.last_gamma = num_or(j, "last_gamma");
  r.gamma_used = num_or(j, "gamma_used");
  r.sdp_rounds = j.at("sdp_rounds").get<long>();
  r.reject_threshold = num_or(j, "reject_threshold");
  for (const auto& e : j.at("F")) r.F.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
  r.lambda2_base = num_or(j, "lambda2_base");
  r.lambda2_estimate = num_or(j, "lambda2_estimate");
  const auto& cert = j.at("certification");
  r.lambda2_exact = num_or(cert, "lambda2_exact");
  r.support_cap = cert.at("support_cap").get<long>();
  r.weight_total = num_or(cert, "weight_total");
  r.weight_cap = num_or(cert, "weight_cap");
  r.certificate_verified = cert.at("dual_certificate_verified").get<bool>();
  if (!j.at("certificate").is_null()) {
    SdpIterate c;
    c.Z = matrix_from(j["certificate"]["Z"]);
    c.v = j["certificate"]["v"].get<double>();
    c.beta = vector_from(j["certificate"]["beta"]);
    r.certificate = c;
  }
  for (const auto& a : j.at("audit")) {
    GammaAudit g;
    g.gamma = num_or(a, "gamma");
    g.feasible = a.at("feasible").get<bool>();
    g.sdp_rounds = a.at("sdp_rounds").get<long>();
    g.sdp_lambda = num_or(a, "sdp_lambda");
    g.sdp_support = a.at("sdp_support").get<int>();
    g.sparsifier_attempts = a.at("sparsifier_attempts").get<int>();
    g.sparsifier_iterations = a.at("sparsifier_iterations").get<long>();
    g.sparsifier_samples = a.at("sparsifier_samples").get<long>();
    g.F_size = a.at("F_size").get<int>();
    g.lambda2_exact = num_or(a, "lambda2_exact");
    g.lambda2_estimate = num_or(a, "lambda2_estimate");
    g.threshold = num_or(a, "threshold");
    g.outcome = a.at("outcome").get<std::string>();
    r.audit.push_back(g);
  }
  return r;
}

Json sdp_report(const SdpInstance& inst, const SolveResult& r, const RunConfig& cfg) {
  Json j;
  j["version"] = kVersion;
  j["command"] = "sdp-check";
  j["status"] = r.feasible ? "feasible" : "infeasible";
  j["config"] = config_json(cfg);
  j["gamma"] = inst.gamma;
  j["delta"] = inst.delta();
  j["rounds"] = r.rounds;
  j["params"] = Json{{"delta", r.params.delta}, {"eps", r.params.eps}, {"rho", r.params.rho}, {"T", r.params.T}};
  if (r.feasible) {
    j["lambda"] = r.lambda;
    j["level"] = r.level;
    Json w = Json::array();
    for (int e = 0; e < inst.m(); ++e)
      w.push_back(Json::array({inst.cand.edges[e].first, inst.cand.edges[e].second, r.w(e)}));
    j["weights"] = w;
    const auto rep = verify_primal_feasible(make_instance(inst.base, inst.cand.edges, inst.k, r.level),
                                            r.lambda, r.w, cfg.tol);
    j["verified"] = rep.ok;
    j["verification"] = Json{{"reason", rep.reason}, {"slack", rep.slack}};
  } else {
    j["certificate"] = certificate_json(r.certificate);
    const auto rep = verify_dual_feasible(inst, r.certificate.Z, r.certificate.v, r.certificate.beta, cfg.tol);
    j["verified"] = rep.ok;
    j["verification"] = Json{{"reason", rep.reason}, {"slack", rep.slack}};
  }
  return j;
}

Json sparsify_report(const SparsifyInstance& inst, const SparsifierResult& r, const RunConfig& cfg) {
  Json j;
  j["version"] = kVersion;
  j["command"] = inst.spectral_mode ? "spectral-sparsify" : "sparsify";
  j["status"] = r.accepted ? "accepted" : "failed";
  j["failure"] = r.failure;
  j["config"] = config_json(cfg);
  j["n"] = inst.n;
  j["r"] = inst.r;
  j["k"] = inst.k;
  j["T"] = inst.T;
  j["Lambda"] = inst.Lambda;
  j["regularization"] = inst.reg;
  j["coefficients"] = edges_json(coefficients_to_edges(inst, r.c));
  j["attempts"] = r.attempts;
  j["iterations"] = r.iterations;
  j["samples"] = r.samples;
  j["support"] = r.support;
  j["support_cap"] = r.K;
  j["cost_sum"] = r.cost_sum;
  j["cost_cap"] = r.cost_cap;
  Json trace = Json::array();
  for (const auto& t : r.trace)
    trace.push_back(Json{{"j", t.j}, {"u", t.u}, {"l", t.l}, {"rho", t.rho}, {"N", t.N}, {"samples", t.samples}});
  j["barrier_trace"] = trace;
  j["certification"] = Json{{"u0", r.u0},
                            {"l0", r.l0},
                            {"u_final", r.u_final},
                            {"l_final", r.l_final},
                            {"lambda_min_A", r.lambda_min_A},
                            {"lambda_max_A", r.lambda_max_A},
                            {"lambda_min_B", r.lambda_min_Bk},
                            {"lambda_min_bound", r.lambda_min_bound},
                            {"condition_ratio", r.condition_ratio}};
  return j;
}

Json brute_report(const BruteForceResult& r, const std::vector<VertexPair>& cand, int k) {
  Json sub = Json::array();
  for (int i : r.best_subset) sub.push_back(Json::array({cand[i].first, cand[i].second}));
  return Json{{"version", kVersion}, {"command", "oracle brute"}, {"k", k},
              {"lambda_opt_binary", r.lambda}, {"best_subset", sub}, {"evaluated", r.evaluated}};
}

Json ascent_report(const AscentResult& r, const std::vector<VertexPair>& cand, int k) {
  Json w = Json::array();
  for (size_t e = 0; e < cand.size(); ++e) w.push_back(Json::array({cand[e].first, cand[e].second, r.w(e)}));
  return Json{{"version", kVersion}, {"command", "oracle ascent"}, {"k", k},
              {"lambda_opt_lower_bound", r.lambda}, {"weights", w}, {"best_step", r.steps}};
}

}  // namespace specaug
