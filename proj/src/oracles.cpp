#include "specaug/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specaug/errors.hpp"
#include "specaug/rng.hpp"
#include "specaug/spectral.hpp"

namespace specaug {

namespace {

double binomial(int m, int s) {
  double c = 1.0;
  for (int i = 1; i <= s; ++i) c = c * (m - s + i) / i;
  return c;
}

Eigen::MatrixXd weighted_laplacian(const WeightedGraph& g, const std::vector<VertexPair>& cand,
                                   const Eigen::VectorXd& w) {
  Eigen::MatrixXd l = laplacian(g);
  for (size_t e = 0; e < cand.size(); ++e)
    if (w(e) != 0.0) add_edge_laplacian(l, cand[e].first, cand[e].second, w(e));
  return l;
}

}  // namespace

BruteForceResult brute_force_opt_binary(const WeightedGraph& g, const std::vector<VertexPair>& cand, int k) {
  if (k < 0) throw InputError("k must be nonnegative");
  const int m = static_cast<int>(cand.size());
  const int s = std::min(k, m);
  if (binomial(m, s) > 1e6) throw InputError("brute force: too many subsets (more than 1e6)");
  BruteForceResult res;
  res.lambda = -1.0;
  const Eigen::MatrixXd lg = laplacian(g);
  std::vector<int> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Eigen::MatrixXd l = lg;
    for (int i : idx) add_edge_laplacian(l, cand[i].first, cand[i].second, 1.0);
    const double lam = min_eig_on_complement(l);
    ++res.evaluated;
    if (lam > res.lambda + 1e-14) {
      res.lambda = lam;
      res.best_subset = idx;
    }
    // next combination in lexicographic order
    int p = s - 1;
    while (p >= 0 && idx[p] == m - s + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int j = p + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  res.lambda = std::max(res.lambda, 0.0);
  return res;
}

double lambda2_weighted(const WeightedGraph& g, const std::vector<VertexPair>& cand, const Eigen::VectorXd& w,
                        Eigen::VectorXd* fiedler, uint64_t seed) {
  const int n = g.n();
  if (n <= 1) {
    if (fiedler) *fiedler = Eigen::VectorXd::Zero(n);
    return 0.0;
  }
  const Eigen::MatrixXd q = complement_basis(n);
  const auto d = eig_sym(q.transpose() * weighted_laplacian(g, cand, w) * q);
  if (fiedler) {
    // Random unit vector inside the λ₂ eigenspace breaks ties between equal eigenvalues.
    const double lam = d.values(0);
    const double tol = 1e-9 * std::max(1.0, std::abs(d.values(d.values.size() - 1)));
    int mult = 1;
    while (mult < d.values.size() && d.values(mult) - lam <= tol) ++mult;
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(mult);
    if (mult == 1) {
      coef(0) = 1.0;
    } else {
      Rng rng(seed);
      for (int i = 0; i < mult; ++i) coef(i) = rng.normal();
      coef.normalize();
    }
    *fiedler = q * (d.vectors.leftCols(mult) * coef);
  }
  return d.values(0);
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, double k) {
  Eigen::VectorXd w = y.cwiseMax(0.0).cwiseMin(1.0);
  if (w.sum() <= k) return w;
  double lo = 0.0, hi = y.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double tau = 0.5 * (lo + hi);
    const double s = (y.array() - tau).max(0.0).min(1.0).sum();
    (s > k ? lo : hi) = tau;
  }
  return (y.array() - hi).max(0.0).min(1.0).matrix();
}

AscentResult weighted_opt_ascent(const WeightedGraph& g, const std::vector<VertexPair>& cand, int k, int steps,
                                 uint64_t seed) {
  const int m = static_cast<int>(cand.size());
  AscentResult best;
  best.w = Eigen::VectorXd::Zero(m);
  best.lambda = lambda2_weighted(g, cand, best.w);
  best.steps = 0;
  if (m == 0 || k <= 0) return best;

  std::vector<Eigen::VectorXd> starts = {Eigen::VectorXd::Zero(m),
                                         Eigen::VectorXd::Constant(m, std::min(1.0, k / static_cast<double>(m)))};
  uint64_t stream = 0;
  for (const auto& start : starts) {
    Eigen::VectorXd w = project_capped_simplex(start, k);
    for (int t = 1; t <= steps; ++t) {
      Eigen::VectorXd f;
      const double lam = lambda2_weighted(g, cand, w, &f, derive_seed(seed, ++stream));
      if (lam > best.lambda) {
        best.lambda = lam;
        best.w = w;
        best.steps = t;
      }
      Eigen::VectorXd grad(m);
      for (int e = 0; e < m; ++e) {
        const double diff = f(cand[e].first) - f(cand[e].second);
        grad(e) = diff * diff;
      }
      w = project_capped_simplex(w + grad / std::sqrt(static_cast<double>(t)), k);
    }
    const double lam = lambda2_weighted(g, cand, w);
    if (lam > best.lambda) {
      best.lambda = lam;
      best.w = w;
      best.steps = steps;
    }
  }
  return best;
}

double lambda_k_plus_2(const WeightedGraph& g, int k) {
  if (k < 0) throw InputError("k must be nonnegative");
  const auto ev = eig_sym(laplacian(g)).values;
  if (k + 1 >= ev.size()) return std::numeric_limits<double>::infinity();
  return ev(k + 1);
}

PotentialValues exact_potentials(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double u, double l, double q,
                                 int T, const Eigen::MatrixXd& P_V, const Eigen::MatrixXd& Z,
                                 const Eigen::MatrixXd& Mbar, const Eigen::MatrixXd& vectors) {
  using Solver = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>;
  const int r = static_cast<int>(A.rows());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
  PotentialValues out;

  Solver sa(0.5 * (A + A.transpose()));
  if (!(u > sa.eigenvalues()(r - 1))) throw BarrierViolation("exact_potentials: u not above λ_max(A)");
  // Top-T eigenprojector of A, then the pseudoinverse power of the compressed shift.
  const Eigen::MatrixXd ut = sa.eigenvectors().rightCols(std::min(T, r));
  const Eigen::MatrixXd pl = ut * ut.transpose();
  Solver su(pl * (u * I - A) * pl);
  {
    // keep the T largest eigenvalues (the complement is exactly zero)
    const auto& ev = su.eigenvalues();
    for (int i = r - std::min(T, r); i < r; ++i) out.phi_u += std::pow(ev(i), -q);
  }

  const int k = static_cast<int>(std::lround(P_V.trace()));
  const Eigen::MatrixXd bl = P_V * (B - l * I) * P_V;
  Solver sb(0.5 * (bl + bl.transpose()));
  // Nonzero part: the k eigenvalues of largest magnitude.
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(sb.eigenvalues()(a)) > std::abs(sb.eigenvalues()(b)); });
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(r, r);
  for (int j = 0; j < k; ++j) {
    const double lam = sb.eigenvalues()(order[j]);
    if (!(lam > 0.0)) throw BarrierViolation("exact_potentials: ℓ not below the spectrum of B on span V");
    out.phi_l += std::pow(lam, -q);
    out.rho_lower += 1.0 / lam;
    const Eigen::VectorXd ev = sb.eigenvectors().col(order[j]);
    pinv += ev * ev.transpose() / lam;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(u * I - A);
  const Eigen::MatrixXd ym = llt.solve(Mbar);
  out.rho_upper = ym.trace();
  const Eigen::MatrixXd yv = llt.solve(vectors);
  out.R_upper = vectors.cwiseProduct(yv).colwise().sum().transpose();
  const Eigen::MatrixXd zv = Z * vectors;
  out.R_lower = zv.cwiseProduct(pinv * zv).colwise().sum().transpose();
  out.R = out.R_upper + out.R_lower;
  return out;
}

}  // namespace specaug
