#include "qbounds/theta.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qbounds {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

std::vector<std::pair<int, int>> edge_list(const ExclusivityGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.edge(u, v)) edges.emplace_back(u, v);
  return edges;
}

bool is_positive_definite(const Mat& a) {
  Eigen::LLT<Mat> llt(a);
  return llt.info() == Eigen::Success;
}

double step_to_cone(const Mat& x, const Mat& dx) {
  double alpha = 1.0;
  while (alpha > 1e-12) {
    if (is_positive_definite(x + alpha * dx)) return alpha;
    alpha *= 0.7;
  }
  return 0.0;
}

// Rounds the interior iterate to a certified primal/dual pair: the primal
// matrix is forced feasible (edge entries zeroed, eigenvalues clipped, trace
// renormalised) and the dual slack is shifted PSD.
void certify(const ExclusivityGraph& g, const std::vector<std::pair<int, int>>& edges,
             const Mat& x, const Vec& y, ThetaResult* r) {
  const int m = g.order();
  Mat xr = 0.5 * (x + x.transpose());
  for (const auto& [u, v] : edges) xr(u, v) = xr(v, u) = 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(xr);
  Vec lam = es.eigenvalues().cwiseMax(0.0);
  Mat xproj = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  for (const auto& [u, v] : edges) xproj(u, v) = xproj(v, u) = 0.0;
  const double tr = xproj.trace();
  if (tr > 1e-300) xproj /= tr;
  r->lower = xproj.sum();

  Mat slack = -Mat::Ones(m, m);
  slack.diagonal().array() += y(0);
  for (size_t k = 0; k < edges.size(); ++k) {
    slack(edges[k].first, edges[k].second) += y(static_cast<int>(k) + 1);
    slack(edges[k].second, edges[k].first) += y(static_cast<int>(k) + 1);
  }
  Eigen::SelfAdjointEigenSolver<Mat> esd(slack);
  const double lam_min = esd.eigenvalues().minCoeff();
  r->upper = y(0) + std::max(0.0, -lam_min);

  r->duality_gap = r->upper - r->lower;
  r->value = 0.5 * (r->lower + r->upper);
}

}  // namespace

ThetaResult lovasz_theta_ipm(const ExclusivityGraph& g, double tol) {
  const int m = g.order();
  if (m < 1) throw std::invalid_argument("theta requires at least one vertex");
  if (m > 256) throw std::invalid_argument("interior-point theta limited to 256 vertices");
  if (tol < 1e-10) throw std::invalid_argument("tolerance below solver resolution");

  const auto edges = edge_list(g);
  const int q = 1 + static_cast<int>(edges.size());

  // maximise <J,X>  s.t.  tr X = 1, X_uv = 0 on edges, X PSD
  // dual: minimise y0  s.t.  Z = y0 I + sum y_e E_e - J  PSD
  const Mat jmat = Mat::Ones(m, m);
  Mat x = Mat::Identity(m, m) / m;
  Vec y = Vec::Zero(q);
  y(0) = m + 1.0;
  Mat z = y(0) * Mat::Identity(m, m) - jmat;

  ThetaResult result;
  result.method = "interior-point";

  double alpha_p = 1.0, alpha_d = 1.0;
  for (int iter = 1; iter <= 200; ++iter) {
    result.iterations = iter;
    const double mu = x.cwiseProduct(z).sum() / m;

    // residuals (stay ~0 along the feasible path; kept for robustness)
    Vec rp(q);
    rp(0) = 1.0 - x.trace();
    for (int k = 0; k < q - 1; ++k)
      rp(k + 1) = -2.0 * x(edges[k].first, edges[k].second);
    Mat astar_y = y(0) * Mat::Identity(m, m);
    for (int k = 0; k < q - 1; ++k) {
      astar_y(edges[k].first, edges[k].second) += y(k + 1);
      astar_y(edges[k].second, edges[k].first) += y(k + 1);
    }
    const Mat rd = jmat + z - astar_y;

    const double pobj = x.sum();
    const double dobj = y(0);
    const double gap = std::abs(dobj - pobj) / (1.0 + std::abs(dobj));
    const double pres = rp.cwiseAbs().maxCoeff();
    if (gap <= tol && pres <= tol * m) {
      result.converged = true;
      result.primal_feasibility = pres;
      break;
    }

    const double sigma = (alpha_p > 0.8 && alpha_d > 0.8) ? 0.15 : 0.5;
    const double target = sigma * mu;

    Eigen::LLT<Mat> llt_z(z);
    if (llt_z.info() != Eigen::Success) break;
    const Mat zinv = llt_z.solve(Mat::Identity(m, m));

    // Schur system M dy = A(target zinv - X) + A(zinv rd X) - rp with
    // M_kl = tr(A_k zinv A_l X).
    const Mat xz = x * zinv;
    const Mat base = target * zinv - x + zinv * rd * x;
    Mat schur(q, q);
    Vec rhs(q);
    schur(0, 0) = xz.trace();
    rhs(0) = base.trace() - rp(0);  // A_0 = I
    for (int k = 0; k < q - 1; ++k) {
      const auto [u, v] = edges[k];
      schur(0, k + 1) = schur(k + 1, 0) = xz(u, v) + xz(v, u);
      rhs(k + 1) = base(u, v) + base(v, u) - rp(k + 1);
      for (int l = k; l < q - 1; ++l) {
        const auto [w, s] = edges[l];
        const double val = zinv(v, w) * x(s, u) + zinv(v, s) * x(w, u) +
                           zinv(u, w) * x(s, v) + zinv(u, s) * x(w, v);
        schur(k + 1, l + 1) = schur(l + 1, k + 1) = val;
      }
    }

    Eigen::LDLT<Mat> ldlt(schur);
    Vec dy = ldlt.solve(rhs);
    if (!dy.allFinite()) {
      schur.diagonal().array() += 1e-12 * (1.0 + schur.diagonal().maxCoeff());
      dy = schur.ldlt().solve(rhs);
      if (!dy.allFinite()) break;
    }

    Mat dz = -rd + dy(0) * Mat::Identity(m, m);
    for (int k = 0; k < q - 1; ++k) {
      dz(edges[k].first, edges[k].second) += dy(k + 1);
      dz(edges[k].second, edges[k].first) += dy(k + 1);
    }
    Mat dx_raw = target * zinv - x - zinv * dz * x;
    Mat dx = 0.5 * (dx_raw + dx_raw.transpose());

    alpha_p = 0.98 * step_to_cone(x, dx);
    alpha_d = 0.98 * step_to_cone(z, dz);
    if (alpha_p <= 1e-10 && alpha_d <= 1e-10) break;
    x += alpha_p * dx;
    y += alpha_d * dy;
    z += alpha_d * dz;
  }

  certify(g, edges, x, y, &result);
  if (!result.converged)
    result.converged = result.duality_gap <= tol * (1.0 + std::abs(result.upper));
  return result;
}

ThetaResult lovasz_theta_projection(const ExclusivityGraph& g, double tol) {
  const int m = g.order();
  if (m < 1) throw std::invalid_argument("theta requires at least one vertex");
  tol = std::max(tol, 1e-6);

  const auto edges = edge_list(g);
  ThetaResult result;
  result.method = "alternating-projection";

  // J decomposed against the constraint functionals: the component free to
  // move after fixing the trace and the edge entries is supported on the
  // off-diagonal non-edges.
  Mat jfree = Mat::Ones(m, m) - Mat::Identity(m, m);
  for (const auto& [u, v] : edges) jfree(u, v) = jfree(v, u) = 0.0;
  const double jfree_norm2 = jfree.squaredNorm();
  if (jfree_norm2 == 0.0) {
    // complete graph: the slice fixes <J,X> = tr X = 1
    result.value = result.lower = result.upper = 1.0;
    result.converged = true;
    return result;
  }

  auto project_affine = [&](Mat x, double level) {
    x = 0.5 * (x + x.transpose());
    x.diagonal().array() += (1.0 - x.trace()) / m;
    for (const auto& [u, v] : edges) x(u, v) = x(v, u) = 0.0;
    const double current = x.sum();
    x += ((level - current) / jfree_norm2) * jfree;
    return x;
  };
  auto project_psd = [&](const Mat& x) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (x + x.transpose()));
    Vec lam = es.eigenvalues().cwiseMax(0.0);
    return Mat(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose());
  };

  // feasibility predicate for one objective level, warm-started
  Mat warm = Mat::Identity(m, m) / m;
  auto feasible_at = [&](double level) {
    Mat x = warm;
    double best_res = 1e300;
    int stalled = 0;
    for (int it = 0; it < 4000; ++it) {
      const Mat on_affine = project_affine(x, level);
      const Mat on_cone = project_psd(on_affine);
      const double res = (on_affine - on_cone).norm();
      x = on_cone;
      if (res < 1e-9 * (1.0 + level)) {
        warm = x;
        return true;
      }
      if (res < best_res - 1e-12) {
        best_res = res;
        stalled = 0;
      } else if (++stalled > 60) {
        break;
      }
    }
    return best_res < 1e-7 * (1.0 + level);
  };

  double lo = 1.0, hi = static_cast<double>(m);
  int iters = 0;
  while (hi - lo > tol && iters < 200) {
    ++iters;
    const double mid = 0.5 * (lo + hi);
    if (feasible_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  result.iterations = iters;
  result.lower = lo;
  result.upper = hi;
  result.value = 0.5 * (lo + hi);
  result.duality_gap = hi - lo;
  result.converged = (hi - lo) <= tol * 1.5;
  return result;
}

ThetaResult lovasz_theta(const ExclusivityGraph& g, double tol) {
  if (g.order() < 1) throw std::invalid_argument("theta requires at least one vertex");
  if (g.order() > 256) throw std::invalid_argument("theta limited to 256 vertices");
  if (tol < 1e-8) throw std::invalid_argument("tol must be at least 1e-8");
  if (g.order() > 128) return lovasz_theta_projection(g, std::max(tol, 1e-3));
  return lovasz_theta_ipm(g, tol);
}

ProductIdentityReport product_identity_check(const ExclusivityGraph& g, double tol) {
  if (!is_vertex_transitive(g))
    throw std::invalid_argument("product identity requires a vertex-transitive graph");
  const double solver_tol = std::max(1e-8, tol * 1e-2);
  ProductIdentityReport report;
  report.theta = lovasz_theta(g, solver_tol).value;
  report.theta_complement = lovasz_theta(g.complement(), solver_tol).value;
  report.ratio = report.theta * report.theta_complement / g.order();
  report.within_tolerance = std::abs(report.ratio - 1.0) <= tol;
  return report;
}

}  // namespace qbounds
