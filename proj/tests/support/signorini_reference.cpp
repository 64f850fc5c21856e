#include "signorini_reference.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>

namespace thinob::testing {

namespace {

using Tri = std::array<int, 3>;

std::vector<Tri> elements(int n) {
  std::vector<Tri> t;
  auto id = [n](int i, int j) { return i + (n + 1) * j; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      t.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      t.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return t;
}

Point node(int n, int k) {
  const double h = 1.0 / n;
  return {(k % (n + 1)) * h, (k / (n + 1)) * h};
}

// constant gradient of the P1 interpolant on one element
Vec2 element_gradient(int n, const Tri& t, const std::vector<double>& u) {
  const Point a = node(n, t[0]);
  const Point b = node(n, t[1]);
  const Point c = node(n, t[2]);
  const double det = (b.x1 - a.x1) * (c.x2 - a.x2) - (c.x1 - a.x1) * (b.x2 - a.x2);
  const double du1 = u[static_cast<std::size_t>(t[1])] - u[static_cast<std::size_t>(t[0])];
  const double du2 = u[static_cast<std::size_t>(t[2])] - u[static_cast<std::size_t>(t[0])];
  return {(du1 * (c.x2 - a.x2) - du2 * (b.x2 - a.x2)) / det, (du2 * (b.x1 - a.x1) - du1 * (c.x1 - a.x1)) / det};
}

}  // namespace

SignoriniReference solve_signorini_reference(int n, const ScalarField& phi, const ScalarField& psi, double tol,
                                             int max_iterations) {
  const int nn = (n + 1) * (n + 1);
  std::vector<Eigen::Triplet<double>> trip;
  for (const Tri& t : elements(n)) {
    std::array<Point, 3> p{node(n, t[0]), node(n, t[1]), node(n, t[2])};
    const double det = (p[1].x1 - p[0].x1) * (p[2].x2 - p[0].x2) - (p[2].x1 - p[0].x1) * (p[1].x2 - p[0].x2);
    std::array<Vec2, 3> g;
    for (int k = 0; k < 3; ++k) {
      const Point& q = p[static_cast<std::size_t>((k + 1) % 3)];
      const Point& r = p[static_cast<std::size_t>((k + 2) % 3)];
      g[static_cast<std::size_t>(k)] = {(q.x2 - r.x2) / det, (r.x1 - q.x1) / det};
    }
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        trip.emplace_back(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(l)],
                          0.5 * std::abs(det) * dot(g[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(l)]));
      }
    }
  }
  Eigen::SparseMatrix<double> K(nn, nn);
  K.setFromTriplets(trip.begin(), trip.end());

  // 0 free, 1 Dirichlet, 2 contact
  std::vector<int> kind(static_cast<std::size_t>(nn), 0);
  Eigen::VectorXd lower = Eigen::VectorXd::Constant(nn, -INFINITY);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nn);
  for (int k = 0; k < nn; ++k) {
    const int i = k % (n + 1);
    const int j = k / (n + 1);
    const Point p = node(n, k);
    if (i == 0 || i == n || j == n) {
      kind[static_cast<std::size_t>(k)] = 1;
      x(k) = phi.value(p, Side::plus);
    } else if (j == 0) {
      kind[static_cast<std::size_t>(k)] = 2;
      lower(k) = psi.value(p, Side::plus);
      x(k) = std::max(0.0, lower(k));
    }
  }
  // primal-dual active set on the contact nodes; each sweep is one sparse solve
  std::vector<char> active(static_cast<std::size_t>(nn), 0);
  SignoriniReference ref;
  ref.n = n;
  double residual = INFINITY;
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::vector<int> free_index(static_cast<std::size_t>(nn), -1);
    int nf = 0;
    for (int k = 0; k < nn; ++k) {
      const int t = kind[static_cast<std::size_t>(k)];
      if (t == 2 && active[static_cast<std::size_t>(k)]) x(k) = lower(k);
      if (t == 0 || (t == 2 && !active[static_cast<std::size_t>(k)])) free_index[static_cast<std::size_t>(k)] = nf++;
    }
    std::vector<Eigen::Triplet<double>> sub;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
    for (int c = 0; c < K.outerSize(); ++c) {
      for (Eigen::SparseMatrix<double>::InnerIterator e(K, c); e; ++e) {
        const int r = free_index[static_cast<std::size_t>(e.row())];
        if (r < 0) continue;
        const int f = free_index[static_cast<std::size_t>(e.col())];
        if (f >= 0) sub.emplace_back(r, f, e.value());
        else rhs(r) -= e.value() * x(e.col());
      }
    }
    Eigen::SparseMatrix<double> Kf(nf, nf);
    Kf.setFromTriplets(sub.begin(), sub.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(Kf);
    const Eigen::VectorXd uf = solver.solve(rhs);
    for (int k = 0; k < nn; ++k) {
      const int f = free_index[static_cast<std::size_t>(k)];
      if (f >= 0) x(k) = uf(f);
    }
    const Eigen::VectorXd mu = K * x;
    bool changed = false;
    residual = 0.0;
    for (int k = 0; k < nn; ++k) {
      if (kind[static_cast<std::size_t>(k)] == 0) {
        residual = std::max(residual, std::abs(mu(k)));
      } else if (kind[static_cast<std::size_t>(k)] == 2) {
        const double gap = x(k) - lower(k);
        residual = std::max(residual, std::abs(std::min(mu(k), gap)));
        const char want = mu(k) - gap > 0.0 ? 1 : 0;
        if (want != active[static_cast<std::size_t>(k)]) changed = true;
        active[static_cast<std::size_t>(k)] = want;
      }
    }
    if (!changed && residual < tol) break;
  }
  ref.iterations = it;
  ref.step_residual = residual;
  ref.u.assign(x.data(), x.data() + nn);
  return ref;
}

double SignoriniReference::energy_distance(const ScalarField& v, int degree) const {
  const TriangleRule rule = triangle_rule(degree);
  double total = 0.0;
  for (const Tri& t : elements(n)) {
    const Vec2 g = element_gradient(n, t, u);
    const Triangle tri{{node(n, t[0]), node(n, t[1]), node(n, t[2])}, Side::plus};
    total += integrate_triangle(
        [&](std::span<const Point> pts, Side side, std::span<double> out) {
          for (std::size_t k = 0; k < pts.size(); ++k) {
            const Vec2 gv = v.gradient(pts[k], side);
            const double d1 = gv.x1 - g.x1;
            const double d2 = gv.x2 - g.x2;
            out[k] = d1 * d1 + d2 * d2;
          }
        },
        tri, rule);
  }
  return std::sqrt(total);
}

}  // namespace thinob::testing
