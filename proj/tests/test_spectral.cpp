#include "gamow/errors.hpp"
#include "gamow/spectral_tools.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gamow;

namespace {

WavePacket combine(double alpha, const WavePacket &x, double beta, const WavePacket &y) {
  return {x.grid, alpha * x.values + beta * y.values};
}

double l2(const WavePacket &p) { return p.norm(); }

} // namespace

TEST_CASE("radial grid has a node at the shell and integrates cubics exactly") {
  const RadialGrid g = make_radial_grid(10.0, 2001, 1.0);
  CHECK(g.r[0] == 0.0);
  CHECK(g.r[g.size() - 1] == 10.0);
  bool has_shell = false;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    has_shell |= g.r[i] == 1.0;
  CHECK(has_shell);
  // int_0^10 (r^3 - 2r + 1) dr = 2500 - 100 + 10
  const Eigen::VectorXd f = g.r.array().cube() - 2.0 * g.r.array() + 1.0;
  CHECK(g.integrate(f) == doctest::Approx(2410.0).epsilon(1e-13));
  // Kink at r = a: int_0^10 |r - 1| dr = 0.5 + 40.5
  CHECK(g.integrate((g.r.array() - 1.0).abs().matrix()) == doctest::Approx(41.0).epsilon(1e-13));
  CHECK_THROWS_AS(make_radial_grid(0.0, 100, 1.0), std::domain_error);
  CHECK_THROWS_AS(make_radial_grid(10.0, 4, 1.0), std::domain_error);
}

TEST_CASE("continuum functions: sqrt(2/pi) sin(kr + delta) outside, matched at the shell") {
  const ScatteringModel m(100.0, 1.0);
  for (double k : {0.7, 3.1, 3.11052, 12.4}) {
    const double delta = phase_shift_principal(m, k * k);
    Eigen::VectorXd r(5);
    r << 1.0, 1.5, 3.0, 7.0, 20.0;
    const Eigen::VectorXd u = continuum_function(m, k, r);
    // Overall sign is free; compare up to it.
    const double s = u[2] * std::sin(k * r[2] + delta) >= 0 ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < r.size(); ++i)
      CHECK(u[i] == doctest::Approx(s * kContinuumNorm * std::sin(k * r[i] + delta)).epsilon(1e-9));

    // Derivative jump g u(a) by one-sided differences.
    const double h = 1e-6;
    Eigen::VectorXd pts(3);
    pts << 1.0 - h, 1.0, 1.0 + h;
    const Eigen::VectorXd v = continuum_function(m, k, pts);
    const double jump = (v[2] - v[1]) / h - (v[1] - v[0]) / h;
    CHECK(jump == doctest::Approx(m.g() * v[1]).epsilon(1e-4));
  }
}

TEST_CASE("continuum quadrature covers (0, k_max]") {
  for (auto [g, n] : {std::pair{100.0, 4000}, {-5.0, 500}, {3.0, 300}}) {
    const auto q = continuum_quadrature(ScatteringModel(g, 1.0), 30.0, n);
    CHECK(q.k.size() == n);
    CHECK(q.k[n - 1] == doctest::Approx(30.0));
    for (Eigen::Index i = 1; i < q.k.size(); ++i)
      CHECK(q.k[i] > q.k[i - 1]);
    // The k = 0 node is dropped (u_0 = 0), so test integrands vanishing there.
    CHECK(q.w.dot(q.k) == doctest::Approx(450.0).epsilon(1e-4));
    CHECK(q.w.dot(q.k.array().sin().matrix()) ==
          doctest::Approx(1.0 - std::cos(30.0)).epsilon(1e-3));
  }
}

TEST_CASE("discrete part follows bound_states") {
  const auto rep = build_decomposition(ScatteringModel(100.0, 1.0), 30.0, 200, 10.0, 401);
  CHECK(rep.discrete().empty());
  const auto att = build_decomposition(ScatteringModel(-5.0, 1.0), 30.0, 200, 10.0, 401);
  REQUIRE(att.discrete().size() == 1);
  CHECK(att.discrete()[0].energy == bound_states(ScatteringModel(-5.0, 1.0))[0]);
  CHECK(att.grid().integrate(att.discrete()[0].u.cwiseAbs2()) == doctest::Approx(1.0));
}

TEST_CASE("bound-state self reconstruction") {
  const auto d = build_decomposition(ScatteringModel(-5.0, 1.0), 30.0, 4000, 10.0, 2001);
  const WavePacket bound{d.grid(), d.discrete()[0].u};
  CHECK(reconstruct_error(d, bound) <= 1e-6);
  // Continuum functions are orthogonal to the bound state.
  const auto c = project(d, bound);
  CHECK(c.discrete[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.continuum.cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("Gaussian bump reconstruction at g = 100") {
  const auto d = build_decomposition(ScatteringModel(100.0, 1.0), 30.0, 4000, 10.0, 2001);
  const auto p = WavePacket::gaussian(d.grid(), 2.0, 0.3);
  const double err = reconstruct_error(d, p);
  CHECK(err <= 1e-3);

  // Parseval: coefficient norm matches within the reconstruction error.
  const double n2 = l2(p) * l2(p);
  CHECK(std::abs(project(d, p).norm_squared(d.weights()) - n2) <= 2.0 * err * n2);

  // Scale invariance of the relative error.
  for (double c : {-3.0, 1e-6, 250.0})
    CHECK(reconstruct_error(d, combine(c, p, 0.0, p)) == doctest::Approx(err).epsilon(1e-9));
}

TEST_CASE("reconstruction is linear and maps zero to zero") {
  const auto d = build_decomposition(ScatteringModel(-5.0, 1.0), 30.0, 1000, 10.0, 1001);
  const auto x = WavePacket::gaussian(d.grid(), 2.0, 0.3);
  const auto y = WavePacket::gaussian(d.grid(), 4.0, 0.6);
  const double alpha = 0.7, beta = -2.3;
  const auto lhs = reconstruct(d, combine(alpha, x, beta, y));
  const auto rx = reconstruct(d, x), ry = reconstruct(d, y);
  const auto rhs = combine(alpha, rx, beta, ry);
  CHECK((lhs.values - rhs.values).norm() <= 1e-10 * rhs.values.norm());

  const auto z = WavePacket::zero(d.grid());
  CHECK(reconstruct(d, z).values.isZero(0.0));
  CHECK(reconstruct_error(d, z) == 0.0);
}

TEST_CASE("error decreases under k-grid refinement") {
  const ScatteringModel m(100.0, 1.0);
  const std::pair<double, double> packets[] = {{2.0, 0.3}, {3.0, 0.5}, {5.0, 0.6}};
  for (auto [center, width] : packets) {
    double prev = INFINITY;
    for (int n_k : {125, 250, 500, 1000}) {
      const auto d = build_decomposition(m, 30.0, n_k, 10.0, 2001);
      const double err = reconstruct_error(d, WavePacket::gaussian(d.grid(), center, width));
      CAPTURE(center);
      CAPTURE(n_k);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("projection preconditions") {
  const auto d = build_decomposition(ScatteringModel(100.0, 1.0), 30.0, 200, 10.0, 401);
  CHECK_THROWS_AS(project(d, WavePacket::gaussian(d.grid(), 8.5, 0.5)), PreconditionError);
  const RadialGrid other = make_radial_grid(10.0, 201, 1.0);
  CHECK_THROWS_AS(project(d, WavePacket::gaussian(other, 2.0, 0.3)), PreconditionError);
  CHECK_THROWS_AS(WavePacket::gaussian(d.grid(), 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(build_decomposition(ScatteringModel(1.0, 1.0), 0.0, 10, 10.0, 101),
                  std::domain_error);
}
