#include "gamow/spectral_tools.hpp"

#include "gamow/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gamow {

namespace {

constexpr double kTailRadiusFraction = 0.8;
constexpr double kMaxTailFraction = 1e-6;

// Poles narrower than this many uniform spacings get their own node cluster.
constexpr double kNarrowPoleSpacings = 5.0;
// Share of the nodes spent on resonance clusters when any are present.
constexpr double kResonanceNodeShare = 0.5;

void simpson_segment(Eigen::VectorXd &r, Eigen::VectorXd &w, Eigen::Index offset,
                     double lo, double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  for (int i = 0; i <= intervals; ++i) {
    const double wi = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    r[offset + i] = (i == intervals) ? hi : lo + i * h;
    w[offset + i] += wi * h / 3.0;
  }
}

int round_up_even(int n) { return std::max(2, n + (n % 2)); }

struct Lorentzian {
  double center;
  double width;
  double mass; // atan span over [0, k_max]

  double cdf(double k) const {
    return (std::atan((k - center) / width) - std::atan(-center / width)) / mass;
  }
  double density(double k) const {
    const double d = k - center;
    return width / (d * d + width * width) / mass;
  }
};

} // namespace

RadialGrid make_radial_grid(double r_max, int n_points, double shell_radius) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::domain_error("radial grid needs finite r_max > 0");
  if (n_points < 5)
    throw std::domain_error("radial grid needs at least 5 points");

  const int intervals = n_points - 1;
  RadialGrid g;
  g.r_max = r_max;
  if (shell_radius >= r_max) {
    const int n = round_up_even(intervals);
    g.r = Eigen::VectorXd::Zero(n + 1);
    g.weights = Eigen::VectorXd::Zero(n + 1);
    simpson_segment(g.r, g.weights, 0, 0.0, r_max, n);
    return g;
  }
  const int inner = round_up_even(
      static_cast<int>(std::lround(intervals * shell_radius / r_max)));
  const int outer = round_up_even(intervals - inner);
  g.r = Eigen::VectorXd::Zero(inner + outer + 1);
  g.weights = Eigen::VectorXd::Zero(inner + outer + 1);
  simpson_segment(g.r, g.weights, 0, 0.0, shell_radius, inner);
  simpson_segment(g.r, g.weights, inner, shell_radius, r_max, outer);
  return g;
}

double WavePacket::norm() const {
  return std::sqrt(grid.integrate(values.cwiseAbs2()));
}

WavePacket WavePacket::gaussian(const RadialGrid &grid, double center, double width) {
  if (!(width > 0.0))
    throw std::domain_error("gaussian packet width must be positive");
  WavePacket p{grid, Eigen::VectorXd(grid.size())};
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double x = (grid.r[i] - center) / width;
    p.values[i] = std::exp(-0.5 * x * x);
  }
  return p;
}

WavePacket WavePacket::zero(const RadialGrid &grid) {
  return {grid, Eigen::VectorXd::Zero(grid.size())};
}

ContinuumQuadrature continuum_quadrature(const ScatteringModel &model,
                                         double k_max, int n_k) {
  if (!(k_max > 0.0) || !std::isfinite(k_max) || n_k < 2)
    throw std::domain_error("continuum grid needs k_max > 0 and n_k >= 2");

  const double dk = k_max / n_k;
  const double strip = kNarrowPoleSpacings * dk;
  SearchRegion region;
  region.re_min = 0.0;
  region.re_max = k_max;
  region.im_min = -strip;
  region.im_max = 0.0;
  region.n_re = static_cast<int>(std::ceil(8.0 * k_max * model.a() / std::numbers::pi)) + 8;
  region.n_im = 4;

  std::vector<Lorentzian> peaks;
  for (const auto &p : find_poles(model, region)) {
    const double c = p.k_pole.real();
    const double w = std::abs(p.k_pole.imag());
    if (w <= 0.0 || w >= strip)
      continue;
    peaks.push_back({c, w, std::atan((k_max - c) / w) - std::atan(-c / w)});
  }

  ContinuumQuadrature q{Eigen::VectorXd(n_k), Eigen::VectorXd(n_k)};
  const double ds = 1.0 / n_k;
  if (peaks.empty()) {
    for (int i = 0; i < n_k; ++i) {
      q.k[i] = (i + 1) * dk;
      q.w[i] = dk;
    }
    q.w[n_k - 1] *= 0.5;
    return q;
  }

  const double share = kResonanceNodeShare / static_cast<double>(peaks.size());
  const double flat = 1.0 - kResonanceNodeShare;
  const auto cdf = [&](double k) {
    double s = flat * k / k_max;
    for (const auto &p : peaks)
      s += share * p.cdf(k);
    return s;
  };
  const auto density = [&](double k) {
    double rho = flat / k_max;
    for (const auto &p : peaks)
      rho += share * p.density(k);
    return rho;
  };

  for (int i = 0; i < n_k; ++i) {
    const double s = (i + 1) * ds;
    double k = k_max;
    if (i + 1 < n_k) {
      boost::uintmax_t iters = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          [&](double x) { return cdf(x) - s; }, 0.0, k_max, -s, 1.0 - s,
          boost::math::tools::eps_tolerance<double>(50), iters);
      k = 0.5 * (lo + hi);
    }
    q.k[i] = k;
    q.w[i] = ds / density(k);
  }
  q.w[n_k - 1] *= 0.5;
  return q;
}

Eigen::VectorXd continuum_function(const ScatteringModel &model, double k,
                                   const Eigen::VectorXd &r) {
  const double a = model.a();
  const double c = model.g() / k * std::sin(k * a);
  // Outside amplitude |1 + c e^{ika}| = |D(k)|.
  const double amp = std::hypot(1.0 + c * std::cos(k * a), c * std::sin(k * a));
  const double scale = kContinuumNorm / amp;
  Eigen::VectorXd u(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double x = r[i];
    u[i] = x < a ? std::sin(k * x) : std::sin(k * x) + c * std::sin(k * (x - a));
    u[i] *= scale;
  }
  return u;
}

SpectralDecomposition::SpectralDecomposition(ScatteringModel model, RadialGrid grid,
                                             std::vector<BoundTerm> discrete,
                                             ContinuumQuadrature quad,
                                             Eigen::MatrixXd continuum)
    : model_(model), grid_(std::move(grid)), discrete_(std::move(discrete)),
      quad_(std::move(quad)), continuum_(std::move(continuum)) {}

SpectralDecomposition build_decomposition(const ScatteringModel &model,
                                          double k_max, int n_k, double r_max,
                                          int n_r) {
  RadialGrid grid = make_radial_grid(r_max, n_r, model.a());
  ContinuumQuadrature quad = continuum_quadrature(model, k_max, n_k);

  std::vector<BoundTerm> discrete;
  const double a = model.a();
  for (double e : bound_states(model)) {
    const double kappa = std::sqrt(-e);
    Eigen::VectorXd u(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double x = grid.r[i];
      u[i] = x < a ? std::sinh(kappa * x)
                   : std::sinh(kappa * a) * std::exp(-kappa * (x - a));
    }
    u /= std::sqrt(grid.integrate(u.cwiseAbs2()));
    discrete.push_back({e, std::move(u)});
  }

  Eigen::MatrixXd continuum(quad.k.size(), grid.size());
  for (Eigen::Index i = 0; i < quad.k.size(); ++i)
    continuum.row(i) = continuum_function(model, quad.k[i], grid.r).transpose();

  return SpectralDecomposition(model, std::move(grid), std::move(discrete),
                               std::move(quad), std::move(continuum));
}

double SpectralCoefficients::norm_squared(const Eigen::VectorXd &weights) const {
  double s = weights.dot(continuum.cwiseAbs2());
  for (double b : discrete)
    s += b * b;
  return s;
}

SpectralCoefficients project(const SpectralDecomposition &decomp,
                             const WavePacket &packet) {
  const RadialGrid &grid = decomp.grid();
  if (packet.values.size() != grid.size() || packet.grid.r != grid.r)
    throw PreconditionError("packet is not sampled on the decomposition's radial grid");

  const Eigen::VectorXd sq = packet.values.cwiseAbs2();
  const double total = grid.integrate(sq);
  if (total > 0.0) {
    double tail = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
      if (grid.r[i] > kTailRadiusFraction * grid.r_max)
        tail += grid.weights[i] * sq[i];
    if (tail > kMaxTailFraction * total)
      throw PreconditionError("packet has more than 1e-6 of its norm beyond 0.8 r_max");
  }

  const Eigen::VectorXd weighted = grid.weights.cwiseProduct(packet.values);
  SpectralCoefficients c;
  for (const auto &b : decomp.discrete())
    c.discrete.push_back(b.u.dot(weighted));
  c.continuum = decomp.continuum() * weighted;
  return c;
}

WavePacket reconstruct(const SpectralDecomposition &decomp, const WavePacket &packet) {
  const SpectralCoefficients c = project(decomp, packet);
  WavePacket out{decomp.grid(),
                 decomp.continuum().transpose() * decomp.weights().cwiseProduct(c.continuum)};
  for (std::size_t n = 0; n < c.discrete.size(); ++n)
    out.values += c.discrete[n] * decomp.discrete()[n].u;
  return out;
}

double reconstruct_error(const SpectralDecomposition &decomp, const WavePacket &packet) {
  const WavePacket rec = reconstruct(decomp, packet);
  const double norm = packet.norm();
  if (norm == 0.0)
    return 0.0;
  const WavePacket diff{packet.grid, packet.values - rec.values};
  return diff.norm() / norm;
}

} // namespace gamow
