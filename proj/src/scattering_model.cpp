#include "gamow/scattering_model.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace gamow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr complex kI{0.0, 1.0};

// Newton polishing
constexpr int kNewtonMaxSteps = 50;
constexpr double kNewtonTol = 1e-12;
constexpr double kDerivStep = 1e-7;
constexpr double kDedupTol = 1e-6;
constexpr double kPoleResidualTol = 1e-10;

// Contour walking
constexpr int kEdgeSegments = 64;
constexpr double kMaxArgStep = kPi / 8.0;
constexpr int kMaxContourDepth = 40;
constexpr double kContourTouchTol = 1e-9;

// Phase continuation
constexpr double kPhaseBaseStep = 0.05; // in units of 1/a
constexpr double kMaxArgDStep = kPi / 4.0;
constexpr int kMaxPhaseDepth = 80;

double wrap_to_pi(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

// (g/k) sin(ka), continuous through k = 0.
complex coupling_term(const ScatteringModel &m, complex k) {
  const complex ka = k * m.a();
  if (std::abs(ka) < 1e-6)
    return m.g() * m.a() * (1.0 - ka * ka / 6.0);
  return (m.g() / k) * std::sin(ka);
}

} // namespace

ScatteringModel::ScatteringModel(double g, double a) : g_(g), a_(a) {
  if (!std::isfinite(g) || !std::isfinite(a))
    throw std::domain_error("scattering model parameters must be finite");
  if (!(a > 0.0))
    throw std::domain_error("shell radius a must be positive");
  if (g == 0.0)
    throw std::domain_error("coupling g must be nonzero");
}

ResonancePole ResonancePole::from_momentum(complex k) {
  const complex z = k * k;
  return {k, z.real(), -2.0 * z.imag(), 0.0};
}

ResonancePole ResonancePole::from_energy(double e_r, double gamma) {
  if (!std::isfinite(e_r) || !std::isfinite(gamma))
    throw std::domain_error("resonance parameters must be finite");
  if (!(gamma > 0.0))
    throw std::domain_error("resonance width gamma must be positive");
  // Principal root: Re k > 0, Im k < 0 for Z in the lower half plane.
  const complex k = std::sqrt(complex(e_r, -0.5 * gamma));
  return {k, e_r, gamma, 0.0};
}

void SearchRegion::validate() const {
  if (!std::isfinite(re_min) || !std::isfinite(re_max) ||
      !std::isfinite(im_min) || !std::isfinite(im_max))
    throw std::domain_error("search region bounds must be finite");
  if (!(re_min < re_max) || !(im_min < im_max))
    throw std::domain_error("search region must have re_min < re_max and im_min < im_max");
  if (n_re < 1 || n_im < 1)
    throw std::domain_error("search region seed lattice must be nonempty");
}

bool SearchRegion::contains(complex k) const noexcept {
  return k.real() >= re_min && k.real() <= re_max && k.imag() >= im_min &&
         k.imag() <= im_max;
}

complex pole_denominator(const ScatteringModel &model, complex k) {
  return std::exp(-kI * k * model.a()) + coupling_term(model, k);
}

double denominator_scale(const ScatteringModel &model, complex k) {
  return std::max({1.0, std::abs(std::exp(-kI * k * model.a())),
                   std::abs(coupling_term(model, k))});
}

complex s_matrix(const ScatteringModel &model, complex k) {
  if (k == 0.0)
    throw std::domain_error("S-matrix is undefined at k = 0");
  const complex ka = k * model.a();
  if (std::abs(ka.imag()) > kMaxImagKa)
    throw std::range_error("|Im(ka)| beyond overflow bound for S-matrix");
  const complex c = coupling_term(model, k);
  return std::exp(-2.0 * kI * ka) * (std::exp(kI * ka) + c) /
         (std::exp(-kI * ka) + c);
}

double phase_shift_principal(const ScatteringModel &model, double e) {
  if (!(e > 0.0))
    throw std::domain_error("phase shift requires e > 0");
  // Outside the shell u ~ sin(kr) + c sin(k(r - a)), c = (g/k) sin ka.
  const double k = std::sqrt(e);
  const double ka = k * model.a();
  const double c = model.g() / k * std::sin(ka);
  const double num = -c * std::sin(ka);
  const double den = 1.0 + c * std::cos(ka);
  double d = std::atan2(num, den); // in (-pi, pi], defined mod pi
  if (d > kPi / 2)
    d -= kPi;
  else if (d <= -kPi / 2)
    d += kPi;
  return d;
}

std::vector<double> phase_shift_curve(const ScatteringModel &model,
                                      std::span<const double> energies) {
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!(energies[i] > 0.0) || !std::isfinite(energies[i]))
      throw std::domain_error("phase shift requires finite e > 0");
    if (i > 0 && !(energies[i] > energies[i - 1]))
      throw std::domain_error("phase shift grid must be strictly increasing");
  }
  std::vector<double> out;
  if (energies.empty())
    return out;

  const double a = model.a();
  const auto arg_d = [&](double k) {
    return std::arg(pole_denominator(model, complex(k, 0.0)));
  };

  const double k_first = std::sqrt(energies.front());
  const double k_start = std::min(0.5 * k_first, 1e-6 / a);
  const double n_bound = static_cast<double>(bound_states(model).size());
  const double delta_start =
      phase_shift_principal(model, k_start * k_start) + kPi * n_bound;

  double k_prev = k_start;
  double arg_prev = arg_d(k_start); // unwrapped arg D at k_prev
  const double arg_start = arg_prev;

  // Bisect [k1, k2] until arg D changes by less than kMaxArgDStep per piece.
  const auto advance = [&](auto &&self, double k1, double arg1, double k2,
                           int depth) -> double {
    const double raw2 = arg_d(k2);
    const double step = wrap_to_pi(raw2 - arg1);
    if (std::abs(step) <= kMaxArgDStep || depth >= kMaxPhaseDepth)
      return arg1 + step;
    const double mid = 0.5 * (k1 + k2);
    const double arg_mid = self(self, k1, arg1, mid, depth + 1);
    return self(self, mid, arg_mid, k2, depth + 1);
  };

  out.reserve(energies.size());
  const double base = kPhaseBaseStep / a;
  for (double e : energies) {
    const double k = std::sqrt(e);
    const int pieces = std::max(1, static_cast<int>(std::ceil((k - k_prev) / base)));
    const double h = (k - k_prev) / pieces;
    for (int p = 1; p <= pieces; ++p) {
      const double k2 = p == pieces ? k : k_prev + p * h;
      const double k1 = k_prev + (p - 1) * h;
      arg_prev = advance(advance, k1, arg_prev, k2, 0);
    }
    k_prev = k;
    out.push_back(delta_start - (k - k_start) * a - (arg_prev - arg_start));
  }
  return out;
}

double phase_shift(const ScatteringModel &model, double e) {
  if (!(e > 0.0))
    throw std::domain_error("phase shift requires e > 0");
  const double grid[] = {e};
  return phase_shift_curve(model, grid).front();
}

namespace {

std::optional<complex> newton_polish(const ScatteringModel &model, complex k) {
  for (int it = 0; it < kNewtonMaxSteps; ++it) {
    const double h = kDerivStep * (1.0 + std::abs(k));
    const complex d = pole_denominator(model, k);
    const complex dd =
        (pole_denominator(model, k + h) - pole_denominator(model, k - h)) / (2.0 * h);
    if (dd == 0.0)
      return std::nullopt;
    const complex step = d / dd;
    k -= step;
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
      return std::nullopt;
    if (std::abs(k.imag() * model.a()) > kMaxImagKa)
      return std::nullopt;
    if (std::abs(step) < kNewtonTol * (1.0 + std::abs(k)))
      return k;
  }
  return std::nullopt;
}

} // namespace

std::vector<ResonancePole> find_poles(const ScatteringModel &model,
                                      const SearchRegion &region) {
  region.validate();
  if (region.re_min < 0.0 || region.im_max > 0.0)
    throw std::domain_error("pole search region must lie in Re k >= 0, Im k <= 0");

  const double dre = (region.re_max - region.re_min) / region.n_re;
  const double dim = (region.im_max - region.im_min) / region.n_im;

  std::vector<complex> roots;
  for (int i = 0; i < region.n_re; ++i) {
    for (int j = 0; j < region.n_im; ++j) {
      const complex seed(region.re_min + (i + 0.5) * dre,
                         region.im_min + (j + 0.5) * dim);
      const auto k = newton_polish(model, seed);
      if (!k || !region.contains(*k) || *k == 0.0)
        continue;
      if (std::abs(pole_denominator(model, *k)) >=
          kPoleResidualTol * denominator_scale(model, *k))
        continue;
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](complex r) {
        return std::abs(r - *k) <= kDedupTol;
      });
      if (!seen)
        roots.push_back(*k);
    }
  }
  std::sort(roots.begin(), roots.end(), [](complex x, complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });

  std::vector<ResonancePole> poles;
  poles.reserve(roots.size());
  for (complex k : roots) {
    ResonancePole p = ResonancePole::from_momentum(k);
    p.residual = std::abs(pole_denominator(model, k));
    poles.push_back(p);
  }
  return poles;
}

int pole_count(const ScatteringModel &model, const SearchRegion &contour,
               int traversals) {
  contour.validate();
  if (traversals < 1)
    throw std::domain_error("pole_count needs at least one traversal");

  const auto eval = [&](complex z) {
    const complex d = pole_denominator(model, z);
    if (std::abs(d) < kContourTouchTol * denominator_scale(model, z))
      throw std::domain_error("contour touches pole");
    return d;
  };

  // Accumulated change of arg D along [z1, z2], bisecting large steps.
  const auto walk = [&](auto &&self, complex z1, complex d1, complex z2,
                        complex d2, int depth) -> double {
    const double step = std::arg(d2 / d1);
    if (std::abs(step) <= kMaxArgStep || depth >= kMaxContourDepth)
      return step;
    const complex zm = 0.5 * (z1 + z2);
    const complex dm = eval(zm);
    return self(self, z1, d1, zm, dm, depth + 1) +
           self(self, zm, dm, z2, d2, depth + 1);
  };

  const complex corners[] = {{contour.re_min, contour.im_min},
                             {contour.re_max, contour.im_min},
                             {contour.re_max, contour.im_max},
                             {contour.re_min, contour.im_max}};
  double total = 0.0;
  for (int pass = 0; pass < traversals; ++pass) {
    for (int e = 0; e < 4; ++e) {
      const complex from = corners[e];
      const complex to = corners[(e + 1) % 4];
      complex z_prev = from;
      complex d_prev = eval(from);
      for (int s = 1; s <= kEdgeSegments; ++s) {
        const complex z = from + (to - from) * (static_cast<double>(s) / kEdgeSegments);
        const complex d = eval(z);
        total += walk(walk, z_prev, d_prev, z, d, 0);
        z_prev = z;
        d_prev = d;
      }
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

std::vector<double> bound_states(const ScatteringModel &model) {
  const double a = model.a();
  const double strength = -model.g(); // binding needs g < 0
  if (strength * a <= 1.0)
    return {};
  // D(i kappa) = 0  <=>  2 kappa = |g| (1 - e^{-2 kappa a}); one root in (0, |g|/2).
  const auto f = [&](double kappa) {
    return strength * (-std::expm1(-2.0 * kappa * a)) - 2.0 * kappa;
  };
  const double hi = 0.5 * strength;
  double lo = hi;
  for (int i = 0; i < 200 && f(lo) <= 0.0; ++i)
    lo *= 0.5;
  if (f(lo) <= 0.0)
    return {};
  boost::uintmax_t max_iter = 200;
  const auto [left, right] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
  const double kappa = 0.5 * (left + right);
  return {-kappa * kappa};
}

} // namespace gamow
