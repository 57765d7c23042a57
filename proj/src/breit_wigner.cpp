#include "gamow/errors.hpp"
#include "gamow/scattering_model.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <vector>

namespace gamow {

namespace {

constexpr double kMaxRmsResidual = 0.02;
constexpr double kMinPeakContrast = 0.5;

// Parameters: x = (E_R - E_mid, Gamma/2, b0, b1).
struct BreitWignerResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  Eigen::VectorXd u; // E - E_mid
  Eigen::VectorXd y;

  int inputs() const { return 4; }
  int values() const { return static_cast<int>(u.size()); }

  int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &f) const {
    const double h2 = x[1] * x[1];
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double d = u[i] - x[0];
      f[i] = h2 / (d * d + h2) + x[2] + x[3] * u[i] - y[i];
    }
    return 0;
  }

  int df(const Eigen::VectorXd &x, Eigen::MatrixXd &jac) const {
    const double h = x[1];
    const double h2 = h * h;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double d = u[i] - x[0];
      const double q = d * d + h2;
      jac(i, 0) = 2.0 * h2 * d / (q * q);
      jac(i, 1) = 2.0 * h * d * d / (q * q);
      jac(i, 2) = 1.0;
      jac(i, 3) = u[i];
    }
    return 0;
  }
};

} // namespace

BreitWignerFit fit_breit_wigner_samples(std::span<const double> energies,
                                        std::span<const double> sin2_delta) {
  const auto n = energies.size();
  if (n != sin2_delta.size())
    throw std::invalid_argument("energy and sin^2(delta) samples differ in length");
  if (n < 8)
    throw FitError("need at least 8 samples for a Breit-Wigner fit");

  const double e_lo = energies.front();
  const double e_hi = energies.back();
  const double width = e_hi - e_lo;
  const double e_mid = 0.5 * (e_lo + e_hi);
  const double spacing = width / static_cast<double>(n - 1);

  const auto [min_it, max_it] = std::minmax_element(sin2_delta.begin(), sin2_delta.end());
  const double y_min = *min_it;
  const double y_max = *max_it;
  if (y_max - y_min < kMinPeakContrast)
    throw FitError("not a clean resonance: no Breit-Wigner peak in window");

  const auto peak = static_cast<std::size_t>(max_it - sin2_delta.begin());
  const double half = 0.5 * (y_max + y_min);
  std::size_t left = peak;
  while (left > 0 && sin2_delta[left] > half)
    --left;
  std::size_t right = peak;
  while (right + 1 < n && sin2_delta[right] > half)
    ++right;
  double half_width = 0.5 * (energies[right] - energies[left]);
  if (!(half_width > 0.0))
    half_width = spacing;

  BreitWignerResidual functor;
  functor.u.resize(static_cast<Eigen::Index>(n));
  functor.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    functor.u[static_cast<Eigen::Index>(i)] = energies[i] - e_mid;
    functor.y[static_cast<Eigen::Index>(i)] = sin2_delta[i];
  }

  Eigen::VectorXd x(4);
  x << energies[peak] - e_mid, 0.5 * half_width, y_min, 0.0;

  Eigen::LevenbergMarquardt<BreitWignerResidual> lm(functor);
  lm.parameters.xtol = 1e-15;
  lm.parameters.ftol = 1e-15;
  lm.parameters.maxfev = 4000;
  lm.minimize(x);

  Eigen::VectorXd resid(static_cast<Eigen::Index>(n));
  functor(x, resid);
  const double rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));

  BreitWignerFit fit{x[0] + e_mid, 2.0 * std::abs(x[1]), x[2], x[3], rms};
  if (!std::isfinite(fit.e_r) || !std::isfinite(fit.gamma))
    throw FitError("not a clean resonance: fit diverged");
  if (fit.e_r < e_lo || fit.e_r > e_hi)
    throw FitError("not a clean resonance: fitted E_R outside window");
  if (fit.gamma < 2.0 * spacing || fit.gamma > width)
    throw FitError("not a clean resonance: width unresolved by the window");
  if (rms > kMaxRmsResidual)
    throw FitError("not a clean resonance: fit residual too large");
  return fit;
}

BreitWignerFit breit_wigner_fit(const ScatteringModel &model, double e_min,
                                double e_max, int n) {
  if (!(e_min > 0.0) || !(e_max > e_min) || !std::isfinite(e_max))
    throw std::domain_error("fit window must satisfy 0 < e_min < e_max");
  if (n < 8)
    throw std::domain_error("fit window needs at least 8 samples");

  const double k_lo = std::sqrt(e_min);
  const double k_hi = std::sqrt(e_max);
  SearchRegion under_window{k_lo, k_hi, -(k_hi - k_lo), 0.0, 32, 16};
  const auto poles = find_poles(model, under_window);
  if (poles.size() != 1)
    throw FitError("fit window must contain exactly one resonance, found " +
                   std::to_string(poles.size()));

  std::vector<double> energies(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    energies[static_cast<std::size_t>(i)] =
        e_min + (e_max - e_min) * static_cast<double>(i) / (n - 1);
  const auto delta = phase_shift_curve(model, energies);
  std::vector<double> y(delta.size());
  std::transform(delta.begin(), delta.end(), y.begin(), [](double d) {
    const double s = std::sin(d);
    return s * s;
  });
  return fit_breit_wigner_samples(energies, y);
}

} // namespace gamow
