#pragma once
// Spectral resolution of the delta-shell Hamiltonian on a radial grid:
//
//   phi(r) = sum_n u_n(r) (u_n|phi) + int_0^inf dk u_k(r) <u_k|phi>
//
// with normalized bound states u_n and real scattering solutions
//   u_k(r) -> sqrt(2/pi) sin(kr + delta(k))   (r -> inf),
// i.e. delta-normalized in k. In energy form dmu(E) = dE and
// u_E = u_k / sqrt(2k); the two are the same resolution of the identity.
//
// Also: a Paley-Wiener test for boundary values of Hardy-class functions.

#include "gamow/scattering_model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

namespace gamow {

/// Asymptotic amplitude of the continuum functions, fixed by Parseval.
inline const double kContinuumNorm = std::sqrt(2.0 / std::numbers::pi);

/// Piecewise-uniform radial grid with a node at the shell radius and
/// composite Simpson weights on each side of it.
struct RadialGrid {
  Eigen::VectorXd r;
  Eigen::VectorXd weights;
  double r_max = 0.0;

  Eigen::Index size() const noexcept { return r.size(); }
  double integrate(const Eigen::VectorXd &f) const { return weights.dot(f); }
};

/// `n_points` may grow by one so both Simpson segments have an even number
/// of intervals. Throws std::domain_error for r_max <= 0 or n_points < 5.
RadialGrid make_radial_grid(double r_max, int n_points, double shell_radius);

struct WavePacket {
  RadialGrid grid;
  Eigen::VectorXd values;

  double norm() const;
  /// exp(-(r - center)^2 / (2 width^2)); width is the standard deviation.
  static WavePacket gaussian(const RadialGrid &grid, double center, double width);
  static WavePacket zero(const RadialGrid &grid);
};

struct BoundTerm {
  double energy;
  Eigen::VectorXd u; // unit quadrature norm on the radial grid
};

/// Continuum momentum nodes and trapezoid weights (the measure).
struct ContinuumQuadrature {
  Eigen::VectorXd k;
  Eigen::VectorXd w;
};

/// n_k nodes on (0, k_max]. Uniform trapezoid unless the model has poles
/// narrower than a few uniform spacings; then the rule is the trapezoid
/// rule in s = F(k), F the CDF of a uniform + Lorentzian node density
/// centred on those poles, so every resonance peak is sampled.
ContinuumQuadrature continuum_quadrature(const ScatteringModel &model,
                                         double k_max, int n_k);

/// Real continuum solution u_k on the grid, asymptotic amplitude kContinuumNorm.
Eigen::VectorXd continuum_function(const ScatteringModel &model, double k,
                                   const Eigen::VectorXd &r);

class SpectralDecomposition {
public:
  SpectralDecomposition(ScatteringModel model, RadialGrid grid,
                        std::vector<BoundTerm> discrete, ContinuumQuadrature quad,
                        Eigen::MatrixXd continuum);

  const ScatteringModel &model() const noexcept { return model_; }
  const RadialGrid &grid() const noexcept { return grid_; }
  const std::vector<BoundTerm> &discrete() const noexcept { return discrete_; }
  const Eigen::VectorXd &k() const noexcept { return quad_.k; }
  const Eigen::VectorXd &weights() const noexcept { return quad_.w; }
  /// Row i holds u_{k_i} on the radial grid.
  const Eigen::MatrixXd &continuum() const noexcept { return continuum_; }

private:
  ScatteringModel model_;
  RadialGrid grid_;
  std::vector<BoundTerm> discrete_;
  ContinuumQuadrature quad_;
  Eigen::MatrixXd continuum_;
};

/// Throws std::domain_error on non-positive grid parameters.
SpectralDecomposition build_decomposition(const ScatteringModel &model,
                                          double k_max, int n_k, double r_max,
                                          int n_r);

struct SpectralCoefficients {
  std::vector<double> discrete;
  Eigen::VectorXd continuum;

  /// sum |b_n|^2 + int |c_k|^2 dk under the decomposition's measure.
  double norm_squared(const Eigen::VectorXd &weights) const;
};

/// Throws PreconditionError if the packet lives on a different grid or has
/// more than 1e-6 of its squared norm beyond 0.8 r_max.
SpectralCoefficients project(const SpectralDecomposition &decomp,
                             const WavePacket &packet);
WavePacket reconstruct(const SpectralDecomposition &decomp, const WavePacket &packet);
/// ||packet - reconstruct(packet)|| / ||packet||; zero for the zero packet.
double reconstruct_error(const SpectralDecomposition &decomp, const WavePacket &packet);

// ---------------------------------------------------------------------------
// Hardy-class test

enum class HalfPlane { lower, upper };
std::string_view to_string(HalfPlane hp) noexcept;

/// Transform convention F(t) = int f(E) e^{-iEt} dE. Under it a function
/// analytic in the upper half plane (pole below the axis) has F supported
/// on t >= 0, and a lower-half-plane Hardy function on t <= 0.
inline constexpr int kFourierSign = -1;
inline constexpr double kHardyMemberThreshold = 1e-4;
/// End samples must satisfy |f_end|^2 <= kEndDecayRatio * max |f|^2.
inline constexpr double kEndDecayRatio = 1e-8;

/// Uniform samples of f on [e_min, e_max] (both ends included).
struct EnergySamples {
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<std::complex<double>> values;
};

struct HardyReport {
  HalfPlane half_plane;
  double leakage; // fraction of |F|^2 on the forbidden time half-line
  bool is_member;
};

/// Throws PreconditionError on insufficient end decay or fewer than 16 samples.
HardyReport hardy_check(const EnergySamples &samples, HalfPlane half_plane);

/// Samples of 1/(E - (e0 - i gamma/2)).
EnergySamples sample_single_pole(double e0, double gamma, double e_min,
                                 double e_max, int n);
EnergySamples conjugate(const EnergySamples &samples);

} // namespace gamow
