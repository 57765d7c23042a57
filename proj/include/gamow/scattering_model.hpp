#pragma once
// s-wave scattering off a delta shell V(r) = g * delta(r - a), units hbar = 2m = 1
// (E = k^2). Matching u(r) = A sin(kr) inside to the outside solution with the
// derivative jump u'(a+) - u'(a-) = g u(a) gives
//
//   S(k) = e^{-2ika} (e^{ika} + (g/k) sin ka) / (e^{-ika} + (g/k) sin ka)
//
// whose poles are the zeros of D(k) = e^{-ika} + (g/k) sin ka, equivalently
// e^{2ika} = 1 - 2ik/g. Resonances sit in the lower half k-plane (second
// energy sheet), bound states on the positive imaginary axis (g a < -1).

#include <complex>
#include <span>
#include <vector>

namespace gamow {

using complex = std::complex<double>;

class ScatteringModel {
public:
  /// Throws std::domain_error unless a > 0, g != 0 and both finite.
  ScatteringModel(double g, double a);

  double g() const noexcept { return g_; }
  double a() const noexcept { return a_; }

private:
  double g_;
  double a_;
};

/// A resonance pole Z_R = E_R - i Gamma/2 = k_pole^2.
struct ResonancePole {
  complex k_pole;
  double e_r = 0.0;
  double gamma = 0.0;
  /// |D(k_pole)| when produced by find_poles, zero otherwise.
  double residual = 0.0;

  /// Z_R
  complex energy() const noexcept { return {e_r, -0.5 * gamma}; }
  /// Z_R*, the growing partner.
  complex conjugate_energy() const noexcept { return {e_r, 0.5 * gamma}; }

  static ResonancePole from_momentum(complex k);
  /// Requires gamma > 0 (std::domain_error otherwise).
  static ResonancePole from_energy(double e_r, double gamma);
};

/// Rectangle in the complex momentum plane plus the Newton seed lattice.
struct SearchRegion {
  double re_min = 0.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 0.0;
  int n_re = 64;
  int n_im = 16;

  /// Throws std::domain_error on an empty or inverted rectangle.
  void validate() const;
  bool contains(complex k) const noexcept;
};

/// Largest |Im(ka)| accepted by s_matrix before exponentials overflow.
inline constexpr double kMaxImagKa = 150.0;

/// D(k); analytic everywhere (k = 0 is removable, D(0) = 1 + g a).
complex pole_denominator(const ScatteringModel &model, complex k);
/// Magnitude of the terms that cancel at a zero of D.
double denominator_scale(const ScatteringModel &model, complex k);

/// Throws std::domain_error for k = 0, std::range_error for |Im(ka)| > kMaxImagKa.
complex s_matrix(const ScatteringModel &model, complex k);

/// delta mod pi in (-pi/2, pi/2], no continuity.
double phase_shift_principal(const ScatteringModel &model, double e);

/// Continuous phase shift with delta(0+) = pi * (number of bound states).
/// Throws std::domain_error for e <= 0.
double phase_shift(const ScatteringModel &model, double e);

/// Continuous phase shift on an increasing grid of positive energies.
/// Adjacent samples are joined by nearest-branch continuation; between them
/// the momentum axis is bisected until arg D moves by less than pi/4 per step.
std::vector<double> phase_shift_curve(const ScatteringModel &model,
                                      std::span<const double> energies);

/// Zeros of D in the region, polished by Newton from the seed lattice.
/// Precondition: region within Re k >= 0, Im k <= 0.
std::vector<ResonancePole> find_poles(const ScatteringModel &model,
                                      const SearchRegion &region);

/// Winding number of D around 0 along the rectangle boundary, traversed
/// `traversals` times. Throws std::domain_error("contour touches pole") when
/// D nearly vanishes on the contour.
int pole_count(const ScatteringModel &model, const SearchRegion &contour,
               int traversals = 1);

/// Bound-state energies E = -kappa^2, ascending.
std::vector<double> bound_states(const ScatteringModel &model);

struct BreitWignerFit {
  double e_r;
  double gamma;
  double background_offset;
  double background_slope;
  double rms_residual;
};

/// Least-squares fit of sin^2(delta) samples to
/// (Gamma/2)^2 / ((E - E_R)^2 + (Gamma/2)^2) + b0 + b1 (E - E_mid).
/// Throws FitError when the samples do not show one clean resonance.
BreitWignerFit fit_breit_wigner_samples(std::span<const double> energies,
                                        std::span<const double> sin2_delta);

/// Samples sin^2(delta) on a uniform grid of `n` energies in [e_min, e_max]
/// and fits. Throws FitError unless find_poles sees exactly one pole under
/// the window.
BreitWignerFit breit_wigner_fit(const ScatteringModel &model, double e_min,
                                double e_max, int n = 2001);

} // namespace gamow
