#pragma once
// Semigroup evolution of Gamow amplitudes. Each law exists on one temporal
// half-line only (t = 0 belongs to both):
//
//   law  state                    amplitude                          domain
//   g0   |Z_R*>, r=0, Phi_-^x     e^{-i E_R t} e^{+Gamma t / 2}      t <= 0
//   d0   |Z_R>,  r=0, Phi_+^x     e^{-i E_R t} e^{-Gamma t / 2}      t >= 0
//   d1   |Z_R>,  r=1, Phi_+^x     e^{+i E_R t} e^{-Gamma t / 2}      t >= 0
//   g1   |Z_R*>, r=1, Phi_-^x     e^{+i E_R t} e^{+Gamma t / 2}      t <= 0
//
// Time reversal maps Phi_-^{r=0,x} -> Phi_+^{r=1,x} and Phi_+^{r=0,x} ->
// Phi_-^{r=1,x}; the image law equals the source law under t -> -t.
//
// Amplitudes are scalar factors multiplying a fixed Gamow ket; survival is
// |amplitude|^2, equal to 1 at t = 0.

#include "gamow/rep_algebra.hpp"
#include "gamow/scattering_model.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace gamow {

enum class GamowKind { growing, decaying };
enum class SpaceLabel { phi_minus_dual, phi_plus_dual };
enum class EvolutionLaw { g0, d0, g1, d1 };

std::string_view to_string(GamowKind kind) noexcept;
std::string_view to_string(SpaceLabel label) noexcept;
std::string_view to_string(EvolutionLaw law) noexcept;
/// Accepts "g0", "d0", "g1", "d1"; throws std::domain_error otherwise.
EvolutionLaw law_from_string(std::string_view name);

struct GamowState {
  ResonancePole pole;
  GamowKind kind = GamowKind::decaying;
  RegimeIndex regime{0};

  /// Growing states live in Phi_-^x, decaying ones in Phi_+^x, in both regimes.
  SpaceLabel space_label() const noexcept;
  EvolutionLaw law() const noexcept;
  /// Material (r = 0) or time-reversed (r = 1) reading of the regime.
  std::string_view regime_name() const noexcept;
};

/// Labels only; pole data are not compared.
bool same_labels(const GamowState &a, const GamowState &b) noexcept;

struct EvolutionSample {
  double t;
  complex amplitude;
  double survival;
};

bool in_half_domain(EvolutionLaw law, double t) noexcept;

/// All of these throw HalfDomainError outside the law's half-line.
complex evolve_decaying_r0(const ResonancePole &pole, double t);
complex evolve_growing_r0(const ResonancePole &pole, double t);
complex evolve_decaying_r1(const ResonancePole &pole, double t);
complex evolve_growing_r1(const ResonancePole &pole, double t);
complex evolve(EvolutionLaw law, const ResonancePole &pole, double t);

GamowState time_reverse(const GamowState &state);

/// amplitude(t1 + t2) == amplitude(t1) * amplitude(t2) to 1e-12 relative.
bool semigroup_compose_check(const ResonancePole &pole, EvolutionLaw law,
                             double t1, double t2);

std::vector<EvolutionSample> evolution_series(const GamowState &state,
                                              std::span<const double> t_grid);
std::vector<EvolutionSample> evolution_series(EvolutionLaw law,
                                              const ResonancePole &pole,
                                              std::span<const double> t_grid);

} // namespace gamow
