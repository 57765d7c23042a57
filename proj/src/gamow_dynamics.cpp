#include "gamow/gamow_dynamics.hpp"

#include "gamow/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gamow {

namespace {

constexpr double kSemigroupTol = 1e-12;

// e^{sign_phase * i E_R t} e^{sign_decay * Gamma t / 2}
complex law_amplitude(const ResonancePole &pole, double t, double sign_phase,
                      double sign_decay) {
  return std::polar(std::exp(sign_decay * 0.5 * pole.gamma * t),
                    sign_phase * pole.e_r * t);
}

void require_domain(EvolutionLaw law, double t) {
  if (!in_half_domain(law, t))
    throw HalfDomainError(std::string(to_string(law)), t);
}

} // namespace

std::string_view to_string(GamowKind kind) noexcept {
  return kind == GamowKind::growing ? "growing" : "decaying";
}

std::string_view to_string(SpaceLabel label) noexcept {
  return label == SpaceLabel::phi_minus_dual ? "Phi_minus_dual" : "Phi_plus_dual";
}

std::string_view to_string(EvolutionLaw law) noexcept {
  switch (law) {
  case EvolutionLaw::g0:
    return "g0";
  case EvolutionLaw::d0:
    return "d0";
  case EvolutionLaw::g1:
    return "g1";
  case EvolutionLaw::d1:
    return "d1";
  }
  return "?";
}

EvolutionLaw law_from_string(std::string_view name) {
  if (name == "g0")
    return EvolutionLaw::g0;
  if (name == "d0")
    return EvolutionLaw::d0;
  if (name == "g1")
    return EvolutionLaw::g1;
  if (name == "d1")
    return EvolutionLaw::d1;
  throw std::domain_error("unknown evolution law '" + std::string(name) + "'");
}

SpaceLabel GamowState::space_label() const noexcept {
  return kind == GamowKind::growing ? SpaceLabel::phi_minus_dual
                                    : SpaceLabel::phi_plus_dual;
}

EvolutionLaw GamowState::law() const noexcept {
  if (regime.value() == 0)
    return kind == GamowKind::growing ? EvolutionLaw::g0 : EvolutionLaw::d0;
  return kind == GamowKind::growing ? EvolutionLaw::g1 : EvolutionLaw::d1;
}

std::string_view GamowState::regime_name() const noexcept {
  return regime.value() == 0 ? "material" : "mental";
}

bool same_labels(const GamowState &a, const GamowState &b) noexcept {
  return a.kind == b.kind && a.regime == b.regime;
}

bool in_half_domain(EvolutionLaw law, double t) noexcept {
  if (!std::isfinite(t))
    return false;
  switch (law) {
  case EvolutionLaw::d0:
  case EvolutionLaw::d1:
    return t >= 0.0;
  case EvolutionLaw::g0:
  case EvolutionLaw::g1:
    return t <= 0.0;
  }
  return false;
}

complex evolve_decaying_r0(const ResonancePole &pole, double t) {
  require_domain(EvolutionLaw::d0, t);
  return law_amplitude(pole, t, -1.0, -1.0);
}

complex evolve_growing_r0(const ResonancePole &pole, double t) {
  require_domain(EvolutionLaw::g0, t);
  return law_amplitude(pole, t, -1.0, +1.0);
}

complex evolve_decaying_r1(const ResonancePole &pole, double t) {
  require_domain(EvolutionLaw::d1, t);
  return law_amplitude(pole, t, +1.0, -1.0);
}

complex evolve_growing_r1(const ResonancePole &pole, double t) {
  require_domain(EvolutionLaw::g1, t);
  return law_amplitude(pole, t, +1.0, +1.0);
}

complex evolve(EvolutionLaw law, const ResonancePole &pole, double t) {
  switch (law) {
  case EvolutionLaw::g0:
    return evolve_growing_r0(pole, t);
  case EvolutionLaw::d0:
    return evolve_decaying_r0(pole, t);
  case EvolutionLaw::g1:
    return evolve_growing_r1(pole, t);
  case EvolutionLaw::d1:
    return evolve_decaying_r1(pole, t);
  }
  throw std::logic_error("unreachable EvolutionLaw");
}

GamowState time_reverse(const GamowState &state) {
  // Phi_-^{r=0} (growing) -> Phi_+^{r=1} (decaying label |Z_R, r=1>) and back.
  GamowState out = state;
  out.regime = state.regime.flipped();
  out.kind = state.kind == GamowKind::growing ? GamowKind::decaying
                                              : GamowKind::growing;
  return out;
}

bool semigroup_compose_check(const ResonancePole &pole, EvolutionLaw law,
                             double t1, double t2) {
  require_domain(law, t1);
  require_domain(law, t2);
  const complex whole = evolve(law, pole, t1 + t2);
  const complex product = evolve(law, pole, t1) * evolve(law, pole, t2);
  return std::abs(whole - product) <= kSemigroupTol * std::abs(whole);
}

std::vector<EvolutionSample> evolution_series(EvolutionLaw law,
                                              const ResonancePole &pole,
                                              std::span<const double> t_grid) {
  for (double t : t_grid)
    require_domain(law, t);
  std::vector<EvolutionSample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const complex amp = evolve(law, pole, t);
    out.push_back({t, amp, std::norm(amp)});
  }
  return out;
}

std::vector<EvolutionSample> evolution_series(const GamowState &state,
                                              std::span<const double> t_grid) {
  return evolution_series(state.law(), state.pole, t_grid);
}

} // namespace gamow
