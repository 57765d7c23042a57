#pragma once

#include <stdexcept>
#include <string>

namespace gamow {

/// Evaluation of a semigroup law outside the half-line on which it exists.
class HalfDomainError : public std::domain_error {
public:
  HalfDomainError(const std::string &law, double t)
      : std::domain_error("time t = " + std::to_string(t) +
                          " lies outside the half-domain of law " + law),
        law_(law), t_(t) {}

  const std::string &law() const noexcept { return law_; }
  double time() const noexcept { return t_; }

private:
  std::string law_;
  double t_;
};

/// A caller-side precondition failed (grid too coarse, packet not localized...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Nonlinear fit did not describe the data (no clean isolated resonance).
class FitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace gamow
