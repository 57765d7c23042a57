#include "gamow/errors.hpp"
#include "gamow/spectral_tools.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace gamow {

namespace {

// The FFTW planner is not reentrant.
std::mutex fftw_planner_mutex;

std::vector<std::complex<double>> dft(std::vector<std::complex<double>> data) {
  static_assert(kFourierSign == -1, "FFTW_FORWARD carries e^{-2 pi i jm/n}");
  std::vector<std::complex<double>> out(data.size());
  auto *in_ptr = reinterpret_cast<fftw_complex *>(data.data());
  auto *out_ptr = reinterpret_cast<fftw_complex *>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), in_ptr, out_ptr,
                            FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

} // namespace

std::string_view to_string(HalfPlane hp) noexcept {
  return hp == HalfPlane::upper ? "upper" : "lower";
}

HardyReport hardy_check(const EnergySamples &samples, HalfPlane half_plane) {
  const auto &f = samples.values;
  const std::size_t n = f.size();
  if (n < 16)
    throw PreconditionError("hardy_check needs at least 16 samples");
  if (!(samples.e_max > samples.e_min))
    throw PreconditionError("hardy_check needs e_min < e_max");

  double peak = 0.0;
  for (const auto &v : f) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw PreconditionError("hardy_check samples must be finite");
    peak = std::max(peak, std::norm(v));
  }
  if (peak == 0.0)
    throw PreconditionError("hardy_check samples are identically zero");
  const double ends = std::max(std::norm(f.front()), std::norm(f.back()));
  if (ends > kEndDecayRatio * peak)
    throw PreconditionError("samples do not decay at the grid ends");

  // Bin m carries t_m = 2 pi m / (n dE); m > n/2 wraps to negative t. The
  // t = 0 and Nyquist bins are split evenly between the half-lines.
  const auto spectrum = dft(f);
  double positive = 0.0;
  double negative = 0.0;
  for (std::size_t m = 1; m < n; ++m) {
    const double p = std::norm(spectrum[m]);
    if (2 * m < n)
      positive += p;
    else if (2 * m > n)
      negative += p;
    else {
      positive += 0.5 * p;
      negative += 0.5 * p;
    }
  }
  const double zero_bin = std::norm(spectrum[0]);
  positive += 0.5 * zero_bin;
  negative += 0.5 * zero_bin;

  const double total = positive + negative;
  const double leakage = (half_plane == HalfPlane::upper ? negative : positive) / total;
  return {half_plane, leakage, leakage < kHardyMemberThreshold};
}

EnergySamples sample_single_pole(double e0, double gamma, double e_min,
                                 double e_max, int n) {
  if (!(gamma > 0.0))
    throw std::domain_error("pole width gamma must be positive");
  if (!(e_max > e_min) || n < 2)
    throw std::domain_error("sampling window needs e_min < e_max and n >= 2");
  EnergySamples s{e_min, e_max, std::vector<std::complex<double>>(static_cast<std::size_t>(n))};
  const std::complex<double> z(e0, -0.5 * gamma);
  for (int i = 0; i < n; ++i) {
    const double e = e_min + (e_max - e_min) * static_cast<double>(i) / (n - 1);
    s.values[static_cast<std::size_t>(i)] = 1.0 / (e - z);
  }
  return s;
}

EnergySamples conjugate(const EnergySamples &samples) {
  EnergySamples out = samples;
  for (auto &v : out.values)
    v = std::conj(v);
  return out;
}

} // namespace gamow
