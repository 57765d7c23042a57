#pragma once
// Test oracles written independently of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Outside solution of the delta shell by direct matching. Inside u = sin(kr);
// outside u = A sin(kr) + B cos(kr) with u continuous and u' jumping by g u(a).
// Then S = (A + iB)/(A - iB) for u ~ (S e^{ikr} - e^{-ikr}) up to a constant.
inline cplx s_matrix_by_matching(double g, double a, double k) {
  const double s = std::sin(k * a);
  const double c = std::cos(k * a);
  // A sin + B cos = s, k(A cos - B sin) = k c + g s
  const double rhs = c + g * s / k;
  const double A = s * s + rhs * c;
  const double B = s * c - rhs * s;
  return cplx(A, B) / cplx(A, -B);
}

// D(k) = e^{-ika} + (g/k) sin(ka).
inline cplx denominator(double g, double a, cplx k) {
  return std::exp(cplx(0.0, -1.0) * k * a) + (g / k) * std::sin(k * a);
}

// Zeros of D found by scanning |D| on a dense lattice and zooming in on each
// local minimum with successively finer lattices (no derivatives).
inline std::vector<cplx> scan_zeros(double g, double a, double re_min, double re_max,
                                    double im_min, double im_max, int n_re, int n_im) {
  const double hr = (re_max - re_min) / n_re;
  const double hi = (im_max - im_min) / n_im;
  auto f = [&](double x, double y) { return std::abs(denominator(g, a, cplx(x, y))); };
  std::vector<std::vector<double>> v(n_re + 1, std::vector<double>(n_im + 1));
  for (int i = 0; i <= n_re; ++i)
    for (int j = 0; j <= n_im; ++j)
      v[i][j] = f(re_min + i * hr, im_min + j * hi);

  // Lattice minima, edges included: narrow poles hug Im k = 0.
  std::vector<cplx> zeros;
  for (int i = 0; i <= n_re; ++i)
    for (int j = 0; j <= n_im; ++j) {
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int ni = i + di, nj = j + dj;
          if ((di || dj) && ni >= 0 && ni <= n_re && nj >= 0 && nj <= n_im &&
              v[ni][nj] < v[i][j]) {
            is_min = false;
            break;
          }
        }
      if (!is_min)
        continue;
      double x = re_min + i * hr, y = im_min + j * hi;
      double sx = hr, sy = hi;
      for (int level = 0; level < 60; ++level) {
        double best = f(x, y), bx = x, by = y;
        for (int di = -4; di <= 4; ++di)
          for (int dj = -4; dj <= 4; ++dj) {
            const double px = x + di * sx / 4, py = y + dj * sy / 4;
            const double val = f(px, py);
            if (val < best) {
              best = val;
              bx = px;
              by = py;
            }
          }
        x = bx;
        y = by;
        sx *= 0.5;
        sy *= 0.5;
      }
      const bool inside = x > re_min && x < re_max && y > im_min && y < im_max;
      const bool duplicate = std::any_of(zeros.begin(), zeros.end(), [&](cplx z) {
        return std::abs(z - cplx(x, y)) < 1e-9;
      });
      if (inside && !duplicate && f(x, y) < 1e-8 * (1.0 + std::abs(g) / std::hypot(x, y)))
        zeros.emplace_back(x, y);
    }
  std::sort(zeros.begin(), zeros.end(),
            [](cplx p, cplx q) { return p.real() < q.real(); });
  return zeros;
}

// Bound-state kappas: sign changes of 2 kappa - |g| (1 - e^{-2 kappa a}) on a
// fine grid, refined by bisection.
inline std::vector<double> bound_kappas(double g, double a) {
  std::vector<double> out;
  if (g >= 0.0)
    return out;
  const double G = -g;
  auto h = [&](double x) { return 2.0 * x - G * (1.0 - std::exp(-2.0 * x * a)); };
  const int n = 20000;
  const double top = G; // h(G) = G + G e^{-2Ga} > 0
  for (int i = 0; i < n; ++i) {
    double lo = top * (i + 0.5) / n, hi = top * (i + 1.5) / n;
    if (hi > top)
      break;
    if (h(lo) * h(hi) > 0.0)
      continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(lo) * h(mid) <= 0.0 ? hi : lo) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// e^{-i Z t} for Z = E - i Gamma/2, via the complex exponential.
inline cplx decaying_amplitude(double e_r, double gamma, double t) {
  return std::exp(cplx(0.0, -1.0) * cplx(e_r, -0.5 * gamma) * t);
}

} // namespace oracle
