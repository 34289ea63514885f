#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tcon/geom/frame.hpp"
#include "tcon/geom/surface.hpp"

namespace tcon::testing {

inline const FuchsianSurface& bolza() {
  static const FuchsianSurface s = bolza_surface();
  return s;
}

/// Frames with base points in the polygon, away from the vertices.
inline std::vector<Frame> sample_frames(int n, unsigned seed, double max_disc = 0.8) {
  const FuchsianSurface& s = bolza();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Frame> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex w(2 * max_disc * u(rng) - max_disc, 2 * max_disc * u(rng) - max_disc);
    if (std::abs(w) > 0.95) continue;
    const Complex z = s.from_disc(w);
    if (!s.contains(z)) continue;
    out.push_back(Frame::at(z, 2 * kPi * u(rng)));
  }
  return out;
}

inline CMatrix rand_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  return m;
}

inline CMatrix rand_skew(int n, std::mt19937& rng) {
  const CMatrix m = rand_matrix(n, rng);
  return 0.5 * (m - m.adjoint());
}

}  // namespace tcon::testing
