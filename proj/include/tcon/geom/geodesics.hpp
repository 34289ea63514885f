#pragma once

#include <string>
#include <vector>

#include "tcon/geom/frame.hpp"
#include "tcon/geom/surface.hpp"

namespace tcon {

struct ClosedGeodesic {
  Word word;
  MoebiusD element;
  double trace;  // |trace|
  double length;
  bool primitive;
  Frame axis_frame;
};

/// Frame on the axis of a hyperbolic element, pointing in the translation
/// direction and based at the axis point closest to `near`.
/// flow_X(frame, length) = gamma * frame. Throws kDomain if |tr| <= 2.
Frame axis_frame(const MoebiusD& gamma, Complex near = kI);

struct GeodesicOptions {
  double length_cap = 10.0;
  int max_word_length = 1 << 20;
};

struct GeodesicEnumeration {
  std::vector<ClosedGeodesic> geodesics;  // sorted by length
  std::size_t ball_size = 0;
  double ball_radius = 0.0;
  bool truncated = false;  // word-length cap reached, completeness not certified
  std::vector<std::string> warnings;
};

/// One representative per conjugacy class of primitive hyperbolic elements
/// with translation length <= l_max. Orientation matters: gamma and its
/// inverse are distinct classes.
GeodesicEnumeration enumerate_closed_geodesics(const FuchsianSurface& surface, double l_max,
                                               GeodesicOptions options = {});

/// Shortest translation length among all reduced words up to `max_length`,
/// by direct depth-first enumeration.
double brute_force_systole(const FuchsianSurface& surface, int max_length);

}  // namespace tcon
