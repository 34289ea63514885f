#include "tcon/geom/group_ball.hpp"

#include <cmath>
#include <limits>

namespace tcon {

namespace {
constexpr double kQuantum = 1e-6;
}

GroupBall::Key GroupBall::key_of(const MoebiusD& g, int da, int db) {
  return {static_cast<std::int64_t>(std::floor(g.a() / kQuantum)) + da,
          static_cast<std::int64_t>(std::floor(g.b() / kQuantum)) + db};
}

void GroupBall::insert(int index) { index_.emplace(key_of(elements_[index].g), index); }

int GroupBall::find(const MoebiusD& g) const {
  const double tol = 1e-9 * (1.0 + g.matrix().cwiseAbs().maxCoeff());
  // Neighbouring buckets only matter when an entry sits near a bucket edge.
  auto span = [](double x) {
    const double frac = x / kQuantum - std::floor(x / kQuantum);
    return std::pair<int, int>{frac < 1e-2 ? -1 : 0, frac > 1.0 - 1e-2 ? 1 : 0};
  };
  const auto [a_lo, a_hi] = span(g.a());
  const auto [b_lo, b_hi] = span(g.b());
  for (int da = a_lo; da <= a_hi; ++da) {
    for (int db = b_lo; db <= b_hi; ++db) {
      auto [lo, hi] = index_.equal_range(key_of(g, da, db));
      for (auto it = lo; it != hi; ++it) {
        if (sign_distance(elements_[it->second].g, g) <= tol) return it->second;
      }
    }
  }
  // The sign normalization is ambiguous when a vanishes; try the other sign.
  if (std::abs(g.a()) < 1e-8 * (1.0 + g.matrix().cwiseAbs().maxCoeff())) {
    const Eigen::Matrix2d neg = -g.matrix();
    for (int db = -1; db <= 1; ++db) {
      for (int da = -1; da <= 1; ++da) {
        const Key k{static_cast<std::int64_t>(std::floor(neg(0, 0) / kQuantum)) + da,
                    static_cast<std::int64_t>(std::floor(neg(0, 1) / kQuantum)) + db};
        auto [lo, hi] = index_.equal_range(k);
        for (auto it = lo; it != hi; ++it) {
          if (sign_distance(elements_[it->second].g, g) <= tol) return it->second;
        }
      }
    }
  }
  return -1;
}

GroupBall::GroupBall(const FuchsianSurface& surface, double radius, int max_length)
    : surface_(&surface), radius_(radius), max_length_(max_length) {
  const Complex c = surface.center();
  const double expand = radius + surface.circumradius() + 1e-9;
  elements_.push_back({MoebiusD::identity(), -1, 0, 0, 0.0});
  insert(0);
  const std::vector<int> letters = surface.side_letters();
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    const BallElement cur = elements_[head];
    if (cur.distance > expand) continue;
    if (cur.length >= max_length) {
      // Cut off by the word-length cap; only matters if a neighbour would
      // have been new and inside the expansion radius.
      if (std::isfinite(radius)) {
        for (int l : letters) {
          const MoebiusD next = cur.g * surface.letter(l);
          if (find(next) < 0 && hyperbolic_distance(c, mobius_apply(next, c)) <= expand) {
            truncated_ = true;
            break;
          }
        }
      }
      continue;
    }
    for (int l : letters) {
      if (cur.parent >= 0 && l == -cur.letter) continue;
      const MoebiusD next = cur.g * surface.letter(l);
      if (find(next) >= 0) continue;
      const double d = hyperbolic_distance(c, mobius_apply(next, c));
      if (d > expand) continue;
      elements_.push_back({next, static_cast<int>(head), l, cur.length + 1, d});
      insert(static_cast<int>(elements_.size()) - 1);
    }
  }
}

Word GroupBall::word(int index) const {
  Word w;
  for (int i = index; i > 0; i = elements_[i].parent) w.push_back(elements_[i].letter);
  return Word(w.rbegin(), w.rend());
}

GroupBall word_ball(const FuchsianSurface& surface, int max_length) {
  return GroupBall(surface, std::numeric_limits<double>::infinity(), max_length);
}

}  // namespace tcon
