#include "tcon/geom/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "tcon/geom/group_ball.hpp"

namespace tcon {

Frame axis_frame(const MoebiusD& gamma, Complex near) {
  const double tr = gamma.trace();
  if (std::abs(tr) <= 2.0 + 1e-12) throw Error(ErrorKind::kDomain, "axis_frame needs |trace| > 2");
  const Eigen::Matrix2d m = (tr > 0 ? 1.0 : -1.0) * gamma.matrix();
  const double t = std::abs(tr);
  const double root = std::sqrt(t * t - 4.0);
  auto eigenvector = [&](double lambda) {
    Eigen::Vector2d v1(m(0, 1), lambda - m(0, 0));
    Eigen::Vector2d v2(lambda - m(1, 1), m(1, 0));
    return v1.norm() > v2.norm() ? v1 : v2;
  };
  const double expanding = 0.5 * (t + root);
  Eigen::Matrix2d h;
  h.col(0) = eigenvector(expanding);
  h.col(1) = eigenvector(1.0 / expanding);
  if (h.determinant() < 0) h.col(1) = -h.col(1);
  Frame frame{MoebiusD(h)};
  // Slide along the axis (the imaginary axis in the frame's own chart).
  const Complex w = mobius_apply(frame.g.inverse(), near);
  return frame_flow(frame, FrameField::X, std::log(std::abs(w)));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int root(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(int a, int b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return word_to_string(a) < word_to_string(b);
}

}  // namespace

GeodesicEnumeration enumerate_closed_geodesics(const FuchsianSurface& surface, double l_max,
                                               GeodesicOptions options) {
  if (l_max > options.length_cap) {
    throw Error(ErrorKind::kContract, "l_max exceeds the configured length cap");
  }
  GeodesicEnumeration out;
  const double rc = surface.circumradius();
  const Complex c = surface.center();
  const double radius = l_max + 2.0 * rc + 1e-9;
  const GroupBall ball(surface, radius, options.max_word_length);
  out.ball_size = ball.size();
  out.ball_radius = radius;
  out.truncated = ball.truncated();
  if (out.truncated) {
    out.warnings.push_back("word-length cap reached before the search radius; enumeration may be incomplete");
  }
  if (l_max <= 0.0) return out;

  // Every class has a representative whose axis meets the fundamental
  // polygon, i.e. passes within r_c of c, and those all lie in the ball.
  struct Candidate {
    int index;
    double length;
    double trace;
  };
  std::vector<Candidate> cands;
  std::vector<int> cand_of(ball.size(), -1);
  for (std::size_t i = 1; i < ball.size(); ++i) {
    const BallElement& e = ball[i];
    if (e.distance > radius) continue;
    const double t = e.g.abs_trace();
    if (t <= 2.0 + 1e-9) continue;
    const double len = translation_length(e.g);
    if (len > l_max + 1e-9) continue;
    const double cosh_axis = std::sinh(0.5 * e.distance) / std::sinh(0.5 * len);
    if (cosh_axis > std::cosh(rc) + 1e-9) continue;
    cand_of[i] = static_cast<int>(cands.size());
    cands.push_back({static_cast<int>(i), len, t});
  }

  // Conjugacy: traces agree, then search conjugators delta with
  // d(c, delta c) <= 2 r_c + length / 2.
  UnionFind uf(static_cast<int>(cands.size()));
  std::vector<int> by_distance(ball.size());
  std::iota(by_distance.begin(), by_distance.end(), 0);
  std::sort(by_distance.begin(), by_distance.end(),
            [&](int a, int b) { return ball[a].distance < ball[b].distance; });
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const MoebiusD& g = ball[cands[k].index].g;
    const double reach = 2.0 * rc + 0.5 * cands[k].length + 1e-9;
    for (int di : by_distance) {
      const BallElement& delta = ball[di];
      if (delta.distance > reach) break;
      if (di == 0) continue;
      const MoebiusD conj = delta.g * g * delta.g.inverse();
      const int j = ball.find(conj);
      if (j < 0 || cand_of[j] < 0) continue;
      if (std::abs(cands[cand_of[j]].trace - cands[k].trace) > 1e-9 * cands[k].trace) continue;
      uf.join(static_cast<int>(k), cand_of[j]);
    }
  }

  std::map<int, int> rep;  // class root -> candidate with the shortest word
  std::vector<Word> words(cands.size());
  for (std::size_t k = 0; k < cands.size(); ++k) words[k] = ball.word(cands[k].index);
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const int r = uf.root(static_cast<int>(k));
    auto it = rep.find(r);
    if (it == rep.end() || word_less(words[k], words[it->second])) rep[r] = static_cast<int>(k);
  }

  std::vector<int> by_length(cands.size());
  std::iota(by_length.begin(), by_length.end(), 0);
  std::sort(by_length.begin(), by_length.end(),
            [&](int a, int b) { return cands[a].length < cands[b].length; });
  const double shortest = cands.empty() ? 0.0 : cands[by_length.front()].length;

  for (const auto& [root, k] : rep) {
    const MoebiusD& g = ball[cands[k].index].g;
    const double len = cands[k].length;
    bool primitive = true;
    for (int m = 2; m * shortest <= len + 1e-9 && primitive; ++m) {
      const double target = len / m;
      auto lo = std::lower_bound(by_length.begin(), by_length.end(), target - 1e-7,
                                 [&](int a, double v) { return cands[a].length < v; });
      for (auto it = lo; it != by_length.end() && cands[*it].length <= target + 1e-7; ++it) {
        MoebiusD power;
        for (int p = 0; p < m; ++p) power = power * ball[cands[*it].index].g;
        if (approx_equal(power, g, 1e-8 * (1.0 + g.matrix().cwiseAbs().maxCoeff()))) {
          primitive = false;
          break;
        }
      }
    }
    if (!primitive) continue;
    out.geodesics.push_back({words[k], g, cands[k].trace, len, true, axis_frame(g, c)});
  }
  std::sort(out.geodesics.begin(), out.geodesics.end(),
            [](const ClosedGeodesic& a, const ClosedGeodesic& b) {
              if (std::abs(a.length - b.length) > 1e-9) return a.length < b.length;
              return word_less(a.word, b.word);
            });
  return out;
}

namespace {

void systole_dfs(const FuchsianSurface& surface, const Eigen::Matrix2d& m, int last, int depth,
                 int max_length, double& best) {
  const double t = std::abs(m.trace());
  if (depth > 0 && t > 2.0 + 1e-9) best = std::min(best, 2.0 * std::acosh(t / 2.0));
  if (depth == max_length) return;
  for (int l : surface.side_letters()) {
    if (depth > 0 && l == -last) continue;
    systole_dfs(surface, Eigen::Matrix2d(m * surface.letter(l).matrix()), l, depth + 1, max_length,
                best);
  }
}

}  // namespace

double brute_force_systole(const FuchsianSurface& surface, int max_length) {
  double best = std::numeric_limits<double>::infinity();
  systole_dfs(surface, Eigen::Matrix2d::Identity(), 0, 0, max_length, best);
  return best;
}

}  // namespace tcon
