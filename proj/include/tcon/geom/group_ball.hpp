#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tcon/geom/surface.hpp"

namespace tcon {

struct BallElement {
  MoebiusD g;
  int parent;       // index of the element this one extends, -1 for the identity
  int letter;       // g = elements[parent].g * letter(letter)
  int length;       // word length along the search tree
  double distance;  // d(c, g c) for the surface center c
};

/// Breadth-first enumeration of group elements by right multiplication with
/// side pairings, pruned by displacement of the surface center.
///
/// Every element with d(c, g c) <= radius is found: a geodesic segment from c
/// to g c crosses a chain of tiles whose centers stay within radius + r_c of
/// c, where r_c is the circumradius, and consecutive tiles differ by a side
/// pairing. Elements up to radius + r_c are therefore kept as well. The
/// search also stops at `max_length`; `truncated()` reports whether that cap
/// cut off any element that the distance criterion would have expanded.
class GroupBall {
 public:
  GroupBall(const FuchsianSurface& surface, double radius, int max_length = 1 << 20);

  const std::vector<BallElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const BallElement& operator[](std::size_t i) const { return elements_[i]; }

  double radius() const { return radius_; }
  bool truncated() const { return truncated_; }
  int max_length() const { return max_length_; }

  Word word(int index) const;
  /// Index of g in the ball or -1.
  int find(const MoebiusD& g) const;

 private:
  struct Key {
    std::int64_t a, b;
    bool operator==(const Key& o) const { return a == o.a && b == o.b; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::int64_t>()(k.a * 1000003 + k.b);
    }
  };
  static Key key_of(const MoebiusD& g, int da = 0, int db = 0);
  void insert(int index);

  const FuchsianSurface* surface_;
  double radius_;
  int max_length_;
  bool truncated_ = false;
  std::vector<BallElement> elements_;
  std::unordered_multimap<Key, int, KeyHash> index_;
};

/// All elements whose reduced word length is at most `max_length`.
GroupBall word_ball(const FuchsianSurface& surface, int max_length);

}  // namespace tcon
