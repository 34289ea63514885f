#include "tcon/geom/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "tcon/gauss.hpp"

namespace tcon {

std::string word_to_string(const Word& word) {
  std::string out;
  for (int l : word) {
    const int k = std::abs(l) - 1;
    out.push_back(static_cast<char>(l > 0 ? 'a' + k : 'A' + k));
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word word;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch >= 'a' && ch <= 'z') {
      word.push_back(ch - 'a' + 1);
    } else if (ch >= 'A' && ch <= 'Z') {
      word.push_back(-(ch - 'A' + 1));
    } else {
      throw Error(ErrorKind::kParse, std::string("bad letter '") + ch + "' in word");
    }
  }
  return word;
}

Word inverse_word(const Word& word) {
  Word inv(word.rbegin(), word.rend());
  for (int& l : inv) l = -l;
  return inv;
}

namespace {

double wrap_near(double angle, double ref) {
  while (angle < ref - kPi) angle += 2.0 * kPi;
  while (angle > ref + kPi) angle -= 2.0 * kPi;
  return angle;
}

}  // namespace

FuchsianSurface::FuchsianSurface(std::vector<MoebiusD> generators, Word relation, int genus,
                                 Complex center)
    : generators_(std::move(generators)),
      relation_(std::move(relation)),
      genus_(genus),
      center_(center) {
  if (generators_.empty()) throw Error(ErrorKind::kConstruction, "surface needs generators");
  if (!(center_.imag() > 0.0)) throw Error(ErrorKind::kDomain, "center must lie in H");
  for (const auto& g : generators_) inverses_.push_back(g.inverse());
  for (int l : relation_) {
    if (l == 0 || std::abs(l) > rank()) throw Error(ErrorKind::kConstruction, "relation letter out of range");
  }
  build_polygon();
}

const MoebiusD& FuchsianSurface::letter(int l) const {
  if (l == 0 || std::abs(l) > rank()) throw Error(ErrorKind::kContract, "letter out of range");
  return l > 0 ? generators_[l - 1] : inverses_[-l - 1];
}

std::vector<int> FuchsianSurface::side_letters() const {
  std::vector<int> out;
  for (int k = 1; k <= rank(); ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

MoebiusD FuchsianSurface::evaluate(const Word& word) const {
  MoebiusD m;
  for (int l : word) m = m * letter(l);
  return m;
}

double FuchsianSurface::relation_defect() const {
  return sign_distance(evaluate(relation_), MoebiusD::identity());
}

Complex FuchsianSurface::to_disc(Complex z) const {
  return (z - center_) / (z - std::conj(center_));
}

Complex FuchsianSurface::from_disc(Complex w) const {
  return (center_ - std::conj(center_) * w) / (1.0 - w);
}

double FuchsianSurface::boundary_radius(const Side& side, double phi) {
  // Ray r e^{i phi} meets the circle |w - C| = rho orthogonal to the unit
  // circle where r^2 - 2 r Re(e^{i phi} conj C) + 1 = 0.
  const double p = std::real(std::polar(1.0, phi) * std::conj(side.circle_center));
  const double disc = p * p - 1.0;
  if (disc < 0.0) throw Error(ErrorKind::kDomain, "ray misses polygon side");
  return p - std::sqrt(disc);
}

void FuchsianSurface::build_polygon() {
  struct Bisector {
    int letter;
    double psi;
    Complex circle_center;
    double radius;
  };
  std::vector<Bisector> bis;
  for (int l : side_letters()) {
    const Complex image = mobius_apply(letter(l), center_);
    const Complex w = to_disc(image);
    const double dist = hyperbolic_distance(center_, image);
    const double m = std::tanh(dist / 4.0);
    const double cc = 0.5 * (m + 1.0 / m);
    const double rho = 0.5 * (1.0 / m - m);
    bis.push_back({l, std::arg(w), std::polar(cc, std::arg(w)), rho});
  }
  std::sort(bis.begin(), bis.end(), [](const Bisector& a, const Bisector& b) { return a.psi < b.psi; });

  const int n = static_cast<int>(bis.size());
  disc_vertices_.assign(n, Complex{});
  for (int k = 0; k < n; ++k) {
    const Bisector& b1 = bis[k];
    const Bisector& b2 = bis[(k + 1) % n];
    const Complex c1 = b1.circle_center;
    const Complex c2 = b2.circle_center;
    const double d = std::abs(c2 - c1);
    const double a = (b1.radius * b1.radius - b2.radius * b2.radius + d * d) / (2.0 * d);
    const double h2 = b1.radius * b1.radius - a * a;
    if (h2 < 0.0) throw Error(ErrorKind::kConstruction, "adjacent bisectors do not meet");
    const Complex e = (c2 - c1) / d;
    const Complex p1 = c1 + a * e + std::sqrt(h2) * kI * e;
    const Complex p2 = c1 + a * e - std::sqrt(h2) * kI * e;
    disc_vertices_[k] = std::abs(p1) < std::abs(p2) ? p1 : p2;
  }

  // Every vertex must lie on the center side of every bisector, otherwise some
  // side pairing does not contribute a side and the polygon is not supported.
  for (const Complex& v : disc_vertices_) {
    for (const Bisector& b : bis) {
      if (std::abs(v - b.circle_center) < b.radius - 1e-9) {
        throw Error(ErrorKind::kConstruction, "Dirichlet polygon has redundant side pairings");
      }
    }
  }

  sides_.clear();
  for (int k = 0; k < n; ++k) {
    const Complex v_prev = disc_vertices_[(k + n - 1) % n];
    const Complex v_next = disc_vertices_[k];
    const double begin = wrap_near(std::arg(v_prev), bis[k].psi);
    const double end = wrap_near(std::arg(v_next), bis[k].psi);
    sides_.push_back({bis[k].letter, bis[k].circle_center, bis[k].radius, begin, end});
  }

  // Area: the radial integral of 4 r / (1 - r^2)^2 is exact, the angular one
  // uses Gauss-Legendre on each sector.
  const auto [x, w] = gauss_legendre(40);
  area_ = 0.0;
  for (const Side& s : sides_) {
    const double half = 0.5 * (s.phi_end - s.phi_begin);
    const double mid = 0.5 * (s.phi_end + s.phi_begin);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = boundary_radius(s, mid + half * x[i]);
      area_ += w[i] * half * (2.0 / (1.0 - r * r) - 2.0);
    }
  }

  circumradius_ = 0.0;
  for (const Complex& v : disc_vertices_) {
    circumradius_ = std::max(circumradius_, hyperbolic_distance(center_, from_disc(v)));
  }
  inradius_ = 1e300;
  for (int l : side_letters()) {
    inradius_ = std::min(inradius_, 0.5 * hyperbolic_distance(center_, mobius_apply(letter(l), center_)));
  }
}

std::vector<Complex> FuchsianSurface::vertices() const {
  std::vector<Complex> out;
  for (const Complex& v : disc_vertices_) out.push_back(from_disc(v));
  return out;
}

bool FuchsianSurface::contains(Complex z, double tol) const {
  const double d0 = hyperbolic_distance(center_, z);
  for (int l : side_letters()) {
    // z is beyond the bisector of c and s(c) iff it is closer to s(c).
    if (hyperbolic_distance(mobius_apply(letter(l), center_), z) < d0 - tol) return false;
  }
  return true;
}

FuchsianSurface bolza_surface() {
  const double ch = 1.0 + std::sqrt(2.0);
  const double sh = std::sqrt(ch * ch - 1.0);
  const MoebiusD translation(ch + sh, 0.0, 0.0, ch - sh);
  std::vector<MoebiusD> gens;
  for (int k = 0; k < 4; ++k) {
    const MoebiusD rot = one_parameter_subgroup(FrameField::V, k * kPi / 4.0);
    gens.push_back(rot * translation * rot.inverse());
  }
  FuchsianSurface surface(std::move(gens), parse_word("aBcDAbCd"), 2, kI);
  verify_surface(surface);
  return surface;
}

void verify_surface(const FuchsianSurface& surface, double relation_tol, double area_tol) {
  const double rel = surface.relation_defect();
  const double area_err = std::abs(surface.area() - surface.gauss_bonnet_area());
  if (rel > relation_tol || area_err > area_tol) {
    std::ostringstream msg;
    msg << "surface verification failed: relation defect " << rel << ", area defect " << area_err;
    throw Error(ErrorKind::kConstruction, msg.str());
  }
}

DomainReduction reduce_to_domain(const FuchsianSurface& surface, Complex z, int max_steps) {
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::kDomain, "reduce_to_domain needs Im z > 0");
  const Complex c = surface.center();
  Complex cur = z;
  MoebiusD applied;  // cur = applied(z)
  Word applied_letters;
  for (int step = 0; step <= max_steps; ++step) {
    double best = cosh_distance(c, cur);
    int best_letter = 0;
    for (int l : surface.side_letters()) {
      const double d = cosh_distance(c, mobius_apply(surface.letter(l), cur));
      if (d < best * (1.0 - 1e-13)) {
        best = d;
        best_letter = l;
      }
    }
    if (best_letter == 0) {
      DomainReduction out;
      out.z0 = cur;
      out.element = applied.inverse();
      out.word = inverse_word(applied_letters);
      return out;
    }
    cur = mobius_apply(surface.letter(best_letter), cur);
    applied = surface.letter(best_letter) * applied;
    applied_letters.insert(applied_letters.begin(), best_letter);
  }
  throw Error(ErrorKind::kReduction, "reduce_to_domain exceeded max steps");
}

FrameReduction reduce_frame(const FuchsianSurface& surface, const Frame& frame, int max_steps) {
  const DomainReduction red = reduce_to_domain(surface, frame.base_point(), max_steps);
  return {Frame(red.element.inverse() * frame.g), red.element};
}

}  // namespace tcon
