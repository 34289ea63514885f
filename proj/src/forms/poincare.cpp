#include "tcon/forms/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tcon {

namespace {

Complex ipow(Complex base, int e) {
  Complex r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

PoincareEvaluator::PoincareEvaluator(const FuchsianSurface& surface, int weight,
                                     std::vector<std::vector<Complex>> seeds, int truncation,
                                     double drop_tolerance)
    : surface_(&surface), weight_(weight), seeds_(std::move(seeds)), truncation_(truncation) {
  check_weight();
  if (seeds_.empty()) throw Error(ErrorKind::kContract, "PoincareEvaluator needs at least one seed");
  if (truncation_ < 1) throw Error(ErrorKind::kContract, "truncation must be >= 1");
  if (!(drop_tolerance > 0.0)) throw Error(ErrorKind::kContract, "drop tolerance must be positive");
  for (const auto& s : seeds_) {
    double m = 0.0;
    for (const Complex& c : s) m += std::abs(c);
    qmax_ = std::max(qmax_, m);
  }
  const double rc = surface.circumradius();
  const double e = 0.5 * weight_ - 1.0;
  // tail(R) at delta = rc equals the drop tolerance; capped so that weight 4
  // falls back on the word-length cap instead of a huge ball
  const double log_scale = std::log(qmax_ / (4.0 * e)) + weight_ * std::log(2.0) + 0.5 * weight_ * rc;
  radius_ = std::min((log_scale - std::log(drop_tolerance)) / e, 12.0);
  const GroupBall ball(surface, radius_, truncation_);
  length_limited_ = ball.truncated();
  for (const BallElement& el : ball.elements()) {
    if (el.distance > radius_) continue;
    terms_.push_back({el.g.a(), el.g.b(), el.g.c(), el.g.d(), el.length});
  }
}

PoincareEvaluator::PoincareEvaluator(const FuchsianSurface& surface, const PoincareSeries& series)
    : PoincareEvaluator(surface, series.weight, {series.seed}, series.truncation,
                        series.drop_tolerance) {}

void PoincareEvaluator::check_weight() const {
  if (weight_ < 4 || weight_ % 2 != 0) {
    throw Error(ErrorKind::kContract, "Poincare series weight must be even and >= 4");
  }
}

std::vector<SeriesValue> PoincareEvaluator::evaluate(Complex z) const {
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::kDomain, "Poincare series needs Im z > 0");
  const Complex c0 = surface_->center();
  const Complex c0bar = std::conj(c0);
  const double yc = c0.imag();
  const int k = weight_;
  const double norm = std::pow(yc, -0.5 * k);
  const Complex two_i_yc(0.0, 2.0 * yc);
  const double yk = std::pow(z.imag(), 0.5 * k);

  const std::size_t ns = seeds_.size();
  std::vector<SeriesValue> out(ns);
  std::vector<double> shells(truncation_ + 1, 0.0);
  for (const Term& t : terms_) {
    const Complex j = t.c * z + t.d;
    const Complex zeta = (t.a * z + t.b) / j;
    const Complex shifted = zeta - c0bar;
    const Complex inv_shift = 1.0 / shifted;
    const Complex w = (zeta - c0) * inv_shift;
    const Complex factor = norm * ipow(two_i_yc * inv_shift, k);
    const Complex jinv = 1.0 / j;
    const Complex jk = ipow(jinv, k);
    const Complex dw = two_i_yc * inv_shift * inv_shift;
    for (std::size_t s = 0; s < ns; ++s) {
      const auto& q = seeds_[s];
      Complex qv = 0.0, dq = 0.0;
      for (std::size_t m = q.size(); m-- > 0;) {
        dq = dq * w + qv;
        qv = qv * w + q[m];
      }
      const Complex seed = qv * factor;
      const Complex dseed = (dq * dw - static_cast<double>(k) * qv * inv_shift) * factor;
      const Complex term = jk * seed;
      out[s].value += term;
      out[s].derivative += jk * (jinv * jinv * dseed - static_cast<double>(k) * t.c * jinv * seed);
      if (s == 0) shells[t.length] += std::abs(term) * yk;
    }
  }

  double err = 0.0;
  // empty outer shells: the cap removed nothing inside the radius
  const bool cap_binds = length_limited_ && (shells[truncation_] > 0.0 || shells[truncation_ - 1] > 0.0);
  if (cap_binds && truncation_ >= 3) {
    const double s2 = shells[truncation_ - 2], s1 = shells[truncation_ - 1], s0 = shells[truncation_];
    if (!(s0 < s1 && s1 < s2)) {
      std::ostringstream msg;
      msg << "Poincare shell sums not decaying: " << s2 << ", " << s1 << ", " << s0;
      throw Error(ErrorKind::kConvergence, msg.str());
    }
    // Shell ratios are not monotone while words are shorter than half the
    // relator, so the geometric extrapolation uses a ratio of at least 1/2.
    const double r = std::max({0.5, s0 / s1, s1 / s2});
    err = s0 * r / (1.0 - r);
  } else if (cap_binds) {
    err = shells[truncation_];
  } else {
    const double delta = hyperbolic_distance(c0, z);
    if (delta > radius_ - 2.0) {
      std::ostringstream msg;
      msg << "point at distance " << delta << " from the center is outside the summation ball";
      throw Error(ErrorKind::kConvergence, msg.str());
    }
    const double e = 0.5 * k - 1.0;
    err = qmax_ * std::exp(k * std::log(2.0) + 0.5 * k * delta - e * radius_) / (4.0 * e);
  }
  for (auto& v : out) v.err = err / yk;
  return out;
}

std::vector<double> PoincareEvaluator::shell_sums(Complex z) const {
  const Complex c0 = surface_->center();
  const int k = weight_;
  std::vector<double> shells(truncation_ + 1, 0.0);
  for (const Term& t : terms_) {
    const Complex j = t.c * z + t.d;
    const Complex zeta = (t.a * z + t.b) / j;
    const Complex w = (zeta - c0) / (zeta - std::conj(c0));
    Complex qv = 0.0;
    for (std::size_t m = seeds_[0].size(); m-- > 0;) qv = qv * w + seeds_[0][m];
    // invariant norm of the term: |q(w)| (1 - |w|^2)^(k/2)
    shells[t.length] += std::abs(qv) * std::pow(1.0 - std::norm(w), 0.5 * k);
  }
  return shells;
}

SeriesValue poincare_eval(const PoincareEvaluator& series, Complex z, std::size_t seed) {
  return series.evaluate(z).at(seed);
}

CP1Point meromorphic_map(const PoincareEvaluator& series, Complex z) {
  if (series.seed_count() < 2) throw Error(ErrorKind::kContract, "meromorphic_map needs two seeds");
  const auto v = series.evaluate(z);
  const double yk = std::pow(z.imag(), 0.5 * series.weight());
  const double m0 = std::abs(v[0].value) * yk, m1 = std::abs(v[1].value) * yk;
  if (m0 < 1e-13 && m1 < 1e-13) throw Error(ErrorKind::kIndeterminate, "both Poincare series vanish");
  const double n = std::hypot(std::abs(v[0].value), std::abs(v[1].value));
  return {v[0].value / n, v[1].value / n};
}

double cp1_distance(const CP1Point& a, const CP1Point& b) {
  // |a ^ b| for unit vectors; avoids the cancellation in sqrt(1 - |<a,b>|^2)
  return std::abs(a.z0 * b.z1 - a.z1 * b.z0);
}

}  // namespace tcon
