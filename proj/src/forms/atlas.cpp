#include "tcon/forms/atlas.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/FFT>

#include "tcon/parallel.hpp"

namespace tcon {

namespace {

// Dense sample of the closed polygon in the disc chart, innermost first.
std::vector<Complex> domain_samples(const FuchsianSurface& s) {
  std::vector<Complex> out{s.center()};
  const int radial = 40;
  for (const auto& side : s.sides()) {
    const int angular = 40;
    for (int a = 0; a <= angular; ++a) {
      const double phi = side.phi_begin + (side.phi_end - side.phi_begin) * a / angular;
      const double rmax = FuchsianSurface::boundary_radius(side, phi);
      for (int r = 1; r <= radial; ++r) out.push_back(s.from_disc(std::polar(rmax * r / radial, phi)));
    }
  }
  return out;
}

}  // namespace

PoincareAtlas::PoincareAtlas(std::shared_ptr<const PoincareEvaluator> series, AtlasOptions options)
    : series_(std::move(series)), options_(options) {
  if (options_.degree >= options_.nodes) throw Error(ErrorKind::kContract, "atlas degree must be below node count");
  const FuchsianSurface& s = series_->surface();
  const double cover = std::cosh(options_.cover_radius);
  for (const Complex& z : domain_samples(s)) {
    bool covered = false;
    for (const Complex& p : centers_) {
      if (cosh_distance(p, z) <= cover) {
        covered = true;
        break;
      }
    }
    if (!covered) centers_.push_back(z);
  }

  const int k = series_->weight();
  const int n = options_.nodes;
  const double rs = std::tanh(0.5 * options_.sample_radius);
  const std::size_t seeds = series_->seed_count();
  coefficients_.assign(centers_.size(), {});
  std::vector<double> errs(centers_.size(), 0.0);
  parallel_for(centers_.size(), [&](std::size_t ci) {
    const Complex p = centers_[ci];
    const Complex scale = std::pow(Complex(0.0, 2.0 * p.imag()), k / 2);
    std::vector<std::vector<Complex>> samples(seeds, std::vector<Complex>(n));
    for (int j = 0; j < n; ++j) {
      const Complex w = std::polar(rs, 2.0 * kPi * j / n);
      const Complex z = (p - std::conj(p) * w) / (1.0 - w);
      const DomainReduction red = reduce_to_domain(s, z);
      const auto v = series_->evaluate(red.z0);
      const Complex jk = std::pow(red.element.cocycle(red.z0), k);
      const Complex factor = jk * scale * std::pow(1.0 - w, -k);
      for (std::size_t q = 0; q < seeds; ++q) samples[q][j] = v[q].value * factor;
      errs[ci] = std::max(errs[ci], v[0].err * std::pow(red.z0.imag(), 0.5 * k));
    }
    Eigen::FFT<double> fft;
    auto& coeffs = coefficients_[ci];
    coeffs.assign(seeds, std::vector<Complex>(options_.degree + 1));
    for (std::size_t q = 0; q < seeds; ++q) {
      std::vector<Complex> spectrum;
      fft.fwd(spectrum, samples[q]);
      double rpow = 1.0;
      for (int m = 0; m <= options_.degree; ++m) {
        coeffs[q][m] = spectrum[m] / (static_cast<double>(n) * rpow);
        rpow *= rs;
      }
    }
  });
  for (double e : errs) sample_error_ = std::max(sample_error_, e);
}

std::size_t PoincareAtlas::nearest(Complex z) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double d = std::norm(z - centers_[i]) / centers_[i].imag();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<FormJet> PoincareAtlas::jet(Complex z) const {
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::kDomain, "atlas needs Im z > 0");
  const std::size_t ci = nearest(z);
  const Complex p = centers_[ci];
  const double limit = std::cosh(options_.cover_radius + 0.25);
  if (cosh_distance(p, z) > limit) {
    throw Error(ErrorKind::kDomain, "atlas evaluated outside the fundamental domain");
  }
  const int k = series_->weight();
  const Complex pb = std::conj(p);
  const Complex shift = z - pb;
  const Complex w = (z - p) / shift;
  const Complex w1 = (p - pb) / (shift * shift);
  const Complex w2 = -2.0 * w1 / shift;
  // h(w) = (1-w)^k / (2 i Im p)^(k/2) and its w-derivatives
  const Complex inv_scale = std::pow(Complex(0.0, 2.0 * p.imag()), -(k / 2));
  const Complex om = 1.0 - w;
  const Complex h = std::pow(om, k) * inv_scale;
  const Complex h1 = -static_cast<double>(k) * std::pow(om, k - 1) * inv_scale;
  const Complex h2 = static_cast<double>(k * (k - 1)) * std::pow(om, k - 2) * inv_scale;

  std::vector<FormJet> out(coefficients_[ci].size());
  for (std::size_t q = 0; q < out.size(); ++q) {
    const auto& a = coefficients_[ci][q];
    Complex g = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t m = a.size(); m-- > 0;) {
      g2 = g2 * w + 2.0 * g1;
      g1 = g1 * w + g;
      g = g * w + a[m];
    }
    const Complex pw = g * h;
    const Complex pw1 = g1 * h + g * h1;
    const Complex pw2 = g2 * h + 2.0 * g1 * h1 + g * h2;
    out[q] = {pw, pw1 * w1, pw2 * w1 * w1 + pw1 * w2};
  }
  return out;
}

}  // namespace tcon
