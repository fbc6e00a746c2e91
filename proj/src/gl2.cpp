#include "stablat/gl2.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stablat/error.hpp"

namespace stablat {

namespace {

constexpr double kPi = std::numbers::pi;

// arg(T (cos pi t, sin pi t)) / pi in (-1, 1].
double image_angle(const std::array<double, 4>& t, double phase) {
  const double x = std::cos(kPi * phase), y = std::sin(kPi * phase);
  return std::atan2(t[2] * x + t[3] * y, t[0] * x + t[1] * y) / kPi;
}

double wrap_mod2(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  return r;
}

std::array<double, 4> to_doubles(const std::array<Rational, 4>& t) {
  return {to_double(t[0]), to_double(t[1]), to_double(t[2]), to_double(t[3])};
}

}  // namespace

Gl2Element::Gl2Element(std::array<Rational, 4> t, double f0) : t_(std::move(t)), f0_(f0) {
  const Rational det = t_[0] * t_[3] - t_[1] * t_[2];
  if (sgn(det) <= 0)
    throw_error(ErrorKind::Precondition, "GL2 element needs det(T) > 0, got " + to_string(det));
  if (!std::isfinite(f0_)) throw_error(ErrorKind::Precondition, "GL2 element needs a finite f(0)");
  const double residual = wrap_mod2(f0_ - image_angle(to_doubles(t_), 0.0));
  if (std::min(residual, 2.0 - residual) > kTolerance) {
    std::ostringstream os;
    os << "f(0) = " << f0_ << " is not a lift of the direction of T e_1 (residual " << residual << ")";
    throw_error(ErrorKind::Precondition, os.str());
  }
}

Gl2Element Gl2Element::identity() { return Gl2Element({1, 0, 0, 1}, 0.0); }

double Gl2Element::relabel(double phi) const {
  const double k = std::floor(phi);
  const double frac = phi - k;
  const auto t = to_doubles(t_);
  // The image of the upper half circle sweeps less than a half turn.
  double sweep = wrap_mod2(image_angle(t, frac) - image_angle(t, 0.0));
  if (sweep >= 1.5) sweep -= 2.0;
  return f0_ + sweep + k;
}

Gl2Element Gl2Element::inverse() const {
  const Rational det = t_[0] * t_[3] - t_[1] * t_[2];
  const std::array<Rational, 4> inv{t_[3] / det, -t_[1] / det, -t_[2] / det, t_[0] / det};
  const double c = image_angle(to_doubles(inv), 0.0);
  // f(c) is an even integer up to rounding; shift c so that f(c) = 0.
  const double fc = relabel(c);
  const double even = 2.0 * std::round(fc / 2.0);
  return Gl2Element(inv, c - even);
}

double Gl2Element::inverse_relabel(double psi) const { return inverse().relabel(psi); }

Gl2Element gl2_compose(const Gl2Element& a, const Gl2Element& b) {
  const auto& x = a.matrix();
  const auto& y = b.matrix();
  const std::array<Rational, 4> t{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                  x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  return Gl2Element(t, a.relabel(b.f0()));
}

CentralCharge gl2_apply(const Gl2Element& g, const CentralCharge& z) {
  const auto& t = g.matrix();
  const Rational det = t[0] * t[3] - t[1] * t[2];
  const Rational a = t[3] / det, b = -t[1] / det, c = -t[2] / det, d = t[0] / det;
  RatVector re(z.dimension()), im(z.dimension());
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    re[i] = a * z.re()[i] + b * z.im()[i];
    im[i] = c * z.re()[i] + d * z.im()[i];
  }
  return CentralCharge(std::move(re), std::move(im));
}

double gl2_relabel(const Gl2Element& g, double phi) { return g.relabel(phi); }

}  // namespace stablat
