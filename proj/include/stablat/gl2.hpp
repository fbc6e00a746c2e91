#pragma once

// Elements of the universal cover of GL+(2,R) acting on stability data:
// (Z, P) . g = (T^{-1} o Z, P o f), where f : R -> R is the increasing lift of
// the circle map induced by T, i.e. exp(i pi f(phi)) is a positive multiple of
// T exp(i pi phi), and f(phi + 1) = f(phi) + 1. An object of phase psi gets
// phase f^{-1}(psi) after the action.

#include <array>

#include "stablat/arith.hpp"
#include "stablat/charge.hpp"

namespace stablat {

class Gl2Element {
 public:
  /// T given row-major as {t00, t01, t10, t11}; f0 = f(0). Throws
  /// Error(Precondition) if det T <= 0 or f0 is not a lift of T e_1.
  Gl2Element(std::array<Rational, 4> t, double f0);

  static Gl2Element identity();

  const std::array<Rational, 4>& matrix() const { return t_; }
  double f0() const { return f0_; }

  /// f(phi)
  double relabel(double phi) const;
  /// f^{-1}(psi): the phase after the action of an object of phase psi.
  double inverse_relabel(double psi) const;

  Gl2Element inverse() const;

  static constexpr double kTolerance = 1e-12;

 private:
  std::array<Rational, 4> t_;
  double f0_;
};

/// Group law in the order of right actions: sigma.(a*b) = (sigma.a).b.
Gl2Element gl2_compose(const Gl2Element& a, const Gl2Element& b);
CentralCharge gl2_apply(const Gl2Element& g, const CentralCharge& z);
double gl2_relabel(const Gl2Element& g, double phi);

}  // namespace stablat
