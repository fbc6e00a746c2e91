#pragma once

// Certified enumeration of spherical classes of bounded mass.
//
// For a charge whose real and imaginary parts span a positive plane P, write
// x = x_P + x_N with x_N in the negative definite complement. Then
//   Q(x) = 2 x_P^2 - x^2 = x_P^2 - x_N^2
// is positive definite, and for every delta with delta^2 = -2
//   Q(delta) = 2 + 2 z^T G_P^{-1} z <= 2 (1 + C |Z(delta)|^2),
// with z = (Re Z(delta), Im Z(delta)) and C = tr(G_P)/det(G_P) >= lambda_max(G_P^{-1}).

#include <cstddef>
#include <vector>

#include "stablat/arith.hpp"
#include "stablat/charge.hpp"
#include "stablat/mukai.hpp"

namespace stablat {

struct PositivitySplit {
  RatMatrix plane_gram;  // G_P
  Rational C;
  RatMatrix Q;

  Rational q_value(const IntVector& x) const { return quadratic(Q, x); }
};

PositivitySplit positivity_split(const MukaiLattice& lattice, const CentralCharge& z);

/// 2 (1 + C M^2): radius of the Q-ball containing every spherical class of mass <= M.
Rational spherical_ball_bound(const PositivitySplit& split, const Rational& mass_bound);

struct EnumerationOptions {
  bool one_per_pair = false;  // keep only the lexicographically larger of {x, -x}
  unsigned threads = 0;       // 0: STABLAT_THREADS or hardware concurrency
};

/// Exactly the nonzero integer x with x^T Q x <= bound, sorted lexicographically.
/// Exact rational LDL with integer coordinate intervals; throws
/// Error(Precondition) if Q is not positive definite.
std::vector<IntVector> enumerate_short_vectors(const RatMatrix& q, const Rational& bound,
                                               const EnumerationOptions& options = {});

/// Every delta with delta^2 = -2 and |Z(delta)| <= M, sorted.
std::vector<MukaiVector> enumerate_spherical(const MukaiLattice& lattice, const CentralCharge& z,
                                             const Rational& mass_bound, const EnumerationOptions& options = {});

/// Thread cap from STABLAT_THREADS (falls back to hardware concurrency).
unsigned default_thread_count();

}  // namespace stablat
