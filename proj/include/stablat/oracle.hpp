#pragma once

// Brute-force cross-checks: scan the axis-aligned box around the ellipsoid
// x^T Q x <= R, with half-widths sqrt(R (Q^{-1})_ii).

#include <vector>

#include "stablat/arith.hpp"
#include "stablat/charge.hpp"
#include "stablat/mukai.hpp"

namespace stablat::oracle {

IntVector box_radii(const RatMatrix& q, const Rational& bound);

/// Nonzero x in the box with x^T Q x <= bound, sorted.
std::vector<IntVector> box_short_vectors(const RatMatrix& q, const Rational& bound);

/// All delta in the box of the spherical ball with delta^2 = -2 and
/// |Z(delta)| <= M, sorted. No Q-filter is applied inside the box.
std::vector<MukaiVector> box_spherical(const MukaiLattice& lattice, const CentralCharge& z, const Rational& mass_bound);

}  // namespace stablat::oracle
