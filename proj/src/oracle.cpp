#include "stablat/oracle.hpp"

#include <algorithm>

#include "stablat/enumerate.hpp"
#include "stablat/error.hpp"

namespace stablat::oracle {

IntVector box_radii(const RatMatrix& q, const Rational& bound) {
  const RatMatrix inv = inverse(q);
  IntVector r(q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (sgn(inv(i, i)) <= 0) throw_error(ErrorKind::Precondition, "box oracle needs a positive definite form");
    r[i] = floor_sqrt(bound * inv(i, i));
  }
  return r;
}

namespace {

// Odometer over the box [-r_i, r_i].
template <typename F>
void for_each_in_box(const IntVector& radii, F&& visit) {
  const std::size_t n = radii.size();
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -radii[i];
  for (;;) {
    visit(x);
    std::size_t i = 0;
    while (i < n && x[i] == radii[i]) {
      x[i] = -radii[i];
      ++i;
    }
    if (i == n) return;
    ++x[i];
  }
}

}  // namespace

std::vector<IntVector> box_short_vectors(const RatMatrix& q, const Rational& bound) {
  std::vector<IntVector> out;
  if (sgn(bound) < 0) return out;
  for_each_in_box(box_radii(q, bound), [&](const IntVector& x) {
    if (std::all_of(x.begin(), x.end(), [](const Integer& v) { return sgn(v) == 0; })) return;
    if (quadratic(q, x) <= bound) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MukaiVector> box_spherical(const MukaiLattice& lattice, const CentralCharge& z, const Rational& mass_bound) {
  const PositivitySplit split = positivity_split(lattice, z);
  const Rational m2 = mass_bound * mass_bound;
  std::vector<MukaiVector> out;
  for_each_in_box(box_radii(split.Q, spherical_ball_bound(split, mass_bound)), [&](const IntVector& x) {
    const MukaiVector v = MukaiVector::from_coords(x);
    if (lattice.pairing(v, v) != -2) return;
    if (evaluate(lattice, z, v).norm_squared() > m2) return;
    out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace stablat::oracle
