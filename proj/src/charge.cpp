#include "stablat/charge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stablat/enumerate.hpp"
#include "stablat/error.hpp"

namespace stablat {

CentralCharge::CentralCharge(RatVector re, RatVector im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != im_.size())
    throw_error(ErrorKind::Input, "central charge: real and imaginary parts differ in length");
  if (re_.size() < 3) throw_error(ErrorKind::Input, "central charge needs at least 3 Mukai coordinates");
}

void check_exp_params(const MukaiLattice& lattice, const AmpleData& ample, const ExpParams& p) {
  if (p.B.size() != lattice.ns_rank() || p.omega.size() != lattice.ns_rank())
    throw_error(ErrorKind::Input, "B and omega need " + std::to_string(lattice.ns_rank()) + " coefficients");
  const Rational w2 = lattice.ns_product(p.omega, p.omega);
  if (sgn(w2) <= 0)
    throw_error(ErrorKind::Precondition, "omega is not positive: omega.omega = " + to_string(w2) + " <= 0");
  const Rational wh = lattice.ns_product(p.omega, to_rational(ample.h));
  if (sgn(wh) <= 0)
    throw_error(ErrorKind::Precondition,
                "omega is not in the positive cone of h: omega.h = " + to_string(wh) + " <= 0");
}

CentralCharge standard_charge(const MukaiLattice& lattice, const AmpleData& ample, const ExpParams& p) {
  lattice.check_ample(ample);
  check_exp_params(lattice, ample, p);
  const Rational b2 = lattice.ns_product(p.B, p.B);
  const Rational w2 = lattice.ns_product(p.omega, p.omega);
  const Rational bw = lattice.ns_product(p.B, p.omega);
  RatVector re{1}, im{0};
  re.insert(re.end(), p.B.begin(), p.B.end());
  im.insert(im.end(), p.omega.begin(), p.omega.end());
  re.push_back((b2 - w2) / 2);
  im.push_back(bw);
  return CentralCharge(std::move(re), std::move(im));
}

ExactComplex evaluate(const MukaiLattice& lattice, const CentralCharge& z, const MukaiVector& v) {
  return {lattice.pairing(z.re(), v), lattice.pairing(z.im(), v)};
}

Phase principal_phase(const ExactComplex& z) {
  const int sr = sgn(z.re), si = sgn(z.im);
  if (sr == 0 && si == 0) throw_error(ErrorKind::HoleClass, "Z(v) = 0: the class lies on a hole delta-perp");
  if (si == 0) return sr < 0 ? Phase{1.0, true} : Phase{2.0, false};
  if (sr == 0) return si > 0 ? Phase{0.5, false} : Phase{1.5, false};
  double phi = std::atan2(to_double(z.im), to_double(z.re)) / std::numbers::pi;
  if (phi <= 0.0) phi += 2.0;
  return {phi, false};
}

Phase principal_phase(const MukaiLattice& lattice, const CentralCharge& z, const MukaiVector& v) {
  return principal_phase(evaluate(lattice, z, v));
}

PlaneTest is_positive_plane(const MukaiLattice& lattice, const CentralCharge& z) {
  RatMatrix g(2, 2);
  g(0, 0) = lattice.pairing(z.re(), z.re());
  g(0, 1) = lattice.pairing(z.re(), z.im());
  g(1, 0) = g(0, 1);
  g(1, 1) = lattice.pairing(z.im(), z.im());
  const bool positive = sgn(g(0, 0)) > 0 && sgn(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) > 0;
  return {positive, g};
}

bool same_component(const MukaiLattice& lattice, const CentralCharge& z, const CentralCharge& ref) {
  if (!is_positive_plane(lattice, z).positive || !is_positive_plane(lattice, ref).positive)
    throw_error(ErrorKind::Precondition, "same_component needs two positive planes");
  const Rational m00 = lattice.pairing(z.re(), ref.re());
  const Rational m01 = lattice.pairing(z.re(), ref.im());
  const Rational m10 = lattice.pairing(z.im(), ref.re());
  const Rational m11 = lattice.pairing(z.im(), ref.im());
  const Rational det = m00 * m11 - m01 * m10;
  if (sgn(det) == 0) throw_error(ErrorKind::OrthogonalPlanes, "mutual pairing matrix is singular");
  return sgn(det) > 0;
}

ChargeKernel charge_kernel(const MukaiLattice& lattice, const CentralCharge& z) {
  const RatMatrix m = lattice.mukai_gram();
  // Row j of the functional: <Omega, e_j>.
  const std::vector<IntVector> rows{clear_denominators(m * z.re()), clear_denominators(m * z.im())};
  ChargeKernel out;
  out.basis = integer_kernel(rows, lattice.dimension());
  const std::size_t k = out.basis.size();
  out.gram = RatMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.gram(i, j) = bilinear(m, to_rational(out.basis[i]), to_rational(out.basis[j]));
  return out;
}

std::vector<MukaiVector> hole_classes(const MukaiLattice& lattice, const CentralCharge& z) {
  if (!is_positive_plane(lattice, z).positive)
    throw_error(ErrorKind::Precondition, "hole_classes needs a charge spanning a positive plane");
  const ChargeKernel kernel = charge_kernel(lattice, z);
  std::vector<MukaiVector> out;
  if (kernel.basis.empty()) return out;
  // The kernel is the orthogonal complement of a positive plane, so -gram is
  // positive definite and (-2)-classes are its vectors of norm exactly 2.
  const RatMatrix neg = Rational(-1) * kernel.gram;
  for (const IntVector& y : enumerate_short_vectors(neg, 2)) {
    if (quadratic(neg, y) != 2) continue;
    IntVector x(lattice.dimension());
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[i] * kernel.basis[i][j];
    out.push_back(MukaiVector::from_coords(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool heart_contains(const MukaiLattice& lattice, const ExpParams& p, const TwoTermSheafDatum& e) {
  const Rational bw = lattice.ns_product(p.B, p.omega);
  const bool lower_ok = std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, ZeroSheaf>) return true;
        else return h.mu_max <= bw;
      },
      e.hminus);
  const bool upper_ok = std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, TorsionSheaf>) return true;
        else return h.mu_min > bw;
      },
      e.hzero);
  return lower_ok && upper_ok;
}

AdmissibilityReport standard_admissible(const MukaiLattice& lattice, const AmpleData& ample, const ExpParams& p,
                                        const Rational& mass_bound) {
  const CentralCharge z = standard_charge(lattice, ample, p);
  AdmissibilityReport report;
  report.omega_squared = lattice.ns_product(p.omega, p.omega);
  report.sufficient = report.omega_squared > 2;
  report.mass_bound = mass_bound;
  for (const MukaiVector& delta : enumerate_spherical(lattice, z, mass_bound)) {
    if (sgn(delta.r) < 1) continue;
    const ExactComplex zd = evaluate(lattice, z, delta);
    if (sgn(zd.im) == 0 && sgn(zd.re) <= 0) report.violations.push_back({delta, zd, sgn(zd.re) == 0});
  }
  return report;
}

CentralCharge charge_from_values(const MukaiLattice& lattice, const std::vector<MukaiVector>& classes,
                                 const std::vector<ExactComplex>& values) {
  if (classes.size() != values.size())
    throw_error(ErrorKind::Input, "charge_from_values: classes and values differ in count");
  const std::size_t n = lattice.dimension();
  const RatMatrix m = lattice.mukai_gram();

  // Rows (M v)^T, reduced incrementally to test independence.
  std::vector<RatVector> rows, echelon;
  std::vector<ExactComplex> rhs;
  auto try_add = [&](const RatVector& v) {
    RatVector r = v;
    for (const RatVector& e : echelon) {
      std::size_t lead = 0;
      while (sgn(e[lead]) == 0) ++lead;
      if (sgn(r[lead]) != 0) {
        const Rational f = r[lead] / e[lead];
        for (std::size_t j = 0; j < n; ++j) r[j] -= f * e[j];
      }
    }
    if (std::all_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) == 0; })) return false;
    echelon.push_back(r);
    // keep echelon sorted by leading index so the reduction stays valid
    std::sort(echelon.begin(), echelon.end(), [](const RatVector& a, const RatVector& b) {
      auto lead = [](const RatVector& x) {
        std::size_t i = 0;
        while (i < x.size() && sgn(x[i]) == 0) ++i;
        return i;
      };
      return lead(a) < lead(b);
    });
    return true;
  };

  for (std::size_t i = 0; i < classes.size(); ++i) {
    lattice.check_dimension(classes[i]);
    const RatVector row = m * classes[i].rational_coords();
    if (!try_add(row))
      throw_error(ErrorKind::Input, "charge_from_values: classes are linearly dependent");
    rows.push_back(row);
    rhs.push_back(values[i]);
  }
  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    RatVector e(n);
    e[j] = 1;
    const RatVector row = m * e;
    if (try_add(row)) {
      rows.push_back(row);
      rhs.push_back({0, 0});
    }
  }
  const RatMatrix inv = inverse(RatMatrix::from_rows(rows));
  RatVector re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = rhs[i].re;
    im[i] = rhs[i].im;
  }
  return CentralCharge(inv * re, inv * im);
}

}  // namespace stablat
