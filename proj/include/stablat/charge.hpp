#pragma once

// Central charges Z(v) = <Omega_re, v> + i <Omega_im, v> on the Mukai lattice,
// the exponential family exp(B + i omega), positivity regions and the standard
// heart test.

#include <string>
#include <variant>
#include <vector>

#include "stablat/arith.hpp"
#include "stablat/mukai.hpp"

namespace stablat {

/// Exact complex number with rational parts.
struct ExactComplex {
  Rational re;
  Rational im;

  Rational norm_squared() const { return re * re + im * im; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
};

class CentralCharge {
 public:
  CentralCharge(RatVector re, RatVector im);

  const RatVector& re() const { return re_; }
  const RatVector& im() const { return im_; }
  std::size_t dimension() const { return re_.size(); }

  friend bool operator==(const CentralCharge&, const CentralCharge&) = default;

 private:
  RatVector re_;
  RatVector im_;
};

/// B + i omega with NS coefficients in the Gram basis.
struct ExpParams {
  RatVector B;
  RatVector omega;
};

/// Throws Error(Precondition) naming the failed inequality.
void check_exp_params(const MukaiLattice& lattice, const AmpleData& ample, const ExpParams& p);

/// Omega_re = (1, B, (B^2 - w^2)/2), Omega_im = (0, w, B.w).
CentralCharge standard_charge(const MukaiLattice& lattice, const AmpleData& ample, const ExpParams& p);

ExactComplex evaluate(const MukaiLattice& lattice, const CentralCharge& z, const MukaiVector& v);

struct Phase {
  double value;  // in (0, 2]
  bool on_negative_real_axis;
};

/// Unique phi in (0,2] with z in exp(i pi phi) R_{>0}. Axis cases are exact.
/// Throws Error(HoleClass) for z = 0.
Phase principal_phase(const ExactComplex& z);
Phase principal_phase(const MukaiLattice& lattice, const CentralCharge& z, const MukaiVector& v);

struct PlaneTest {
  bool positive;
  RatMatrix gram;  // 2x2 Gram matrix of (Omega_re, Omega_im)
};

PlaneTest is_positive_plane(const MukaiLattice& lattice, const CentralCharge& z);

/// Same oriented component of positive planes, decided by the sign of
/// det <basis_j(z), basis_k(ref)>.
bool same_component(const MukaiLattice& lattice, const CentralCharge& z, const CentralCharge& ref);

/// All (-2)-classes delta with Z(delta) = 0, canonically sorted.
std::vector<MukaiVector> hole_classes(const MukaiLattice& lattice, const CentralCharge& z);

/// Z-basis of ker(Z) in N(X) together with the restricted Mukai form.
struct ChargeKernel {
  std::vector<IntVector> basis;
  RatMatrix gram;
};
ChargeKernel charge_kernel(const MukaiLattice& lattice, const CentralCharge& z);

// Two-term complexes H^-1[1] -> E -> H^0, with slopes measured against omega.
struct ZeroSheaf {};
struct TorsionFree {
  Rational mu_max;
};
struct TorsionSheaf {};
struct WithSlopes {
  Rational mu_min;
};

struct TwoTermSheafDatum {
  std::string name;
  std::variant<ZeroSheaf, TorsionFree> hminus;
  std::variant<TorsionSheaf, WithSlopes> hzero;
};

bool heart_contains(const MukaiLattice& lattice, const ExpParams& p, const TwoTermSheafDatum& e);

struct AdmissibilityViolation {
  MukaiVector delta;
  ExactComplex z;
  bool hole;  // Z(delta) = 0

  friend bool operator==(const AdmissibilityViolation&, const AdmissibilityViolation&) = default;
};

struct AdmissibilityReport {
  bool sufficient;          // omega^2 > 2
  Rational omega_squared;
  Rational mass_bound;
  std::vector<AdmissibilityViolation> violations;

  friend bool operator==(const AdmissibilityReport&, const AdmissibilityReport&) = default;
};

/// Sufficient test omega^2 > 2 plus the class-level necessary check: every
/// spherical delta with r >= 1, |Z(delta)| <= M and Z(delta) in R_{<=0}.
AdmissibilityReport standard_admissible(const MukaiLattice& lattice, const AmpleData& ample, const ExpParams& p,
                                        const Rational& mass_bound);

/// Solves for the charge taking the given values on linearly independent
/// classes (remaining directions of a completed basis map to 0).
CentralCharge charge_from_values(const MukaiLattice& lattice, const std::vector<MukaiVector>& classes,
                                 const std::vector<ExactComplex>& values);

}  // namespace stablat
