#pragma once

// Integral model of the Mukai lattice N(X) = Z + NS(X) + Z of a projective K3
// surface. Conventions used throughout the project:
//   <(r,c,s),(r',c',s')> = c.G.c' - r s' - s r'
//   chi(E,F) = -<v(E),v(F)>
//   the shift [1] acts on classes by -1.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "stablat/arith.hpp"

namespace stablat {

struct MukaiVector {
  Integer r;
  IntVector c;
  Integer s;

  /// Coordinates (r, c_1, ..., c_rho, s).
  static MukaiVector from_coords(const IntVector& coords);
  IntVector coords() const;
  RatVector rational_coords() const;
  bool is_zero() const;

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
  friend std::strong_ordering operator<=>(const MukaiVector& a, const MukaiVector& b);
  friend MukaiVector operator+(const MukaiVector& a, const MukaiVector& b);
  friend MukaiVector operator-(const MukaiVector& a, const MukaiVector& b);
  friend MukaiVector operator-(const MukaiVector& a);
  friend MukaiVector operator*(const Integer& k, const MukaiVector& a);
};

/// "(r,c1,...,s)"
std::string to_string(const MukaiVector& v);

enum class RigidityClass { Spherical, Semirigid, Other };
const char* to_string(RigidityClass c);

/// A class with positive square, designating the ample chamber.
struct AmpleData {
  IntVector h;
};

class MukaiLattice {
 public:
  /// Validates symmetry, even diagonal and signature (1, rho-1); throws
  /// Error(Input) otherwise.
  explicit MukaiLattice(std::vector<IntVector> ns_gram);

  std::size_t ns_rank() const { return gram_.size(); }
  /// rho + 2
  std::size_t dimension() const { return gram_.size() + 2; }
  const std::vector<IntVector>& ns_gram() const { return gram_; }

  Integer ns_product(const IntVector& a, const IntVector& b) const;
  Rational ns_product(const RatVector& a, const RatVector& b) const;

  Integer pairing(const MukaiVector& v, const MukaiVector& w) const;
  /// Pairing on rational Mukai coordinates (length rho + 2).
  Rational pairing(const RatVector& x, const RatVector& y) const;
  Rational pairing(const RatVector& x, const MukaiVector& v) const;

  /// Full (rho+2)x(rho+2) Gram matrix of the Mukai pairing.
  RatMatrix mukai_gram() const;

  void check_dimension(const MukaiVector& v) const;
  void check_ample(const AmpleData& ample) const;

 private:
  std::vector<IntVector> gram_;
};

Integer mukai_pairing(const MukaiLattice& lattice, const MukaiVector& v, const MukaiVector& w);
RigidityClass classify_rigidity(const MukaiLattice& lattice, const MukaiVector& v);

/// v(E) = ch(E) sqrt(td X) with sqrt(td X) = (1, 0, 1): (r, c1, ch2 + r).
MukaiVector mukai_vector_of_sheaf(const MukaiLattice& lattice, const Integer& rank,
                                  const IntVector& c1, const Rational& ch2);

/// s_delta(v) = v + <v,delta> delta, requires delta^2 = -2.
MukaiVector reflect(const MukaiLattice& lattice, const MukaiVector& v, const MukaiVector& delta);

/// Multiplication by exp(l) = (1, l, l^2/2).
MukaiVector tensor_exp(const MukaiLattice& lattice, const MukaiVector& v, const IntVector& l);

MukaiVector shift_class(const MukaiVector& v, long k);

}  // namespace stablat
