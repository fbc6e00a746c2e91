#pragma once

// Potential walls and holes for a class v in a two-parameter slice
//   B = beta * b,  omega = alpha * a,  (beta, alpha) in [beta0, beta1] x (0, alpha1].

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablat/arith.hpp"
#include "stablat/charge.hpp"
#include "stablat/mukai.hpp"

namespace stablat {

/// Polynomial in (beta, alpha) with rational coefficients.
class Poly2 {
 public:
  using Exponents = std::pair<int, int>;  // (beta power, alpha power)

  Poly2() = default;
  static Poly2 constant(const Rational& c);
  static Poly2 monomial(const Rational& c, int beta_power, int alpha_power);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int beta_power, int alpha_power) const;

  double evaluate(double beta, double alpha) const;
  Rational evaluate(const Rational& beta, const Rational& alpha) const;

  /// Divides by the largest power of alpha dividing every term.
  Poly2 strip_alpha() const;

  /// "2*beta - alpha^2 + 1"; no commas, stable ordering.
  std::string to_string() const;

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator-(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Rational& c, const Poly2& a);
  friend bool operator==(const Poly2&, const Poly2&) = default;

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

struct Slice {
  IntVector b_dir;  // B direction
  IntVector a_dir;  // omega direction
  Rational beta_min;
  Rational beta_max;
  Rational alpha_max;
};

void check_slice(const MukaiLattice& lattice, const AmpleData& ample, const Slice& slice);

/// Z_{beta,alpha} as the standard charge of (beta b, alpha a).
CentralCharge slice_charge(const MukaiLattice& lattice, const Slice& slice, const Rational& beta,
                           const Rational& alpha);

/// Re and Im of Z_{beta,alpha}(x) as polynomials.
std::pair<Poly2, Poly2> slice_charge_polynomials(const MukaiLattice& lattice, const Slice& slice,
                                                 const MukaiVector& x);

using Point2 = std::array<double, 2>;  // (beta, alpha)

struct Wall {
  MukaiVector delta;
  Poly2 locus;     // Im(Z(delta) conj Z(v)) with alpha powers removed
  Poly2 validity;  // Re(Z(delta) conj Z(v)) > 0 on the valid part
  std::vector<std::array<Point2, 2>> segments;  // sampled valid part
  Point2 beta_range{0, 0};
  Point2 alpha_range{0, 0};
};

enum class HoleKind { Point, VerticalLine, Curve, WholeSlice };
const char* to_string(HoleKind kind);

struct Hole {
  MukaiVector delta;
  HoleKind kind = HoleKind::Point;
  Rational beta;           // Point, VerticalLine
  Rational alpha_squared;  // Point
  double alpha = 0;        // Point
};

struct WallSet {
  Slice slice;
  MukaiVector v;
  Rational mass_bound;
  std::vector<Wall> walls;
  std::vector<Hole> holes;
};

struct WallOptions {
  int mass_grid = 16;       // per-axis grid of points where the mass is tested
  int sample_grid = 256;    // per-axis cells for locus sampling
};

/// Walls and holes of the spherical classes with |Z| <= M somewhere on
/// [beta0, beta1] x [alpha1 / mass_grid, alpha1]. Candidates come from exact
/// enumeration with bound 2M at every mass-grid point; each is kept if
/// |Z| <= M at a mass-grid point or at a sampling node of that region.
WallSet walls_for_class(const MukaiLattice& lattice, const AmpleData& ample, const MukaiVector& v,
                        const Slice& slice, const Rational& mass_bound, const WallOptions& options = {});

/// Signs of every wall polynomial at the point. Throws Error(OnWall) naming
/// delta if |W(point)| <= 1e-10, Error(Input) outside the rectangle.
std::vector<int> chamber_of(const Point2& point, const WallSet& walls);

constexpr double kOnWallTolerance = 1e-10;

}  // namespace stablat
