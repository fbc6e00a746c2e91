#pragma once

// Exact integer/rational linear algebra on top of GMP.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stablat {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);
  static RatMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatMatrix transpose() const;
  bool is_symmetric() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatVector operator*(const RatMatrix& a, const RatVector& x);
RatVector to_rational(const IntVector& v);

/// xᵀ A y
Rational bilinear(const RatMatrix& a, const RatVector& x, const RatVector& y);
Rational quadratic(const RatMatrix& a, const IntVector& x);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
/// floor(sqrt(q)) for q >= 0.
Integer floor_sqrt(const Rational& q);
/// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// A = L D Lᵀ with L unit lower triangular, no pivoting.
struct Ldl {
  RatMatrix lower;
  RatVector diagonal;
};

/// Returns nullopt as soon as a zero pivot is met.
std::optional<Ldl> ldl_decompose(const RatMatrix& a);
bool is_positive_definite(const RatMatrix& a);

/// Throws Error(Precondition) when singular.
RatMatrix inverse(const RatMatrix& a);
Rational determinant(const RatMatrix& a);

/// Coefficients c_0..c_n of det(x I - A), c_n = 1 (Faddeev-LeVerrier).
RatVector characteristic_polynomial(const RatMatrix& a);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric matrix, read off the characteristic polynomial by
/// Descartes' rule (exact because every root is real).
Signature signature(const RatMatrix& symmetric);

/// Z-basis (as columns, returned as vectors) of {x in Z^n : A x = 0} for an
/// integer matrix A given by its rows.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n);

/// Clears denominators of a rational row so that it becomes a primitive
/// integer row with the same kernel.
IntVector clear_denominators(const RatVector& row);

/// Parses "p/q" or an integer. With allow_decimal, also "1.25" or "-3e-2",
/// converted to the exact decimal rational.
Rational parse_rational(std::string_view text, bool allow_decimal = false);
std::vector<Rational> parse_rational_list(std::string_view text, bool allow_decimal = false);
Integer parse_integer(std::string_view text);
std::vector<Integer> parse_integer_list(std::string_view text);

/// p/q in lowest terms (mpq_class(p, q) alone is not canonical).
Rational ratio(long p, long q);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
double to_double(const Rational& q);

}  // namespace stablat
