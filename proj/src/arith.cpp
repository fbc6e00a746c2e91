#include "stablat/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "stablat/error.hpp"

namespace stablat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::HoleClass: return "hole class";
    case ErrorKind::OnWall: return "on wall";
    case ErrorKind::OrthogonalPlanes: return "orthogonal planes";
    case ErrorKind::Inconsistent: return "inconsistent";
  }
  return "error";
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw_error(ErrorKind::Input, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<IntVector>& rows) {
  std::vector<RatVector> q;
  q.reserve(rows.size());
  for (const auto& row : rows) q.push_back(to_rational(row));
  return from_rows(q);
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw_error(ErrorKind::Input, "matrix product dimension mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw_error(ErrorKind::Input, "matrix sum dimension mismatch");
  RatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  return a + Rational(-1) * b;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RatVector operator*(const RatMatrix& a, const RatVector& x) {
  if (a.cols() != x.size()) throw_error(ErrorKind::Input, "matrix-vector dimension mismatch");
  RatVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

RatVector to_rational(const IntVector& v) {
  RatVector q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = v[i];
  return q;
}

Rational bilinear(const RatMatrix& a, const RatVector& x, const RatVector& y) {
  if (a.rows() != x.size() || a.cols() != y.size())
    throw_error(ErrorKind::Input, "bilinear form dimension mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row += a(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

Rational quadratic(const RatMatrix& a, const IntVector& x) {
  const RatVector q = to_rational(x);
  return bilinear(a, q, q);
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer floor_sqrt(const Rational& q) {
  if (sgn(q) < 0) throw_error(ErrorKind::Precondition, "square root of a negative rational");
  // floor(sqrt(x)) == floor(sqrt(floor(x))) for x >= 0.
  Integer f = floor_of(q);
  Integer out;
  mpz_sqrt(out.get_mpz_t(), f.get_mpz_t());
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
    return std::nullopt;
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  Rational r(a, b);
  r.canonicalize();
  return r;
}

std::optional<Ldl> ldl_decompose(const RatMatrix& a) {
  if (!a.is_symmetric()) throw_error(ErrorKind::Input, "LDL decomposition needs a symmetric matrix");
  const std::size_t n = a.rows();
  Ldl out{RatMatrix::identity(n), RatVector(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= out.lower(j, k) * out.lower(j, k) * out.diagonal[k];
    if (sgn(d) == 0) return std::nullopt;
    out.diagonal[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= out.lower(i, k) * out.lower(j, k) * out.diagonal[k];
      out.lower(i, j) = s / d;
    }
  }
  return out;
}

bool is_positive_definite(const RatMatrix& a) {
  if (!a.is_symmetric()) return false;
  auto ldl = ldl_decompose(a);
  if (!ldl) return false;
  return std::all_of(ldl->diagonal.begin(), ldl->diagonal.end(),
                     [](const Rational& d) { return sgn(d) > 0; });
}

namespace {

// Gauss-Jordan on [A | B]; returns false when A is singular.
bool gauss_jordan(RatMatrix& a, RatMatrix& b, Rational* det) {
  const std::size_t n = a.rows();
  Rational d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) {
      if (det) *det = 0;
      return false;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(pivot, j), b(col, j));
      d = -d;
    }
    const Rational p = a(col, col);
    d *= p;
    for (std::size_t j = 0; j < n; ++j) a(col, j) /= p;
    for (std::size_t j = 0; j < b.cols(); ++j) b(col, j) /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a(i, col)) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(col, j);
    }
  }
  if (det) *det = d;
  return true;
}

}  // namespace

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw_error(ErrorKind::Input, "inverse of a non-square matrix");
  RatMatrix work = a;
  RatMatrix inv = RatMatrix::identity(a.rows());
  if (!gauss_jordan(work, inv, nullptr)) throw_error(ErrorKind::Precondition, "matrix is singular");
  return inv;
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw_error(ErrorKind::Input, "determinant of a non-square matrix");
  RatMatrix work = a;
  RatMatrix none(a.rows(), 0);
  Rational det;
  gauss_jordan(work, none, &det);
  return det;
}

RatVector characteristic_polynomial(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw_error(ErrorKind::Input, "characteristic polynomial of a non-square matrix");
  RatVector c(n + 1);
  c[n] = 1;
  RatMatrix m(n, n);
  const RatMatrix id = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    const RatMatrix am = a * m;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / Rational(static_cast<long>(k));
  }
  return c;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Signature signature(const RatMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw_error(ErrorKind::Input, "signature of a non-symmetric matrix");
  const RatVector c = characteristic_polynomial(symmetric);
  Signature sig;
  std::size_t low = 0;
  while (low < c.size() && sgn(c[low]) == 0) ++low;
  sig.zero = static_cast<int>(low);
  std::vector<int> plus, minus;
  for (std::size_t i = low; i < c.size(); ++i) {
    const int s = sgn(c[i]);
    plus.push_back(s);
    minus.push_back((i % 2 == 0) ? s : -s);
  }
  sig.positive = sign_changes(plus);
  sig.negative = sign_changes(minus);
  return sig;
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
  std::vector<IntVector> a = rows;
  for (const auto& r : a)
    if (r.size() != n) throw_error(ErrorKind::Input, "integer kernel: ragged rows");
  // u holds the accumulated unimodular column transform; column j is u[.][j].
  std::vector<IntVector> u(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& r : a) std::swap(r[x], r[y]);
    for (auto& r : u) std::swap(r[x], r[y]);
  };
  auto axpy_col = [&](std::size_t dst, const Integer& q, std::size_t src) {
    for (auto& r : a) r[dst] -= q * r[src];
    for (auto& r : u) r[dst] -= q * r[src];
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < a.size() && start < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = start; j < n; ++j) {
        if (sgn(a[i][j]) == 0) continue;
        if (best == n || abs(a[i][j]) < abs(a[i][best])) best = j;
      }
      if (best == n) break;  // row already zero on the remaining columns
      swap_cols(start, best);
      bool done = true;
      for (std::size_t j = start + 1; j < n; ++j) {
        if (sgn(a[i][j]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][start].get_mpz_t());
        axpy_col(j, q, start);
        if (sgn(a[i][j]) != 0) done = false;
      }
      if (done) {
        ++start;
        break;
      }
    }
  }
  std::vector<IntVector> basis;
  for (std::size_t j = start; j < n; ++j) {
    IntVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = u[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

IntVector clear_denominators(const RatVector& row) {
  Integer l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntVector out(row.size());
  Integer g = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    Rational scaled = row[i] * l;
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (sgn(g) != 0)
    for (auto& x : out) x /= g;
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool parse_signed_digits(std::string_view s, Integer& out) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return false;
  out = Integer(std::string(s), 10);
  if (negative) out = -out;
  return true;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&]() -> Rational {
    throw_error(ErrorKind::Input, "malformed number '" + std::string(original) + "'");
  };
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer ex;
    if (!parse_signed_digits(s.substr(e + 1), ex) || !ex.fits_slong_p()) return fail();
    exponent = ex.get_si();
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      return fail();
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) return fail();
    digits = std::string(s);
  }
  if (std::abs(exponent) > 4096) return fail();
  Integer mant(digits.empty() ? std::string("0") : digits, 10);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
  Rational q = exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num, den;
    if (!parse_signed_digits(trim(s.substr(0, slash)), num) ||
        !all_digits(trim(s.substr(slash + 1))))
      throw_error(ErrorKind::Input, "malformed rational '" + std::string(text) + "'");
    den = Integer(std::string(trim(s.substr(slash + 1))), 10);
    if (sgn(den) == 0) throw_error(ErrorKind::Input, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Integer z;
  if (parse_signed_digits(s, z)) return Rational(z);
  if (!allow_decimal)
    throw_error(ErrorKind::Input, "malformed rational '" + std::string(text) +
                                      "' (decimals need --approx; use p/q)");
  return parse_decimal(s, text);
}

std::vector<Rational> parse_rational_list(std::string_view text, bool allow_decimal) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos),
                                 allow_decimal));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Integer parse_integer(std::string_view text) {
  Integer z;
  if (!parse_signed_digits(trim(text), z))
    throw_error(ErrorKind::Input, "malformed integer '" + std::string(text) + "'");
  return z;
}

std::vector<Integer> parse_integer_list(std::string_view text) {
  std::vector<Integer> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(parse_integer(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Rational ratio(long p, long q) {
  if (q == 0) throw_error(ErrorKind::Input, "zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }
double to_double(const Rational& q) { return q.get_d(); }

}  // namespace stablat
