#include "stablat/mukai.hpp"

#include <sstream>

#include "stablat/error.hpp"

namespace stablat {

MukaiVector MukaiVector::from_coords(const IntVector& coords) {
  if (coords.size() < 3) throw_error(ErrorKind::Input, "a Mukai vector needs at least 3 coordinates");
  MukaiVector v;
  v.r = coords.front();
  v.c.assign(coords.begin() + 1, coords.end() - 1);
  v.s = coords.back();
  return v;
}

IntVector MukaiVector::coords() const {
  IntVector out;
  out.reserve(c.size() + 2);
  out.push_back(r);
  out.insert(out.end(), c.begin(), c.end());
  out.push_back(s);
  return out;
}

RatVector MukaiVector::rational_coords() const { return to_rational(coords()); }

bool MukaiVector::is_zero() const {
  if (sgn(r) != 0 || sgn(s) != 0) return false;
  for (const auto& x : c)
    if (sgn(x) != 0) return false;
  return true;
}

std::strong_ordering operator<=>(const MukaiVector& a, const MukaiVector& b) {
  const IntVector x = a.coords(), y = b.coords();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    const int c = cmp(x[i], y[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x.size() <=> y.size();
}

namespace {

void require_same_shape(const MukaiVector& a, const MukaiVector& b) {
  if (a.c.size() != b.c.size()) throw_error(ErrorKind::Input, "Mukai vectors of different NS rank");
}

}  // namespace

MukaiVector operator+(const MukaiVector& a, const MukaiVector& b) {
  require_same_shape(a, b);
  MukaiVector out = a;
  out.r += b.r;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  out.s += b.s;
  return out;
}

MukaiVector operator-(const MukaiVector& a) { return Integer(-1) * a; }
MukaiVector operator-(const MukaiVector& a, const MukaiVector& b) { return a + (-b); }

MukaiVector operator*(const Integer& k, const MukaiVector& a) {
  MukaiVector out = a;
  out.r *= k;
  for (auto& x : out.c) x *= k;
  out.s *= k;
  return out;
}

std::string to_string(const MukaiVector& v) {
  std::ostringstream os;
  os << '(';
  const IntVector xs = v.coords();
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i].get_str();
  os << ')';
  return os.str();
}

const char* to_string(RigidityClass c) {
  switch (c) {
    case RigidityClass::Spherical: return "spherical";
    case RigidityClass::Semirigid: return "semirigid";
    case RigidityClass::Other: return "other";
  }
  return "other";
}

MukaiLattice::MukaiLattice(std::vector<IntVector> ns_gram) : gram_(std::move(ns_gram)) {
  const std::size_t rho = gram_.size();
  if (rho == 0) throw_error(ErrorKind::Input, "ns_gram must be non-empty");
  for (std::size_t i = 0; i < rho; ++i) {
    if (gram_[i].size() != rho) throw_error(ErrorKind::Input, "ns_gram must be square");
  }
  for (std::size_t i = 0; i < rho; ++i) {
    if (mpz_even_p(gram_[i][i].get_mpz_t()) == 0)
      throw_error(ErrorKind::Input, "ns_gram diagonal entry " + std::to_string(i) + " is odd");
    for (std::size_t j = i + 1; j < rho; ++j)
      if (gram_[i][j] != gram_[j][i]) throw_error(ErrorKind::Input, "ns_gram is not symmetric");
  }
  const Signature sig = signature(RatMatrix::from_rows(gram_));
  if (sig.positive != 1 || sig.negative != static_cast<int>(rho) - 1 || sig.zero != 0) {
    std::ostringstream os;
    os << "ns_gram has signature (" << sig.positive << "," << sig.negative << ")"
       << (sig.zero ? " and is degenerate" : "") << ", expected (1," << rho - 1 << ")";
    throw_error(ErrorKind::Input, os.str());
  }
}

Integer MukaiLattice::ns_product(const IntVector& a, const IntVector& b) const {
  if (a.size() != ns_rank() || b.size() != ns_rank())
    throw_error(ErrorKind::Input, "NS vector has length " + std::to_string(a.size() != ns_rank() ? a.size() : b.size()) +
                                      ", expected " + std::to_string(ns_rank()));
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc += a[i] * gram_[i][j] * b[j];
  return acc;
}

Rational MukaiLattice::ns_product(const RatVector& a, const RatVector& b) const {
  if (a.size() != ns_rank() || b.size() != ns_rank())
    throw_error(ErrorKind::Input, "NS vector length mismatch (expected " + std::to_string(ns_rank()) + ")");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc += a[i] * gram_[i][j] * b[j];
  return acc;
}

void MukaiLattice::check_dimension(const MukaiVector& v) const {
  if (v.c.size() != ns_rank())
    throw_error(ErrorKind::Input, "Mukai vector " + to_string(v) + " has NS part of length " +
                                      std::to_string(v.c.size()) + ", expected " + std::to_string(ns_rank()));
}

Integer MukaiLattice::pairing(const MukaiVector& v, const MukaiVector& w) const {
  check_dimension(v);
  check_dimension(w);
  return ns_product(v.c, w.c) - v.r * w.s - v.s * w.r;
}

Rational MukaiLattice::pairing(const RatVector& x, const RatVector& y) const {
  const std::size_t n = dimension();
  if (x.size() != n || y.size() != n)
    throw_error(ErrorKind::Input, "Mukai coordinate vector length mismatch (expected " + std::to_string(n) + ")");
  const RatVector xc(x.begin() + 1, x.end() - 1), yc(y.begin() + 1, y.end() - 1);
  return ns_product(xc, yc) - x.front() * y.back() - x.back() * y.front();
}

Rational MukaiLattice::pairing(const RatVector& x, const MukaiVector& v) const {
  check_dimension(v);
  return pairing(x, v.rational_coords());
}

RatMatrix MukaiLattice::mukai_gram() const {
  const std::size_t n = dimension();
  RatMatrix m(n, n);
  m(0, n - 1) = -1;
  m(n - 1, 0) = -1;
  for (std::size_t i = 0; i < ns_rank(); ++i)
    for (std::size_t j = 0; j < ns_rank(); ++j) m(i + 1, j + 1) = gram_[i][j];
  return m;
}

void MukaiLattice::check_ample(const AmpleData& ample) const {
  if (ample.h.size() != ns_rank())
    throw_error(ErrorKind::Input, "ample vector has length " + std::to_string(ample.h.size()) + ", expected " +
                                      std::to_string(ns_rank()));
  if (sgn(ns_product(ample.h, ample.h)) <= 0)
    throw_error(ErrorKind::Input, "ample class must satisfy h.G.h > 0");
}

Integer mukai_pairing(const MukaiLattice& lattice, const MukaiVector& v, const MukaiVector& w) {
  return lattice.pairing(v, w);
}

RigidityClass classify_rigidity(const MukaiLattice& lattice, const MukaiVector& v) {
  const Integer sq = lattice.pairing(v, v);
  if (sq == -2) return RigidityClass::Spherical;
  if (sq == 0) return RigidityClass::Semirigid;
  return RigidityClass::Other;
}

MukaiVector mukai_vector_of_sheaf(const MukaiLattice& lattice, const Integer& rank, const IntVector& c1,
                                  const Rational& ch2) {
  if (c1.size() != lattice.ns_rank())
    throw_error(ErrorKind::Input, "c1 has length " + std::to_string(c1.size()) + ", expected " +
                                      std::to_string(lattice.ns_rank()));
  const Rational s = ch2 + rank;
  if (s.get_den() != 1)
    throw_error(ErrorKind::Input, "ch2 + r = " + to_string(s) + " is not integral");
  return MukaiVector{rank, c1, s.get_num()};
}

MukaiVector reflect(const MukaiLattice& lattice, const MukaiVector& v, const MukaiVector& delta) {
  if (lattice.pairing(delta, delta) != -2)
    throw_error(ErrorKind::Precondition, "reflection needs delta^2 = -2, got " +
                                             to_string(lattice.pairing(delta, delta)) + " for " + to_string(delta));
  return v + lattice.pairing(v, delta) * delta;
}

MukaiVector tensor_exp(const MukaiLattice& lattice, const MukaiVector& v, const IntVector& l) {
  lattice.check_dimension(v);
  const Integer l2 = lattice.ns_product(l, l);  // even, G has even diagonal
  MukaiVector out = v;
  for (std::size_t i = 0; i < l.size(); ++i) out.c[i] += v.r * l[i];
  out.s += lattice.ns_product(v.c, l) + v.r * (l2 / 2);
  return out;
}

MukaiVector shift_class(const MukaiVector& v, long k) { return (k % 2 == 0) ? v : -v; }

}  // namespace stablat
