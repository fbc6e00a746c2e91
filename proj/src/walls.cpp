#include "stablat/walls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "stablat/enumerate.hpp"
#include "stablat/error.hpp"

namespace stablat {

Poly2 Poly2::constant(const Rational& c) { return monomial(c, 0, 0); }

Poly2 Poly2::monomial(const Rational& c, int beta_power, int alpha_power) {
  Poly2 p;
  p.add_term({beta_power, alpha_power}, c);
  return p;
}

void Poly2::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational Poly2::coefficient(int beta_power, int alpha_power) const {
  auto it = terms_.find({beta_power, alpha_power});
  return it == terms_.end() ? Rational(0) : it->second;
}

double Poly2::evaluate(double beta, double alpha) const {
  double acc = 0;
  for (const auto& [e, c] : terms_) acc += to_double(c) * std::pow(beta, e.first) * std::pow(alpha, e.second);
  return acc;
}

Rational Poly2::evaluate(const Rational& beta, const Rational& alpha) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < e.first; ++i) term *= beta;
    for (int i = 0; i < e.second; ++i) term *= alpha;
    acc += term;
  }
  return acc;
}

Poly2 Poly2::strip_alpha() const {
  if (terms_.empty()) return *this;
  int k = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) k = std::min(k, e.second);
  Poly2 out;
  for (const auto& [e, c] : terms_) out.add_term({e.first, e.second - k}, c);
  return out;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first.
  std::vector<std::pair<Exponents, Rational>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
    if (dx != dy) return dx > dy;
    return x.first.first > y.first.first;
  });
  for (const auto& [e, c] : items) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && (e.first || e.second);
    if (!unit) os << mag.get_str();
    bool need_star = !unit;
    if (e.first) {
      if (need_star) os << "*";
      os << "beta";
      if (e.first > 1) os << "^" << e.first;
      need_star = true;
    }
    if (e.second) {
      if (need_star) os << "*";
      os << "alpha";
      if (e.second > 1) os << "^" << e.second;
    }
  }
  return os.str();
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Poly2 operator-(const Poly2& a, const Poly2& b) { return a + Rational(-1) * b; }

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return out;
}

Poly2 operator*(const Rational& c, const Poly2& a) {
  Poly2 out;
  for (const auto& [e, x] : a.terms_) out.add_term(e, c * x);
  return out;
}

const char* to_string(HoleKind kind) {
  switch (kind) {
    case HoleKind::Point: return "point";
    case HoleKind::VerticalLine: return "vertical_line";
    case HoleKind::Curve: return "curve";
    case HoleKind::WholeSlice: return "whole_slice";
  }
  return "point";
}

void check_slice(const MukaiLattice& lattice, const AmpleData& ample, const Slice& slice) {
  if (slice.b_dir.size() != lattice.ns_rank() || slice.a_dir.size() != lattice.ns_rank())
    throw_error(ErrorKind::Input, "slice directions need " + std::to_string(lattice.ns_rank()) + " coefficients");
  if (!(slice.beta_min < slice.beta_max) || sgn(slice.alpha_max) <= 0)
    throw_error(ErrorKind::Input, "empty slice rectangle: need beta0 < beta1 and alpha1 > 0");
  check_exp_params(lattice, ample, ExpParams{RatVector(lattice.ns_rank()), to_rational(slice.a_dir)});
}

CentralCharge slice_charge(const MukaiLattice& lattice, const Slice& slice, const Rational& beta,
                           const Rational& alpha) {
  const std::size_t rho = lattice.ns_rank();
  ExpParams p{RatVector(rho), RatVector(rho)};
  for (std::size_t i = 0; i < rho; ++i) {
    p.B[i] = beta * slice.b_dir[i];
    p.omega[i] = alpha * slice.a_dir[i];
  }
  const Rational b2 = lattice.ns_product(p.B, p.B);
  const Rational w2 = lattice.ns_product(p.omega, p.omega);
  RatVector re{1}, im{0};
  re.insert(re.end(), p.B.begin(), p.B.end());
  im.insert(im.end(), p.omega.begin(), p.omega.end());
  re.push_back((b2 - w2) / 2);
  im.push_back(lattice.ns_product(p.B, p.omega));
  return CentralCharge(std::move(re), std::move(im));
}

std::pair<Poly2, Poly2> slice_charge_polynomials(const MukaiLattice& lattice, const Slice& slice,
                                                 const MukaiVector& x) {
  lattice.check_dimension(x);
  const Rational bc = lattice.ns_product(slice.b_dir, x.c);
  const Rational ac = lattice.ns_product(slice.a_dir, x.c);
  const Rational b2 = lattice.ns_product(slice.b_dir, slice.b_dir);
  const Rational a2 = lattice.ns_product(slice.a_dir, slice.a_dir);
  const Rational ab = lattice.ns_product(slice.a_dir, slice.b_dir);
  const Rational r = x.r;
  // Re = -s + beta (b.c) - r beta^2 b^2/2 + r alpha^2 a^2/2
  const Poly2 re = Poly2::constant(-Rational(x.s)) + Poly2::monomial(bc, 1, 0) +
                   Poly2::monomial(-r * b2 / 2, 2, 0) + Poly2::monomial(r * a2 / 2, 0, 2);
  // Im = alpha (a.c) - r (a.b) alpha beta
  const Poly2 im = Poly2::monomial(ac, 0, 1) + Poly2::monomial(-r * ab, 1, 1);
  return {re, im};
}

namespace {

bool proportional(const MukaiVector& x, const MukaiVector& y) {
  const IntVector a = x.coords(), b = y.coords();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

Rational grid_value(const Rational& lo, const Rational& hi, int i, int n) {
  return lo + (hi - lo) * ratio(i, n);
}

// Root of f on the segment p0 -> p1 given a sign change.
template <typename F>
Point2 bisect(const F& f, Point2 p0, Point2 p1) {
  double f0 = f(p0);
  if (f0 == 0) return p0;
  if (f(p1) == 0) return p1;
  for (int it = 0; it < 200; ++it) {
    const Point2 mid{(p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2};
    if (mid == p0 || mid == p1) break;
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (f0 < 0)) {
      p0 = mid;
      f0 = fm;
    } else {
      p1 = mid;
    }
  }
  return {(p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2};
}

// Spherical classes with |Z| <= 2M at some point of the grid
// beta = beta0 + (beta1 - beta0) i/n, alpha = alpha1 j/n, 0 <= i <= n, 1 <= j <= n.
std::vector<MukaiVector> rectangle_candidates(const MukaiLattice& lattice, const Slice& slice,
                                              const Rational& mass_bound, int grid) {
  std::set<MukaiVector> found;
  for (int i = 0; i <= grid; ++i) {
    const Rational beta = grid_value(slice.beta_min, slice.beta_max, i, grid);
    for (int j = 1; j <= grid; ++j) {
      const Rational alpha = slice.alpha_max * ratio(j, grid);
      for (MukaiVector& d : enumerate_spherical(lattice, slice_charge(lattice, slice, beta, alpha), 2 * mass_bound))
        found.insert(std::move(d));
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Hole> holes_of(const MukaiLattice& lattice, const Slice& slice, const MukaiVector& delta) {
  const Rational bc = lattice.ns_product(slice.b_dir, delta.c);
  const Rational ac = lattice.ns_product(slice.a_dir, delta.c);
  const Rational b2 = lattice.ns_product(slice.b_dir, slice.b_dir);
  const Rational a2 = lattice.ns_product(slice.a_dir, slice.a_dir);
  const Rational ab = lattice.ns_product(slice.a_dir, slice.b_dir);
  const Rational r = delta.r, s = delta.s;
  std::vector<Hole> out;
  auto beta_inside = [&](const Rational& b) { return slice.beta_min <= b && b <= slice.beta_max; };

  if (sgn(r * ab) != 0) {
    const Rational beta = ac / (r * ab);
    if (!beta_inside(beta)) return out;
    const Rational a_sq = (2 * s - 2 * beta * bc + r * beta * beta * b2) / (r * a2);
    if (sgn(a_sq) <= 0 || a_sq > slice.alpha_max * slice.alpha_max) return out;
    Hole h{delta, HoleKind::Point, beta, a_sq, 0};
    const auto exact = exact_sqrt(a_sq);
    h.alpha = exact ? to_double(*exact) : std::sqrt(to_double(a_sq));
    out.push_back(h);
    return out;
  }
  if (sgn(ac) != 0) return out;
  if (sgn(r) == 0) {
    if (sgn(bc) != 0) {
      const Rational beta = s / bc;
      if (beta_inside(beta)) out.push_back({delta, HoleKind::VerticalLine, beta, 0, 0});
    } else if (sgn(s) == 0) {
      out.push_back({delta, HoleKind::WholeSlice, 0, 0, 0});
    }
    return out;
  }
  out.push_back({delta, HoleKind::Curve, 0, 0, 0});
  return out;
}

// Poly2 with double coefficients for sampling.
struct FastPoly {
  struct Term {
    int beta_power;
    int alpha_power;
    double c;
  };
  std::vector<Term> terms;

  explicit FastPoly(const Poly2& p) {
    for (const auto& [e, c] : p.terms()) terms.push_back({e.first, e.second, to_double(c)});
  }

  double operator()(const Point2& p) const {
    double acc = 0;
    for (const Term& t : terms) {
      double v = t.c;
      for (int i = 0; i < t.beta_power; ++i) v *= p[0];
      for (int i = 0; i < t.alpha_power; ++i) v *= p[1];
      acc += v;
    }
    return acc;
  }
};

// |Z(delta)| <= M at a mass-grid point (exact) or at a sampling node with
// alpha >= alpha1 / mass_grid.
bool light_on_rectangle(const Slice& slice, const WallOptions& options, const Poly2& re, const Poly2& im,
                        const Rational& mass_bound) {
  const Rational m2 = mass_bound * mass_bound;
  const int n = options.mass_grid;
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Rational beta = grid_value(slice.beta_min, slice.beta_max, i, n);
      const Rational alpha = slice.alpha_max * ratio(j, n);
      const Rational x = re.evaluate(beta, alpha), y = im.evaluate(beta, alpha);
      if (x * x + y * y <= m2) return true;
    }
  const FastPoly fre(re), fim(im);
  const double b0 = to_double(slice.beta_min), b1 = to_double(slice.beta_max), a1 = to_double(slice.alpha_max);
  const double floor = a1 / n, md = to_double(m2);
  const int cells = options.sample_grid;
  for (int i = 0; i <= cells; ++i)
    for (int j = 1; j <= cells; ++j) {
      const Point2 p{b0 + (b1 - b0) * i / cells, a1 * j / cells};
      if (p[1] < floor) continue;
      const double x = fre(p), y = fim(p);
      if (x * x + y * y <= md) return true;
    }
  return false;
}

void sample_wall(const Slice& slice, int cells, Wall& wall) {
  const double b0 = to_double(slice.beta_min), b1 = to_double(slice.beta_max);
  const double a1 = to_double(slice.alpha_max);
  const FastPoly locus(wall.locus), valid(wall.validity);
  auto node = [&](int i, int j) -> Point2 {
    return {b0 + (b1 - b0) * i / cells, a1 * j / cells};
  };
  std::vector<double> values(static_cast<std::size_t>((cells + 1) * (cells + 1)));
  for (int i = 0; i <= cells; ++i)
    for (int j = 0; j <= cells; ++j) values[static_cast<std::size_t>(i * (cells + 1) + j)] = locus(node(i, j));
  auto positive = [&](int i, int j) { return values[static_cast<std::size_t>(i * (cells + 1) + j)] >= 0; };

  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      // Corners in cyclic order; an edge with a sign change carries a crossing.
      const std::array<std::pair<int, int>, 4> corner{{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
      std::vector<Point2> crossings;
      for (int e = 0; e < 4; ++e) {
        const auto [ia, ja] = corner[static_cast<std::size_t>(e)];
        const auto [ib, jb] = corner[static_cast<std::size_t>((e + 1) % 4)];
        if (positive(ia, ja) != positive(ib, jb)) crossings.push_back(bisect(locus, node(ia, ja), node(ib, jb)));
      }
      for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
        Point2 p = crossings[k], q = crossings[k + 1];
        const bool vp = valid(p) > 0, vq = valid(q) > 0;
        if (!vp && !vq) {
          const Point2 mid{(p[0] + q[0]) / 2, (p[1] + q[1]) / 2};
          if (valid(mid) <= 0) continue;
        } else if (vp != vq) {
          const Point2 edge = bisect(valid, p, q);
          (vp ? q : p) = edge;
        }
        if (p == q) continue;
        wall.segments.push_back({p, q});
      }
    }
  }
  if (wall.segments.empty()) return;
  double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin, amin = bmin, amax = -bmin;
  for (const auto& seg : wall.segments)
    for (const auto& p : seg) {
      bmin = std::min(bmin, p[0]);
      bmax = std::max(bmax, p[0]);
      amin = std::min(amin, p[1]);
      amax = std::max(amax, p[1]);
    }
  wall.beta_range = {bmin, bmax};
  wall.alpha_range = {amin, amax};
}

}  // namespace

WallSet walls_for_class(const MukaiLattice& lattice, const AmpleData& ample, const MukaiVector& v,
                        const Slice& slice, const Rational& mass_bound, const WallOptions& options) {
  lattice.check_dimension(v);
  if (v.is_zero()) throw_error(ErrorKind::Input, "walls_for_class needs a nonzero class");
  check_slice(lattice, ample, slice);
  if (sgn(mass_bound) < 0) throw_error(ErrorKind::Input, "mass bound must be >= 0");
  if (options.mass_grid < 1 || options.sample_grid < 1) throw_error(ErrorKind::Input, "grid sizes must be positive");

  WallSet out{slice, v, mass_bound, {}, {}};
  const auto [v_re, v_im] = slice_charge_polynomials(lattice, slice, v);
  for (const MukaiVector& delta : rectangle_candidates(lattice, slice, mass_bound, options.mass_grid)) {
    const auto [d_re, d_im] = slice_charge_polynomials(lattice, slice, delta);
    if (!light_on_rectangle(slice, options, d_re, d_im, mass_bound)) continue;
    for (Hole& h : holes_of(lattice, slice, delta)) out.holes.push_back(std::move(h));
    if (proportional(delta, v)) continue;
    Wall wall;
    wall.delta = delta;
    wall.locus = (d_im * v_re - d_re * v_im).strip_alpha();
    if (wall.locus.is_zero()) continue;
    wall.validity = d_re * v_re + d_im * v_im;
    sample_wall(slice, options.sample_grid, wall);
    if (wall.segments.empty()) continue;
    out.walls.push_back(std::move(wall));
  }
  return out;
}

std::vector<int> chamber_of(const Point2& point, const WallSet& walls) {
  const double b = point[0], a = point[1];
  if (b < to_double(walls.slice.beta_min) || b > to_double(walls.slice.beta_max) || a <= 0 ||
      a > to_double(walls.slice.alpha_max))
    throw_error(ErrorKind::Input, "point lies outside the slice rectangle");
  std::vector<int> signs;
  signs.reserve(walls.walls.size());
  for (const Wall& w : walls.walls) {
    const double value = w.locus.evaluate(b, a);
    if (std::abs(value) <= kOnWallTolerance)
      throw_error(ErrorKind::OnWall, "point lies on the wall of delta = " + to_string(w.delta));
    signs.push_back(value > 0 ? 1 : -1);
  }
  return signs;
}

}  // namespace stablat
