#include "stablat/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>

#include "stablat/error.hpp"

namespace stablat {

unsigned default_thread_count() {
  if (const char* env = std::getenv("STABLAT_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

PositivitySplit positivity_split(const MukaiLattice& lattice, const CentralCharge& z) {
  const PlaneTest plane = is_positive_plane(lattice, z);
  if (!plane.positive)
    throw_error(ErrorKind::Precondition, "positivity_split: real and imaginary parts do not span a positive plane");
  const RatMatrix& g = plane.gram;
  PositivitySplit out;
  out.plane_gram = g;
  const Rational det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  out.C = (g(0, 0) + g(1, 1)) / det;

  const RatMatrix m = lattice.mukai_gram();
  const RatMatrix a = RatMatrix::from_rows(std::vector<RatVector>{m * z.re(), m * z.im()});
  out.Q = Rational(2) * (a.transpose() * inverse(g) * a) - m;
  return out;
}

Rational spherical_ball_bound(const PositivitySplit& split, const Rational& mass_bound) {
  return 2 * (1 + split.C * mass_bound * mass_bound);
}

namespace {

// Called once coordinates 1..n-1 are fixed; appends the choices of x[0] with
// d0 (x[0] - center)^2 <= budget that the caller wants.
using Leaf = std::function<void(IntVector& x, const Rational& d0, const Rational& center, const Rational& budget,
                                std::vector<IntVector>& out)>;

struct Enumerator {
  const Ldl& ldl;
  std::size_t n;

  // Candidates x_i with d_i (x_i - center)^2 <= budget.
  void level_candidates(std::size_t i, const Rational& center, const Rational& budget,
                        std::vector<std::pair<Integer, Rational>>& out) const {
    out.clear();
    if (sgn(budget) < 0) return;
    const Rational t = budget / ldl.diagonal[i];
    const Integer s = floor_sqrt(t);
    const Integer lo = floor_of(center) - s - 1;
    const Integer hi = ceil_of(center) + s + 1;
    for (Integer x = lo; x <= hi; ++x) {
      const Rational dx = Rational(x) - center;
      const Rational used = ldl.diagonal[i] * dx * dx;
      if (used <= budget) out.emplace_back(x, budget - used);
    }
  }

  Rational center_of(std::size_t i, const IntVector& x) const {
    Rational c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= ldl.lower(j, i) * x[j];
    return c;
  }

  void recurse(std::size_t level, IntVector& x, const Rational& budget, const Leaf& leaf,
               std::vector<IntVector>& out) const {
    if (level == 0) {
      leaf(x, ldl.diagonal[0], center_of(0, x), budget, out);
      x[0] = 0;
      return;
    }
    std::vector<std::pair<Integer, Rational>> cands;
    level_candidates(level, center_of(level, x), budget, cands);
    for (auto& [value, rest] : cands) {
      x[level] = value;
      recurse(level - 1, x, rest, leaf, out);
    }
    x[level] = 0;
  }
};

bool is_zero(const IntVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Integer& v) { return sgn(v) == 0; });
}

bool leading_positive(const IntVector& x) {
  for (const auto& v : x)
    if (sgn(v) != 0) return sgn(v) > 0;
  return false;
}

std::vector<IntVector> walk(const RatMatrix& q, const Rational& bound, const EnumerationOptions& options,
                            const Leaf& leaf) {
  if (!is_positive_definite(q))
    throw_error(ErrorKind::Precondition, "enumerate_short_vectors: form is not positive definite");
  const std::size_t n = q.rows();
  std::vector<IntVector> out;
  if (n == 0 || sgn(bound) < 0) return out;
  const Ldl ldl = *ldl_decompose(q);
  const Enumerator en{ldl, n};

  if (n == 1) {
    IntVector x(1);
    leaf(x, ldl.diagonal[0], 0, bound, out);
  } else {
    std::vector<std::pair<Integer, Rational>> top;
    en.level_candidates(n - 1, 0, bound, top);
    const unsigned threads = std::max<unsigned>(
        1, std::min<unsigned>(options.threads == 0 ? default_thread_count() : options.threads,
                              static_cast<unsigned>(top.size())));
    std::vector<std::vector<IntVector>> partial(threads);
    auto work = [&](unsigned t) {
      IntVector x(n);
      for (std::size_t k = t; k < top.size(); k += threads) {
        x[n - 1] = top[k].first;
        en.recurse(n - 2, x, top[k].second, leaf, partial[t]);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (auto& part : partial)
      for (auto& x : part) out.push_back(std::move(x));
  }
  std::erase_if(out, [&](const IntVector& x) { return is_zero(x) || (options.one_per_pair && !leading_positive(x)); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<IntVector> enumerate_short_vectors(const RatMatrix& q, const Rational& bound,
                                               const EnumerationOptions& options) {
  const Leaf every = [](IntVector& x, const Rational& d0, const Rational& center, const Rational& budget,
                        std::vector<IntVector>& out) {
    const Integer s = floor_sqrt(budget / d0);
    for (Integer v = floor_of(center) - s - 1; v <= ceil_of(center) + s + 1; ++v) {
      const Rational dx = Rational(v) - center;
      if (d0 * dx * dx <= budget) {
        x[0] = v;
        out.push_back(x);
      }
    }
  };
  return walk(q, bound, options, every);
}

std::vector<MukaiVector> enumerate_spherical(const MukaiLattice& lattice, const CentralCharge& z,
                                             const Rational& mass_bound, const EnumerationOptions& options) {
  if (sgn(mass_bound) < 0) throw_error(ErrorKind::Input, "mass bound must be >= 0");
  lattice.check_dimension(MukaiVector{0, IntVector(lattice.ns_rank()), 0});
  const PositivitySplit split = positivity_split(lattice, z);
  const std::size_t rho = lattice.ns_rank();
  // x = (r, c, s) and delta^2 = c.G.c - 2 r s: for s != 0 the innermost
  // coordinate r is determined by delta^2 = -2.
  const Leaf spherical = [&](IntVector& x, const Rational& d0, const Rational& center, const Rational& budget,
                             std::vector<IntVector>& out) {
    const IntVector c(x.begin() + 1, x.begin() + 1 + static_cast<std::ptrdiff_t>(rho));
    const Integer cc = lattice.ns_product(c, c);
    const Integer& s = x[rho + 1];
    auto consider = [&](const Integer& r) {
      const Rational dx = Rational(r) - center;
      if (d0 * dx * dx > budget) return;
      x[0] = r;
      out.push_back(x);
    };
    if (sgn(s) != 0) {
      const Integer num = cc + 2, den = 2 * s;
      if (num % den == 0) consider(num / den);
    } else if (cc == -2) {
      const Integer w = floor_sqrt(budget / d0);
      for (Integer r = floor_of(center) - w - 1; r <= ceil_of(center) + w + 1; ++r) consider(r);
    }
  };
  const Rational m2 = mass_bound * mass_bound;
  std::vector<MukaiVector> out;
  for (const IntVector& x : walk(split.Q, spherical_ball_bound(split, mass_bound), options, spherical)) {
    const MukaiVector v = MukaiVector::from_coords(x);
    if (lattice.pairing(v, v) != -2) continue;
    if (evaluate(lattice, z, v).norm_squared() > m2) continue;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace stablat
