#include "stablat/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "stablat/error.hpp"

namespace stablat {

const char* to_string(Rigidity r) { return r == Rigidity::Spherical ? "spherical" : "semirigid"; }

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Ok: return "ok";
    case VerdictKind::NotClaimed: return "not_claimed";
    case VerdictKind::Witness: return "witness";
  }
  return "ok";
}

long HomTable::get(std::size_t i, std::size_t j, int k) const {
  auto it = entries_.find({i, j, k});
  return it == entries_.end() ? 0 : it->second;
}

void HomTable::set(std::size_t i, std::size_t j, int k, long value) {
  if (value == 0) {
    entries_.erase({i, j, k});
  } else {
    entries_[{i, j, k}] = value;
  }
}

std::size_t SphericalCollectionDatum::atom_index(const std::string& name) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].name == name) return i;
  throw_error(ErrorKind::Input, "unknown atom '" + name + "'");
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void check_factors(const SphericalCollectionDatum& d, const RegisteredObject& obj, std::size_t index,
                   ValidationReport& report) {
  if (obj.factors.empty()) {
    report.violations.push_back({"object", index, index, 0, "registered object '" + obj.name + "' has no factors"});
    return;
  }
  std::size_t semirigid = 0;
  for (const ShiftedAtom& f : obj.factors) {
    if (f.atom >= d.atoms.size()) {
      report.violations.push_back({"object", index, f.atom, 0, "object '" + obj.name + "' uses an unknown atom"});
      return;
    }
    if (d.atoms[f.atom].rigidity == Rigidity::Semirigid) ++semirigid;
  }
  if (obj.rigidity == Rigidity::Spherical && semirigid > 0)
    report.violations.push_back(
        {"object", index, index, 0, "spherical object '" + obj.name + "' has a non-spherical stable factor"});
  if (obj.rigidity == Rigidity::Semirigid && semirigid > 1)
    report.violations.push_back(
        {"object", index, index, 0, "semirigid object '" + obj.name + "' has more than one semirigid factor"});
}

}  // namespace

ValidationReport validate_datum(const SphericalCollectionDatum& d) {
  ValidationReport report;
  const std::size_t n = d.atoms.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d.atoms[i].v.c.size() != d.lattice.ns_rank())
      report.violations.push_back({"dimension", i, i, 0, "atom '" + d.atoms[i].name + "' has the wrong class length"});
    for (std::size_t j = 0; j < i; ++j)
      if (d.atoms[i].name == d.atoms[j].name)
        report.violations.push_back({"dimension", j, i, 0, "duplicate atom name '" + d.atoms[i].name + "'"});
  }
  if (!report.ok()) return report;

  for (const auto& [key, value] : d.hom.entries()) {
    const auto [i, j, k] = key;
    if (i >= n || j >= n || k < kMinHomDegree || k > kMaxHomDegree || value < 0)
      report.violations.push_back({"range", i, j, k, "hom entry out of range (value " + std::to_string(value) + ")"});
  }

  for (std::size_t i = 0; i < n; ++i) {
    const bool spherical = d.atoms[i].rigidity == Rigidity::Spherical;
    const long expected[3] = {1, spherical ? 0 : 2, 1};
    for (int k = 0; k < 3; ++k)
      if (d.hom.get(i, i, k) != expected[k])
        report.violations.push_back({"rigidity", i, i, k,
                                     "hom^" + std::to_string(k) + "(" + d.atoms[i].name + "," + d.atoms[i].name +
                                         ") = " + std::to_string(d.hom.get(i, i, k)) + ", expected " +
                                         std::to_string(expected[k])});
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long chi = 0;
      for (int k = kMinHomDegree; k <= kMaxHomDegree; ++k) {
        const long h = d.hom.get(i, j, k);
        chi += (k % 2 == 0) ? h : -h;
        const int dual = 2 - k;
        const long hd = (dual >= kMinHomDegree && dual <= kMaxHomDegree) ? d.hom.get(j, i, dual) : 0;
        if (h != hd)
          report.violations.push_back({"serre", i, j, k,
                                       "hom^" + std::to_string(k) + "(" + d.atoms[i].name + "," + d.atoms[j].name +
                                           ") = " + std::to_string(h) + " but hom^" + std::to_string(dual) + "(" +
                                           d.atoms[j].name + "," + d.atoms[i].name + ") = " + std::to_string(hd)});
      }
      const Integer expected = -d.lattice.pairing(d.atoms[i].v, d.atoms[j].v);
      if (Integer(chi) != expected)
        report.violations.push_back({"euler", i, j, 0,
                                     "sum (-1)^k hom^k(" + d.atoms[i].name + "," + d.atoms[j].name +
                                         ") = " + std::to_string(chi) + " but -<v_i,v_j> = " + expected.get_str()});
    }

  for (std::size_t o = 0; o < d.objects.size(); ++o) check_factors(d, d.objects[o], o, report);
  return report;
}

ValidationReport validate_stability(const SphericalCollectionDatum& d, const ToyStability& sigma) {
  ValidationReport report;
  const std::size_t n = d.atoms.size();
  if (sigma.phases.size() != n || sigma.z.dimension() != d.lattice.dimension()) {
    report.violations.push_back({"dimension", 0, 0, 0, "stability does not match the datum"});
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(sigma.phases[i])) {
      report.violations.push_back({"ray", i, i, 0, "phase of '" + d.atoms[i].name + "' is not finite"});
      continue;
    }
    const ExactComplex z = evaluate(d.lattice, sigma.z, d.atoms[i].v);
    if (z.is_zero()) {
      report.violations.push_back({"ray", i, i, 0, "Z(" + d.atoms[i].name + ") = 0"});
      continue;
    }
    const double theta = principal_phase(z).value;
    const double diff = sigma.phases[i] - theta;
    const double off = diff - 2.0 * std::round(diff / 2.0);
    if (std::abs(off) > kRayTolerance)
      report.violations.push_back({"ray", i, i, 0,
                                   "Z(" + d.atoms[i].name + ") has phase " + fmt(theta) + " mod 2, not " +
                                       fmt(sigma.phases[i])});
  }
  for (const auto& [key, value] : d.hom.entries()) {
    const auto [i, j, k] = key;
    if (value == 0 || i >= n || j >= n) continue;
    const double lhs = sigma.phases[i], rhs = sigma.phases[j] + k;
    const bool order = lhs > rhs + kPhaseTolerance;
    const bool tie = i != j && std::abs(lhs - rhs) <= kPhaseTolerance;
    if (order || tie)
      report.violations.push_back({"hom_order", i, j, k,
                                   "hom^" + std::to_string(k) + "(" + d.atoms[i].name + "," + d.atoms[j].name +
                                       ") != 0 needs phase " + fmt(lhs) + (tie ? " < " : " <= ") + fmt(rhs)});
  }
  return report;
}

MukaiVector class_of(const SphericalCollectionDatum& d, const FilteredObject& e) {
  MukaiVector sum{0, IntVector(d.lattice.ns_rank()), 0};
  for (const ShiftedAtom& f : e.factors) {
    if (f.atom >= d.atoms.size()) throw_error(ErrorKind::Input, "factor refers to an unknown atom");
    sum = sum + shift_class(d.atoms[f.atom].v, f.shift);
  }
  return sum;
}

double phase_of(const ToyStability& sigma, const ShiftedAtom& a) {
  return sigma.phases.at(a.atom) + static_cast<double>(a.shift);
}

HnFiltration hn_decompose(const SphericalCollectionDatum& d, const ToyStability& sigma, const FilteredObject& e) {
  if (e.factors.empty()) throw_error(ErrorKind::Input, "hn_decompose: empty object");
  std::vector<ShiftedAtom> sorted = e.factors;
  for (const ShiftedAtom& f : sorted)
    if (f.atom >= d.atoms.size() || f.atom >= sigma.phases.size())
      throw_error(ErrorKind::Input, "hn_decompose: factor refers to an unknown atom");
  std::sort(sorted.begin(), sorted.end(), [&](const ShiftedAtom& a, const ShiftedAtom& b) {
    const double pa = phase_of(sigma, a), pb = phase_of(sigma, b);
    if (std::abs(pa - pb) > kPhaseTolerance) return pa > pb;
    return a < b;
  });
  HnFiltration out;
  for (const ShiftedAtom& f : sorted) {
    const double p = phase_of(sigma, f);
    if (out.groups.empty() || std::abs(out.groups.back().phase - p) > kPhaseTolerance) {
      out.groups.push_back({p, {f}});
    } else {
      out.groups.back().factors.push_back(f);
    }
  }
  out.phi_plus = out.groups.front().phase;
  out.phi_minus = out.groups.back().phase;
  return out;
}

std::vector<FilteredObject> object_universe(const SphericalCollectionDatum& d, const UniverseOptions& options,
                                            bool spherical_only) {
  std::vector<ShiftedAtom> pieces;
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    if (spherical_only && d.atoms[i].rigidity != Rigidity::Spherical) continue;
    for (long s = -options.max_shift; s <= options.max_shift; ++s) pieces.push_back({i, s});
  }
  std::vector<FilteredObject> out;
  // Non-decreasing index sequences enumerate multisets.
  std::vector<std::size_t> idx;
  auto extend = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) {
      FilteredObject e;
      for (std::size_t k : idx) e.factors.push_back(pieces[k]);
      out.push_back(std::move(e));
    }
    if (idx.size() == options.max_size) return;
    for (std::size_t k = start; k < pieces.size(); ++k) {
      idx.push_back(k);
      self(self, k);
      idx.pop_back();
    }
  };
  extend(extend, 0);
  for (const RegisteredObject& obj : d.objects) {
    if (spherical_only && obj.rigidity != Rigidity::Spherical) continue;
    for (long s = -options.max_shift; s <= options.max_shift; ++s) {
      FilteredObject e;
      for (const ShiftedAtom& f : obj.factors) e.factors.push_back({f.atom, f.shift + s});
      out.push_back(std::move(e));
    }
  }
  return out;
}

namespace {

double sup_distance(const SphericalCollectionDatum& d, const ToyStability& a, const ToyStability& b,
                    const std::vector<FilteredObject>& universe) {
  double best = 0;
  for (const FilteredObject& e : universe) {
    const HnFiltration x = hn_decompose(d, a, e), y = hn_decompose(d, b, e);
    best = std::max({best, std::abs(x.phi_plus - y.phi_plus), std::abs(x.phi_minus - y.phi_minus)});
  }
  return best;
}

}  // namespace

double f_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                  const UniverseOptions& options) {
  return sup_distance(d, sigma, sigma_prime, object_universe(d, options, false));
}

double fS_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                   const UniverseOptions& options) {
  return sup_distance(d, sigma, sigma_prime, object_universe(d, options, true));
}

double f_singleton_distance(const SphericalCollectionDatum& d, const ToyStability& sigma,
                            const ToyStability& sigma_prime, bool spherical_only) {
  double best = 0;
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    if (spherical_only && d.atoms[i].rigidity != Rigidity::Spherical) continue;
    best = std::max(best, std::abs(sigma.phases.at(i) - sigma_prime.phases.at(i)));
  }
  return best;
}

double charge_distance(const MukaiLattice& lattice, const CentralCharge& z, const CentralCharge& z_prime) {
  if (z.dimension() != lattice.dimension() || z_prime.dimension() != lattice.dimension())
    throw_error(ErrorKind::Input, "charges do not match the lattice");
  Rational best = 0;
  RatVector dre(z.dimension()), dim(z.dimension());
  for (std::size_t j = 0; j < z.dimension(); ++j) {
    dre[j] = z.re()[j] - z_prime.re()[j];
    dim[j] = z.im()[j] - z_prime.im()[j];
  }
  for (std::size_t j = 0; j < z.dimension(); ++j) {
    RatVector e(z.dimension());
    e[j] = 1;
    const Rational x = lattice.pairing(dre, e), y = lattice.pairing(dim, e);
    best = std::max<Rational>(best, x * x + y * y);
  }
  if (const auto exact = exact_sqrt(best)) return to_double(*exact);
  return std::sqrt(to_double(best));
}

double d_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                  const UniverseOptions& options) {
  return std::max(f_distance(d, sigma, sigma_prime, options), charge_distance(d.lattice, sigma.z, sigma_prime.z));
}

double dS_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                   const UniverseOptions& options) {
  return std::max(fS_distance(d, sigma, sigma_prime, options), charge_distance(d.lattice, sigma.z, sigma_prime.z));
}

EquivalenceReport check_equivalent_conditions(const SphericalCollectionDatum& d, const ToyStability& sigma,
                                              const ToyStability& sigma_prime, const UniverseOptions& options) {
  EquivalenceReport out{true, true, true};
  // (i) the stable spherical objects are the spherical atoms and their shifts.
  for (std::size_t i = 0; i < d.atoms.size(); ++i)
    if (d.atoms[i].rigidity == Rigidity::Spherical &&
        std::abs(sigma.phases.at(i) - sigma_prime.phases.at(i)) > kPhaseTolerance)
      out.stable_slices_agree = false;

  for (const FilteredObject& e : object_universe(d, options, true)) {
    const HnFiltration x = hn_decompose(d, sigma, e), y = hn_decompose(d, sigma_prime, e);
    // (ii) semistable of phase phi: a single HN group.
    const bool ss_x = x.groups.size() == 1, ss_y = y.groups.size() == 1;
    if (ss_x != ss_y || (ss_x && std::abs(x.phi_plus - y.phi_plus) > kPhaseTolerance))
      out.semistable_slices_agree = false;
    // (iii)
    if (std::abs(x.phi_plus - y.phi_plus) > kPhaseTolerance || std::abs(x.phi_minus - y.phi_minus) > kPhaseTolerance)
      out.extreme_phases_agree = false;
  }
  return out;
}

PhaseInterval propagate_phase_constraints(const SphericalCollectionDatum& d,
                                          const std::map<std::size_t, double>& spherical_phases,
                                          const CentralCharge& z, std::size_t target) {
  if (target >= d.atoms.size()) throw_error(ErrorKind::Input, "propagate: unknown target atom");
  const std::string& tname = d.atoms[target].name;
  constexpr double inf = std::numeric_limits<double>::infinity();
  PhaseInterval out{-inf, inf, true, true, std::nullopt};
  bool linked = false;
  for (const auto& [a, phi] : spherical_phases) {
    if (a >= d.atoms.size() || a == target) continue;
    if (d.atoms[a].rigidity != Rigidity::Spherical) continue;
    for (int k = kMinHomDegree; k <= kMaxHomDegree; ++k) {
      // A -> T[k], equivalently (Serre) T -> A[2-k]
      const int dual = 2 - k;
      const bool forward = d.hom.get(a, target, k) != 0 || d.hom.get(target, a, dual) != 0;
      if (forward) {
        linked = true;
        out.lower = std::max(out.lower, phi - k);        // phi_A < phi_T + k
        out.upper = std::min(out.upper, phi + dual);     // phi_T < phi_A + 2 - k
      }
    }
  }
  if (!linked)
    throw_error(ErrorKind::Precondition, "atom '" + tname + "' has no Hom link to a spherical atom with known phase");
  const ExactComplex zt = evaluate(d.lattice, z, d.atoms[target].v);
  if (zt.is_zero()) throw_error(ErrorKind::Precondition, "Z(" + tname + ") = 0");
  const double theta = principal_phase(zt).value;

  std::vector<double> points;
  const double m0 = std::ceil((out.lower - theta) / 2.0) - 1.0;
  for (double m = m0; theta + 2.0 * m < out.upper + 1.0; m += 1.0) {
    const double p = theta + 2.0 * m;
    if (p > out.lower + kPhaseTolerance && p < out.upper - kPhaseTolerance) points.push_back(p);
    if (points.size() > 1) break;
  }
  if (points.empty()) {
    std::ostringstream os;
    os.precision(12);
    os << "no phase of '" << tname << "' in (" << out.lower << ", " << out.upper << ") is congruent to " << theta
       << " mod 2";
    throw_error(ErrorKind::Inconsistent, os.str());
  }
  if (points.size() == 1) out.forced_value = points.front();
  return out;
}

namespace {

void require_equal_charge(const ToyStability& a, const ToyStability& b) {
  if (!(a.z == b.z)) throw_error(ErrorKind::Precondition, "central charges differ; the claim needs Z = Z'");
}

void require_valid(const SphericalCollectionDatum& d, const ToyStability& s, const char* which) {
  const ValidationReport r = validate_stability(d, s);
  if (!r.ok())
    throw_error(ErrorKind::Precondition, std::string(which) + " is not a valid stability: " + r.violations.front().detail);
}

Witness witness_for(const SphericalCollectionDatum& d, std::size_t i, const ToyStability& a, const ToyStability& b,
                    std::string reason) {
  return {i, d.atoms[i].name, a.phases[i], b.phases[i], std::move(reason)};
}

// Non-spherical atoms must agree with each other and, when pinned, with the
// forced value.
Verdict check_unpinned(const SphericalCollectionDatum& d, const ToyStability& a, const ToyStability& b) {
  std::map<std::size_t, double> known;
  for (std::size_t i = 0; i < d.atoms.size(); ++i)
    if (d.atoms[i].rigidity == Rigidity::Spherical) known[i] = a.phases[i];
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    if (d.atoms[i].rigidity == Rigidity::Spherical) continue;
    std::optional<double> forced;
    try {
      forced = propagate_phase_constraints(d, known, a.z, i).forced_value;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Inconsistent) return {VerdictKind::Witness, witness_for(d, i, a, b, e.what())};
    }
    if (forced) {
      for (const ToyStability* s : {&a, &b})
        if (std::abs(s->phases[i] - *forced) > kPhaseTolerance)
          return {VerdictKind::Witness, witness_for(d, i, a, b, "phase differs from the forced value")};
    } else if (std::abs(a.phases[i] - b.phases[i]) > kPhaseTolerance) {
      return {VerdictKind::Witness, witness_for(d, i, a, b, "phase not pinned by spherical data")};
    }
  }
  return {VerdictKind::Ok, std::nullopt};
}

}  // namespace

Verdict verify_spherical_determinacy(const SphericalCollectionDatum& d, const ToyStability& sigma,
                                     const ToyStability& sigma_prime) {
  require_equal_charge(sigma, sigma_prime);
  require_valid(d, sigma, "sigma");
  require_valid(d, sigma_prime, "sigma'");
  for (std::size_t i = 0; i < d.atoms.size(); ++i)
    if (d.atoms[i].rigidity == Rigidity::Spherical &&
        std::abs(sigma.phases[i] - sigma_prime.phases[i]) > kPhaseTolerance)
      return {VerdictKind::NotClaimed, witness_for(d, i, sigma, sigma_prime, "spherical phases differ (f_S > 0)")};
  return check_unpinned(d, sigma, sigma_prime);
}

Verdict check_fS_gap(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime) {
  require_equal_charge(sigma, sigma_prime);
  if (sigma.phases.size() != d.atoms.size() || sigma_prime.phases.size() != d.atoms.size())
    throw_error(ErrorKind::Precondition, "stability does not match the datum");
  std::optional<std::size_t> worst;
  double fs = 0;
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    if (d.atoms[i].rigidity != Rigidity::Spherical) continue;
    const double diff = std::abs(sigma.phases[i] - sigma_prime.phases[i]);
    if (diff > fs + kPhaseTolerance) {
      fs = diff;
      worst = i;
    }
  }
  if (fs >= 1.0 - kPhaseTolerance)
    return {VerdictKind::NotClaimed, witness_for(d, *worst, sigma, sigma_prime, "f_S >= 1")};
  // Equal Z(A) forces the two phases onto one ray, so they differ by an even integer.
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    if (d.atoms[i].rigidity != Rigidity::Spherical) continue;
    const double diff = sigma.phases[i] - sigma_prime.phases[i];
    if (std::abs(diff) > kPhaseTolerance)
      return {VerdictKind::Witness, witness_for(d, i, sigma, sigma_prime,
                                                "ray condition: equal Z with phase difference in (0,1)")};
  }
  return check_unpinned(d, sigma, sigma_prime);
}

ToyStability gl2_act(const ToyStability& sigma, const Gl2Element& g) {
  const Gl2Element inv = g.inverse();
  ToyStability out{{}, gl2_apply(g, sigma.z)};
  out.phases.reserve(sigma.phases.size());
  for (double phi : sigma.phases) out.phases.push_back(inv.relabel(phi));
  return out;
}

CentralCharge charge_from_atom_values(const SphericalCollectionDatum& d, const std::vector<ExactComplex>& values) {
  std::vector<MukaiVector> classes;
  for (const Atom& a : d.atoms) classes.push_back(a.v);
  return charge_from_values(d.lattice, classes, values);
}

}  // namespace stablat
