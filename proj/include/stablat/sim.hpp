#pragma once

// Combinatorial toy model of stability conditions on a spherical collection:
// declared stable atoms, a Hom-degree table, phases and a central charge.
// Objects are multisets of shifted atoms; extensions are not modelled.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stablat/charge.hpp"
#include "stablat/gl2.hpp"
#include "stablat/mukai.hpp"

namespace stablat {

enum class Rigidity { Spherical, Semirigid };
const char* to_string(Rigidity r);

struct Atom {
  std::string name;
  MukaiVector v;
  Rigidity rigidity = Rigidity::Spherical;
};

/// Atom `atom` shifted by [shift].
struct ShiftedAtom {
  std::size_t atom = 0;
  long shift = 0;

  friend auto operator<=>(const ShiftedAtom&, const ShiftedAtom&) = default;
};

struct FilteredObject {
  std::vector<ShiftedAtom> factors;
};

/// A composite registered under a rigidity type.
struct RegisteredObject {
  std::string name;
  Rigidity rigidity = Rigidity::Spherical;
  std::vector<ShiftedAtom> factors;
};

constexpr int kMinHomDegree = -2;
constexpr int kMaxHomDegree = 4;

class HomTable {
 public:
  using Key = std::tuple<std::size_t, std::size_t, int>;  // (i, j, k)

  /// hom^k(A_i, A_j); zero when absent or k outside [-2, 4].
  long get(std::size_t i, std::size_t j, int k) const;
  void set(std::size_t i, std::size_t j, int k, long value);
  const std::map<Key, long>& entries() const { return entries_; }

 private:
  std::map<Key, long> entries_;
};

struct SphericalCollectionDatum {
  MukaiLattice lattice;
  std::vector<Atom> atoms;
  HomTable hom;
  std::vector<RegisteredObject> objects;

  std::size_t atom_index(const std::string& name) const;  // Error(Input) if unknown
};

struct ToyStability {
  std::vector<double> phases;
  CentralCharge z;
};

struct Violation {
  std::string rule;  // serre, euler, rigidity, range, object, dimension, ray, hom_order
  std::size_t i = 0;
  std::size_t j = 0;
  int k = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_datum(const SphericalCollectionDatum& d);
ValidationReport validate_stability(const SphericalCollectionDatum& d, const ToyStability& sigma);

constexpr double kRayTolerance = 1e-9;
constexpr double kPhaseTolerance = 1e-12;

MukaiVector class_of(const SphericalCollectionDatum& d, const FilteredObject& e);
double phase_of(const ToyStability& sigma, const ShiftedAtom& a);

struct HnGroup {
  double phase;
  std::vector<ShiftedAtom> factors;
};

struct HnFiltration {
  std::vector<HnGroup> groups;  // phases strictly decreasing
  double phi_plus;
  double phi_minus;
};

HnFiltration hn_decompose(const SphericalCollectionDatum& d, const ToyStability& sigma, const FilteredObject& e);

/// Multisets of at most max_size shifted atoms with |shift| <= max_shift,
/// together with all shifts of the registered objects.
struct UniverseOptions {
  std::size_t max_size = 2;
  long max_shift = 3;
};

std::vector<FilteredObject> object_universe(const SphericalCollectionDatum& d, const UniverseOptions& options,
                                            bool spherical_only);

/// sup over the universe of max(|phi+ - phi'+|, |phi- - phi'-|).
double f_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                  const UniverseOptions& options = {});
double fS_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                   const UniverseOptions& options = {});
/// Same sup taken over single shifted atoms only.
double f_singleton_distance(const SphericalCollectionDatum& d, const ToyStability& sigma,
                            const ToyStability& sigma_prime, bool spherical_only);

/// max over standard basis vectors e of N(X) of |Z(e) - Z'(e)|.
double charge_distance(const MukaiLattice& lattice, const CentralCharge& z, const CentralCharge& z_prime);

double d_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                  const UniverseOptions& options = {});
double dS_distance(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime,
                   const UniverseOptions& options = {});

struct EquivalenceReport {
  bool stable_slices_agree;      // (i)
  bool semistable_slices_agree;  // (ii)
  bool extreme_phases_agree;     // (iii)
  bool consistent() const {
    return stable_slices_agree == semistable_slices_agree && semistable_slices_agree == extreme_phases_agree;
  }
};

EquivalenceReport check_equivalent_conditions(const SphericalCollectionDatum& d, const ToyStability& sigma,
                                              const ToyStability& sigma_prime, const UniverseOptions& options = {});

struct PhaseInterval {
  double lower;
  double upper;
  bool lower_strict = true;
  bool upper_strict = true;
  std::optional<double> forced_value;
};

/// Bounds the phase of `target` from the Hom links to spherical atoms whose
/// phases are given, then meets the interval with arg Z(target)/pi + 2Z.
/// Error(Precondition) without any link or for Z(target) = 0;
/// Error(Inconsistent) when no admissible phase remains.
PhaseInterval propagate_phase_constraints(const SphericalCollectionDatum& d,
                                          const std::map<std::size_t, double>& spherical_phases,
                                          const CentralCharge& z, std::size_t target);

struct Witness {
  std::size_t atom;
  std::string name;
  double phase;
  double phase_prime;
  std::string reason;
};

enum class VerdictKind { Ok, NotClaimed, Witness };
const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Ok;
  std::optional<Witness> witness;
};

/// Requires Z = Z' exactly and both stabilities valid (Error(Precondition)).
Verdict verify_spherical_determinacy(const SphericalCollectionDatum& d, const ToyStability& sigma,
                                     const ToyStability& sigma_prime);

/// Requires Z = Z' exactly. For f_S < 1 every atom must agree; a spherical
/// atom whose phases differ by a non-even amount is returned as the witness.
Verdict check_fS_gap(const SphericalCollectionDatum& d, const ToyStability& sigma, const ToyStability& sigma_prime);

/// phases phi -> f^{-1}(phi), Z -> T^{-1} Z.
ToyStability gl2_act(const ToyStability& sigma, const Gl2Element& g);

/// The charge with Z(v_i) = values[i]; atom classes must be independent.
CentralCharge charge_from_atom_values(const SphericalCollectionDatum& d, const std::vector<ExactComplex>& values);

}  // namespace stablat
