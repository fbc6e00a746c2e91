#include <gtest/gtest.h>

#include <cmath>

#include "stablat/error.hpp"
#include "stablat/sim.hpp"
#include "support/toy.hpp"

using namespace stablat;

namespace {

// L at phase 1/2 with Z(L) = i, P at phase 1 with Z(P) = -1.
ToyStability lp_sigma(const SphericalCollectionDatum& d, double phi_l = 0.5, double phi_p = 1.0) {
  return {{phi_l, phi_p}, charge_from_atom_values(d, {{0, 1}, {-1, 0}})};
}

bool has_rule(const ValidationReport& r, const std::string& rule) {
  for (const Violation& v : r.violations)
    if (v.rule == rule) return true;
  return false;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Input;
}

}  // namespace

TEST(ValidateDatum, Examples) {
  EXPECT_TRUE(validate_datum(toy::line()).ok());
  EXPECT_TRUE(validate_datum(toy::line_and_point()).ok());
  EXPECT_TRUE(validate_datum(toy::two_lines()).ok());
  EXPECT_TRUE(validate_datum(toy::two_lines_and_point()).ok());

  SphericalCollectionDatum serre = toy::line_and_point();
  serre.hom.set(1, 0, 2, 0);
  EXPECT_TRUE(has_rule(validate_datum(serre), "serre"));

  SphericalCollectionDatum euler = toy::line_and_point();
  euler.hom.set(0, 1, 0, 2);
  euler.hom.set(1, 0, 2, 2);
  const ValidationReport r = validate_datum(euler);
  EXPECT_TRUE(has_rule(r, "euler"));
  EXPECT_FALSE(has_rule(r, "serre"));

  SphericalCollectionDatum rigid = toy::line();
  rigid.hom.set(0, 0, 1, 1);
  EXPECT_TRUE(has_rule(validate_datum(rigid), "rigidity"));
}

TEST(ValidateDatum, RegisteredObjectFactors) {
  SphericalCollectionDatum d = toy::line_and_point();
  d.objects.push_back({"bad", Rigidity::Spherical, {{7, 0}}});
  EXPECT_TRUE(has_rule(validate_datum(d), "object"));
}

TEST(ValidateStability, Examples) {
  const SphericalCollectionDatum d = toy::line_and_point();
  EXPECT_TRUE(validate_stability(d, lp_sigma(d)).ok());

  ToyStability low = lp_sigma(d);
  low.phases[1] = 0.3;
  EXPECT_TRUE(has_rule(validate_stability(d, low), "hom_order"));

  ToyStability ray = lp_sigma(d);
  ray.phases[0] = 0.25;
  const ValidationReport r = validate_stability(d, ray);
  EXPECT_TRUE(has_rule(r, "ray"));
  EXPECT_FALSE(has_rule(r, "hom_order"));

  ToyStability tie{{1.0, 1.0}, charge_from_atom_values(d, {{-1, 0}, {-1, 0}})};
  EXPECT_TRUE(has_rule(validate_stability(d, tie), "hom_order"));
}

TEST(HnDecompose, Examples) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const ToyStability s = lp_sigma(d);

  const HnFiltration lp = hn_decompose(d, s, {{{0, 0}, {1, 0}}});
  ASSERT_EQ(lp.groups.size(), 2u);
  EXPECT_EQ(lp.groups[0].factors.front().atom, 1u);
  EXPECT_EQ(lp.groups[1].factors.front().atom, 0u);
  EXPECT_EQ(lp.phi_plus, 1.0);
  EXPECT_EQ(lp.phi_minus, 0.5);

  const HnFiltration single = hn_decompose(d, s, {{{0, 0}}});
  EXPECT_EQ(single.groups.size(), 1u);
  EXPECT_EQ(single.phi_plus, 0.5);
  EXPECT_EQ(single.phi_minus, 0.5);

  const HnFiltration shifted = hn_decompose(d, s, {{{0, 0}, {0, 1}}});
  ASSERT_EQ(shifted.groups.size(), 2u);
  EXPECT_EQ(shifted.groups[0].factors.front().shift, 1);
  EXPECT_EQ(shifted.phi_plus, 1.5);
  EXPECT_EQ(shifted.phi_minus, 0.5);

  EXPECT_EQ(kind_of([&] { hn_decompose(d, s, FilteredObject{}); }), ErrorKind::Input);
}

TEST(HnDecompose, ClassIsSignedSum) {
  const SphericalCollectionDatum d = toy::line_and_point();
  EXPECT_EQ(class_of(d, {{{0, 1}, {1, 0}}}), (MukaiVector{-1, {0}, 0}));
  EXPECT_EQ(class_of(d, {{{1, 2}}}), (MukaiVector{0, {0}, 1}));
}

TEST(Universe, SizesAndShiftInvariance) {
  const SphericalCollectionDatum d = toy::line_and_point();
  // 2 atoms x 7 shifts = 14 pieces; multisets of size <= 2: 14 + 14*15/2.
  EXPECT_EQ(object_universe(d, {2, 3}, false).size(), 14u + 105u);
  EXPECT_EQ(object_universe(d, {2, 3}, true).size(), 7u + 28u);
  const ToyStability s = lp_sigma(d);
  ToyStability moved = s;
  moved.phases[0] += 0.3;
  EXPECT_DOUBLE_EQ(f_distance(d, s, moved, {2, 3}), f_distance(d, s, moved, {2, 1}));
}

TEST(Distances, Examples) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const ToyStability s = lp_sigma(d);
  EXPECT_EQ(f_distance(d, s, s), 0.0);
  EXPECT_EQ(fS_distance(d, s, s), 0.0);
  EXPECT_EQ(d_distance(d, s, s), 0.0);
  EXPECT_EQ(dS_distance(d, s, s), 0.0);

  ToyStability p_moved = s;
  p_moved.phases[1] += 0.2;
  EXPECT_NEAR(f_distance(d, s, p_moved), 0.2, 1e-12);
  EXPECT_EQ(fS_distance(d, s, p_moved), 0.0);

  ToyStability l_moved = s;
  l_moved.phases[0] += 0.3;
  EXPECT_NEAR(f_distance(d, s, l_moved), 0.3, 1e-12);
  EXPECT_NEAR(fS_distance(d, s, l_moved), 0.3, 1e-12);
  EXPECT_NEAR(dS_distance(d, s, l_moved), 0.3, 1e-12);
}

TEST(Distances, ChargeTermOnOneBasisVector) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const ToyStability s = lp_sigma(d);
  const std::vector<MukaiVector> basis{{1, {0}, 0}, {0, {1}, 0}, {0, {0}, 1}};
  std::vector<ExactComplex> values;
  for (const MukaiVector& e : basis) values.push_back(evaluate(d.lattice, s.z, e));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Rational eps(1, 8);
    std::vector<ExactComplex> scaled = values;
    scaled[j] = {values[j].re * (1 + eps), values[j].im * (1 + eps)};
    const ToyStability t{s.phases, charge_from_values(d.lattice, basis, scaled)};
    const double expected = to_double(eps) * std::sqrt(to_double(values[j].norm_squared()));
    EXPECT_NEAR(charge_distance(d.lattice, s.z, t.z), expected, 1e-15);
    EXPECT_NEAR(dS_distance(d, s, t), expected, 1e-15);
  }
}

TEST(Distances, UniverseSupremumIsAttainedOnSingletons) {
  gen::Rng rng(73);
  for (const auto& [name, d] : toy::families())
    for (int t = 0; t < 100; ++t) {
      const ToyStability a = toy::random_valid(d, rng), b = toy::random_valid(d, rng);
      EXPECT_NEAR(f_distance(d, a, b), f_singleton_distance(d, a, b, false), 1e-12) << name;
      EXPECT_NEAR(fS_distance(d, a, b), f_singleton_distance(d, a, b, true), 1e-12) << name;
    }
}

TEST(Equivalence, Examples) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const ToyStability s = lp_sigma(d);
  const EquivalenceReport same = check_equivalent_conditions(d, s, s);
  EXPECT_TRUE(same.stable_slices_agree && same.semistable_slices_agree && same.extreme_phases_agree);

  ToyStability l_moved = s;
  l_moved.phases[0] += 0.25;
  const EquivalenceReport moved = check_equivalent_conditions(d, s, l_moved);
  EXPECT_FALSE(moved.stable_slices_agree || moved.semistable_slices_agree || moved.extreme_phases_agree);

  ToyStability p_moved = s;
  p_moved.phases[1] += 0.25;
  const EquivalenceReport p = check_equivalent_conditions(d, s, p_moved);
  EXPECT_TRUE(p.stable_slices_agree && p.semistable_slices_agree && p.extreme_phases_agree);
}

TEST(Propagate, ForcesPointPhaseToOne) {
  const SphericalCollectionDatum d = toy::line_and_point();
  for (const double phi_l : {0.125, 0.5, 0.75, 0.999}) {
    const PhaseInterval i = propagate_phase_constraints(d, {{0, phi_l}}, lp_sigma(d).z, 1);
    EXPECT_EQ(i.lower, phi_l);
    EXPECT_EQ(i.upper, phi_l + 2);
    EXPECT_TRUE(i.lower_strict && i.upper_strict);
    ASSERT_TRUE(i.forced_value.has_value());
    EXPECT_EQ(*i.forced_value, 1.0);
  }
}

TEST(Propagate, PositiveChargeForcesTwo) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const CentralCharge z = charge_from_atom_values(d, {{0, 1}, {1, 0}});
  for (const double phi_l : {0.25, 0.5, 1.0}) {
    const PhaseInterval i = propagate_phase_constraints(d, {{0, phi_l}}, z, 1);
    ASSERT_TRUE(i.forced_value.has_value());
    EXPECT_EQ(*i.forced_value, 2.0);
  }
}

TEST(Propagate, Errors) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const CentralCharge z = lp_sigma(d).z;
  EXPECT_EQ(kind_of([&] { propagate_phase_constraints(d, {}, z, 1); }), ErrorKind::Precondition);
  // phi_L = 1 leaves (1, 3) with no odd integer inside.
  EXPECT_EQ(kind_of([&] { propagate_phase_constraints(d, {{0, 1.0}}, z, 1); }), ErrorKind::Inconsistent);
  const CentralCharge hole = charge_from_atom_values(d, {{0, 1}, {0, 0}});
  EXPECT_EQ(kind_of([&] { propagate_phase_constraints(d, {{0, 0.5}}, hole, 1); }), ErrorKind::Precondition);
}

TEST(Propagate, ForcedValueIsTheOnlyValidPhase) {
  // Exhaustive over the quarter grid: a valid stability always puts P at the forced value.
  for (const auto& [name, d] : toy::families()) {
    for (const ToyStability& s : toy::valid_grid(d, -4, 12)) {
      std::map<std::size_t, double> known;
      for (std::size_t i = 0; i < d.atoms.size(); ++i)
        if (d.atoms[i].rigidity == Rigidity::Spherical) known[i] = s.phases[i];
      for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        if (d.atoms[i].rigidity == Rigidity::Spherical) continue;
        const PhaseInterval iv = propagate_phase_constraints(d, known, s.z, i);
        ASSERT_TRUE(iv.forced_value.has_value()) << name;
        EXPECT_EQ(*iv.forced_value, s.phases[i]) << name;
      }
    }
  }
}

TEST(Determinacy, Examples) {
  const SphericalCollectionDatum d = toy::line_and_point();
  const ToyStability s = lp_sigma(d);
  EXPECT_EQ(verify_spherical_determinacy(d, s, s).kind, VerdictKind::Ok);

  ToyStability p_wrong = s;
  p_wrong.phases[1] = 3.0;
  EXPECT_FALSE(validate_stability(d, p_wrong).ok());
  EXPECT_EQ(kind_of([&] { verify_spherical_determinacy(d, s, p_wrong); }), ErrorKind::Precondition);

  const SphericalCollectionDatum l = toy::line();
  const ToyStability a{{0.5}, charge_from_atom_values(l, {{0, 1}})};
  ToyStability b = a;
  b.phases[0] = 2.5;
  ASSERT_TRUE(validate_stability(l, b).ok());
  const Verdict v = verify_spherical_determinacy(l, a, b);
  EXPECT_EQ(v.kind, VerdictKind::NotClaimed);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->name, "L");

  ToyStability other_z{{0.5}, charge_from_atom_values(l, {{0, 2}})};
  EXPECT_EQ(kind_of([&] { verify_spherical_determinacy(l, a, other_z); }), ErrorKind::Precondition);
}

TEST(FsGap, Examples) {
  const SphericalCollectionDatum l = toy::line();
  const ToyStability a{{0.5}, charge_from_atom_values(l, {{0, 1}})};
  EXPECT_EQ(check_fS_gap(l, a, a).kind, VerdictKind::Ok);

  ToyStability half = a;
  half.phases[0] = 1.0;
  EXPECT_FALSE(validate_stability(l, half).ok());
  const Verdict v = check_fS_gap(l, a, half);
  EXPECT_EQ(v.kind, VerdictKind::Witness);
  EXPECT_NE(v.witness->reason.find("ray"), std::string::npos);

  ToyStability lifted = a;
  lifted.phases[0] = 2.5;
  ASSERT_TRUE(validate_stability(l, lifted).ok());
  EXPECT_EQ(check_fS_gap(l, a, lifted).kind, VerdictKind::NotClaimed);
  EXPECT_DOUBLE_EQ(fS_distance(l, a, lifted), 2.0);
  EXPECT_DOUBLE_EQ(f_distance(l, a, lifted), 2.0);
  EXPECT_DOUBLE_EQ(d_distance(l, a, lifted), 2.0);
}

TEST(Gl2Act, PreservesValidityAndSemistableSets) {
  gen::Rng rng(71);
  const SphericalCollectionDatum d = toy::two_lines_and_point();
  const auto universe = object_universe(d, {2, 2}, false);
  for (int t = 0; t < 200; ++t) {
    const ToyStability s = toy::random_valid(d, rng);
    std::array<Rational, 4> m{rng.rational(4, 3), rng.rational(4, 3), rng.rational(4, 3), rng.rational(4, 3)};
    if (m[0] * m[3] - m[1] * m[2] <= 0) continue;
    const Gl2Element g(m, std::atan2(m[2].get_d(), m[0].get_d()) / M_PI);
    const ToyStability gs = gl2_act(s, g);
    EXPECT_TRUE(validate_stability(d, gs).ok());
    for (const FilteredObject& e : universe) {
      const HnFiltration x = hn_decompose(d, s, e), y = hn_decompose(d, gs, e);
      ASSERT_EQ(x.groups.size(), y.groups.size());
      for (std::size_t k = 0; k < x.groups.size(); ++k) {
        EXPECT_EQ(x.groups[k].factors, y.groups[k].factors);
        EXPECT_NEAR(g.relabel(y.groups[k].phase), x.groups[k].phase, 1e-12);
      }
    }
  }
}
