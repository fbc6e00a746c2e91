#pragma once

// JSON, CSV and SVG emission. Every JSON writer has a reader that rebuilds the
// structure it came from. Rationals are written as "p/q" strings, infinite
// bounds as "inf" / "-inf".

#include <string>
#include <vector>

#include "stablat/charge.hpp"
#include "stablat/config.hpp"
#include "stablat/sim.hpp"
#include "stablat/walls.hpp"

namespace stablat {

/// printf("%.12g")
std::string format_double(double x);

Json to_json(const MukaiVector& v);
MukaiVector mukai_vector_from_json(const Json& j);

Json to_json(const ExactComplex& z);
ExactComplex exact_complex_from_json(const Json& j);

Json to_json(const std::vector<MukaiVector>& classes);
std::vector<MukaiVector> mukai_vectors_from_json(const Json& j);

Json to_json(const AdmissibilityReport& r);
AdmissibilityReport admissibility_from_json(const Json& j);

Json to_json(const Poly2& p);
Poly2 poly2_from_json(const Json& j);

Json to_json(const WallSet& w);
WallSet wall_set_from_json(const Json& j);

Json to_json(const ValidationReport& r);
ValidationReport validation_from_json(const Json& j);

Json to_json(const PhaseInterval& p);
PhaseInterval phase_interval_from_json(const Json& j);

Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

struct MetricsReport {
  double f;
  double fS;
  double charge_distance;
  double d;
  double dS;
  EquivalenceReport equivalence;
};

Json to_json(const MetricsReport& m);
MetricsReport metrics_from_json(const Json& j);

/// One row per wall: r,c_1..c_rho,s,locus,validity,beta_min,beta_max,alpha_min,alpha_max.
std::string walls_csv(const WallSet& w);
/// One row per sampled segment: r,c_1..c_rho,s,segment,beta0,alpha0,beta1,alpha1.
std::string segments_csv(const WallSet& w);
std::string walls_svg(const WallSet& w);

}  // namespace stablat
