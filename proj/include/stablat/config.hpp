#pragma once

// Structured-text input: a TOML subset (comments, key = value, strings,
// integers, floats, booleans, nested arrays, inline tables, [table] and
// [[array of tables]]) read into JSON values. Files starting with '{' are
// read as JSON.

#include <string>
#include <vector>

#include <json.hpp>

#include "stablat/charge.hpp"
#include "stablat/mukai.hpp"
#include "stablat/sim.hpp"

namespace stablat {

using Json = nlohmann::json;

/// Throws Error(Input) with the line number on malformed text.
Json parse_config_text(const std::string& text);
Json load_config_file(const std::string& path);

/// Integer or "p/q" string; floats only when allow_decimal (read as the
/// exact decimal they print as).
Rational rational_from_json(const Json& j, bool allow_decimal);
RatVector rational_list_from_json(const Json& j, bool allow_decimal);
IntVector integer_list_from_json(const Json& j);

struct LatticeConfig {
  MukaiLattice lattice;
  AmpleData ample;
};

/// Keys: ns_gram (list of integer rows), ample (integer list), optional ns_rank.
LatticeConfig lattice_from_config(const Json& j);

/// Lattice keys plus [[atoms]] {name, class, rigidity}, hom = [[i, j, k, value], ...]
/// with atoms by name or index, and optional [[objects]] {name, rigidity, factors = [[atom, shift], ...]}.
SphericalCollectionDatum datum_from_config(const Json& j);

/// [phases] name = phase (number or "p/q"; missing phases are NaN), and the charge from one of
/// [charge] re/im lists, [charge] B/omega lists, or [values] name = [re, im].
ToyStability stability_from_config(const Json& j, const SphericalCollectionDatum& d, const AmpleData& ample,
                                   bool allow_decimal);

/// [[objects]] {name, hminus = "zero" | "torsion_free", mu_max, hzero = "torsion" | "slopes", mu_min}.
std::vector<TwoTermSheafDatum> heart_objects_from_config(const Json& j, bool allow_decimal);

}  // namespace stablat
