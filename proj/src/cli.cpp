#include "stablat/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "stablat/config.hpp"
#include "stablat/enumerate.hpp"
#include "stablat/error.hpp"
#include "stablat/oracle.hpp"
#include "stablat/report.hpp"
#include "stablat/sim.hpp"
#include "stablat/walls.hpp"

namespace stablat {

namespace {

// Failure that is a result (oracle mismatch, invalid datum), not a usage error.
struct ValidationFailure {
  std::string message;
};

struct Options {
  bool json = false;
  bool approx = false;
  std::string lattice;
  std::string B = "";
  std::string omega;
  std::string mass_bound;
  bool oracle = false;
  unsigned threads = 0;
  std::string objects;
  std::string klass;
  std::string slice;
  std::string b_dir;
  std::string a_dir;
  std::string point;
  std::string svg;
  std::string csv;
  std::string segments;
  int mass_grid = 16;
  int sample_grid = 256;
  std::string datum;
  std::string sigma;
  std::string sigma_prime;
  std::string target;
  std::size_t max_size = 2;
  long max_shift = 3;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_error(ErrorKind::Input, "cannot write '" + path + "'");
  f << text;
}

std::string rational_text(const Rational& q) { return to_string(q); }

std::string complex_text(const ExactComplex& z) {
  return rational_text(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + rational_text(abs(z.im)) + "i";
}

Rational rational_arg(const std::string& text, bool approx) { return parse_rational(text, approx); }

LatticeConfig load_lattice(const Options& o) { return lattice_from_config(load_config_file(o.lattice)); }

ExpParams exp_params(const Options& o, const MukaiLattice& lattice) {
  RatVector B = o.B.empty() ? RatVector(lattice.ns_rank()) : parse_rational_list(o.B, o.approx);
  RatVector omega = parse_rational_list(o.omega, o.approx);
  if (B.size() != lattice.ns_rank() || omega.size() != lattice.ns_rank())
    throw_error(ErrorKind::Input, "--B and --omega need " + std::to_string(lattice.ns_rank()) + " coefficients");
  return {std::move(B), std::move(omega)};
}

std::vector<MukaiVector> classes_from_oracle_mismatch(const std::vector<MukaiVector>& a,
                                                      const std::vector<MukaiVector>& b) {
  std::vector<MukaiVector> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return diff;
}

int cmd_lattice_info(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const RatMatrix m = lc.lattice.mukai_gram();
  const Signature sig = signature(m);
  const Integer h2 = lc.lattice.ns_product(lc.ample.h, lc.ample.h);
  if (o.json) {
    Json gram = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
      gram.push_back(row);
    }
    out << Json{{"ns_rank", lc.lattice.ns_rank()},
                {"dimension", lc.lattice.dimension()},
                {"mukai_gram", gram},
                {"signature", {sig.positive, sig.negative}},
                {"ample_square", to_string(h2)}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "ns_rank " << lc.lattice.ns_rank() << "\n";
  out << "mukai dimension " << lc.lattice.dimension() << "\n";
  out << "signature (" << sig.positive << "," << sig.negative << ")\n";
  out << "h^2 " << to_string(h2) << "\n";
  out << "mukai gram\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "  ") << to_string(m(i, j));
    out << '\n';
  }
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const CentralCharge z = standard_charge(lc.lattice, lc.ample, exp_params(o, lc.lattice));
  const Rational m = rational_arg(o.mass_bound, o.approx);
  EnumerationOptions eo;
  eo.threads = o.threads;
  const std::vector<MukaiVector> found = enumerate_spherical(lc.lattice, z, m, eo);
  std::optional<std::vector<MukaiVector>> diff;
  if (o.oracle) diff = classes_from_oracle_mismatch(found, oracle::box_spherical(lc.lattice, z, m));
  const PositivitySplit split = positivity_split(lc.lattice, z);
  if (o.json) {
    Json classes = Json::array();
    for (const MukaiVector& v : found) classes.push_back({{"delta", to_json(v)}, {"z", to_json(evaluate(lc.lattice, z, v))}});
    Json j{{"mass_bound", to_string(m)},
           {"C", to_string(split.C)},
           {"ball_bound", to_string(spherical_ball_bound(split, m))},
           {"classes", classes}};
    if (diff) j["oracle"] = {{"agree", diff->empty()}, {"mismatch", to_json(*diff)}};
    out << j.dump(2) << '\n';
  } else {
    out << "C " << to_string(split.C) << "  ball Q <= " << to_string(spherical_ball_bound(split, m)) << "\n";
    for (const MukaiVector& v : found) out << to_string(v) << "  Z = " << complex_text(evaluate(lc.lattice, z, v)) << "\n";
    out << found.size() << " spherical classes with |Z| <= " << to_string(m) << "\n";
    if (diff) {
      if (diff->empty()) {
        out << "oracle: agree\n";
      } else {
        out << "oracle: MISMATCH";
        for (const MukaiVector& v : *diff) out << ' ' << to_string(v);
        out << '\n';
      }
    }
  }
  if (diff && !diff->empty()) throw ValidationFailure{"enumeration disagrees with the box oracle"};
  return 0;
}

int cmd_admissible(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const AdmissibilityReport r =
      standard_admissible(lc.lattice, lc.ample, exp_params(o, lc.lattice), rational_arg(o.mass_bound, o.approx));
  if (o.json) {
    out << to_json(r).dump(2) << '\n';
    return 0;
  }
  out << "omega^2 " << to_string(r.omega_squared) << (r.sufficient ? " > 2: sufficient\n" : " <= 2: not sufficient\n");
  for (const auto& v : r.violations)
    out << (v.hole ? "hole " : "violation ") << to_string(v.delta) << "  Z = " << complex_text(v.z) << "\n";
  out << r.violations.size() << " violations with |Z| <= " << to_string(r.mass_bound) << "\n";
  return 0;
}

int cmd_holes(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const CentralCharge z = standard_charge(lc.lattice, lc.ample, exp_params(o, lc.lattice));
  const std::vector<MukaiVector> holes = hole_classes(lc.lattice, z);
  if (o.json) {
    out << Json{{"holes", to_json(holes)}}.dump(2) << '\n';
    return 0;
  }
  for (const MukaiVector& v : holes) out << to_string(v) << "\n";
  out << holes.size() << " hole classes\n";
  return 0;
}

int cmd_heart(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const ExpParams p = exp_params(o, lc.lattice);
  check_exp_params(lc.lattice, lc.ample, p);
  const auto objects = heart_objects_from_config(load_config_file(o.objects), o.approx);
  Json j = Json::array();
  for (const auto& e : objects) {
    const bool in = heart_contains(lc.lattice, p, e);
    if (o.json) {
      j.push_back({{"name", e.name}, {"in_heart", in}});
    } else {
      out << e.name << (in ? " in heart\n" : " not in heart\n");
    }
  }
  if (o.json) out << j.dump(2) << '\n';
  return 0;
}

Slice slice_from(const Options& o, const LatticeConfig& lc) {
  const RatVector s = parse_rational_list(o.slice, o.approx);
  if (s.size() != 3) throw_error(ErrorKind::Input, "--slice takes beta0,beta1,alpha1");
  return {o.b_dir.empty() ? lc.ample.h : parse_integer_list(o.b_dir),
          o.a_dir.empty() ? lc.ample.h : parse_integer_list(o.a_dir), s[0], s[1], s[2]};
}

WallSet compute_walls(const Options& o, const LatticeConfig& lc) {
  const IntVector coords = parse_integer_list(o.klass);
  if (coords.size() != lc.lattice.dimension())
    throw_error(ErrorKind::Input, "--class needs " + std::to_string(lc.lattice.dimension()) + " coordinates");
  WallOptions wo;
  wo.mass_grid = o.mass_grid;
  wo.sample_grid = o.sample_grid;
  return walls_for_class(lc.lattice, lc.ample, MukaiVector::from_coords(coords), slice_from(o, lc),
                         rational_arg(o.mass_bound, o.approx), wo);
}

int cmd_walls(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const WallSet w = compute_walls(o, lc);
  if (!o.svg.empty()) write_file(o.svg, walls_svg(w));
  if (!o.csv.empty()) write_file(o.csv, walls_csv(w));
  if (!o.segments.empty()) write_file(o.segments, segments_csv(w));
  if (o.json) {
    out << to_json(w).dump(2) << '\n';
    return 0;
  }
  for (const Wall& x : w.walls)
    out << "wall " << to_string(x.delta) << "  W = " << x.locus.to_string() << "  beta in ["
        << format_double(x.beta_range[0]) << ", " << format_double(x.beta_range[1]) << "]  alpha in ["
        << format_double(x.alpha_range[0]) << ", " << format_double(x.alpha_range[1]) << "]  "
        << x.segments.size() << " segments\n";
  for (const Hole& h : w.holes) {
    out << "hole " << to_string(h.delta) << "  " << to_string(h.kind);
    if (h.kind == HoleKind::Point)
      out << "  beta = " << to_string(h.beta) << "  alpha^2 = " << to_string(h.alpha_squared);
    if (h.kind == HoleKind::VerticalLine) out << "  beta = " << to_string(h.beta);
    out << '\n';
  }
  out << w.walls.size() << " walls, " << w.holes.size() << " holes\n";
  return 0;
}

int cmd_chamber(const Options& o, std::ostream& out) {
  const LatticeConfig lc = load_lattice(o);
  const RatVector p = parse_rational_list(o.point, o.approx);
  if (p.size() != 2) throw_error(ErrorKind::Input, "--point takes beta,alpha");
  const WallSet w = compute_walls(o, lc);
  const std::vector<int> signs = chamber_of({to_double(p[0]), to_double(p[1])}, w);
  if (o.json) {
    Json j = Json::array();
    for (std::size_t i = 0; i < signs.size(); ++i) j.push_back({{"delta", to_json(w.walls[i].delta)}, {"sign", signs[i]}});
    out << Json{{"chamber", j}}.dump(2) << '\n';
    return 0;
  }
  for (std::size_t i = 0; i < signs.size(); ++i)
    out << to_string(w.walls[i].delta) << ' ' << (signs[i] > 0 ? '+' : '-') << '\n';
  return 0;
}

struct SimInputs {
  SphericalCollectionDatum datum;
  AmpleData ample;
};

SimInputs load_datum(const Options& o) {
  const Json j = load_config_file(o.datum);
  SimInputs in{datum_from_config(j), lattice_from_config(j).ample};
  const ValidationReport r = validate_datum(in.datum);
  if (!r.ok()) throw_error(ErrorKind::Precondition, "invalid datum: " + r.violations.front().detail);
  return in;
}

ToyStability load_stability(const Options& o, const SimInputs& in, const std::string& path) {
  return stability_from_config(load_config_file(path), in.datum, in.ample, o.approx);
}

void print_report(const ValidationReport& r, const std::string& what, std::ostream& out) {
  for (const Violation& v : r.violations) out << v.rule << ": " << v.detail << '\n';
  out << what << (r.ok() ? " valid\n" : " invalid\n");
}

void require_valid_stability(const SimInputs& in, const ToyStability& s, const std::string& what) {
  const ValidationReport r = validate_stability(in.datum, s);
  if (!r.ok()) throw_error(ErrorKind::Precondition, what + " is not a valid stability: " + r.violations.front().detail);
}

int cmd_sim_validate(const Options& o, std::ostream& out) {
  const Json j = load_config_file(o.datum);
  SimInputs in{datum_from_config(j), lattice_from_config(j).ample};
  const ValidationReport rd = validate_datum(in.datum);
  std::optional<ValidationReport> rs;
  if (!o.sigma.empty() && rd.ok()) rs = validate_stability(in.datum, load_stability(o, in, o.sigma));
  if (o.json) {
    Json doc{{"datum", to_json(rd)}};
    if (rs) doc["stability"] = to_json(*rs);
    out << doc.dump(2) << '\n';
  } else {
    print_report(rd, "datum", out);
    if (rs) print_report(*rs, "stability", out);
  }
  if (!rd.ok() || (rs && !rs->ok())) throw ValidationFailure{"validation failed"};
  return 0;
}

int cmd_sim_metrics(const Options& o, std::ostream& out) {
  const SimInputs in = load_datum(o);
  const ToyStability a = load_stability(o, in, o.sigma), b = load_stability(o, in, o.sigma_prime);
  require_valid_stability(in, a, "sigma");
  require_valid_stability(in, b, "sigma'");
  const UniverseOptions uo{o.max_size, o.max_shift};
  const MetricsReport m{f_distance(in.datum, a, b, uo),
                        fS_distance(in.datum, a, b, uo),
                        charge_distance(in.datum.lattice, a.z, b.z),
                        d_distance(in.datum, a, b, uo),
                        dS_distance(in.datum, a, b, uo),
                        check_equivalent_conditions(in.datum, a, b, uo)};
  if (o.json) {
    out << to_json(m).dump(2) << '\n';
    return 0;
  }
  out << "f " << format_double(m.f) << "\nf_S " << format_double(m.fS) << "\n|Z - Z'| "
      << format_double(m.charge_distance) << "\nd " << format_double(m.d) << "\nd_S " << format_double(m.dS) << '\n';
  out << "stable spherical slices agree " << m.equivalence.stable_slices_agree << "\n";
  out << "semistable spherical slices agree " << m.equivalence.semistable_slices_agree << "\n";
  out << "extreme phases agree " << m.equivalence.extreme_phases_agree << "\n";
  return 0;
}

int cmd_sim_propagate(const Options& o, std::ostream& out) {
  const SimInputs in = load_datum(o);
  const ToyStability s = load_stability(o, in, o.sigma);
  const std::size_t target = in.datum.atom_index(o.target);
  std::map<std::size_t, double> known;
  for (std::size_t i = 0; i < in.datum.atoms.size(); ++i)
    if (in.datum.atoms[i].rigidity == Rigidity::Spherical && i != target) {
      if (std::isnan(s.phases[i]))
        throw_error(ErrorKind::Input, "no phase given for spherical atom '" + in.datum.atoms[i].name + "'");
      known[i] = s.phases[i];
    }
  const PhaseInterval p = propagate_phase_constraints(in.datum, known, s.z, target);
  if (o.json) {
    out << to_json(p).dump(2) << '\n';
    return 0;
  }
  out << o.target << " phase in (" << format_double(p.lower) << ", " << format_double(p.upper) << ")\n";
  if (p.forced_value) {
    out << "forced " << format_double(*p.forced_value) << '\n';
  } else {
    out << "not forced\n";
  }
  return 0;
}

void print_verdict(const Verdict& v, const std::string& what, std::ostream& out) {
  out << what << ' ' << to_string(v.kind);
  if (v.witness)
    out << "  atom " << v.witness->name << "  phases " << format_double(v.witness->phase) << " / "
        << format_double(v.witness->phase_prime) << "  (" << v.witness->reason << ")";
  out << '\n';
}

int cmd_sim_determinacy(const Options& o, std::ostream& out) {
  const SimInputs in = load_datum(o);
  const ToyStability a = load_stability(o, in, o.sigma), b = load_stability(o, in, o.sigma_prime);
  const Verdict det = verify_spherical_determinacy(in.datum, a, b);
  const Verdict gap = check_fS_gap(in.datum, a, b);
  if (o.json) {
    out << Json{{"determinacy", to_json(det)}, {"fS_gap", to_json(gap)}}.dump(2) << '\n';
  } else {
    print_verdict(det, "determinacy", out);
    print_verdict(gap, "fS-gap", out);
  }
  if (det.kind == VerdictKind::Witness || gap.kind == VerdictKind::Witness)
    throw ValidationFailure{"determinacy witness found"};
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for stability conditions on K3 Mukai lattices and a toy slicing simulator", "stablat"};
  app.require_subcommand(1, 1);
  Options o;

  auto json_flag = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "JSON output");
    c->add_flag("--approx", o.approx, "accept decimal numbers (read as exact decimals)");
  };
  auto lattice_opt = [&](CLI::App* c) {
    c->add_option("--lattice", o.lattice, "lattice file")->required()->check(CLI::ExistingFile);
  };
  auto charge_opts = [&](CLI::App* c) {
    c->add_option("--B", o.B, "B-field coefficients, comma separated p/q (default 0)");
    c->add_option("--omega", o.omega, "omega coefficients, comma separated p/q")->required();
  };
  std::map<CLI::App*, std::function<int(const Options&, std::ostream&)>> handlers;

  auto* info = app.add_subcommand("lattice-info", "Mukai lattice summary");
  lattice_opt(info);
  json_flag(info);
  handlers[info] = cmd_lattice_info;

  auto* en = app.add_subcommand("enumerate", "spherical classes of bounded mass");
  lattice_opt(en);
  charge_opts(en);
  en->add_option("--mass-bound", o.mass_bound, "M as p/q")->required();
  en->add_flag("--oracle", o.oracle, "cross-check against the brute-force box oracle");
  en->add_option("--threads", o.threads, "thread cap (default STABLAT_THREADS or all cores)");
  json_flag(en);
  handlers[en] = cmd_enumerate;

  auto* adm = app.add_subcommand("admissible", "admissibility of the standard charge");
  lattice_opt(adm);
  charge_opts(adm);
  adm->add_option("--mass-bound", o.mass_bound, "M as p/q")->default_val("20");
  json_flag(adm);
  handlers[adm] = cmd_admissible;

  auto* holes = app.add_subcommand("holes", "(-2)-classes in the kernel of Z");
  lattice_opt(holes);
  charge_opts(holes);
  json_flag(holes);
  handlers[holes] = cmd_holes;

  auto* heart = app.add_subcommand("heart-test", "membership in the tilted heart");
  lattice_opt(heart);
  charge_opts(heart);
  heart->add_option("--objects,--datum", o.objects, "object file")->required()->check(CLI::ExistingFile);
  json_flag(heart);
  handlers[heart] = cmd_heart;

  auto wall_opts = [&](CLI::App* c) {
    lattice_opt(c);
    c->add_option("--class", o.klass, "class v as r,c...,s")->required();
    c->add_option("--slice", o.slice, "beta0,beta1,alpha1")->required();
    c->add_option("--b-dir", o.b_dir, "B direction (default: ample class)");
    c->add_option("--a-dir", o.a_dir, "omega direction (default: ample class)");
    c->add_option("--mass-bound", o.mass_bound, "M as p/q")->required();
    c->add_option("--mass-grid", o.mass_grid, "grid for the rectangle mass bound")->check(CLI::PositiveNumber);
    c->add_option("--sample-grid", o.sample_grid, "cells per axis for locus sampling")->check(CLI::PositiveNumber);
    json_flag(c);
  };
  auto* walls = app.add_subcommand("walls", "potential walls and holes on a slice");
  wall_opts(walls);
  walls->add_option("--svg", o.svg, "write an SVG plot");
  walls->add_option("--out,--csv", o.csv, "write one CSV row per wall");
  walls->add_option("--segments", o.segments, "write the sampled segments as CSV");
  handlers[walls] = cmd_walls;

  auto* chamber = app.add_subcommand("chamber", "wall signs at a point of the slice");
  wall_opts(chamber);
  chamber->add_option("--point", o.point, "beta,alpha")->required();
  handlers[chamber] = cmd_chamber;

  auto datum_opt = [&](CLI::App* c) {
    c->add_option("--datum", o.datum, "spherical collection file")->required()->check(CLI::ExistingFile);
    json_flag(c);
  };
  auto* sv = app.add_subcommand("sim-validate", "validate a datum and optionally a stability");
  datum_opt(sv);
  sv->add_option("--sigma", o.sigma, "stability file")->check(CLI::ExistingFile);
  handlers[sv] = cmd_sim_validate;

  auto* sm = app.add_subcommand("sim-metrics", "f, f_S, d, d_S between two stabilities");
  datum_opt(sm);
  sm->add_option("--sigma", o.sigma, "stability file")->required()->check(CLI::ExistingFile);
  sm->add_option("--sigma-prime", o.sigma_prime, "stability file")->required()->check(CLI::ExistingFile);
  sm->add_option("--max-size", o.max_size, "largest multiset in the object universe")->check(CLI::PositiveNumber);
  sm->add_option("--max-shift", o.max_shift, "largest |shift| in the object universe")->check(CLI::NonNegativeNumber);
  handlers[sm] = cmd_sim_metrics;

  auto* sp = app.add_subcommand("sim-propagate", "phase bounds for a semirigid atom");
  datum_opt(sp);
  sp->add_option("--sigma", o.sigma, "stability file with the spherical phases and Z")->required()->check(CLI::ExistingFile);
  sp->add_option("--target", o.target, "atom name")->required();
  handlers[sp] = cmd_sim_propagate;

  auto* sd = app.add_subcommand("sim-determinacy", "spherical determinacy and the f_S gap");
  datum_opt(sd);
  sd->add_option("--sigma", o.sigma, "stability file")->required()->check(CLI::ExistingFile);
  sd->add_option("--sigma-prime", o.sigma_prime, "stability file")->required()->check(CLI::ExistingFile);
  handlers[sd] = cmd_sim_determinacy;

  std::vector<const char*> argv{"stablat"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto& [cmd, handler] : handlers)
      if (cmd->parsed()) return handler(o, out);
  } catch (const ValidationFailure& f) {
    err << "error: " << f.message << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace stablat
