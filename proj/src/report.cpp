#include "stablat/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "stablat/error.hpp"

namespace stablat {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

Json rat(const Rational& q) { return to_string(q); }
Rational rat_from(const Json& j) { return rational_from_json(j, false); }

Json ext_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double ext_real_from(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw_error(ErrorKind::Input, "bad extended real '" + s + "'");
  }
  return j.get<double>();
}

Json int_list(const IntVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(to_string(x));
  return out;
}

IntVector int_list_from(const Json& j) { return integer_list_from_json(j); }

Json point(const Point2& p) { return Json::array({p[0], p[1]}); }
Point2 point_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

HoleKind hole_kind_from(const std::string& s) {
  for (HoleKind k : {HoleKind::Point, HoleKind::VerticalLine, HoleKind::Curve, HoleKind::WholeSlice})
    if (s == to_string(k)) return k;
  throw_error(ErrorKind::Input, "unknown hole kind '" + s + "'");
}

VerdictKind verdict_kind_from(const std::string& s) {
  for (VerdictKind k : {VerdictKind::Ok, VerdictKind::NotClaimed, VerdictKind::Witness})
    if (s == to_string(k)) return k;
  throw_error(ErrorKind::Input, "unknown verdict '" + s + "'");
}

}  // namespace

Json to_json(const MukaiVector& v) { return int_list(v.coords()); }
MukaiVector mukai_vector_from_json(const Json& j) { return MukaiVector::from_coords(int_list_from(j)); }

Json to_json(const ExactComplex& z) { return Json::array({rat(z.re), rat(z.im)}); }
ExactComplex exact_complex_from_json(const Json& j) { return {rat_from(j.at(0)), rat_from(j.at(1))}; }

Json to_json(const std::vector<MukaiVector>& classes) {
  Json out = Json::array();
  for (const MukaiVector& v : classes) out.push_back(to_json(v));
  return out;
}

std::vector<MukaiVector> mukai_vectors_from_json(const Json& j) {
  std::vector<MukaiVector> out;
  for (const Json& x : j) out.push_back(mukai_vector_from_json(x));
  return out;
}

Json to_json(const AdmissibilityReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"delta", to_json(x.delta)}, {"z", to_json(x.z)}, {"hole", x.hole}});
  return {{"sufficient", r.sufficient},
          {"omega_squared", rat(r.omega_squared)},
          {"mass_bound", rat(r.mass_bound)},
          {"violations", v}};
}

AdmissibilityReport admissibility_from_json(const Json& j) {
  AdmissibilityReport r{j.at("sufficient").get<bool>(), rat_from(j.at("omega_squared")), rat_from(j.at("mass_bound")),
                        {}};
  for (const Json& x : j.at("violations"))
    r.violations.push_back(
        {mukai_vector_from_json(x.at("delta")), exact_complex_from_json(x.at("z")), x.at("hole").get<bool>()});
  return r;
}

Json to_json(const Poly2& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e.first, e.second, rat(c)}));
  return out;
}

Poly2 poly2_from_json(const Json& j) {
  Poly2 p;
  for (const Json& t : j) p = p + Poly2::monomial(rat_from(t.at(2)), t.at(0).get<int>(), t.at(1).get<int>());
  return p;
}

Json to_json(const WallSet& w) {
  Json walls = Json::array();
  for (const Wall& x : w.walls) {
    Json segs = Json::array();
    for (const auto& s : x.segments) segs.push_back(Json::array({point(s[0]), point(s[1])}));
    walls.push_back({{"delta", to_json(x.delta)},
                     {"locus", to_json(x.locus)},
                     {"locus_text", x.locus.to_string()},
                     {"validity", to_json(x.validity)},
                     {"beta_range", point(x.beta_range)},
                     {"alpha_range", point(x.alpha_range)},
                     {"segments", segs}});
  }
  Json holes = Json::array();
  for (const Hole& h : w.holes)
    holes.push_back({{"delta", to_json(h.delta)},
                     {"kind", to_string(h.kind)},
                     {"beta", rat(h.beta)},
                     {"alpha_squared", rat(h.alpha_squared)},
                     {"alpha", h.alpha}});
  return {{"slice",
           {{"b", int_list(w.slice.b_dir)},
            {"a", int_list(w.slice.a_dir)},
            {"beta_min", rat(w.slice.beta_min)},
            {"beta_max", rat(w.slice.beta_max)},
            {"alpha_max", rat(w.slice.alpha_max)}}},
          {"class", to_json(w.v)},
          {"mass_bound", rat(w.mass_bound)},
          {"walls", walls},
          {"holes", holes}};
}

WallSet wall_set_from_json(const Json& j) {
  const Json& s = j.at("slice");
  WallSet w{Slice{int_list_from(s.at("b")), int_list_from(s.at("a")), rat_from(s.at("beta_min")),
                  rat_from(s.at("beta_max")), rat_from(s.at("alpha_max"))},
            mukai_vector_from_json(j.at("class")),
            rat_from(j.at("mass_bound")),
            {},
            {}};
  for (const Json& x : j.at("walls")) {
    Wall wall;
    wall.delta = mukai_vector_from_json(x.at("delta"));
    wall.locus = poly2_from_json(x.at("locus"));
    wall.validity = poly2_from_json(x.at("validity"));
    wall.beta_range = point_from(x.at("beta_range"));
    wall.alpha_range = point_from(x.at("alpha_range"));
    for (const Json& seg : x.at("segments")) wall.segments.push_back({point_from(seg.at(0)), point_from(seg.at(1))});
    w.walls.push_back(std::move(wall));
  }
  for (const Json& h : j.at("holes"))
    w.holes.push_back({mukai_vector_from_json(h.at("delta")), hole_kind_from(h.at("kind").get<std::string>()),
                       rat_from(h.at("beta")), rat_from(h.at("alpha_squared")), h.at("alpha").get<double>()});
  return w;
}

Json to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const Violation& x : r.violations)
    v.push_back({{"rule", x.rule}, {"i", x.i}, {"j", x.j}, {"k", x.k}, {"detail", x.detail}});
  return {{"valid", r.ok()}, {"violations", v}};
}

ValidationReport validation_from_json(const Json& j) {
  ValidationReport r;
  for (const Json& x : j.at("violations"))
    r.violations.push_back({x.at("rule").get<std::string>(), x.at("i").get<std::size_t>(),
                            x.at("j").get<std::size_t>(), x.at("k").get<int>(), x.at("detail").get<std::string>()});
  return r;
}

Json to_json(const PhaseInterval& p) {
  return {{"lower", ext_real(p.lower)},
          {"upper", ext_real(p.upper)},
          {"lower_strict", p.lower_strict},
          {"upper_strict", p.upper_strict},
          {"forced_value", p.forced_value ? Json(*p.forced_value) : Json(nullptr)}};
}

PhaseInterval phase_interval_from_json(const Json& j) {
  PhaseInterval p{ext_real_from(j.at("lower")), ext_real_from(j.at("upper")), j.at("lower_strict").get<bool>(),
                  j.at("upper_strict").get<bool>(), std::nullopt};
  if (!j.at("forced_value").is_null()) p.forced_value = j.at("forced_value").get<double>();
  return p;
}

Json to_json(const Verdict& v) {
  Json out{{"verdict", to_string(v.kind)}, {"witness", nullptr}};
  if (v.witness)
    out["witness"] = {{"atom", v.witness->atom},
                      {"name", v.witness->name},
                      {"phase", v.witness->phase},
                      {"phase_prime", v.witness->phase_prime},
                      {"reason", v.witness->reason}};
  return out;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v{verdict_kind_from(j.at("verdict").get<std::string>()), std::nullopt};
  if (const Json& w = j.at("witness"); !w.is_null())
    v.witness = Witness{w.at("atom").get<std::size_t>(), w.at("name").get<std::string>(), w.at("phase").get<double>(),
                        w.at("phase_prime").get<double>(), w.at("reason").get<std::string>()};
  return v;
}

Json to_json(const MetricsReport& m) {
  return {{"f", m.f},
          {"f_S", m.fS},
          {"charge_distance", m.charge_distance},
          {"d", m.d},
          {"d_S", m.dS},
          {"equivalence",
           {{"stable_slices_agree", m.equivalence.stable_slices_agree},
            {"semistable_slices_agree", m.equivalence.semistable_slices_agree},
            {"extreme_phases_agree", m.equivalence.extreme_phases_agree}}}};
}

MetricsReport metrics_from_json(const Json& j) {
  const Json& e = j.at("equivalence");
  return {j.at("f").get<double>(),
          j.at("f_S").get<double>(),
          j.at("charge_distance").get<double>(),
          j.at("d").get<double>(),
          j.at("d_S").get<double>(),
          {e.at("stable_slices_agree").get<bool>(), e.at("semistable_slices_agree").get<bool>(),
           e.at("extreme_phases_agree").get<bool>()}};
}

namespace {

std::string csv_header(const WallSet& w) {
  std::string h = "r";
  for (std::size_t i = 1; i <= w.slice.b_dir.size(); ++i) h += ",c" + std::to_string(i);
  return h + ",s";
}

std::string csv_class(const MukaiVector& v) {
  std::string out;
  for (const Integer& x : v.coords()) out += (out.empty() ? "" : ",") + to_string(x);
  return out;
}

}  // namespace

std::string walls_csv(const WallSet& w) {
  std::ostringstream os;
  os << csv_header(w) << ",locus,validity,beta_min,beta_max,alpha_min,alpha_max\n";
  for (const Wall& x : w.walls)
    os << csv_class(x.delta) << ',' << x.locus.to_string() << ',' << x.validity.to_string() << ','
       << format_double(x.beta_range[0]) << ',' << format_double(x.beta_range[1]) << ','
       << format_double(x.alpha_range[0]) << ',' << format_double(x.alpha_range[1]) << '\n';
  return os.str();
}

std::string segments_csv(const WallSet& w) {
  std::ostringstream os;
  os << csv_header(w) << ",segment,beta0,alpha0,beta1,alpha1\n";
  for (const Wall& x : w.walls)
    for (std::size_t k = 0; k < x.segments.size(); ++k) {
      const auto& s = x.segments[k];
      os << csv_class(x.delta) << ',' << k << ',' << format_double(s[0][0]) << ',' << format_double(s[0][1]) << ','
         << format_double(s[1][0]) << ',' << format_double(s[1][1]) << '\n';
    }
  return os.str();
}

std::string walls_svg(const WallSet& w) {
  constexpr double width = 640, height = 480, margin = 40;
  const double b0 = to_double(w.slice.beta_min), b1 = to_double(w.slice.beta_max);
  const double a1 = to_double(w.slice.alpha_max);
  auto x = [&](double beta) { return format_double(margin + (beta - b0) / (b1 - b0) * (width - 2 * margin)); };
  auto y = [&](double alpha) { return format_double(height - margin - alpha / a1 * (height - 2 * margin)); };
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>walls for v = " << to_string(w.v) << "</title>\n";
  os << "<rect x=\"" << x(b0) << "\" y=\"" << y(a1) << "\" width=\"" << format_double(width - 2 * margin)
     << "\" height=\"" << format_double(height - 2 * margin) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  os << "<text x=\"" << x(b0) << "\" y=\"" << format_double(height - margin / 3) << "\" font-size=\"12\">beta "
     << to_string(w.slice.beta_min) << " .. " << to_string(w.slice.beta_max) << ", alpha 0 .. "
     << to_string(w.slice.alpha_max) << "</text>\n";
  for (std::size_t i = 0; i < w.walls.size(); ++i) {
    const Wall& wall = w.walls[i];
    os << "<path fill=\"none\" stroke=\"" << palette[i % 6] << "\" stroke-width=\"1.5\" data-delta=\""
       << to_string(wall.delta) << "\" d=\"";
    for (std::size_t k = 0; k < wall.segments.size(); ++k) {
      const auto& s = wall.segments[k];
      os << (k ? " " : "") << 'M' << x(s[0][0]) << ' ' << y(s[0][1]) << " L" << x(s[1][0]) << ' ' << y(s[1][1]);
    }
    os << "\"/>\n";
  }
  for (const Hole& h : w.holes) {
    if (h.kind == HoleKind::Point) {
      os << "<circle cx=\"" << x(to_double(h.beta)) << "\" cy=\"" << y(h.alpha)
         << "\" r=\"4\" fill=\"#000\" data-delta=\"" << to_string(h.delta) << "\"/>\n";
    } else if (h.kind == HoleKind::VerticalLine) {
      os << "<line x1=\"" << x(to_double(h.beta)) << "\" y1=\"" << y(0) << "\" x2=\"" << x(to_double(h.beta))
         << "\" y2=\"" << y(a1) << "\" stroke=\"#000\" stroke-dasharray=\"4 3\" data-delta=\"" << to_string(h.delta)
         << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace stablat
