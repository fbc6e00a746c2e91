#include "stablat/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "stablat/error.hpp"

namespace stablat {

namespace {

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : s_(text) {}

  Json parse() {
    Json root = Json::object();
    Json* table = &root;
    for (;;) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        const bool array = s_.compare(pos_, 2, "[[") == 0;
        pos_ += array ? 2 : 1;
        const std::vector<std::string> path = parse_key_path();
        skip_spaces();
        if (!consume(array ? "]]" : "]")) fail("expected closing bracket after table name");
        table = open_table(root, path, array);
      } else {
        const std::vector<std::string> path = parse_key_path();
        skip_spaces();
        if (!consume("=")) fail("expected '=' after key");
        skip_spaces();
        Json value = parse_value();
        Json* target = table;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          Json& next = (*target)[path[i]];
          if (next.is_null()) next = Json::object();
          if (!next.is_object()) fail("key '" + path[i] + "' is not a table");
          target = &next;
        }
        if (target->contains(path.back())) fail("duplicate key '" + path.back() + "'");
        (*target)[path.back()] = std::move(value);
      }
      skip_spaces();
      skip_comment();
      if (!eof() && peek() != '\n') fail("unexpected text after value");
    }
    return root;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i)
      if (s_[i] == '\n') ++line;
    throw_error(ErrorKind::Input, "config line " + std::to_string(line) + ": " + msg);
  }

  bool consume(std::string_view token) {
    if (s_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }

  void skip_spaces() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    if (!eof() && peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }

  void skip_blank_lines() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (!eof() && peek() == '\n') {
        ++pos_;
        continue;
      }
      return;
    }
  }

  std::string parse_key() {
    if (!eof() && (peek() == '"' || peek() == '\'')) return parse_string();
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (start == pos_) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path;
    skip_spaces();
    path.push_back(parse_key());
    for (;;) {
      skip_spaces();
      if (!consume(".")) break;
      skip_spaces();
      path.push_back(parse_key());
    }
    return path;
  }

  Json* open_table(Json& root, const std::vector<std::string>& path, bool array) {
    Json* node = &root;
    for (std::size_t i = 0; i < path.size(); ++i) {
      Json& next = (*node)[path[i]];
      const bool last = i + 1 == path.size();
      if (last && array) {
        if (next.is_null()) next = Json::array();
        if (!next.is_array()) fail("'" + path[i] + "' is not an array of tables");
        next.push_back(Json::object());
        return &next.back();
      }
      if (next.is_null()) next = Json::object();
      if (next.is_array() && !next.empty() && next.back().is_object()) {
        node = &next.back();
        continue;
      }
      if (!next.is_object()) fail("'" + path[i] + "' is not a table");
      node = &next;
    }
    return node;
  }

  std::string parse_string() {
    const char quote = peek();
    ++pos_;
    std::string out;
    while (!eof() && peek() != quote) {
      char c = peek();
      if (c == '\n') fail("unterminated string");
      ++pos_;
      if (c == '\\' && quote == '"') {
        if (eof()) fail("unterminated string");
        const char e = peek();
        ++pos_;
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (eof()) fail("unterminated string");
    ++pos_;
    return out;
  }

  void skip_array_space() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (!eof() && peek() == '\n') {
        ++pos_;
        continue;
      }
      return;
    }
  }

  Json parse_value() {
    if (eof()) fail("missing value");
    const char c = peek();
    if (c == '"' || c == '\'') return parse_string();
    if (c == '[') {
      ++pos_;
      Json arr = Json::array();
      for (;;) {
        skip_array_space();
        if (consume("]")) return arr;
        arr.push_back(parse_value());
        skip_array_space();
        if (consume(",")) continue;
        if (consume("]")) return arr;
        fail("expected ',' or ']' in array");
      }
    }
    if (c == '{') {
      ++pos_;
      Json obj = Json::object();
      skip_spaces();
      if (consume("}")) return obj;
      for (;;) {
        skip_spaces();
        const std::string key = parse_key();
        skip_spaces();
        if (!consume("=")) fail("expected '=' in inline table");
        skip_spaces();
        obj[key] = parse_value();
        skip_spaces();
        if (consume(",")) continue;
        if (consume("}")) return obj;
        fail("expected ',' or '}' in inline table");
      }
    }
    if (consume("true")) return true;
    if (consume("false")) return false;
    return parse_number();
  }

  Json parse_number() {
    const std::size_t start = pos_;
    std::string digits;
    bool is_float = false;
    while (!eof()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
        digits.push_back(c);
      } else if (c == '.' || c == 'e' || c == 'E') {
        is_float = true;
        digits.push_back(c);
      } else if (c != '_') {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("unrecognised value");
    }
    const char* first = digits.data();
    const char* last = digits.data() + digits.size();
    if (*first == '+') ++first;
    if (!is_float) {
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc() && ptr == last) return v;
      // Too large for 64 bits: keep the digits for exact parsing.
      if (ec == std::errc::result_out_of_range) return std::string(first, last);
    } else {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc() && ptr == last) return v;
    }
    pos_ = start;
    fail("malformed number '" + digits + "'");
  }
};

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw_error(ErrorKind::Input, std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t atom_ref(const Json& j, const SphericalCollectionDatum& d) {
  if (j.is_string()) return d.atom_index(j.get<std::string>());
  if (j.is_number_integer() && j.get<long long>() >= 0 && static_cast<std::size_t>(j.get<long long>()) < d.atoms.size())
    return static_cast<std::size_t>(j.get<long long>());
  throw_error(ErrorKind::Input, "bad atom reference " + j.dump());
}

Rigidity rigidity_from(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "spherical") return Rigidity::Spherical;
  if (s == "semirigid") return Rigidity::Semirigid;
  throw_error(ErrorKind::Input, "rigidity must be 'spherical' or 'semirigid', got '" + s + "'");
}

long integer_from(const Json& j) {
  if (!j.is_number_integer()) throw_error(ErrorKind::Input, "expected an integer, got " + j.dump());
  return static_cast<long>(j.get<long long>());
}

double phase_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>(), true));
  throw_error(ErrorKind::Input, "expected a phase, got " + j.dump());
}

}  // namespace

Json parse_config_text(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw_error(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
    }
  }
  return TomlParser(text).parse();
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorKind::Input, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

Rational rational_from_json(const Json& j, bool allow_decimal) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>(), allow_decimal);
  if (j.is_number_float()) {
    if (!allow_decimal)
      throw_error(ErrorKind::Input, "decimal " + j.dump() + " needs --approx; write rationals as p/q");
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    (void)ec;
    return parse_rational(std::string(buf, ptr), true);
  }
  throw_error(ErrorKind::Input, "expected a rational, got " + j.dump());
}

RatVector rational_list_from_json(const Json& j, bool allow_decimal) {
  if (!j.is_array()) throw_error(ErrorKind::Input, "expected a list of rationals, got " + j.dump());
  RatVector out;
  for (const Json& x : j) out.push_back(rational_from_json(x, allow_decimal));
  return out;
}

IntVector integer_list_from_json(const Json& j) {
  if (!j.is_array()) throw_error(ErrorKind::Input, "expected a list of integers, got " + j.dump());
  IntVector out;
  for (const Json& x : j) {
    const Rational q = rational_from_json(x, false);
    if (q.get_den() != 1) throw_error(ErrorKind::Input, "expected an integer, got " + x.dump());
    out.push_back(q.get_num());
  }
  return out;
}

LatticeConfig lattice_from_config(const Json& j) {
  const Json& rows = require(j, "ns_gram");
  if (!rows.is_array()) throw_error(ErrorKind::Input, "ns_gram must be a list of rows");
  std::vector<IntVector> gram;
  for (const Json& row : rows) gram.push_back(integer_list_from_json(row));
  if (j.contains("ns_rank") && integer_from(j.at("ns_rank")) != static_cast<long>(gram.size()))
    throw_error(ErrorKind::Input, "ns_rank disagrees with the size of ns_gram");
  LatticeConfig out{MukaiLattice(std::move(gram)), AmpleData{integer_list_from_json(require(j, "ample"))}};
  out.lattice.check_ample(out.ample);
  return out;
}

SphericalCollectionDatum datum_from_config(const Json& j) {
  LatticeConfig lc = lattice_from_config(j);
  SphericalCollectionDatum d{std::move(lc.lattice), {}, {}, {}};
  for (const Json& a : require(j, "atoms")) {
    const IntVector coords = integer_list_from_json(require(a, "class"));
    if (coords.size() != d.lattice.dimension())
      throw_error(ErrorKind::Input, "atom class needs " + std::to_string(d.lattice.dimension()) + " coordinates");
    d.atoms.push_back({require(a, "name").get<std::string>(), MukaiVector::from_coords(coords),
                       rigidity_from(require(a, "rigidity"))});
  }
  if (j.contains("hom")) {
    for (const Json& t : j.at("hom")) {
      if (!t.is_array() || t.size() != 4) throw_error(ErrorKind::Input, "hom entries are [i, j, k, value]");
      const std::size_t a = atom_ref(t[0], d), b = atom_ref(t[1], d);
      const long k = integer_from(t[2]);
      if (k < kMinHomDegree || k > kMaxHomDegree) throw_error(ErrorKind::Input, "hom degree outside [-2, 4]");
      d.hom.set(a, b, static_cast<int>(k), integer_from(t[3]));
    }
  }
  if (j.contains("objects")) {
    for (const Json& o : j.at("objects")) {
      RegisteredObject obj{require(o, "name").get<std::string>(), rigidity_from(require(o, "rigidity")), {}};
      for (const Json& f : require(o, "factors")) {
        if (!f.is_array() || f.size() != 2) throw_error(ErrorKind::Input, "object factors are [atom, shift]");
        obj.factors.push_back({atom_ref(f[0], d), integer_from(f[1])});
      }
      d.objects.push_back(std::move(obj));
    }
  }
  return d;
}

ToyStability stability_from_config(const Json& j, const SphericalCollectionDatum& d, const AmpleData& ample,
                                   bool allow_decimal) {
  const Json& phases = require(j, "phases");
  std::vector<double> phi(d.atoms.size());
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    // A missing phase stays NaN and is reported by validate_stability.
    phi[i] = phases.contains(d.atoms[i].name) ? phase_from(phases.at(d.atoms[i].name))
                                              : std::numeric_limits<double>::quiet_NaN();
  }
  for (const auto& [name, value] : phases.items()) d.atom_index(name);

  if (j.contains("values")) {
    std::vector<ExactComplex> values;
    for (const Atom& a : d.atoms) {
      const RatVector v = rational_list_from_json(require(j.at("values"), a.name.c_str()), allow_decimal);
      if (v.size() != 2) throw_error(ErrorKind::Input, "charge values are [re, im]");
      values.push_back({v[0], v[1]});
    }
    return {phi, charge_from_atom_values(d, values)};
  }
  const Json& charge = require(j, "charge");
  if (charge.contains("re")) {
    return {phi, CentralCharge(rational_list_from_json(charge.at("re"), allow_decimal),
                               rational_list_from_json(require(charge, "im"), allow_decimal))};
  }
  const ExpParams p{rational_list_from_json(require(charge, "B"), allow_decimal),
                    rational_list_from_json(require(charge, "omega"), allow_decimal)};
  return {phi, standard_charge(d.lattice, ample, p)};
}

std::vector<TwoTermSheafDatum> heart_objects_from_config(const Json& j, bool allow_decimal) {
  std::vector<TwoTermSheafDatum> out;
  for (const Json& o : require(j, "objects")) {
    TwoTermSheafDatum e;
    e.name = require(o, "name").get<std::string>();
    const std::string hm = require(o, "hminus").get<std::string>();
    if (hm == "zero") {
      e.hminus = ZeroSheaf{};
    } else if (hm == "torsion_free") {
      e.hminus = TorsionFree{rational_from_json(require(o, "mu_max"), allow_decimal)};
    } else {
      throw_error(ErrorKind::Input, "hminus must be 'zero' or 'torsion_free', got '" + hm + "'");
    }
    const std::string h0 = require(o, "hzero").get<std::string>();
    if (h0 == "torsion") {
      e.hzero = TorsionSheaf{};
    } else if (h0 == "slopes") {
      e.hzero = WithSlopes{rational_from_json(require(o, "mu_min"), allow_decimal)};
    } else {
      throw_error(ErrorKind::Input, "hzero must be 'torsion' or 'slopes', got '" + h0 + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace stablat
