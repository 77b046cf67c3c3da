#include "dacscanon/io.hpp"

#include <fstream>
#include <optional>
#include <regex>

namespace dacs {

namespace {

using Dim = std::optional<std::size_t>;

RatMatrix parse_matrix(const json& j, const std::string& name, Dim r, Dim c) {
  if (!j.is_array()) throw ParseError("matrix " + name + " must be an array of rows");
  const std::size_t rows = j.size();
  if (rows == 0) {
    if (r && *r != 0) throw DimensionError("matrix " + name + " has no rows, expected " + std::to_string(*r));
    return RatMatrix(0, c.value_or(0));
  }
  if (!j[0].is_array()) throw ParseError("matrix " + name + " must be an array of rows");
  const std::size_t cols = j[0].size();
  if (r && *r != rows) throw DimensionError("matrix " + name + " has " + std::to_string(rows) + " rows, expected " +
                                            std::to_string(*r));
  if (c && *c != cols) throw DimensionError("matrix " + name + " has " + std::to_string(cols) +
                                            " columns, expected " + std::to_string(*c));
  RatMatrix M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw DimensionError("matrix " + name + " is ragged");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (e.is_string())
        M(i, k) = parse_rational(e.get<std::string>());
      else if (e.is_number_integer())
        M(i, k) = Rational(e.get<long>());
      else
        throw ParseError("matrix " + name + ": entries must be rational strings");
    }
  }
  return M;
}

// Dimension hint: explicit "dims" entry, else rows/first-row length of a
// named matrix when it has rows.
Dim dim_of(const json& j, const char* key) {
  if (j.contains("dims") && j["dims"].contains(key)) return j["dims"][key].get<std::size_t>();
  return std::nullopt;
}
Dim rows_of(const json& j, const char* name) {
  if (j.contains(name) && j[name].is_array() && !j[name].empty()) return j[name].size();
  return std::nullopt;
}
Dim cols_of(const json& j, const char* name) {
  if (j.contains(name) && j[name].is_array() && !j[name].empty() && j[name][0].is_array()) return j[name][0].size();
  return std::nullopt;
}
std::size_t pick(std::initializer_list<Dim> ds) {
  for (const Dim& d : ds)
    if (d) return *d;
  return 0;
}

RatMatrix member(const json& j, const std::string& name, Dim r, Dim c, bool required = true) {
  if (!j.contains(name)) {
    if (required) throw ParseError("missing matrix " + name);
    return RatMatrix(r.value_or(0), c.value_or(0));
  }
  return parse_matrix(j[name], name, r, c);
}

json shape(const RatMatrix& M) { return json::array({M.rows(), M.cols()}); }

RatMatrix shaped(const json& j, const std::string& name) {
  Dim r, c;
  if (j.contains("shapes") && j["shapes"].contains(name)) {
    r = j["shapes"][name][0].get<std::size_t>();
    c = j["shapes"][name][1].get<std::size_t>();
  }
  return member(j, name, r, c);
}

json indices(const Indices& v) { return json(v); }

}  // namespace

Rational parse_rational(const std::string& s) {
  static const std::regex re(R"(\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("not a rational: '" + s + "'");
  mpz_class num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str(), 10);
  mpz_class den(1);
  if (m[2].matched) {
    std::string d = m[2].str();
    den = mpz_class(d.front() == '+' ? d.substr(1) : d, 10);
    if (den == 0) throw ZeroDenominator("zero denominator in '" + s + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

RatMatrix matrix_from_json(const json& j, const json* shp) {
  Dim r, c;
  if (shp) {
    r = (*shp)[0].get<std::size_t>();
    c = (*shp)[1].get<std::size_t>();
  }
  return parse_matrix(j, "matrix", r, c);
}

json matrix_to_json(const RatMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(format_rational(M(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

SystemVariant system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("system file needs a \"kind\" field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "dacs") {
    const std::size_t l = pick({dim_of(j, "l"), rows_of(j, "E"), rows_of(j, "H"), rows_of(j, "L")});
    const std::size_t n = pick({dim_of(j, "n"), cols_of(j, "E"), cols_of(j, "H")});
    const std::size_t m = pick({dim_of(j, "m"), cols_of(j, "L")});
    Dacs d{member(j, "E", l, n), member(j, "H", l, n), member(j, "L", l, m, false)};
    d.validate();
    return d;
  }
  if (kind == "odecs2") {
    const std::size_t n = pick({dim_of(j, "n"), rows_of(j, "A"), cols_of(j, "A"), cols_of(j, "C")});
    const std::size_t m = pick({dim_of(j, "m"), cols_of(j, "Bu"), cols_of(j, "Du")});
    const std::size_t s = pick({dim_of(j, "s"), cols_of(j, "Bv")});
    const std::size_t p = pick({dim_of(j, "p"), rows_of(j, "C"), rows_of(j, "Du")});
    Odecs2 o{member(j, "A", n, n), member(j, "Bu", n, m, false), member(j, "Bv", n, s, false),
             member(j, "C", p, n, false), member(j, "Du", p, m, false)};
    o.validate();
    return o;
  }
  throw ParseError("unknown system kind '" + kind + "'");
}

json system_to_json(const Dacs& d) {
  json j;
  j["kind"] = "dacs";
  j["dims"] = {{"l", d.l()}, {"n", d.n()}, {"m", d.m()}};
  j["E"] = matrix_to_json(d.E);
  j["H"] = matrix_to_json(d.H);
  j["L"] = matrix_to_json(d.L);
  return j;
}

json system_to_json(const Odecs2& o) {
  json j;
  j["kind"] = "odecs2";
  j["dims"] = {{"n", o.n()}, {"m", o.m()}, {"s", o.s()}, {"p", o.p()}};
  j["A"] = matrix_to_json(o.A);
  j["Bu"] = matrix_to_json(o.Bu);
  j["Bv"] = matrix_to_json(o.Bv);
  j["C"] = matrix_to_json(o.C);
  j["Du"] = matrix_to_json(o.Du);
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

SystemVariant parse_system(const std::string& path) {
  const json j = load_json(path);
  try {
    return system_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad system file: ") + e.what());
  }
}

json transform_to_json(const ExFbTransform& t) {
  json j;
  j["kind"] = "exfb";
  for (auto [name, M] : {std::pair{"Q", &t.Q}, {"P", &t.P}, {"F", &t.F}, {"G", &t.G}}) {
    j[name] = matrix_to_json(*M);
    j["shapes"][name] = shape(*M);
  }
  return j;
}

json transform_to_json(const EmTransform& t) {
  json j;
  j["kind"] = "em";
  for (auto [name, M] : {std::pair{"Tx", &t.Tx}, {"Tu", &t.Tu}, {"Tv", &t.Tv}, {"Ty", &t.Ty}, {"Fu", &t.Fu},
                         {"Fv", &t.Fv}, {"R", &t.R}, {"K", &t.K}}) {
    j[name] = matrix_to_json(*M);
    j["shapes"][name] = shape(*M);
  }
  return j;
}

json transform_to_json(const MorseTransform& t) {
  json j;
  j["kind"] = "morse";
  for (auto [name, M] : {std::pair{"Tx", &t.Tx}, {"Tu", &t.Tu}, {"Ty", &t.Ty}, {"F", &t.F}, {"K", &t.K}}) {
    j[name] = matrix_to_json(*M);
    j["shapes"][name] = shape(*M);
  }
  return j;
}

std::variant<ExFbTransform, EmTransform> transform_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exfb") return ExFbTransform{shaped(j, "Q"), shaped(j, "P"), shaped(j, "F"), shaped(j, "G")};
    if (kind == "em")
      return EmTransform{shaped(j, "Tx"), shaped(j, "Tu"), shaped(j, "Tv"), shaped(j, "Ty"),
                         shaped(j, "Fu"), shaped(j, "Fv"), shaped(j, "R"),  shaped(j, "K")};
    throw ParseError("unknown transform kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad transform file: ") + e.what());
  }
}

json indices_to_json(const EmcfIndices& e) {
  return json{{"eps", indices(e.eps)},
              {"eps_bar", indices(e.eps_bar)},
              {"n_nn", e.A_nn.rows()},
              {"A_nn", matrix_to_json(e.A_nn)},
              {"sigma", indices(e.sigma)},
              {"delta", e.delta},
              {"sigma_bar", indices(e.sigma_bar)},
              {"eta", indices(e.eta)},
              {"null_inputs", e.null_inputs},
              {"null_outputs", e.null_outputs}};
}

json indices_to_json(const FbcfIndices& f) {
  return json{{"eps_p", indices(f.eps_p)},         {"eps_bar_p", indices(f.eps_bar_p)},
              {"n_rho", f.n_rho},                  {"A_rho", matrix_to_json(f.A_rho)},
              {"sigma_p", indices(f.sigma_p)},     {"sigma_bar_p", indices(f.sigma_bar_p)},
              {"eta_p", indices(f.eta_p)},         {"zero_inputs", f.zero_inputs}};
}

json dims_to_json(const BlockDims& d) {
  return json{{"n1", d.n1}, {"n2", d.n2}, {"n3", d.n3}, {"n4", d.n4}, {"m1", d.m1},
              {"m3", d.m3}, {"s1", d.s1}, {"s3", d.s3}, {"p3", d.p3}, {"p4", d.p4}};
}

}  // namespace dacs
