#include "carnot/json_io.hpp"

#include <algorithm>
#include <cmath>

namespace carnot {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::size_t index_from_json(const Json& j, std::size_t n, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n) throw SchemaError(std::string(what) + " out of range");
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SchemaError("rational must be a \"p/q\" string");
}

Json point_to_json(std::span<const Rational> p) {
  Json a = Json::array();
  for (const auto& q : p) a.push_back(rational_to_json(q));
  return a;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("point must be an array");
  Point p;
  for (const auto& e : j) p.push_back(rational_from_json(e));
  return p;
}

Json weights_to_json(const WeightVector& w) { return Json(w.values()); }

WeightVector weights_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("weights must be a nonempty array");
  std::vector<int> w;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw SchemaError("weights must be integers");
    w.push_back(e.get<int>());
  }
  try {
    return WeightVector(w);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Json poly_to_json(const Poly& p, const WeightVector* w) {
  std::vector<std::pair<MultiIndex, Rational>> terms(p.terms().begin(), p.terms().end());
  if (w && w->size() == p.nvars()) {
    WeightedLexLess less{w};
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) { return less(a.first, b.first); });
  }
  Json out;
  out["vars"] = p.nvars();
  Json arr = Json::array();
  for (const auto& [alpha, c] : terms) {
    Json t;
    t["exp"] = alpha.to_vector(p.nvars());
    t["coef"] = rational_to_json(c);
    arr.push_back(std::move(t));
  }
  out["terms"] = std::move(arr);
  return out;
}

Poly poly_from_json(const Json& j) {
  const Json& vars = member(j, "vars");
  if (!vars.is_number_integer() || vars.get<long long>() < 0 || vars.get<long long>() > static_cast<long long>(kMaxVars))
    throw SchemaError("\"vars\" must be an integer in 0.." + std::to_string(kMaxVars));
  const auto n = vars.get<std::size_t>();
  Poly p(n);
  const Json& terms = member(j, "terms");
  if (!terms.is_array()) throw SchemaError("\"terms\" must be an array");
  std::vector<MultiIndex> seen;
  for (const auto& t : terms) {
    const Json& exp = member(t, "exp");
    if (!exp.is_array() || exp.size() != n) throw SchemaError("\"exp\" must have one entry per variable");
    std::vector<int> e;
    for (const auto& v : exp) {
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 255)
        throw SchemaError("exponents must be integers in 0..255");
      e.push_back(v.get<int>());
    }
    const MultiIndex alpha(e);
    if (std::find(seen.begin(), seen.end(), alpha) != seen.end()) throw SchemaError("duplicate monomial in \"terms\"");
    seen.push_back(alpha);
    p.add_term(alpha, rational_from_json(member(t, "coef")));
  }
  return p;
}

Json polymap_to_json(const PolyMap& m, const WeightVector* w) {
  Json out;
  out["vars"] = m.nvars();
  Json c = Json::array();
  for (const auto& p : m.components()) c.push_back(poly_to_json(p, w));
  out["components"] = std::move(c);
  return out;
}

PolyMap polymap_from_json(const Json& j) {
  const Json& vars = member(j, "vars");
  if (!vars.is_number_integer()) throw SchemaError("\"vars\" must be an integer");
  const Json& comps = member(j, "components");
  if (!comps.is_array()) throw SchemaError("\"components\" must be an array");
  std::vector<Poly> c;
  for (const auto& p : comps) {
    c.push_back(poly_from_json(p));
    if (c.back().nvars() != vars.get<std::size_t>()) throw SchemaError("component has the wrong number of variables");
  }
  return PolyMap(vars.get<std::size_t>(), std::move(c));
}

Json field_to_json(const VectorField& x, const WeightVector& w) {
  Json a = Json::array();
  for (const auto& p : x.coefficients()) a.push_back(poly_to_json(p, &w));
  return a;
}

VectorField field_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw SchemaError("a field must list one polynomial per coordinate");
  std::vector<Poly> c;
  for (const auto& p : j) {
    c.push_back(poly_from_json(p));
    if (c.back().nvars() != n) throw SchemaError("field coefficient has the wrong number of variables");
  }
  return VectorField(std::move(c));
}

Json algebra_to_json(const StructureConstants& l) {
  Json out;
  out["weights"] = weights_to_json(l.weights());
  Json b = Json::array();
  for (const auto& [key, c] : l.entries()) {
    const auto [i, j, k] = key;
    Json e;
    e["i"] = i + 1;
    e["j"] = j + 1;
    e["k"] = k + 1;
    e["coef"] = rational_to_json(c);
    b.push_back(std::move(e));
  }
  out["brackets"] = std::move(b);
  return out;
}

StructureConstants algebra_from_json(const Json& j) {
  check_schema_tag(j);
  StructureConstants l(weights_from_json(member(j, "weights")));
  const std::size_t n = l.dim();
  const Json& b = member(j, "brackets");
  if (!b.is_array()) throw SchemaError("\"brackets\" must be an array");
  for (const auto& e : b) {
    const std::size_t i = index_from_json(member(e, "i"), n, "\"i\"");
    const std::size_t jj = index_from_json(member(e, "j"), n, "\"j\"");
    const std::size_t k = index_from_json(member(e, "k"), n, "\"k\"");
    if (i == jj) throw SchemaError("bracket entry with i == j");
    const Rational c = rational_from_json(member(e, "coef"));
    if (l.get(i, jj, k) != 0) throw SchemaError("duplicate bracket entry");
    l.set(i, jj, k, c);
  }
  return l;
}

Json frame_to_json(const Frame& f) {
  Json out;
  out["weights"] = weights_to_json(f.weights());
  out["base_point"] = point_to_json(f.base_point());
  Json fields = Json::array();
  for (const auto& x : f.fields()) fields.push_back(field_to_json(x, f.weights()));
  out["fields"] = std::move(fields);
  return out;
}

Frame frame_from_json(const Json& j) {
  check_schema_tag(j);
  const WeightVector w = weights_from_json(member(j, "weights"));
  const std::size_t n = w.size();
  Point a = j.contains("base_point") ? point_from_json(j.at("base_point")) : zero_point(n);
  if (a.size() != n) throw SchemaError("\"base_point\" has the wrong length");
  const Json& fields = member(j, "fields");
  if (!fields.is_array() || fields.size() != n) throw SchemaError("\"fields\" must list one field per weight");
  std::vector<VectorField> x;
  for (const auto& f : fields) x.push_back(field_from_json(f, n));
  return Frame(w, std::move(a), std::move(x));
}

Json change_to_json(const CoordinateChange& c) {
  const WeightVector& w = c.weights();
  Json out;
  Json affine;
  Json rows = Json::array();
  for (const auto& row : c.affine().matrix) rows.push_back(point_to_json(row));
  affine["matrix"] = std::move(rows);
  affine["offset"] = point_to_json(c.affine().offset);
  out["affine"] = std::move(affine);
  out["triangular"] = polymap_to_json(c.nonlinear(), &w);
  const PolyMap id = PolyMap::identity(c.dim());
  if (!(c.outer() == id) && !(c.inner() == id)) {
    Json f;
    f["inner"] = polymap_to_json(c.inner(), &w);
    f["outer"] = polymap_to_json(c.outer(), &w);
    out["factors"] = std::move(f);
  }
  return out;
}

CoordinateChange change_from_json(const Json& j, const WeightVector& w) {
  check_schema_tag(j);
  const std::size_t n = w.size();
  const Json& affine = member(j, "affine");
  const Json& rows = member(affine, "matrix");
  if (!rows.is_array() || rows.size() != n) throw SchemaError("affine matrix must be n x n");
  Matrix m;
  for (const auto& row : rows) {
    m.push_back(point_from_json(row));
    if (m.back().size() != n) throw SchemaError("affine matrix must be n x n");
  }
  Point offset = point_from_json(member(affine, "offset"));
  if (offset.size() != n) throw SchemaError("affine offset has the wrong length");
  AffineMap a{std::move(m), std::move(offset)};
  PolyMap nonlinear = j.contains("triangular") ? polymap_from_json(j.at("triangular")) : PolyMap::identity(n);
  if (nonlinear.size() != n || nonlinear.nvars() != n) throw SchemaError("\"triangular\" must map R^n to R^n");
  if (j.contains("factors")) {
    PolyMap inner = polymap_from_json(member(j.at("factors"), "inner"));
    PolyMap outer = polymap_from_json(member(j.at("factors"), "outer"));
    if (!(compose(outer, inner) == nonlinear)) throw SchemaError("\"factors\" do not compose to \"triangular\"");
    return CoordinateChange(std::move(a), std::move(inner), std::move(outer), w);
  }
  return CoordinateChange::from_nonlinear(std::move(a), nonlinear, w);
}

Json scaling_to_json(const ScalingReport& s) {
  Json out;
  out["m"] = s.m;
  out["t_grid"] = s.t_grid;
  Json dirs = Json::array();
  for (const auto& d : s.directions) {
    Json e;
    if (d.exact)
      e["slope"] = "exact";
    else if (std::isfinite(d.slope))
      e["slope"] = d.slope;
    else
      e["slope"] = nullptr;
    e["norms"] = d.norms;
    dirs.push_back(std::move(e));
  }
  out["directions"] = std::move(dirs);
  out["pass"] = s.pass;
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["check"] = r.check;
  out["verdict"] = r.pass ? "pass" : "fail";
  if (!r.frame_id.empty()) out["frame"] = r.frame_id;
  out["base_point"] = point_to_json(r.base_point);
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    Json e;
    e["identity"] = x.identity;
    e["residual"] = x.residual;
    w.push_back(std::move(e));
  }
  out["witnesses"] = std::move(w);
  if (!r.scaling.empty()) {
    Json s;
    for (const auto& [name, rep] : r.scaling) s[name] = scaling_to_json(rep);
    out["numeric"] = std::move(s);
  }
  return out;
}

void check_schema_tag(const Json& j) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != kSchema)
    throw SchemaError("unsupported schema tag " + j.at("schema").dump());
}

}  // namespace carnot
