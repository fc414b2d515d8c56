#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "carnot/acceptance.hpp"
#include "carnot/catalog.hpp"
#include "carnot/coordinates.hpp"
#include "carnot/json_io.hpp"
#include "carnot/random.hpp"
#include "carnot/verify.hpp"

using namespace carnot;

namespace {

constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json catalog_document(const std::string& name) {
  const CatalogEntry e = catalog(name);
  Json out;
  out["schema"] = kSchema;
  out["name"] = e.name;
  if (e.algebra) out["algebra"] = algebra_to_json(*e.algebra);
  out["frame"] = frame_to_json(e.frame);
  return out;
}

bool is_catalog_name(const std::string& s) {
  try {
    catalog(s);
    return true;
  } catch (const std::out_of_range&) {
    return false;
  }
}

/// "-" reads stdin; otherwise a file, a catalog name or inline JSON.
Json load_document(const std::string& source) {
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (std::filesystem::exists(source)) {
    std::ifstream in(source);
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else if (is_catalog_name(source)) {
    return catalog_document(source);
  } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
    text = source;
  } else {
    throw InputError("no such file or catalog entry: " + source);
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  check_schema_tag(j);
  return j;
}

std::optional<StructureConstants> algebra_of(const Json& doc) {
  if (doc.contains("algebra")) return algebra_from_json(doc.at("algebra"));
  if (doc.contains("brackets")) return algebra_from_json(doc);
  return std::nullopt;
}

/// A frame document, a catalog document or an algebra (its left-invariant frame).
Frame frame_of(const Json& doc) {
  if (doc.contains("frame")) return frame_from_json(doc.at("frame"));
  if (doc.contains("fields")) return frame_from_json(doc);
  if (auto l = algebra_of(doc)) {
    const auto report = validate_algebra(*l);
    if (!report.ok) throw SchemaError("invalid algebra: " + report.message);
    return Frame(l->weights(), zero_point(l->dim()), left_invariant_fields(*l));
  }
  throw SchemaError("document has neither a frame nor an algebra");
}

std::string frame_id(const std::string& source, const Json& doc) {
  if (doc.contains("name") && doc.at("name").is_string()) return doc.at("name").get<std::string>();
  return source == "-" ? "stdin" : source;
}

struct FrameInput {
  std::string source = "-";
  std::string at;

  Frame load(std::string* id = nullptr) const {
    const Json doc = load_document(source);
    Frame f = frame_of(doc);
    if (id) *id = frame_id(source, doc);
    if (!at.empty()) {
      const Point a = parse_point(at);
      if (a.size() != f.dim()) throw DimensionMismatch("--at has the wrong dimension");
      f = f.at(a);
    }
    return f;
  }
};

void add_frame_options(CLI::App* cmd, FrameInput& in) {
  cmd->add_option("--frame,-f", in.source, "frame file, catalog name, inline JSON or - for stdin");
  cmd->add_option("--at", in.at, "base point, comma separated rationals");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (const char* env = std::getenv("CARNOT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("CARNOT_SEED is not an unsigned integer");
    }
  }
  if (!flag) throw InputError("this command is randomized: pass --seed or set CARNOT_SEED");
  return *flag;
}

void emit(Json body) {
  Json out;
  out["schema"] = kSchema;
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  std::cout << out.dump(2) << "\n";
}

CoordinateChange named_change(const std::string& name, const FrameContext& ctx) {
  const Frame& f = ctx.frame();
  const auto& w = f.weights();
  if (name == "identity") return CoordinateChange::identity(w, f.base_point());
  if (name == "linearize") return linearize(f).change;
  if (name == "psi") {
    const auto& p = ctx.pipeline();
    return CoordinateChange(p.linear.change.affine(), p.psi, PolyMap::identity(f.dim()), w);
  }
  if (name == "epsilon") return ctx.epsilon();
  if (name == "first-kind") return canonical_first_kind(f);
  if (name == "second-kind") return canonical_second_kind(f);
  const Json doc = load_document(name);
  return change_from_json(doc.contains("change") ? doc.at("change") : doc, w);
}

std::vector<std::vector<double>> parse_numeric_points(const std::string& text, std::size_t n) {
  std::vector<std::vector<double>> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const Point p = parse_point(item);
    if (p.size() != n) throw DimensionMismatch("sample point has the wrong dimension");
    pts.push_back(to_double(p));
  }
  if (pts.empty()) throw InputError("numeric mode needs --points");
  return pts;
}

Json canonical(const FrameInput& in, const std::string& mode, const std::string& points, bool first) {
  const Frame f = in.load();
  if (mode == "exact") {
    const CoordinateChange c = first ? canonical_first_kind(f) : canonical_second_kind(f);
    Json out;
    out["change"] = change_to_json(c);
    return out;
  }
  if (mode != "numeric") throw InputError("--mode must be exact or numeric");
  Json samples = Json::array();
  for (const auto& p : parse_numeric_points(points, f.dim())) {
    const auto forward = [&](std::span<const double> x) {
      return first ? numeric_first_kind(f, x) : numeric_second_kind(f, x);
    };
    std::vector<double> x0(p.size());
    const auto a = to_double(f.base_point());
    for (std::size_t k = 0; k < p.size(); ++k) x0[k] = p[k] - a[k];
    Json s;
    s["point"] = p;
    s["chart"] = invert_numeric(forward, p, x0);
    samples.push_back(std::move(s));
  }
  Json out;
  out["numeric"]["samples"] = std::move(samples);
  return out;
}

int run_check(const FrameInput& in, const std::string& change, bool carnot_check) {
  std::string id;
  const Frame f = in.load(&id);
  const FrameContext ctx(f, id);
  const CoordinateChange c = named_change(change, ctx);
  const auto report = carnot_check ? check_carnot(ctx, c) : check_privileged(ctx, c);
  emit(report_to_json(report));
  return report.pass ? 0 : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carnot: privileged and Carnot coordinates for polynomial H-frames"};
  app.require_subcommand(1);
  int code = 0;

  auto* validate = app.add_subcommand("validate", "validate a frame or algebra document");
  std::string validate_source = "-";
  validate->add_option("input", validate_source, "file, catalog name, inline JSON or -");
  validate->callback([&] {
    const Json doc = load_document(validate_source);
    Json out;
    if (auto l = algebra_of(doc)) {
      const auto report = validate_algebra(*l);
      if (!report.ok) throw SchemaError("invalid algebra: " + report.message);
      out["algebra"] = "valid";
    }
    if (doc.contains("frame") || doc.contains("fields")) {
      const Frame f = frame_of(doc);
      const auto table = structure_constants_at(f);
      out["frame"] = "valid";
      out["dim"] = f.dim();
      out["step"] = f.weights().step();
      out["tangent_algebra"] = algebra_to_json(table.graded);
    }
    if (out.empty()) throw SchemaError("document has neither a frame nor an algebra");
    emit(out);
  });

  auto* group = app.add_subcommand("group-law", "group law of a graded nilpotent algebra");
  std::string group_source = "-", gx, gy;
  group->add_option("--algebra,-a", group_source, "algebra or catalog document, - for stdin");
  group->add_option("--x", gx, "left factor");
  group->add_option("--y", gy, "right factor");
  group->callback([&] {
    const Json doc = load_document(group_source);
    const auto l = algebra_of(doc);
    if (!l) throw SchemaError("document has no algebra");
    const GroupLaw g(*l);
    Json out;
    if (gx.empty() != gy.empty()) throw InputError("pass both --x and --y, or neither");
    if (gx.empty()) {
      const WeightVector w2 = l->weights().doubled();
      out["law"] = polymap_to_json(g.product_map(), &w2);
    } else {
      const Point x = parse_point(gx), y = parse_point(gy);
      if (x.size() != g.dim() || y.size() != g.dim()) throw DimensionMismatch("point has the wrong dimension");
      out["product"] = point_to_json(g.multiply(x, y));
    }
    emit(out);
  });

  FrameInput frame_in;
  auto* lin = app.add_subcommand("linearize", "affine change T_a making the frame linearly adapted");
  add_frame_options(lin, frame_in);
  lin->callback([&] {
    const auto l = linearize(frame_in.load());
    Json out;
    out["change"] = change_to_json(l.change);
    out["frame"] = frame_to_json(l.frame);
    emit(out);
  });

  auto* psi = app.add_subcommand("psi", "privileged coordinates psi_a o T_a");
  add_frame_options(psi, frame_in);
  psi->callback([&] {
    const auto p = epsilon_pipeline(frame_in.load());
    const auto& w = p.privileged_frame.weights();
    Json out;
    out["psi"] = polymap_to_json(p.psi, &w);
    out["frame"] = frame_to_json(p.privileged_frame);
    emit(out);
  });

  auto* eps = app.add_subcommand("epsilon", "epsilon Carnot coordinates at the base point");
  add_frame_options(eps, frame_in);
  eps->callback([&] {
    const Frame f = frame_in.load();
    const CoordinateChange c = epsilon(f);
    Json out;
    out["change"] = change_to_json(c);
    out["frame"] = frame_to_json(c.push(f));
    emit(out);
  });

  auto* model = app.add_subcommand("model-fields", "model vector fields and tangent algebra at the base point");
  add_frame_options(model, frame_in);
  model->callback([&] {
    const auto p = epsilon_pipeline(frame_in.load());
    const auto& w = p.privileged_frame.weights();
    Json fields = Json::array();
    for (const auto& x : p.model) fields.push_back(field_to_json(x, w));
    Json out;
    out["fields"] = std::move(fields);
    out["algebra"] = algebra_to_json(structure_constants_at(p.privileged_frame).graded);
    emit(out);
  });

  auto* order = app.add_subcommand("order", "order of a polynomial function at the base point");
  add_frame_options(order, frame_in);
  std::string order_poly;
  int order_var = 0, order_max = 0;
  order->add_option("--poly", order_poly, "polynomial JSON (inline or file)");
  order->add_option("--var", order_var, "coordinate function x_k, 1-based");
  order->add_option("--max", order_max, "search bound on the order (default step + 1)");
  order->callback([&] {
    const Frame f = frame_in.load();
    Poly p;
    if (!order_poly.empty()) {
      p = poly_from_json(load_document(order_poly));
      if (p.nvars() != f.dim()) throw DimensionMismatch("polynomial has the wrong number of variables");
    } else if (order_var >= 1 && static_cast<std::size_t>(order_var) <= f.dim()) {
      p = Poly::variable(f.dim(), order_var - 1);
    } else {
      throw InputError("pass --poly or --var k with 1 <= k <= n");
    }
    const int bound = order_max > 0 ? order_max : f.weights().step() + 1;
    const auto o = function_order(p, f, bound);
    Json out;
    if (o)
      out["order"] = *o;
    else
      out["order"] = nullptr;
    out["bound"] = bound;
    emit(out);
  });

  std::string mode = "exact", points;
  for (const auto& [name, first] : {std::pair{"canonical1", true}, std::pair{"canonical2", false}}) {
    auto* cmd = app.add_subcommand(name, first ? "canonical coordinates of the first kind"
                                               : "canonical coordinates of the second kind");
    add_frame_options(cmd, frame_in);
    cmd->add_option("--mode", mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    cmd->add_option("--points", points, "numeric mode: semicolon separated points");
    const bool is_first = first;
    cmd->callback([&, is_first] { emit(canonical(frame_in, mode, points, is_first)); });
  }

  std::string change = "epsilon";
  for (const auto& [name, is_carnot] : {std::pair{"check-privileged", false}, std::pair{"check-carnot", true}}) {
    auto* cmd = app.add_subcommand(name, is_carnot ? "are the coordinates Carnot coordinates"
                                                   : "are the coordinates privileged");
    add_frame_options(cmd, frame_in);
    cmd->add_option("--change,-c", change,
                    "identity | linearize | psi | epsilon | first-kind | second-kind | change JSON");
    const bool c = is_carnot;
    cmd->callback([&, c] { code = run_check(frame_in, change, c); });
  }

  auto* osc = app.add_subcommand("osculate", "osculation by the tangent group");
  add_frame_options(osc, frame_in);
  std::optional<std::uint64_t> seed;
  int n_dirs = 8, n_t = 10;
  osc->add_option("--change,-c", change, "Carnot coordinate change (default epsilon)");
  osc->add_option("--seed", seed, "rng seed for the directions");
  osc->add_option("--directions", n_dirs, "number of random directions")->check(CLI::PositiveNumber);
  osc->add_option("--t-count", n_t, "t = 2^-1 .. 2^-count")->check(CLI::Range(2, 40));
  osc->callback([&] {
    std::string id;
    const FrameContext ctx(frame_in.load(&id), id);
    Rng rng(resolve_seed(seed));
    OsculationOptions options;
    options.t_grid = dyadic_grid(n_t);
    for (int i = 0; i < n_dirs; ++i) options.directions.push_back(random_unit_direction(rng, 2 * ctx.frame().dim()));
    const auto report = osculation_report(ctx, named_change(change, ctx), options);
    emit(report_to_json(report));
    code = report.pass ? 0 : kVerificationFailed;
  });

  auto* cat = app.add_subcommand("catalog", "list catalog entries or print one");
  std::string cat_name;
  cat->add_option("name", cat_name, "entry name");
  cat->callback([&] {
    if (cat_name.empty()) {
      Json out;
      out["entries"] = catalog_names();
      emit(out);
      return;
    }
    if (!is_catalog_name(cat_name)) throw InputError("unknown catalog entry: " + cat_name);
    std::cout << catalog_document(cat_name).dump(2) << "\n";
  });

  auto* self = app.add_subcommand("selftest", "run the acceptance suite on the catalog");
  self->add_option("--seed", seed, "rng seed");
  self->callback([&] {
    int failures = 0;
    run_acceptance(resolve_seed(seed), [&](const CriterionResult& r) {
      std::cout << format_result(r) << std::endl;
      failures += !r.pass;
    });
    code = failures ? kVerificationFailed : 0;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kInputError;
  } catch (const SingularMatrix& e) {
    std::cerr << "singular: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
