#include "abnorm/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "abnorm/errors.hpp"
#include "abnorm/subspace.hpp"
#include "expr.hpp"

namespace abnorm {

namespace catalog_detail {

using nlohmann::json;
using expr::Bindings;
using expr::Expression;

std::string format_param(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

struct BracketSpec {
  int i;
  int j;
  std::array<Expression, 4> coeffs;
};

struct SpecialCase {
  Expression when;
  std::vector<BracketSpec> brackets;
};

struct SubspaceSpec {
  Expression when;
  std::vector<std::array<Expression, 4>> span;
  std::string tag;
  std::string provenance;
};

struct NoSubspaceSpec {
  Expression when;
  std::string provenance;
};

}  // namespace catalog_detail

using namespace catalog_detail;

struct AutomorphismFamily::Variant {
  Expression when;
  Expression nonzero;
  std::array<Expression, 16> matrix;  // row-major
  bool uses_sigma = false;
  int max_a = 0;
};

struct FamilyRecord {
  FamilyInfo info;
  Expression constraints;
  std::vector<BracketSpec> brackets;
  std::vector<SpecialCase> special_cases;
  std::vector<std::shared_ptr<const AutomorphismFamily::Variant>> automorphisms;
  std::vector<SubspaceSpec> subspaces;
  std::vector<NoSubspaceSpec> no_subspace;
};

struct Catalog::Data {
  std::string origin;
  std::vector<FamilyInfo> infos;
  std::vector<FamilyRecord> records;
  std::map<std::string, std::size_t, std::less<>> index;  // id and aliases -> record
};

namespace {

[[noreturn]] void corrupt(const std::string& where, const std::string& what) {
  throw CatalogError(where + ": " + what);
}

Expression parse_expr(const json& j, const std::string& where) {
  if (j.is_string()) return Expression::parse(j.get<std::string>());
  if (j.is_number()) return Expression::parse(j.dump());
  if (j.is_boolean()) return Expression::parse(j.get<bool>() ? "true" : "false");
  corrupt(where, "expected an expression string");
}

Expression optional_when(const json& obj, const std::string& where) {
  return obj.contains("when") ? parse_expr(obj.at("when"), where + ".when") : Expression::parse("true");
}

std::array<Expression, 4> parse_vec4(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) corrupt(where, "expected 4 coefficients");
  std::array<Expression, 4> out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = parse_expr(j[k], where);
  return out;
}

std::vector<BracketSpec> parse_brackets(const json& j, const std::string& where) {
  if (!j.is_array()) corrupt(where, "brackets must be an array");
  std::vector<BracketSpec> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() || !row[1].is_number_integer()) {
      corrupt(where, "bracket rows are [i, j, [c1, c2, c3, c4]]");
    }
    const int i = row[0].get<int>() - 1;
    const int k = row[1].get<int>() - 1;
    if (i < 0 || i >= kDim || k < 0 || k >= kDim || i == k) corrupt(where, "bracket index out of range");
    out.push_back({i, k, parse_vec4(row[2], where)});
  }
  return out;
}

std::string bracket_text(const json& row) {
  std::string rhs;
  for (std::size_t k = 0; k < 4; ++k) {
    const json& c = row[2][k];
    std::string coeff = c.is_string() ? c.get<std::string>() : c.dump();
    if (coeff == "0") continue;
    const std::string e = "E" + std::to_string(k + 1);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    const bool compound = coeff.find_first_of("+-*/ ") != std::string::npos;
    std::string term = coeff == "1" ? e : (compound ? "(" + coeff + ")" : coeff) + "*" + e;
    if (rhs.empty()) {
      rhs = (negative ? "-" : "") + term;
    } else {
      rhs += (negative ? " - " : " + ") + term;
    }
  }
  return "[E" + row[0].dump() + ",E" + row[1].dump() + "] = " + (rhs.empty() ? "0" : rhs);
}

std::shared_ptr<const AutomorphismFamily::Variant> parse_variant(const json& j, const std::string& where) {
  auto v = std::make_shared<AutomorphismFamily::Variant>();
  v->when = optional_when(j, where);
  v->nonzero = parse_expr(j.at("nonzero"), where + ".nonzero");
  const json& m = j.at("matrix");
  if (!m.is_array() || m.size() != 4) corrupt(where, "matrix must have 4 rows");
  for (std::size_t r = 0; r < 4; ++r) {
    const auto row = parse_vec4(m[r], where + ".matrix");
    for (std::size_t c = 0; c < 4; ++c) v->matrix[r * 4 + c] = row[c];
  }
  auto scan = [&](const Expression& e) {
    for (const auto& name : e.identifiers()) {
      if (name == "sigma") v->uses_sigma = true;
      if (name.size() == 2 && name[0] == 'a' && name[1] >= '1' && name[1] <= '7') {
        v->max_a = std::max(v->max_a, name[1] - '0');
      }
    }
  };
  for (const auto& e : v->matrix) scan(e);
  scan(v->nonzero);
  return v;
}

FamilyRecord parse_family(const json& j) {
  FamilyRecord rec;
  FamilyInfo& info = rec.info;
  info.id = j.at("family").get<std::string>();
  const std::string where = "family " + info.id;
  info.name = j.value("name", info.id);
  info.aliases = j.value("aliases", std::vector<std::string>{});
  info.params = j.value("params", std::vector<std::string>{});
  info.constraints = j.value("constraints", std::string("true"));
  info.decomposable = j.value("decomposable", false);
  info.simple_factor = j.value("simple_factor", std::string());
  for (const auto& name : info.params) {
    if (name != "alpha" && name != "beta") corrupt(where, "unknown parameter name " + name);
  }
  rec.constraints = Expression::parse(info.constraints);
  rec.brackets = parse_brackets(j.at("brackets"), where + ".brackets");
  for (const auto& row : j.at("brackets")) info.bracket_text.push_back(bracket_text(row));

  if (j.contains("special_cases")) {
    for (const auto& sc : j.at("special_cases")) {
      rec.special_cases.push_back({optional_when(sc, where), parse_brackets(sc.at("brackets"), where + ".special_cases")});
    }
  }
  if (j.contains("samples")) {
    for (const auto& s : j.at("samples")) {
      auto values = s.get<std::vector<double>>();
      if (values.size() != info.params.size()) corrupt(where, "sample arity differs from params");
      info.samples.push_back(std::move(values));
    }
  }
  if (j.contains("automorphisms")) {
    for (const auto& a : j.at("automorphisms")) rec.automorphisms.push_back(parse_variant(a, where + ".automorphisms"));
  }
  info.has_automorphisms = !rec.automorphisms.empty();
  if (j.contains("generating_subspaces")) {
    for (const auto& g : j.at("generating_subspaces")) {
      SubspaceSpec spec;
      spec.when = optional_when(g, where);
      for (const auto& v : g.at("span")) spec.span.push_back(parse_vec4(v, where + ".span"));
      if (spec.span.size() != 2) corrupt(where, "generating subspaces are planes");
      spec.tag = g.value("tag", std::string());
      spec.provenance = g.value("provenance", std::string());
      rec.subspaces.push_back(std::move(spec));
    }
  }
  if (j.contains("no_generating_subspace")) {
    for (const auto& g : j.at("no_generating_subspace")) {
      rec.no_subspace.push_back({optional_when(g, where), g.value("provenance", std::string())});
    }
  }
  return rec;
}

Bindings bind_params(const FamilyInfo& info, const std::vector<double>& params) {
  Bindings b;
  for (std::size_t k = 0; k < info.params.size() && k < params.size(); ++k) b[info.params[k]] = params[k];
  return b;
}

Vector4 eval_vec(const std::array<Expression, 4>& e, const Bindings& b) {
  Vector4 v;
  for (int k = 0; k < kDim; ++k) v[k] = e[static_cast<std::size_t>(k)].evaluate(b);
  return v;
}

}  // namespace

std::string AlgebraId::to_string() const {
  if (params.empty()) return family;
  std::string out = family + "(";
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (k) out += ",";
    out += format_param(params[k]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------------------
// AutomorphismFamily

AutomorphismFamily::AutomorphismFamily(AlgebraId id, std::vector<std::shared_ptr<const Variant>> variants,
                                       std::vector<std::string> param_names)
    : id_(std::move(id)), variants_(std::move(variants)), param_names_(std::move(param_names)) {}

namespace {

Bindings automorphism_bindings(const std::vector<std::string>& names, const std::vector<double>& params,
                               const AutomorphismParams& p) {
  Bindings b;
  for (std::size_t k = 0; k < names.size() && k < params.size(); ++k) b[names[k]] = params[k];
  for (std::size_t k = 0; k < p.a.size(); ++k) b["a" + std::to_string(k + 1)] = p.a[k];
  b["sigma"] = p.sigma;
  return b;
}

}  // namespace

const AutomorphismFamily::Variant& AutomorphismFamily::select(int sigma) const {
  AutomorphismParams probe;
  probe.sigma = sigma;
  const Bindings b = automorphism_bindings(param_names_, id_.params, probe);
  for (const auto& v : variants_) {
    if (v->when.holds(b)) return *v;
  }
  throw InvalidParameters("no automorphism row for sigma = " + std::to_string(sigma));
}

double AutomorphismFamily::nonvanishing(const AutomorphismParams& p) const {
  const Variant& v = select(p.sigma);
  return v.nonzero.evaluate(automorphism_bindings(param_names_, id_.params, p));
}

AutomorphismMatrix AutomorphismFamily::operator()(const AutomorphismParams& p) const {
  if (p.sigma != 1 && p.sigma != -1) throw InvalidParameters("sigma must be +1 or -1");
  const Variant& v = select(p.sigma);
  const Bindings b = automorphism_bindings(param_names_, id_.params, p);
  if (v.nonzero.evaluate(b) == 0.0) throw InvalidParameters(v.nonzero.source() + " must not vanish");
  AutomorphismMatrix out;
  out.family = id_.family;
  out.params = p;
  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) out.m(r, c) = v.matrix[static_cast<std::size_t>(r * kDim + c)].evaluate(b);
  }
  return out;
}

bool AutomorphismFamily::uses_sigma() const {
  return std::any_of(variants_.begin(), variants_.end(), [](const auto& v) { return v->uses_sigma; }) ||
         variants_.size() > 1;
}

int AutomorphismFamily::parameter_count() const {
  int n = 0;
  for (const auto& v : variants_) n = std::max(n, v->max_a);
  return n;
}

// ---------------------------------------------------------------------------------------
// Catalog

Catalog Catalog::parse(std::string_view json_text, const std::string& origin) {
  auto data = std::make_shared<Data>();
  data->origin = origin;
  try {
    const json root = json::parse(json_text);
    if (root.value("format", std::string()) != "abnorm-catalog") corrupt(origin, "not an abnorm catalog");
    for (const auto& fam : root.at("families")) {
      FamilyRecord rec = parse_family(fam);
      const std::size_t idx = data->records.size();
      for (const std::string& key : [&] {
             std::vector<std::string> keys{rec.info.id};
             keys.insert(keys.end(), rec.info.aliases.begin(), rec.info.aliases.end());
             return keys;
           }()) {
        if (!data->index.emplace(key, idx).second) corrupt(origin, "duplicate family key " + key);
      }
      data->infos.push_back(rec.info);
      data->records.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw CatalogError(origin + ": " + e.what());
  }
  Catalog cat(std::move(data));
  cat.self_check();
  return cat;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::filesystem::path Catalog::default_path() {
  if (const char* env = std::getenv("ABNORM_CATALOG"); env && *env) return env;
  const std::filesystem::path source = ABNORM_CATALOG_SOURCE_PATH;
  std::error_code ec;
  if (std::filesystem::exists(source, ec)) return source;
  return ABNORM_CATALOG_INSTALL_PATH;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = load(default_path());
  return cat;
}

const std::vector<FamilyInfo>& Catalog::families() const { return data_->infos; }

namespace {

const FamilyRecord& record(const Catalog::Data& d, std::string_view id) {
  const auto it = d.index.find(id);
  if (it == d.index.end()) throw UnknownFamily(std::string(id));
  return d.records[it->second];
}

}  // namespace

const FamilyInfo& Catalog::family(std::string_view id) const { return record(*data_, id).info; }

AlgebraId Catalog::make_id(std::string_view fam, std::vector<double> params) const {
  const FamilyInfo& info = family(fam);
  return AlgebraId{info.id, std::move(params)};
}

bool Catalog::valid_parameters(const AlgebraId& id) const {
  const FamilyRecord& rec = record(*data_, id.family);
  if (id.params.size() != rec.info.params.size()) return false;
  for (double p : id.params) {
    if (!std::isfinite(p)) return false;
  }
  return rec.constraints.holds(bind_params(rec.info, id.params));
}

std::vector<BracketRow> Catalog::brackets(const AlgebraId& id) const {
  const FamilyRecord& rec = record(*data_, id.family);
  if (!valid_parameters(id)) {
    throw InvalidParameters(id.to_string() + " violates " + rec.info.constraints);
  }
  const Bindings b = bind_params(rec.info, id.params);
  const std::vector<BracketSpec>* rows = &rec.brackets;
  for (const auto& sc : rec.special_cases) {
    if (sc.when.holds(b)) {
      rows = &sc.brackets;
      break;
    }
  }
  std::vector<BracketRow> out;
  for (const auto& row : *rows) {
    const Vector4 v = eval_vec(row.coeffs, b);
    if (!v.isZero(0.0)) out.push_back({row.i, row.j, v});
  }
  return out;
}

StructureConstants Catalog::instantiate(const AlgebraId& id) const {
  std::vector<BracketEntry> entries;
  for (const auto& row : brackets(id)) entries.push_back({row.i, row.j, row.value});
  return StructureConstants(std::span<const BracketEntry>(entries),
                            AlgebraId{family(id.family).id, id.params}.to_string());
}

AutomorphismFamily Catalog::automorphism_family(const AlgebraId& id) const {
  const FamilyRecord& rec = record(*data_, id.family);
  if (!valid_parameters(id)) {
    throw InvalidParameters(id.to_string() + " violates " + rec.info.constraints);
  }
  std::vector<std::shared_ptr<const AutomorphismFamily::Variant>> applicable;
  for (const auto& v : rec.automorphisms) {
    for (int sigma : {1, -1}) {
      AutomorphismParams probe;
      probe.sigma = sigma;
      if (v->when.holds(automorphism_bindings(rec.info.params, id.params, probe))) {
        applicable.push_back(v);
        break;
      }
    }
  }
  if (applicable.empty()) throw NoTableEntry(id.to_string());
  return AutomorphismFamily(AlgebraId{rec.info.id, id.params}, std::move(applicable), rec.info.params);
}

std::vector<KnownSubspace> Catalog::generating_subspaces(const AlgebraId& id) const {
  const FamilyRecord& rec = record(*data_, id.family);
  if (!valid_parameters(id)) {
    throw InvalidParameters(id.to_string() + " violates " + rec.info.constraints);
  }
  const Bindings b = bind_params(rec.info, id.params);
  std::vector<KnownSubspace> out;
  for (const auto& spec : rec.subspaces) {
    if (!spec.when.holds(b)) continue;
    KnownSubspace ks;
    ks.algebra = AlgebraId{rec.info.id, id.params};
    for (const auto& v : spec.span) ks.span.push_back(eval_vec(v, b));
    ks.tag = spec.tag;
    ks.provenance = spec.provenance;
    out.push_back(std::move(ks));
  }
  return out;
}

std::optional<KnownSubspace> Catalog::known_generating_subspace(const AlgebraId& id) const {
  auto all = generating_subspaces(id);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

std::optional<std::string> Catalog::no_generating_reason(const AlgebraId& id) const {
  const FamilyRecord& rec = record(*data_, id.family);
  if (!valid_parameters(id)) {
    throw InvalidParameters(id.to_string() + " violates " + rec.info.constraints);
  }
  const Bindings b = bind_params(rec.info, id.params);
  for (const auto& spec : rec.no_subspace) {
    if (spec.when.holds(b)) return spec.provenance;
  }
  return std::nullopt;
}

std::string Catalog::describe(const AlgebraId& id) const {
  const FamilyInfo& info = family(id.family);
  std::string out = info.id;
  if (!info.params.empty()) {
    out += "(";
    for (std::size_t k = 0; k < info.params.size(); ++k) {
      if (k) out += ", ";
      out += info.params[k] + "=" + (k < id.params.size() ? format_param(id.params[k]) : std::string("?"));
    }
    out += ")";
  }
  return out;
}

void Catalog::self_check() const {
  for (const auto& rec : data_->records) {
    const std::string where = data_->origin + ": family " + rec.info.id;
    if (rec.subspaces.empty() && rec.no_subspace.empty()) {
      throw CatalogError(where + ": neither a generating subspace nor an exclusion is recorded");
    }
    for (const auto& sample : rec.info.samples) {
      const AlgebraId id{rec.info.id, sample};
      if (!valid_parameters(id)) throw CatalogError(where + ": sample " + id.to_string() + " violates constraints");
      const StructureConstants alg = instantiate(id);
      const double defect = jacobi_defect(alg);
      if (defect > 1e-12) {
        throw CatalogError(where + ": Jacobi identity fails at " + id.to_string() + " (defect " +
                           format_param(defect) + ")");
      }
      const auto subspaces = generating_subspaces(id);
      const bool excluded = no_generating_reason(id).has_value();
      if (excluded && !subspaces.empty()) {
        throw CatalogError(where + ": " + id.to_string() + " is both excluded and given a subspace");
      }
      if (!excluded && subspaces.empty()) {
        throw CatalogError(where + ": " + id.to_string() + " has no subspace and no exclusion");
      }
      for (const auto& ks : subspaces) {
        bool ok = false;
        try {
          ok = generates(alg, ks.span).generates;
        } catch (const DependentSpan&) {
          ok = false;
        }
        if (!ok) throw CatalogError(where + ": listed subspace does not generate at " + id.to_string());
      }
    }
  }
}

StructureConstants instantiate(const AlgebraId& id) { return Catalog::builtin().instantiate(id); }

AutomorphismFamily automorphism_family(const AlgebraId& id) { return Catalog::builtin().automorphism_family(id); }

std::optional<KnownSubspace> known_generating_subspace(const AlgebraId& id) {
  return Catalog::builtin().known_generating_subspace(id);
}

}  // namespace abnorm
