#include "job.hpp"

#include <fstream>
#include <sstream>

#include <Eigen/LU>

namespace abnorm::cli {

namespace {

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw UsageError(what + " must be a number");
  return j.get<double>();
}

template <int N>
Eigen::Matrix<double, N, 1> fixed_vector(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != N) throw UsageError(what + " must be an array of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = number(j[static_cast<std::size_t>(i)], what);
  return v;
}

template <int N>
Eigen::Matrix<double, N, N> fixed_matrix(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != N) throw UsageError(what + " must be a " + std::to_string(N) + "x" + std::to_string(N) + " array");
  Eigen::Matrix<double, N, N> m;
  for (int i = 0; i < N; ++i) m.row(i) = fixed_vector<N>(j[static_cast<std::size_t>(i)], what).transpose();
  return m;
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw UsageError("unknown key \"" + key + "\" in " + where);
  }
}

BodySpec parse_body(const Json& j) {
  if (!j.is_object()) throw UsageError("body must be an object");
  reject_unknown_keys(j, {"type", "vertices", "center", "shape", "radius", "frame"}, "body");
  BodySpec b;
  const std::string type = j.value("type", "");
  if (j.contains("frame")) {
    const std::string frame = j.at("frame").get<std::string>();
    if (frame == "canonical") {
      b.frame = BodySpec::Frame::Canonical;
    } else if (frame == "subspace") {
      b.frame = BodySpec::Frame::Subspace;
    } else {
      throw UsageError("body.frame must be \"canonical\" or \"subspace\"");
    }
  }
  if (type == "polygon") {
    b.kind = SeminormBody::Kind::Polygon;
    if (!j.contains("vertices") || !j.at("vertices").is_array()) throw UsageError("polygon needs vertices");
    for (const auto& v : j.at("vertices")) b.vertices.push_back(fixed_vector<2>(v, "polygon vertex"));
  } else if (type == "ellipse") {
    b.kind = SeminormBody::Kind::Ellipse;
    b.center = j.contains("center") ? fixed_vector<2>(j.at("center"), "body.center") : Vector2::Zero();
    if (!j.contains("shape")) throw UsageError("ellipse needs shape");
    b.shape = fixed_matrix<2>(j.at("shape"), "body.shape");
  } else if (type == "disk") {
    b.kind = SeminormBody::Kind::Disk;
    b.center = j.contains("center") ? fixed_vector<2>(j.at("center"), "body.center") : Vector2::Zero();
    b.radius = j.contains("radius") ? number(j.at("radius"), "body.radius") : 1.0;
  } else {
    throw UsageError("body.type must be polygon, ellipse or disk");
  }
  return b;
}

SubspaceSpec parse_subspace(const Json& j) {
  SubspaceSpec s;
  if (j.is_string()) {
    if (j.get<std::string>() != "known") throw UsageError("subspace string must be \"known\"");
    s.known = true;
  } else if (j.is_object()) {
    reject_unknown_keys(j, {"known"}, "subspace");
    if (!j.contains("known") || !j.at("known").is_string()) throw UsageError("subspace.known must be a tag string");
    s.known = true;
    s.tag = j.at("known").get<std::string>();
  } else if (j.is_array()) {
    if (j.size() != 2 && j.size() != 3) throw UsageError("subspace needs 2 or 3 vectors");
    for (const auto& v : j) s.vectors.push_back(fixed_vector<4>(v, "subspace vector"));
  } else {
    throw UsageError("subspace must be \"known\", {\"known\": tag} or a list of vectors");
  }
  return s;
}

}  // namespace

Json vector_json(const Vector4& v) { return Json::array({v[0], v[1], v[2], v[3]}); }
Json vector_json(const Vector2& v) { return Json::array({v[0], v[1]}); }

JobConfig parse_job(const Json& j, const Catalog& catalog) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  reject_unknown_keys(j, {"name", "algebra", "subspace", "body", "metric", "constants", "options"}, "config");
  JobConfig c;
  try {
    c.name = j.value("name", "");
    if (j.contains("algebra")) {
      const Json& a = j.at("algebra");
      if (!a.is_object() || !a.contains("family")) throw UsageError("algebra needs a family");
      reject_unknown_keys(a, {"family", "params"}, "algebra");
      std::vector<double> params;
      if (a.contains("params")) {
        if (!a.at("params").is_array()) throw UsageError("algebra.params must be an array");
        for (const auto& p : a.at("params")) params.push_back(number(p, "algebra parameter"));
      }
      AlgebraId id = catalog.make_id(a.at("family").get<std::string>(), std::move(params));
      if (!catalog.valid_parameters(id)) {
        throw UsageError("parameters " + id.to_string() + " violate " + catalog.family(id.family).constraints);
      }
      c.algebra = std::move(id);
    }
    if (j.contains("subspace")) c.subspace = parse_subspace(j.at("subspace"));
    if (j.contains("body")) c.body = parse_body(j.at("body"));
    if (j.contains("metric")) c.metric = fixed_matrix<3>(j.at("metric"), "metric");
    if (j.contains("constants")) {
      const Json& k = j.at("constants");
      if (!k.is_object()) throw UsageError("constants must be an object");
      reject_unknown_keys(k, {"c23", "u2"}, "constants");
      OdeConstants oc;
      if (!k.contains("c23")) throw UsageError("constants needs c23");
      oc.c23 = fixed_vector<4>(k.at("c23"), "constants.c23");
      if (k.contains("u2")) oc.u2 = number(k.at("u2"), "constants.u2");
      c.constants = oc;
    }
    if (j.contains("options")) {
      const Json& o = j.at("options");
      if (!o.is_object()) throw UsageError("options must be an object");
      reject_unknown_keys(o, {"tol", "horizon", "dt", "s"}, "options");
      if (o.contains("tol")) c.options.tol = number(o.at("tol"), "options.tol");
      if (o.contains("horizon")) c.options.horizon = number(o.at("horizon"), "options.horizon");
      if (o.contains("dt")) c.options.dt = number(o.at("dt"), "options.dt");
      if (o.contains("s")) {
        const double s = number(o.at("s"), "options.s");
        if (s != 1.0 && s != -1.0) throw UsageError("options.s must be 1 or -1");
        c.options.s = static_cast<int>(s);
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!(c.options.tol > 0.0) || !(c.options.horizon > 0.0) || !(c.options.dt > 0.0)) {
    throw UsageError("options.tol, options.horizon and options.dt must be positive");
  }
  if (c.subspace && !c.algebra) throw UsageError("subspace given without algebra");
  return c;
}

JobConfig load_job(const std::filesystem::path& path, const Catalog& catalog) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  return parse_job(j, catalog);
}

Json to_json(const JobConfig& c) {
  Json j = Json::object();
  if (!c.name.empty()) j["name"] = c.name;
  if (c.algebra) j["algebra"] = {{"family", c.algebra->family}, {"params", c.algebra->params}};
  if (c.subspace) {
    if (c.subspace->known) {
      j["subspace"] = c.subspace->tag.empty() ? Json("known") : Json{{"known", c.subspace->tag}};
    } else {
      Json vs = Json::array();
      for (const auto& v : c.subspace->vectors) vs.push_back(vector_json(v));
      j["subspace"] = vs;
    }
  }
  if (c.body) {
    const BodySpec& b = *c.body;
    Json body = Json::object();
    switch (b.kind) {
      case SeminormBody::Kind::Polygon: {
        body["type"] = "polygon";
        Json vs = Json::array();
        for (const auto& v : b.vertices) vs.push_back(vector_json(v));
        body["vertices"] = vs;
        break;
      }
      case SeminormBody::Kind::Ellipse:
        body["type"] = "ellipse";
        body["center"] = vector_json(b.center);
        body["shape"] = Json::array({Json::array({b.shape(0, 0), b.shape(0, 1)}), Json::array({b.shape(1, 0), b.shape(1, 1)})});
        break;
      case SeminormBody::Kind::Disk:
        body["type"] = "disk";
        body["center"] = vector_json(b.center);
        body["radius"] = b.radius;
        break;
    }
    body["frame"] = b.frame == BodySpec::Frame::Canonical ? "canonical" : "subspace";
    j["body"] = body;
  }
  if (c.metric) {
    Json m = Json::array();
    for (int i = 0; i < 3; ++i) m.push_back(Json::array({(*c.metric)(i, 0), (*c.metric)(i, 1), (*c.metric)(i, 2)}));
    j["metric"] = m;
  }
  if (c.constants) j["constants"] = {{"c23", vector_json(c.constants->c23)}, {"u2", c.constants->u2}};
  Json o = {{"tol", c.options.tol}, {"horizon", c.options.horizon}, {"dt", c.options.dt}};
  if (c.options.s) o["s"] = *c.options.s;
  j["options"] = o;
  return j;
}

std::vector<Vector4> resolve_subspace(const JobConfig& c, const Catalog& catalog) {
  if (!c.subspace) throw UsageError("config has no subspace");
  if (!c.subspace->known) return c.subspace->vectors;
  for (const KnownSubspace& k : catalog.generating_subspaces(*c.algebra)) {
    if (c.subspace->tag.empty() || k.tag == c.subspace->tag) return k.span;
  }
  std::string msg = "no exhibited subspace for " + c.algebra->to_string();
  if (!c.subspace->tag.empty()) msg += " with tag " + c.subspace->tag;
  throw UsageError(msg);
}

SeminormBody make_body(const BodySpec& spec) {
  switch (spec.kind) {
    case SeminormBody::Kind::Polygon:
      return SeminormBody::polygon(spec.vertices);
    case SeminormBody::Kind::Ellipse:
      return SeminormBody::ellipse(spec.center, spec.shape);
    case SeminormBody::Kind::Disk:
      break;
  }
  return SeminormBody::disk(spec.center, spec.radius);
}

SeminormBody canonical_body(const BodySpec& spec, const CanonicalBasis& basis) {
  const SeminormBody b = make_body(spec);
  if (spec.frame == BodySpec::Frame::Canonical) return b;
  // v = x1 f1 + x2 f2 = y1 e1 + y2 e2 with x = in_spanners y.
  return b.transformed(basis.in_spanners.inverse());
}

}  // namespace abnorm::cli
