#include "report.hpp"

#include <cmath>

namespace abnorm::cli {

double clean(double x) { return std::abs(x) < 1e-14 ? 0.0 : x; }

namespace {

Json cv(const Vector4& v) { return Json::array({clean(v[0]), clean(v[1]), clean(v[2]), clean(v[3])}); }

Json algebra_json(const AlgebraId& id, const Catalog& catalog) {
  const FamilyInfo& fam = catalog.family(id.family);
  Json brackets = Json::array();
  for (const BracketRow& r : catalog.brackets(id)) {
    brackets.push_back("[E" + std::to_string(r.i + 1) + ",E" + std::to_string(r.j + 1) + "] = " + format_vector(r.value));
  }
  return {{"id", id.to_string()}, {"name", fam.name}, {"brackets", brackets}};
}

Json basis_json(const CanonicalBasis& b) {
  return {{"e1", cv(b.e1)},
          {"e2", cv(b.e2)},
          {"e3", cv(b.e3)},
          {"e4", cv(b.e4)},
          {"c23", cv(b.c23)},
          {"c14", cv(b.c14)},
          {"c24", cv(b.c24)},
          {"swapped", b.swapped},
          {"shifted", b.shifted},
          {"prop2_defect", clean(check_prop2(b))}};
}

Json direction_json(const DirectionVerdict& d) {
  Json j = {{"s", d.s},
            {"u2", clean(d.u2)},
            {"verdict", to_string(d.verdict)},
            {"reason", to_string(d.reason)},
            {"support_axis", clean(d.support_axis)},
            {"inverse_gauge", clean(d.inverse_gauge)},
            {"pmp_max", d.pmp_max}};
  if (d.witness) {
    j["witness"] = {{"k", clean(d.witness->k)}, {"psi2", clean(d.witness->psi2)}, {"phi4", d.witness->phi4}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json oracle_json(const OracleResult& r, const DirectionVerdict& d) {
  Json j = {{"s", r.s}, {"k_low", clean(r.k_low)}, {"k_high", clean(r.k_high)}, {"found", r.found()}};
  if (const OracleWitness* w = r.witness()) {
    j["witness"] = {{"family", to_string(w->family)},
                    {"k", clean(w->k)},
                    {"A1", clean(w->A1)},
                    {"A2", clean(w->A2)},
                    {"omega", clean(w->omega)},
                    {"phi4", w->phi4},
                    {"horizon", w->horizon},
                    {"grid_points", w->grid_points},
                    {"max_violation", clean(w->max_violation)}};
  } else {
    j["witness"] = nullptr;
  }
  j["oscillation_found"] = r.oscillation.has_value();
  j["agrees_with_criterion"] = r.found() == (d.verdict == Verdict::NonStrict);
  j["notes"] = r.notes;
  return j;
}

}  // namespace

Report build_report(const JobConfig& job, const Catalog& catalog) {
  if (!job.algebra) throw UsageError("config has no algebra");
  if (!job.subspace) throw UsageError("config has no subspace");
  Report out;
  Json& j = out.json;
  j["input"] = to_json(job);
  j["algebra"] = algebra_json(*job.algebra, catalog);

  const StructureConstants alg = catalog.instantiate(*job.algebra);
  const std::vector<Vector4> p = resolve_subspace(job, catalog);
  Json spanners = Json::array();
  for (const auto& v : p) spanners.push_back(cv(v));
  j["subspace"] = {{"spanners", spanners}, {"dim", p.size()}};

  const GenerationResult gen = generates(alg, p);
  out.generates = gen.generates;
  j["generation"] = {{"generates", gen.generates}, {"dims", gen.dims}};
  if (!gen.generates) {
    j["error"] = "subspace does not bracket-generate the algebra";
    return out;
  }

  if (p.size() == 3) {
    const Dim3Report d = classify_dim3(alg, p, job.metric);
    Json dj = {{"exists", d.exists}};
    dj["p1"] = d.direction ? cv(*d.direction) : Json(nullptr);
    dj["verdict"] = d.verdict ? Json(to_string(*d.verdict)) : Json(nullptr);
    dj["metric_nonstrict"] = d.metric_nonstrict ? Json(*d.metric_nonstrict) : Json(nullptr);
    dj["detail"] = d.detail;
    if (d.direction) {
      dj["extremals"] = Json::array({"exp(t * s * (" + format_vector(*d.direction) + ") / F(s p1)), s = +1, -1"});
    }
    j["dim3"] = dj;
    if (!d.verdict) {
      out.verdict = "";
    } else if (*d.verdict == Dim3Verdict::NonStrictForAllMetrics) {
      out.verdict = "nonstrict";
    } else if (*d.verdict == Dim3Verdict::StrictForAllMetrics) {
      out.verdict = "strict";
    } else if (d.metric_nonstrict) {
      out.verdict = *d.metric_nonstrict ? "nonstrict" : "strict";
    } else {
      out.verdict = "metric-dependent";
    }
    j["verdict"] = out.verdict.empty() ? Json(nullptr) : Json(out.verdict);
    return out;
  }

  if (!job.body) throw UsageError("a two-dimensional subspace needs a body");
  const CanonicalBasis basis = canonical_basis(alg, p);
  const SeminormBody body = canonical_body(*job.body, basis);
  j["canonical_basis"] = basis_json(basis);
  j["body"] = {{"canonical", body.describe()}, {"centrally_symmetric", body.centrally_symmetric(1e-12)}};

  Json ext = Json::array();
  for (const ExtremalDescriptor& e : abnormal_extremals(basis, body)) {
    ext.push_back({{"s", e.s}, {"u2", clean(e.u2)}, {"velocity", cv(e.velocity)}, {"label", e.label}});
  }
  j["extremals"] = ext;

  const StrictnessReport rep = classify(basis, body);
  Json dirs = Json::array();
  for (const auto& d : rep.directions) dirs.push_back(direction_json(d));
  j["strictness"] = {{"combined", to_string(rep.combined())}, {"directions", dirs}};

  const Theorem3Summary t3 = theorem3_dispatch(catalog, *job.algebra, p, body);
  Json implied = Json::array();
  for (const auto& v : t3.implied) implied.push_back(v ? Json(to_string(*v)) : Json(nullptr));
  j["dispatch"] = {{"case", t3.case_label},
                   {"implied", implied},
                   {"consistent", t3.consistent},
                   {"tension", t3.tension},
                   {"sl2_type", t3.sl2_type ? Json(to_string(*t3.sl2_type)) : Json(nullptr)},
                   {"note", t3.note}};

  Json oracle = Json::array();
  bool agree = true;
  for (std::size_t i = 0; i < 2; ++i) {
    const OracleResult r = witness_search(basis, body, rep.directions[i].s, job.options.horizon, job.options.tol);
    oracle.push_back(oracle_json(r, rep.directions[i]));
    agree = agree && r.found() == (rep.directions[i].verdict == Verdict::NonStrict);
  }
  j["oracle"] = {{"agrees", agree}, {"directions", oracle}};

  out.verdict = to_string(rep.combined());
  j["verdict"] = out.verdict;
  return out;
}

}  // namespace abnorm::cli
