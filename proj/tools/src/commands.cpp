#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

namespace abnorm::cli {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
}

AlgebraId id_from_flags(const Catalog& catalog, const std::string& family, std::optional<double> alpha,
                        std::optional<double> beta) {
  const FamilyInfo& info = catalog.family(family);
  std::vector<double> params;
  if (alpha) params.push_back(*alpha);
  if (beta) params.push_back(*beta);
  if (params.size() != info.params.size()) {
    throw UsageError(info.id + " takes " + std::to_string(info.params.size()) + " parameter(s)");
  }
  AlgebraId id{info.id, params};
  if (!catalog.valid_parameters(id)) throw UsageError(id.to_string() + " violates " + info.constraints);
  return id;
}

}  // namespace

int guarded(Context& ctx, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CatalogError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitCorrupt;
  } catch (const NotGenerating& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitNotGenerating;
  } catch (const UsageError& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownFamily& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParameters& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidBody& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DependentSpan& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

Catalog load_catalog(const Context& ctx) { return Catalog::load(ctx.catalog_path.value_or(Catalog::default_path())); }

Vector4 parse_covector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad covector entry \"" + item + "\"");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
      throw UsageError("bad covector entry \"" + item + "\"");
    }
    values.push_back(v);
  }
  if (values.size() != 4) throw UsageError("initial covector needs 4 entries, got " + std::to_string(values.size()));
  return {values[0], values[1], values[2], values[3]};
}

// ---------------------------------------------------------------------------------------

int cmd_catalog_list(Context& ctx) {
  const Catalog catalog = load_catalog(ctx);
  for (const FamilyInfo& f : catalog.families()) {
    ctx.out << f.id;
    if (!f.params.empty()) {
      ctx.out << " (";
      for (std::size_t k = 0; k < f.params.size(); ++k) ctx.out << (k ? ", " : "") << f.params[k];
      ctx.out << "; " << f.constraints << ")";
    }
    ctx.out << "  " << f.name << "\n";
  }
  ctx.out << catalog.families().size() << " families\n";
  return kExitOk;
}

int cmd_catalog_show(Context& ctx, const std::string& id_text, std::optional<double> alpha, std::optional<double> beta) {
  const Catalog catalog = load_catalog(ctx);
  const FamilyInfo& f = catalog.family(id_text);
  ctx.out << "family: " << f.id << "\n";
  ctx.out << "name: " << f.name << "\n";
  if (!f.aliases.empty()) {
    ctx.out << "aliases:";
    for (const auto& a : f.aliases) ctx.out << " " << a;
    ctx.out << "\n";
  }
  if (!f.params.empty()) ctx.out << "constraints: " << f.constraints << "\n";
  ctx.out << "decomposable: " << (f.decomposable ? "yes" : "no") << "\n";
  ctx.out << "brackets:\n";
  for (const auto& b : f.bracket_text) ctx.out << "  " << b << "\n";

  std::vector<AlgebraId> ids;
  if (alpha || beta || f.params.empty()) {
    ids.push_back(id_from_flags(catalog, f.id, alpha, beta));
  } else {
    for (const auto& s : f.samples) ids.push_back({f.id, s});
  }
  for (const AlgebraId& id : ids) {
    ctx.out << "instance " << catalog.describe(id) << ":\n";
    for (const BracketRow& r : catalog.brackets(id)) {
      ctx.out << "  [E" << r.i + 1 << ",E" << r.j + 1 << "] = " << format_vector(r.value) << "\n";
    }
    try {
      const AutomorphismFamily fam = catalog.automorphism_family(id);
      ctx.out << "  automorphisms: a1..a" << fam.parameter_count() << (fam.uses_sigma() ? ", sigma = +-1" : "") << "\n";
    } catch (const NoTableEntry&) {
      ctx.out << "  automorphisms: no table entry\n";
    }
    const auto subspaces = catalog.generating_subspaces(id);
    for (const KnownSubspace& k : subspaces) {
      ctx.out << "  generating plane span(" << format_vector(k.span[0]) << ", " << format_vector(k.span[1]) << ")";
      if (!k.tag.empty()) ctx.out << " [" << k.tag << "]";
      ctx.out << "\n";
    }
    if (const auto reason = catalog.no_generating_reason(id)) ctx.out << "  no generating plane: " << *reason << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

Check check_jacobi(const StructureConstants& alg) {
  const double d = jacobi_defect(alg);
  return {"jacobi", d <= 1e-12, "defect " + fmt(d)};
}

Check check_automorphisms(const Catalog& catalog, const AlgebraId& id, const StructureConstants& alg,
                          std::mt19937_64& rng, int draws) {
  Check c{"automorphisms", true, ""};
  std::optional<AutomorphismFamily> fam;
  try {
    fam = catalog.automorphism_family(id);
  } catch (const NoTableEntry&) {
    c.detail = "no table entry";
    return c;
  }
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  double worst = 0.0;
  int used = 0;
  for (int attempt = 0; used < draws && attempt < 50 * draws; ++attempt) {
    AutomorphismParams p;
    for (double& a : p.a) a = coeff(rng);
    p.sigma = fam->uses_sigma() && (rng() & 1U) ? -1 : 1;
    if (std::abs(fam->nonvanishing(p)) < 1e-3) continue;
    worst = std::max(worst, automorphism_defect(alg, (*fam)(p)));
    ++used;
  }
  c.pass = used == draws && worst <= 1e-10;
  c.detail = std::to_string(used) + " draws, max defect " + fmt(worst);
  return c;
}

Check check_frame_identities(const StructureConstants& alg, const std::vector<KnownSubspace>& subspaces) {
  Check c{"frame_identities", true, ""};
  double worst = 0.0;
  for (const KnownSubspace& k : subspaces) {
    try {
      const CanonicalBasis b = canonical_basis(alg, k.span);
      worst = std::max(worst, abnorm::check_prop2(b));
      const bool c4_zero = std::abs(b.c23[3]) <= 1e-9;
      const bool c2_ok = c23_is_zero(b.c23, 0) || std::abs(b.c23[1]) <= 1e-9;
      if (!c4_zero || !c2_ok) {
        c.pass = false;
        c.detail += "non-canonical constants for " + format_vector(k.span[0]) + ", " + format_vector(k.span[1]) + "; ";
      }
    } catch (const Error& e) {
      c.pass = false;
      c.detail += std::string(e.what()) + "; ";
    }
  }
  c.pass = c.pass && worst <= 1e-9;
  c.detail += std::to_string(subspaces.size()) + " plane(s), max defect " + fmt(worst);
  return c;
}

Check check_generation(const Catalog& catalog, const AlgebraId& id, const StructureConstants& alg,
                       const std::vector<KnownSubspace>& subspaces, std::mt19937_64& rng, int planes) {
  Check c{"generation", true, ""};
  if (const auto reason = catalog.no_generating_reason(id)) {
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    std::uniform_int_distribution<int> small(-2, 2);
    int tested = 0, found = 0;
    while (tested < planes) {
      std::array<Vector4, 2> p;
      for (auto& v : p) {
        for (int k = 0; k < kDim; ++k) v[k] = tested % 2 == 0 ? real(rng) : small(rng);
      }
      try {
        if (generates(alg, p)) ++found;
        ++tested;
      } catch (const DependentSpan&) {
      }
    }
    c.pass = found == 0;
    c.detail = "no generating plane among " + std::to_string(tested) + " random planes (" + *reason + ")";
    if (found) c.detail = std::to_string(found) + " of " + std::to_string(tested) + " random planes generate";
    return c;
  }
  int ok = 0;
  for (const KnownSubspace& k : subspaces) ok += generates(alg, k.span).generates ? 1 : 0;
  c.pass = !subspaces.empty() && ok == static_cast<int>(subspaces.size());
  c.detail = std::to_string(ok) + "/" + std::to_string(subspaces.size()) + " exhibited planes generate";
  return c;
}

}  // namespace

int cmd_verify(Context& ctx, const std::string& scope, const VerifyOptions& opts) {
  const Catalog catalog = load_catalog(ctx);
  std::vector<AlgebraId> ids;
  if (scope == "all") {
    if (opts.alpha || opts.beta) throw UsageError("--alpha/--beta need a family scope");
    for (const FamilyInfo& f : catalog.families()) {
      if (f.params.empty()) ids.push_back({f.id, {}});
      for (const auto& s : f.samples) {
        if (!f.params.empty()) ids.push_back({f.id, s});
      }
    }
  } else {
    const FamilyInfo& f = catalog.family(scope);
    if (opts.alpha || opts.beta || f.params.empty()) {
      ids.push_back(id_from_flags(catalog, f.id, opts.alpha, opts.beta));
    } else {
      for (const auto& s : f.samples) ids.push_back({f.id, s});
    }
  }

  std::mt19937_64 rng(opts.seed);
  int failures = 0;
  for (const AlgebraId& id : ids) {
    const StructureConstants alg = catalog.instantiate(id);
    const auto subspaces = catalog.generating_subspaces(id);
    const std::array<Check, 4> checks = {
        check_jacobi(alg),
        check_automorphisms(catalog, id, alg, rng, opts.automorphism_draws),
        check_frame_identities(alg, subspaces),
        check_generation(catalog, id, alg, subspaces, rng, opts.random_planes),
    };
    for (const Check& c : checks) {
      ctx.out << (c.pass ? "PASS " : "FAIL ") << id.to_string() << " " << c.name << ": " << c.detail << "\n";
      failures += c.pass ? 0 : 1;
    }
  }
  ctx.out << "verify: " << ids.size() << " instance(s), " << failures << " failure(s)\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------------------

int cmd_classify(Context& ctx, const ClassifyOptions& opts) {
  if (opts.expect && *opts.expect != "strict" && *opts.expect != "nonstrict") {
    throw UsageError("--expect must be strict or nonstrict");
  }
  const Catalog catalog = load_catalog(ctx);
  JobConfig job = load_job(opts.config, catalog);
  if (opts.tol) {
    if (!(*opts.tol > 0.0)) throw UsageError("--tol must be positive");
    job.options.tol = *opts.tol;
  }
  const Report rep = build_report(job, catalog);
  const std::string text = rep.json.dump(2) + "\n";
  if (opts.out) {
    write_text(*opts.out, text);
  } else {
    ctx.out << text;
  }
  if (!rep.generates) {
    ctx.err << "error: subspace does not bracket-generate the algebra\n";
    return kExitNotGenerating;
  }
  if (opts.expect && rep.verdict != *opts.expect) {
    ctx.err << "expected " << *opts.expect << ", got " << (rep.verdict.empty() ? "no verdict" : rep.verdict) << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------------------

int cmd_ode(Context& ctx, const OdeOptions& opts) {
  const Vector4 psi0_override = opts.psi0 ? parse_covector(*opts.psi0) : Vector4::Zero();
  const Catalog catalog = load_catalog(ctx);
  const JobConfig job = load_job(opts.config, catalog);

  Vector4 c23;
  double u2 = 1.0;
  if (job.constants) {
    c23 = job.constants->c23;
    u2 = job.constants->u2;
  } else {
    if (!job.algebra || !job.subspace || !job.body) {
      throw UsageError("ode needs constants, or algebra, subspace and body");
    }
    const std::vector<Vector4> p = resolve_subspace(job, catalog);
    if (p.size() != 2) throw UsageError("ode needs a two-dimensional subspace");
    const CanonicalBasis basis = canonical_basis(catalog.instantiate(*job.algebra), p);
    const SeminormBody body = canonical_body(*job.body, basis);
    c23 = basis.c23;
    const int s = job.options.s.value_or(1);
    u2 = s / body.gauge(Vector2(0.0, s));
  }
  const Vector4 psi0 = opts.psi0 ? psi0_override : Vector4(0.0, 1.0 / u2, 0.0, 1.0);
  const double T = opts.T.value_or(job.options.horizon);
  const double dt = opts.dt.value_or(job.options.dt);
  if (!(T > 0.0) || !(dt > 0.0)) throw UsageError("-T and --dt must be positive");

  const Trajectory traj = integrate(c23, u2, AdjointState{psi0, 0.0}, T, dt);
  std::ostringstream csv;
  csv << "t,psi1,psi2,psi3,psi4\n";
  char line[160];
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const Vector4& y = traj.rk4[i];
    std::snprintf(line, sizeof line, "%.10g,%.15g,%.15g,%.15g,%.15g\n", traj.t[i], y[0], y[1], y[2], y[3]);
    csv << line;
  }

  std::ostringstream stats;
  stats << "c23 = (" << c23[0] << ", " << c23[1] << ", " << c23[2] << ", " << c23[3] << "), u2 = " << u2 << "\n";
  stats << "steps: " << traj.t.size() - 1 << "\n";
  stats << "max deviation vs matrix exponential: " << fmt(traj.max_abs_deviation) << " (relative "
        << fmt(traj.max_rel_deviation) << ")\n";
  if (std::abs(c23[3]) <= 1e-12) {
    const ClosedFormPsi1 cf = fit_closed_form(c23, u2, psi0);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) worst = std::max(worst, std::abs(traj.rk4[i][0] - cf.value(traj.t[i])));
    stats << "psi1 closed form (" << to_string(cf.kind) << "): max deviation " << fmt(worst) << "\n";
  }

  if (opts.out) {
    write_text(*opts.out, csv.str());
    ctx.out << stats.str();
  } else {
    ctx.out << csv.str();
    ctx.err << stats.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------------------

namespace {

struct SweepJob {
  std::string origin;
  Json config;
};

std::vector<SweepJob> expand_sweep_file(const std::filesystem::path& path) {
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
  std::vector<SweepJob> out;
  if (!j.is_object() || !j.contains("jobs")) {
    out.push_back({path.string(), j});
    return out;
  }
  if (!j.at("jobs").is_array()) throw UsageError(path.string() + ": jobs must be an array");
  std::size_t index = 0;
  for (const auto& item : j.at("jobs")) {
    if (item.is_string()) {
      const std::filesystem::path sub = path.parent_path() / item.get<std::string>();
      for (auto& nested : expand_sweep_file(sub)) out.push_back(std::move(nested));
    } else {
      out.push_back({path.string() + "#" + std::to_string(index), item});
    }
    ++index;
  }
  return out;
}

}  // namespace

int cmd_sweep(Context& ctx, const SweepOptions& opts) {
  if (opts.configs.empty()) throw UsageError("sweep needs at least one --config");
  const Catalog catalog = load_catalog(ctx);
  std::vector<SweepJob> jobs;
  for (const auto& path : opts.configs) {
    for (auto& job : expand_sweep_file(path)) jobs.push_back(std::move(job));
  }

  std::vector<Json> results(jobs.size());
  std::vector<int> codes(jobs.size(), kExitOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      std::ostringstream err;
      std::ostringstream sink;
      Context local{sink, err, ctx.catalog_path};
      Json entry = {{"origin", jobs[i].origin}};
      codes[i] = guarded(local, [&] {
        const JobConfig job = parse_job(jobs[i].config, catalog);
        const Report rep = build_report(job, catalog);
        entry["name"] = job.name;
        entry["verdict"] = rep.verdict.empty() ? Json(nullptr) : Json(rep.verdict);
        entry["report"] = rep.json;
        return rep.generates ? kExitOk : kExitNotGenerating;
      });
      entry["exit"] = codes[i];
      if (!err.str().empty()) entry["error"] = err.str();
      results[i] = std::move(entry);
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(opts.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json all = Json::array();
  for (auto& r : results) all.push_back(std::move(r));
  const std::string text = all.dump(2) + "\n";
  if (opts.out) {
    write_text(*opts.out, text);
  } else {
    ctx.out << text;
  }
  const bool ok = std::all_of(codes.begin(), codes.end(), [](int c) { return c == kExitOk; });
  return ok ? kExitOk : kExitFailure;
}

}  // namespace abnorm::cli
