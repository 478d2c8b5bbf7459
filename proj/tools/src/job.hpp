#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "abnorm/abnormal.hpp"
#include "abnorm/catalog.hpp"
#include "abnorm/errors.hpp"
#include "abnorm/seminorm.hpp"
#include "abnorm/subspace.hpp"

namespace abnorm::cli {

using Json = nlohmann::ordered_json;

/// Malformed config or command line; maps to exit code 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

struct BodySpec {
  enum class Frame { Canonical, Subspace };

  SeminormBody::Kind kind = SeminormBody::Kind::Disk;
  std::vector<Vector2> vertices;
  Vector2 center = Vector2::Zero();
  Matrix2 shape = Matrix2::Identity();
  double radius = 1.0;
  /// Subspace: coordinates against the spanners as given, converted before classification.
  Frame frame = Frame::Canonical;
};

/// Either the catalog's exhibited subspace (optionally by tag) or explicit spanners.
struct SubspaceSpec {
  bool known = false;
  std::string tag;
  std::vector<Vector4> vectors;  // catalog frame, 2 or 3 of them
};

struct JobOptions {
  double tol = kOracleTolerance;
  double horizon = 5.0;
  double dt = 1e-3;
  std::optional<int> s;  // restricts ode output to one direction; default +1
};

/// Direct adjoint-system constants for the ode subcommand.
struct OdeConstants {
  Vector4 c23 = Vector4::Zero();
  double u2 = 1.0;
};

struct JobConfig {
  std::optional<AlgebraId> algebra;
  std::optional<SubspaceSpec> subspace;
  std::optional<BodySpec> body;
  std::optional<Eigen::Matrix3d> metric;  // Gram matrix in the spanners' coordinates (dim 3)
  std::optional<OdeConstants> constants;
  JobOptions options;
  std::string name;
};

/// Throws UsageError for malformed input and UnknownFamily for an unknown algebra.
JobConfig parse_job(const Json& j, const Catalog& catalog);
JobConfig load_job(const std::filesystem::path& path, const Catalog& catalog);

/// Normalized echo; parse_job(to_json(c)) reproduces c.
Json to_json(const JobConfig& c);

/// Explicit spanners for c.subspace. Throws UsageError when "known" has no catalog entry.
std::vector<Vector4> resolve_subspace(const JobConfig& c, const Catalog& catalog);

/// Body in the canonical (e1, e2) frame of basis.
SeminormBody canonical_body(const BodySpec& spec, const CanonicalBasis& basis);

SeminormBody make_body(const BodySpec& spec);

Json vector_json(const Vector4& v);
Json vector_json(const Vector2& v);

}  // namespace abnorm::cli
