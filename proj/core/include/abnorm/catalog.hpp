#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abnorm/lie_core.hpp"

namespace abnorm {

/// A catalog family plus its parameter values, in the order the family declares them.
struct AlgebraId {
  std::string family;
  std::vector<double> params;

  /// "g4.5(0.5,1)"; parameterless families print bare.
  std::string to_string() const;
};

/// A two-dimensional subspace exhibited for a family, in catalog coordinates.
struct KnownSubspace {
  AlgebraId algebra;
  std::vector<Vector4> span;
  std::string tag;  // empty, or a typing label such as "TypeIIa"
  std::string provenance;
};

struct BracketRow {
  int i;  // zero-based
  int j;
  Vector4 value;
};

struct FamilyInfo {
  std::string id;
  std::vector<std::string> aliases;
  std::string name;
  std::vector<std::string> params;
  std::string constraints;
  bool decomposable = false;
  std::string simple_factor;  // "sl2", "so3" or empty
  std::vector<std::vector<double>> samples;
  bool has_automorphisms = false;
  /// Generic rows as written in the data file, e.g. "[E1,E4] = alpha*E1 + E2".
  std::vector<std::string> bracket_text;
};

/// Parametrized automorphism matrices for one algebra instance.
class AutomorphismFamily {
 public:
  struct Variant;

  AutomorphismFamily(AlgebraId id, std::vector<std::shared_ptr<const Variant>> variants,
                     std::vector<std::string> param_names);

  /// Throws InvalidParameters when the table's nonvanishing condition fails or no row
  /// applies to the given sigma.
  AutomorphismMatrix operator()(const AutomorphismParams& p) const;

  /// Nonvanishing-condition value (e.g. a1*a2) for p; zero means p is excluded.
  double nonvanishing(const AutomorphismParams& p) const;
  bool uses_sigma() const;
  /// Highest a_i index referenced by any applicable row (1..7).
  int parameter_count() const;
  const AlgebraId& algebra() const { return id_; }

 private:
  const Variant& select(int sigma) const;

  AlgebraId id_;
  std::vector<std::shared_ptr<const Variant>> variants_;
  std::vector<std::string> param_names_;
};

class Catalog {
 public:
  /// Throws CatalogError when the file is unreadable, malformed, or fails its load checks:
  /// Jacobi identity at every listed sample and generation of every listed subspace.
  static Catalog load(const std::filesystem::path& path);
  static Catalog parse(std::string_view json_text, const std::string& origin = "<memory>");

  /// ABNORM_CATALOG if set, else the source-tree copy, else the installed copy.
  static std::filesystem::path default_path();
  /// Loaded once from default_path().
  static const Catalog& builtin();

  const std::vector<FamilyInfo>& families() const;
  /// Accepts canonical ids ("g4.10") and aliases ("g410"). Throws UnknownFamily.
  const FamilyInfo& family(std::string_view id) const;
  AlgebraId make_id(std::string_view family, std::vector<double> params = {}) const;

  bool valid_parameters(const AlgebraId& id) const;
  std::vector<BracketRow> brackets(const AlgebraId& id) const;
  StructureConstants instantiate(const AlgebraId& id) const;

  /// Throws NoTableEntry when the tables give no automorphisms for id.
  AutomorphismFamily automorphism_family(const AlgebraId& id) const;

  /// First exhibited subspace applicable to id, or none when the family has none.
  std::optional<KnownSubspace> known_generating_subspace(const AlgebraId& id) const;
  std::vector<KnownSubspace> generating_subspaces(const AlgebraId& id) const;
  /// Reason text when the catalog records that id has no generating 2D subspace.
  std::optional<std::string> no_generating_reason(const AlgebraId& id) const;

  std::string describe(const AlgebraId& id) const;

  struct Data;

 private:
  explicit Catalog(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  void self_check() const;

  std::shared_ptr<const Data> data_;
};

StructureConstants instantiate(const AlgebraId& id);
AutomorphismFamily automorphism_family(const AlgebraId& id);
std::optional<KnownSubspace> known_generating_subspace(const AlgebraId& id);

}  // namespace abnorm
