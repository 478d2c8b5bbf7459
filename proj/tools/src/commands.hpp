#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace abnorm::cli {

struct Context {
  std::ostream& out;
  std::ostream& err;
  /// Defaults to Catalog::default_path().
  std::optional<std::filesystem::path> catalog_path;
};

/// Runs body, mapping library exceptions to exit codes and printing them to ctx.err.
int guarded(Context& ctx, const std::function<int()>& body);

Catalog load_catalog(const Context& ctx);

int cmd_catalog_list(Context& ctx);
int cmd_catalog_show(Context& ctx, const std::string& id, std::optional<double> alpha, std::optional<double> beta);

struct VerifyOptions {
  std::optional<double> alpha;
  std::optional<double> beta;
  int automorphism_draws = 20;
  int random_planes = 1000;
  std::uint64_t seed = 20240601;
};

/// scope is "all" or a family id. Exit 0 iff every check passes.
int cmd_verify(Context& ctx, const std::string& scope, const VerifyOptions& opts);

struct ClassifyOptions {
  std::filesystem::path config;
  std::optional<std::string> expect;  // "strict" or "nonstrict"
  std::optional<std::filesystem::path> out;
  std::optional<double> tol;
};

int cmd_classify(Context& ctx, const ClassifyOptions& opts);

struct OdeOptions {
  std::filesystem::path config;
  std::optional<std::string> psi0;  // "a,b,c,d"
  std::optional<double> T;
  std::optional<double> dt;
  std::optional<std::filesystem::path> out;
};

int cmd_ode(Context& ctx, const OdeOptions& opts);

struct SweepOptions {
  std::vector<std::filesystem::path> configs;  // each a job or {"jobs": [...]}
  unsigned jobs = 1;
  std::optional<std::filesystem::path> out;
};

int cmd_sweep(Context& ctx, const SweepOptions& opts);

/// Parses "a,b,c,d". Throws UsageError unless there are exactly four finite numbers.
Vector4 parse_covector(const std::string& text);

}  // namespace abnorm::cli
