#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "abnorm/catalog.hpp"
#include "abnorm/errors.hpp"
#include "abnorm/subspace.hpp"
#include "oracles.hpp"

using namespace abnorm;
using oracle::e;

namespace {

// Commutator tables transcribed by hand; [E3,E1] = v is entered as (1,3) -> -v.
oracle::Table hand_table(const std::string& f, double a, double b) {
  if (f == "g3.1+g1") return {{{2, 3}, e(1)}};
  if (f == "g3.2+g1") return {{{2, 3}, e(1) - e(2)}, {{1, 3}, -e(1)}};
  if (f == "g3.3+g1") return {{{2, 3}, -e(2)}, {{1, 3}, -e(1)}};
  if (f == "g3.4+g1") return {{{2, 3}, e(1) - a * e(2)}, {{1, 3}, -(a * e(1) - e(2))}};
  if (f == "g3.5+g1") return {{{2, 3}, e(1) - a * e(2)}, {{1, 3}, -(a * e(1) + e(2))}};
  if (f == "g3.6+g1") return {{{2, 3}, e(1)}, {{1, 3}, -e(2)}, {{1, 2}, -e(3)}};
  if (f == "g3.7+g1") return {{{2, 3}, e(1)}, {{1, 3}, -e(2)}, {{1, 2}, e(3)}};
  if (f == "g4.1") return {{{2, 4}, e(1)}, {{3, 4}, e(2)}};
  if (f == "g4.2") return {{{1, 4}, a * e(1)}, {{2, 4}, e(2)}, {{3, 4}, e(2) + e(3)}};
  if (f == "g4.3") return {{{1, 4}, e(1)}, {{3, 4}, e(2)}};
  if (f == "g4.4") return {{{1, 4}, e(1)}, {{2, 4}, e(1) + e(2)}, {{3, 4}, e(2) + e(3)}};
  if (f == "g4.5") return {{{1, 4}, e(1)}, {{2, 4}, b * e(2)}, {{3, 4}, a * e(3)}};
  if (f == "g4.6") return {{{1, 4}, a * e(1)}, {{2, 4}, b * e(2) - e(3)}, {{3, 4}, e(2) + b * e(3)}};
  if (f == "g4.7") return {{{1, 4}, 2 * e(1)}, {{2, 4}, e(2)}, {{3, 4}, e(2) + e(3)}, {{2, 3}, e(1)}};
  if (f == "g4.8") return {{{1, 4}, (1 + a) * e(1)}, {{2, 4}, e(2)}, {{3, 4}, a * e(3)}, {{2, 3}, e(1)}};
  if (f == "g4.9") return {{{1, 4}, 2 * a * e(1)}, {{2, 4}, a * e(2) - e(3)}, {{3, 4}, e(2) + a * e(3)}, {{2, 3}, e(1)}};
  if (f == "g4.10") return {{{1, 3}, e(1)}, {{2, 3}, e(2)}, {{1, 4}, -e(2)}, {{2, 4}, e(1)}};
  ADD_FAILURE() << "no hand table for " << f;
  return {};
}

// Parameter ranges transcribed by hand.
bool hand_valid(const std::string& f, double a, double b) {
  if (f == "g3.4+g1") return a == 0.0 || (a > 0.0 && a != 1.0);
  if (f == "g3.5+g1" || f == "g4.9") return a >= 0.0;
  if (f == "g4.2") return a != 0.0;
  if (f == "g4.5") return (-1 < a && a <= b && b <= 1 && a * b != 0) || (a == -1 && 0 < b && b <= 1);
  if (f == "g4.6") return a > 0.0;
  if (f == "g4.8") return -1 <= a && a <= 1;
  return true;
}

std::string builtin_text() {
  std::ifstream in(Catalog::default_path());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Catalog, HasSeventeenFamilies) {
  EXPECT_EQ(Catalog::builtin().families().size(), 17u);
}

TEST(Catalog, BracketsMatchHandTranscription) {
  const Catalog& cat = Catalog::builtin();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const FamilyInfo& f : cat.families()) {
    std::vector<std::vector<double>> draws = f.samples;
    if (f.params.empty()) draws.push_back({});
    while (draws.size() < 40 && !f.params.empty()) {
      std::vector<double> p;
      for (std::size_t k = 0; k < f.params.size(); ++k) p.push_back(u(rng));
      if (cat.valid_parameters({f.id, p})) draws.push_back(p);
    }
    for (const auto& p : draws) {
      const double a = p.size() > 0 ? p[0] : 0.0, b = p.size() > 1 ? p[1] : 0.0;
      const oracle::Table t = hand_table(f.id, a, b);
      const StructureConstants alg = cat.instantiate({f.id, p});
      for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
          const Vector4 want = oracle::bracket(t, e(i), e(j));
          EXPECT_LE((alg.basis_bracket(i - 1, j - 1) - want).cwiseAbs().maxCoeff(), 1e-14)
              << f.id << " [E" << i << ",E" << j << "] at a=" << a << " b=" << b;
        }
      }
    }
  }
}

TEST(Catalog, ParameterRangesMatchHandTranscription) {
  const Catalog& cat = Catalog::builtin();
  const std::vector<double> grid = {-2, -1, -0.5, 0, 0.5, 1, 1.5};
  for (const FamilyInfo& f : cat.families()) {
    if (f.params.empty()) continue;
    for (double a : grid) {
      if (f.params.size() == 1) {
        EXPECT_EQ(cat.valid_parameters({f.id, {a}}), hand_valid(f.id, a, 0.0)) << f.id << " " << a;
        continue;
      }
      for (double b : grid) {
        EXPECT_EQ(cat.valid_parameters({f.id, {a, b}}), hand_valid(f.id, a, b)) << f.id << " " << a << "," << b;
      }
    }
  }
}

TEST(Catalog, ShowsG47Row) {
  const FamilyInfo& f = Catalog::builtin().family("g4.7");
  EXPECT_NE(std::find(f.bracket_text.begin(), f.bracket_text.end(), "[E2,E3] = E1"), f.bracket_text.end());
}

TEST(Catalog, AliasesAndUnknownIds) {
  const Catalog& cat = Catalog::builtin();
  EXPECT_EQ(cat.family("eng").id, "g4.1");
  EXPECT_EQ(cat.family("g410").id, "g4.10");
  EXPECT_THROW(cat.family("g9.9"), UnknownFamily);
  EXPECT_THROW(cat.instantiate({"g4.5", {0.5}}), InvalidParameters);
  EXPECT_THROW(cat.instantiate({"g4.8", {2.0}}), InvalidParameters);
  EXPECT_EQ((AlgebraId{"g4.5", {0.5, 1}}).to_string(), "g4.5(0.5,1)");
}

TEST(Catalog, SamplesIncludeBoundaries) {
  const Catalog& cat = Catalog::builtin();
  auto has = [&](const std::string& f, std::vector<double> p) {
    const auto& s = cat.family(f).samples;
    return std::find(s.begin(), s.end(), p) != s.end();
  };
  EXPECT_TRUE(has("g4.8", {-1}));
  EXPECT_TRUE(has("g4.8", {0}));
  EXPECT_TRUE(has("g4.8", {1}));
  EXPECT_TRUE(has("g4.5", {-1, 1}));
  EXPECT_TRUE(has("g4.9", {0}));
  EXPECT_TRUE(has("g4.2", {1}));
}

TEST(Catalog, ExclusionsAndExhibitedPlanes) {
  const Catalog& cat = Catalog::builtin();
  const std::vector<AlgebraId> excluded = {
      {"g3.1+g1", {}}, {"g3.3+g1", {}}, {"g4.2", {1}}, {"g4.5", {0.5, 1}}, {"g4.5", {-0.5, -0.5}}, {"g4.8", {1}}};
  for (const auto& id : excluded) {
    EXPECT_TRUE(cat.no_generating_reason(id).has_value()) << id.to_string();
    EXPECT_FALSE(cat.known_generating_subspace(id).has_value()) << id.to_string();
  }
  const std::vector<AlgebraId> exhibited = {
      {"g3.2+g1", {}}, {"g4.2", {2}}, {"g4.5", {-0.5, 0.5}}, {"g4.8", {0}}, {"g4.10", {}}, {"g3.6+g1", {}}};
  for (const auto& id : exhibited) {
    const auto k = cat.known_generating_subspace(id);
    ASSERT_TRUE(k.has_value()) << id.to_string();
    EXPECT_TRUE(generates(cat.instantiate(id), k->span).generates) << id.to_string();
  }
  std::vector<std::string> tags;
  for (const auto& k : cat.generating_subspaces({"g3.6+g1", {}})) tags.push_back(k.tag);
  EXPECT_EQ(tags, (std::vector<std::string>{"TypeI", "TypeIIa", "TypeIIb", "TypeIIc"}));
}

TEST(Catalog, AutomorphismTables) {
  const Catalog& cat = Catalog::builtin();
  EXPECT_THROW(cat.automorphism_family({"g4.2", {1}}), NoTableEntry);
  EXPECT_THROW(cat.automorphism_family({"g4.5", {0.5, 1}}), NoTableEntry);
  EXPECT_THROW(cat.automorphism_family({"g3.7+g1", {}}), NoTableEntry);

  const AutomorphismFamily g47 = cat.automorphism_family({"g4.7", {}});
  AutomorphismParams p;
  p.a = {1.3, -0.7, 0.4, 0.9, -1.1, 0.0, 0.0};
  EXPECT_LE(automorphism_defect(cat.instantiate({"g4.7", {}}), g47(p)), 1e-12);
  p.a = {};
  EXPECT_THROW(g47(p), InvalidParameters);

  const AutomorphismFamily g410 = cat.automorphism_family({"g4.10", {}});
  EXPECT_TRUE(g410.uses_sigma());
  for (int sigma : {1, -1}) {
    p.a = {0.8, -1.4, 0.3, 2.0, 0, 0, 0};
    p.sigma = sigma;
    EXPECT_LE(automorphism_defect(cat.instantiate({"g4.10", {}}), g410(p)), 1e-12);
  }
}

TEST(Catalog, CorruptInputIsRejected) {
  EXPECT_THROW(Catalog::parse("{\"format\": \"abnorm-catalog\", \"families\": [", "t"), CatalogError);
  EXPECT_THROW(Catalog::load("/nonexistent/catalog.json"), CatalogError);

  const auto base = nlohmann::json::parse(builtin_text());
  auto mutate = [&](const std::function<void(nlohmann::json&)>& f) {
    nlohmann::json j = base;
    f(j);
    return j.dump();
  };
  auto family = [](nlohmann::json& j, const std::string& id) -> nlohmann::json& {
    for (auto& f : j["families"]) {
      if (f["family"] == id) return f;
    }
    throw std::runtime_error("missing " + id);
  };
  EXPECT_NO_THROW(Catalog::parse(base.dump()));
  // Adding [E1,E2] = E3 to the Engel table breaks the Jacobi identity on (E1, E2, E4).
  EXPECT_THROW(Catalog::parse(mutate([&](auto& j) {
                 family(j, "g4.1")["brackets"].push_back(nlohmann::json::array({1, 2, {"0", "0", "1", "0"}}));
               })),
               CatalogError);
  // A listed plane that is a subalgebra does not generate.
  EXPECT_THROW(Catalog::parse(mutate([&](auto& j) {
                 family(j, "g4.7")["generating_subspaces"][0]["span"] =
                     nlohmann::json::array({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}});
               })),
               CatalogError);
  EXPECT_THROW(Catalog::parse(mutate([&](auto& j) { family(j, "g4.1")["brackets"][0][0] = 7; })), CatalogError);
}
