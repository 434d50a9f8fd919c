#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dws.hpp"

namespace annulus {

// left = coeff * right, both corner names, left < right.
struct DeltaConstraint {
  std::string left;
  int coeff = 1;
  std::string right;
  bool operator==(const DeltaConstraint& o) const {
    return left == o.left && coeff == o.coeff && right == o.right;
  }
  bool operator<(const DeltaConstraint& o) const {
    if (left != o.left) return left < o.left;
    if (right != o.right) return right < o.right;
    return coeff < o.coeff;
  }
};

struct FusionCase {
  std::vector<Corner> corners;
  std::vector<DecompositionTerm> terms;  // defects carry the corner values
  bool complete = true;
  bool operator==(const FusionCase& o) const;
};

struct FusionResult {
  std::string kind;  // vertical, horizontal, associator, decompose
  int p = 2;
  std::vector<std::string> inputs;
  Bimodule lower;
  Bimodule upper;
  std::vector<FusionCase> cases;
  // Filled for results enumerated over corner values.
  std::vector<DeltaConstraint> constraints;
  bool constraints_exact = true;
  bool vanishes = false;

  bool operator==(const FusionResult& o) const;
  // Terms of the first nonvanishing case with corners stripped, and whether
  // every nonvanishing case has exactly those terms.
  std::vector<DecompositionTerm> summary(bool* uniform = nullptr) const;
  bool complete() const;
};

FusionResult vertical_fuse(const Context& ctx, const DefectLabel& below, const DefectLabel& above);
// Corners left unset are enumerated over Z/p.
FusionResult horizontal_fuse(const Context& ctx, const DefectLabel& d1, const DefectLabel& d2,
                             std::optional<int> mu = std::nullopt,
                             std::optional<int> nu = std::nullopt);
FusionResult associator(const Context& ctx, const Bimodule& m, const Bimodule& n,
                        const Bimodule& pw, const std::map<std::string, int>& fixed = {});
FusionResult decompose_structure(std::shared_ptr<const CompoundDefect> cd,
                                 const std::vector<std::string>& inputs);

// Minimal set of constraints u = lambda v over corner pairs satisfied on the
// nonvanishing cases; constraints_exact says whether they cut out exactly
// those cases.
void compress_constraints(FusionResult& r);

nlohmann::json to_json(const FusionResult& r);
FusionResult fusion_from_json(const nlohmann::json& j);
std::string render_text(const FusionResult& r);

enum class TableKind { vertical, horizontal, associator };
TableKind parse_table_kind(const std::string& s);
nlohmann::json generate_table(TableKind kind, int p);
std::string render_table_text(const nlohmann::json& table);

// Differences between a generated associator table and the golden document
// (data/associator_golden.json layout). Empty when they agree.
std::vector<std::string> compare_associator_golden(const nlohmann::json& table,
                                                   const nlohmann::json& golden);

std::string scalar_header(int p);

}  // namespace annulus
