#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "annular.hpp"

namespace annulus {

// Region slot owners.
constexpr int kOuterLeft = -1;
constexpr int kOuterRight = -2;
constexpr int kNoRegion = -3;

struct StructVertex {
  std::string id;
  std::shared_ptr<VertexRep> rep;
  std::array<int, 3> region{kNoRegion, kNoRegion, kNoRegion};  // per slot
  std::string corner_name;  // name reported for the corner parameter, if any
};

struct EdgeEnd {
  int vertex = -1;
  int leg = -1;
};

struct StructEdge {
  std::string id;
  Bimodule wall;
  EdgeEnd from;  // lower end
  EdgeEnd to;    // upper end
};

// A domain wall structure with a representation at every vertex. The
// external boundary is a list of edge indices: for a two-string boundary the
// lower edge comes first.
class CompoundDefect {
 public:
  explicit CompoundDefect(const Context& ctx) : ctx_(ctx) {}

  int add_vertex(StructVertex v);
  int add_edge(StructEdge e);
  int add_cavity(const std::string& name);
  void set_external(std::vector<int> edges) { external_ = std::move(edges); }
  void set_region(int vertex, int slot, int region) { vertices_[vertex].region[slot] = region; }

  // Checks endpoint slots, wall labels and that bubble and boundary actions
  // shift the two ends of every internal edge the same way.
  void validate() const;

  const Context& context() const { return ctx_; }
  const std::vector<StructVertex>& vertices() const { return vertices_; }
  const std::vector<StructEdge>& edges() const { return edges_; }
  const std::vector<std::string>& cavities() const { return cavities_; }
  const std::vector<int>& external() const { return external_; }
  int cavity_index(const std::string& name) const;

  // Corner parameters of the vertices, in vertex order.
  std::vector<Corner> corners() const;
  // Region arguments of a vertex for the boundary generator (g, h) or the
  // g-bubble in one cavity.
  std::array<int, 3> boundary_args(int vertex, int g, int h) const;
  std::array<int, 3> bubble_args(int vertex, int cavity, int g) const;

 private:
  Context ctx_;
  std::vector<StructVertex> vertices_;
  std::vector<StructEdge> edges_;
  std::vector<std::string> cavities_;
  std::vector<int> external_;
};

// Compound vector: one basis index per vertex.
using CompoundVector = std::vector<int>;

// Raw compound representation: consistent labelings and the monomial
// boundary and bubble actions on them.
class CompoundRep {
 public:
  explicit CompoundRep(std::shared_ptr<const CompoundDefect> cd);

  const CompoundDefect& defect() const { return *cd_; }
  const Context& context() const { return cd_->context(); }
  std::size_t size() const { return basis_.size(); }
  const std::vector<CompoundVector>& basis() const { return basis_; }
  int find(const CompoundVector& v) const;

  int edge_object(int vec, int edge) const;
  // Object codes on the external edges.
  std::vector<int> grade(int vec) const;
  // Raw vectors in one grade, in basis order.
  const std::vector<int>& piece(const std::vector<int>& grade) const;
  std::vector<std::vector<int>> grades() const;

  Action boundary_action(int vec, int g, int h) const;
  Action bubble_action(int cavity, int vec, int g) const;

 private:
  Action apply(int vec, const std::vector<std::array<int, 3>>& args) const;
  void enumerate();

  std::shared_ptr<const CompoundDefect> cd_;
  std::vector<CompoundVector> basis_;
  std::map<CompoundVector, int> lookup_;
  std::map<std::vector<int>, std::vector<int>> pieces_;
};

// (1/p) sum_g of the g-bubble in one cavity, on the raw vectors of a grade.
ExactMatrix cavity_symmetrizer(const CompoundRep& rep, int cavity, const std::vector<int>& grade);

struct QuotientGrade {
  std::vector<int> grade;
  std::vector<int> raw;     // raw vector indices
  ExactMatrix projector;    // product of all cavity symmetrizers
  std::size_t dim = 0;      // rank of the projector
};

// Image of the product of the cavity symmetrizers, graded by external objects.
class QuotientRep {
 public:
  explicit QuotientRep(std::shared_ptr<const CompoundRep> raw);

  const CompoundRep& raw() const { return *raw_; }
  const QuotientGrade& at(const std::vector<int>& grade) const;
  std::vector<std::vector<int>> grades() const { return raw_->grades(); }
  std::size_t total_dim() const;
  // Spanning vectors of the quotient at a grade (raw coordinates).
  std::vector<ExactMatrix> basis(const std::vector<int>& grade) const;

 private:
  std::shared_ptr<const CompoundRep> raw_;
  mutable std::map<std::vector<int>, QuotientGrade> cache_;
};

struct DecompositionTerm {
  DefectLabel defect;
  int multiplicity = 0;
};

struct GradeMismatch {
  std::vector<int> grade;
  std::size_t quotient_dim = 0;
  std::size_t accounted = 0;
};

struct Decomposition {
  Bimodule lower;
  Bimodule upper;
  std::vector<DecompositionTerm> terms;
  bool completeness_checked = false;
  std::vector<GradeMismatch> mismatches;
  bool complete() const { return completeness_checked && mismatches.empty(); }
};

// Multiplicity of every defect on the external walls, by idempotent ranks.
// With check_completeness the multiplicities are also summed against the
// quotient dimension at every grade.
Decomposition decompose(const QuotientRep& q, bool check_completeness = true);

// Dimension of the graded piece (lower, upper) of an irreducible defect.
std::size_t irrep_grade_dim(const Context& ctx, const DefectLabel& d, int lower, int upper);

// Built-in structures.
std::shared_ptr<CompoundDefect> vertical_structure(const Context& ctx, const DefectLabel& below,
                                                   const DefectLabel& above);
// Diamond: left defect d1 on (M1, N1), right defect d2 on (M2, N2). Corner
// values are used when the split (mu) or merge (nu) vertex carries one.
std::shared_ptr<CompoundDefect> diamond_structure(const Context& ctx, const DefectLabel& d1,
                                                  const DefectLabel& d2, int mu = 0, int nu = 0);
// Triangle structure for [M, N, P]. Corners mu0, mu1 sit on the two splits
// and nu0, nu1 on the two merges.
std::shared_ptr<CompoundDefect> associator_structure(const Context& ctx, const Bimodule& m,
                                                     const Bimodule& n, const Bimodule& pw,
                                                     const std::array<int, 4>& corners);
// Which of mu0, mu1, nu0, nu1 are present for [M, N, P].
std::array<bool, 4> associator_corner_mask(const Bimodule& m, const Bimodule& n,
                                           const Bimodule& pw, int p);

// Structure document (JSON text). Besides explicit graphs, {"template":
// "vertical"|"diamond"|"associator", ...} shorthands are accepted.
std::shared_ptr<CompoundDefect> parse_structure(const std::string& json_text);

// Raw basis size cap, from ANNULUS_MAX_BASIS or the default.
std::size_t max_basis();

}  // namespace annulus
