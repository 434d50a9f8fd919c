#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bimodule.hpp"

namespace annulus {

// ---------------------------------------------------------------------------
// Defect labels

struct Corner {
  std::string name;  // mu, nu, mu0, ...
  int value = 0;
  bool operator==(const Corner& o) const { return name == o.name && value == o.value; }
  bool operator<(const Corner& o) const {
    return name != o.name ? name < o.name : value < o.value;
  }
};

struct DefectLabel {
  Bimodule lower;
  Bimodule upper;
  std::vector<int> params;      // name parameters in canonical order
  std::vector<Corner> corners;  // annotations only

  bool operator==(const DefectLabel& o) const {
    return lower == o.lower && upper == o.upper && params == o.params && corners == o.corners;
  }
  bool operator<(const DefectLabel& o) const;
};

// Parameter names for the (lower, upper) cell of the idempotent table.
std::vector<std::string> defect_param_names(const Bimodule& lower, const Bimodule& upper);

// Canonical text: e.g. "RR(a=1,x=2)", "RFr(x=1;r=2)", "XkXl(;k=1,l=2)",
// "TT(a=0,b=0)[mu0=1,nu0=0]". Wall letters: lower F uses q, lower X uses k,
// upper F uses r, upper X uses l; a shared wall (FqFq, XkXk) uses one letter.
std::string defect_name(const DefectLabel& d);
DefectLabel parse_defect(const std::string& s, int p);
void validate_defect(const DefectLabel& d, int p);

// The trivial defect on a wall: TT(0,0), LL(0,0), ..., XkXk(0,0), FqFq(0,0).
DefectLabel trivial_defect(const Bimodule& w);

std::vector<DefectLabel> enumerate_defects(const Bimodule& lower, const Bimodule& upper, int p);

// ---------------------------------------------------------------------------
// Vertex representations (functor form: labeled basis plus generator action)

enum class Template { bivalent, tri21, tri12 };

// Leg order: bivalent (lower, upper); tri21 (bl, br, top); tri12 (tl, tr, bottom).
// Region slots: 0 = left, 1 = right, 2 = middle (trivalent only). A generator
// is given by one Z/p argument per region slot.
struct LocalVector {
  std::array<int, 3> legs{};   // object codes
  int internal = 0;            // alpha for the p-dimensional F/F families
  std::array<int, 3> free{};   // tabulated free labels (m, n, s, ...)
};

struct Action {
  int index;     // image basis index
  int zeta_exp;  // phase as a power of zeta_N
};

class VertexRep {
 public:
  virtual ~VertexRep() = default;

  Template shape() const { return tmpl_; }
  int arity() const { return tmpl_ == Template::bivalent ? 2 : 3; }
  int region_count() const { return arity(); }
  const Bimodule& leg_wall(int leg) const { return walls_[leg]; }
  const std::vector<LocalVector>& basis() const { return basis_; }
  const Context& context() const { return ctx_; }
  virtual std::string label() const = 0;

  // -1 when no basis vector has these legs (and internal label).
  int index_of(const std::array<int, 3>& legs, int internal = 0) const;
  // Generator with region arguments args[slot].
  virtual Action act(int index, const std::array<int, 3>& args) const = 0;
  // (g, h) with leg object -> g |> obj <| h under the generator.
  std::pair<int, int> leg_shift(int leg, const std::array<int, 3>& args) const;
  // Legs whose edge points into the vertex from below.
  bool leg_incoming(int leg) const;

 protected:
  VertexRep(const Context& ctx, Template t) : ctx_(ctx), tmpl_(t) {}
  void build_index();

  Context ctx_;
  Template tmpl_;
  std::array<Bimodule, 3> walls_{};
  std::vector<LocalVector> basis_;
  std::unordered_map<long long, int> index_;
  bool has_internal_ = false;
};

// Two-string irreducible representation from the bivalent table.
class BivalentRep : public VertexRep {
 public:
  BivalentRep(const Context& ctx, const DefectLabel& d);
  std::string label() const override { return defect_name(defect_); }
  const DefectLabel& defect() const { return defect_; }
  Action act(int index, const std::array<int, 3>& args) const override;
  // Index of the basis vector with the given free labels.
  int index_of_free(const std::array<int, 3>& f) const;
  int free_count() const { return nfree_; }
  std::array<int, 2> objects_of(const std::array<int, 3>& f) const;

 private:
  int family_;
  int nfree_;
  DefectLabel defect_;
};

// Three-string representation from the 2:1 or 1:2 trivalent table.
// tri21: legs (bl, br, top); tri12: legs (tl, tr, bottom).
class TrivalentRep : public VertexRep {
 public:
  TrivalentRep(const Context& ctx, Template t, const Bimodule& left, const Bimodule& right,
               int mu = 0);
  std::string label() const override;
  Action act(int index, const std::array<int, 3>& args) const override;
  bool has_corner() const { return has_mu_; }
  int corner() const { return mu_; }
  int free_count() const { return nfree_; }
  // Table row number (1..36) in the order of the trivalent tables.
  int row() const { return row_; }
  // Leg objects computed from the table's relabeling formula (not from the
  // bimodule actions); used to cross-check the two.
  std::array<int, 3> tabulated_image_legs(int index, const std::array<int, 3>& args) const;

 private:
  std::array<int, 3> legs_of(const std::array<int, 3>& f) const;
  int index_of_free(const std::array<int, 3>& f) const;
  int row_;
  int nfree_;
  bool has_mu_;
  int mu_;
};

bool trivalent_row_exists(const Bimodule& left, const Bimodule& right);
// Does the row carry a multiplicity corner parameter?
bool trivalent_has_corner(const Bimodule& left, const Bimodule& right);
// Canonical text for a trivalent vertex: "R,L->T[mu=1]" (tri21) or
// "T->R,L[mu=1]" (tri12).
std::string trivalent_name(Template t, const Bimodule& left, const Bimodule& right,
                           const Bimodule& third, bool has_mu, int mu);
std::shared_ptr<VertexRep> parse_vertex_rep(const Context& ctx, Template t, const std::string& s);

// ---------------------------------------------------------------------------
// Basis-vector level helpers

struct RepBasisVector {
  std::vector<int> objects;  // codes, one per string
  std::vector<int> internal; // free labels
  bool operator==(const RepBasisVector& o) const {
    return objects == o.objects && internal == o.internal;
  }
};

std::pair<CycScalar, RepBasisVector> bivalent_action(const Context& ctx, const DefectLabel& d,
                                                     const RepBasisVector& v, int g, int h);
std::pair<CycScalar, RepBasisVector> trivalent_action_21(const Context& ctx, const Bimodule& top,
                                                         const Bimodule& bl, const Bimodule& br,
                                                         int mu, const RepBasisVector& v, int a,
                                                         int b, int c);
std::pair<CycScalar, RepBasisVector> trivalent_action_12(const Context& ctx,
                                                         const Bimodule& bottom,
                                                         const Bimodule& tl, const Bimodule& tr,
                                                         int mu, const RepBasisVector& v, int a,
                                                         int b, int c);

// Theta_{x,a}(g) as a power of zeta_N.
int theta_exp(const Context& ctx, int x, int a, int g);
CycScalar theta(const Context& ctx, int x, int a, int g);

// Twist in the composition of two-string generators: applying (g,h) then
// (g2,h2) equals sigma times applying (g+g2, h+h2).
int bivalent_cocycle_exp(const Context& ctx, const Bimodule& lower, const Bimodule& upper, int g,
                         int h, int g2, int h2);
// Same for trivalent generators (a,b,c) then (a2,b2,c2).
int trivalent_cocycle_exp(const Context& ctx, Template t, const std::array<Bimodule, 3>& legs,
                          const std::array<int, 3>& x, const std::array<int, 3>& y);

struct IdempotentTerm {
  CycScalar coeff;
  int g = 0;
  int h = 0;
};

struct IdempotentExpr {
  Bimodule lower;
  Bimodule upper;
  int src_lower = 0;  // object codes
  int src_upper = 0;
  std::vector<IdempotentTerm> terms;  // sorted by (g, h), no zero coefficients

  bool operator==(const IdempotentExpr& o) const;
};

IdempotentExpr idempotent(const Context& ctx, const DefectLabel& d);
// a o b: apply b first, then a. Throws when sources differ.
IdempotentExpr compose(const Context& ctx, const IdempotentExpr& a, const IdempotentExpr& b);

// Monomial action of a two-string generator (g, h) on the basis of one graded
// piece: image index (or -1 when the image leaves the piece) and phase.
using GradeAction = std::function<Action(int g, int h, int index)>;

// Matrix of the idempotent acting on a graded piece of dimension dim whose
// grade is the idempotent's source object.
ExactMatrix apply_idempotent(const Context& ctx, const IdempotentExpr& e, int dim,
                             const GradeAction& act);

}  // namespace annulus
