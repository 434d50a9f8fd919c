#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "annular.hpp"

namespace annulus {

// Honeycomb coordinates. The hexagon in column c, row r is centered at
// (2c + (r & 1), 3r); its corners sit at offsets (0,2), (1,1), (1,-1),
// (0,-2), (-1,-1), (-1,1). Every edge is oriented upward.
struct Pt {
  int x = 0;
  int y = 0;
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
  bool operator<(const Pt& o) const { return x != o.x ? x < o.x : y < o.y; }
};

struct LwFace {
  int col = 0;
  int row = 0;
  Pt center;
  std::vector<int> vertices;  // patch vertex indices, corner order
  std::vector<int> edges;     // sides
};

struct LwVertex {
  Pt pos;
  bool merge = false;  // two legs below, one above
  std::shared_ptr<TrivalentRep> rep;
  std::array<int, 3> edge{-1, -1, -1};  // per leg
  std::array<int, 3> face{-1, -1, -1};  // patch face in each region slot
};

struct LwEdge {
  Pt from;  // lower end
  Pt to;    // upper end
  Bimodule wall;
  std::array<int, 2> vertex{-1, -1};  // lower, upper (-1 outside the patch)
  std::array<int, 2> leg{-1, -1};
  int pin = -1;  // pinned object on a dangling edge, -1 when free
  bool dangling() const { return vertex[0] < 0 || vertex[1] < 0; }
};

enum class Boundary { pinned, free };

constexpr std::size_t kMaxFaces = 3;

struct PatchSpec {
  int p = 2;
  std::vector<std::pair<int, int>> faces;  // (col, row)
  std::map<std::pair<Pt, Pt>, Bimodule> walls;  // (from, to) -> wall; default X_1
  std::map<Pt, int> corners;                    // vertex -> corner value
  Boundary boundary = Boundary::pinned;
  std::map<std::pair<Pt, Pt>, int> pins;  // dangling edge -> object (default 0)
  std::vector<int> inactive_faces;        // faces left out of the Hamiltonian
};

class LatticePatch {
 public:
  explicit LatticePatch(const PatchSpec& spec);

  const Context& context() const { return ctx_; }
  const std::vector<LwFace>& faces() const { return faces_; }
  const std::vector<LwVertex>& vertices() const { return vertices_; }
  const std::vector<LwEdge>& edges() const { return edges_; }
  bool face_active(int f) const;

  // Region arguments of vertex z for the g-string around face f.
  std::array<int, 3> face_args(int z, int f, int g) const;
  // (g, h) by which H_{f,g} moves the object on edge e.
  std::pair<int, int> edge_shift(int e, int f, int g) const;

 private:
  Context ctx_;
  std::vector<LwFace> faces_;
  std::vector<LwVertex> vertices_;
  std::vector<LwEdge> edges_;
  std::vector<bool> active_;
};

// States with every vertex term satisfied: one vertex basis index per vertex;
// edge objects follow from the vertex vectors.
class ConsistentSpace {
 public:
  explicit ConsistentSpace(std::shared_ptr<const LatticePatch> patch);

  const LatticePatch& patch() const { return *patch_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<std::vector<int>>& states() const { return states_; }
  int find(const std::vector<int>& s) const;
  int edge_object(int state, int e) const;

  // Monomial action of H_{f,g}.
  Action face_action(int f, int g, int state) const;

 private:
  std::shared_ptr<const LatticePatch> patch_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, int> index_;
};

// H_f = (1/p) sum_g H_{f,g} on the consistent space, as a dense exact matrix.
ExactMatrix face_projector(const ConsistentSpace& space, int f);

struct CommutationReport {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first failures, human readable
};

// [H_{z,e}, H_{f,g}] on each local (vertex, edge) space, and
// H_{f,g} H_{f',g'} = H_{f',g'} H_{f,g}, H_{f,g} H_{f,g'} = H_{f,g+g'} through
// per-vertex phase constants whose product must be 1.
CommutationReport check_commutation(const LatticePatch& patch);

// Rank of the product of the active face projectors on the consistent space,
// by counting orbits of the face group whose stabilizer acts trivially.
std::size_t ground_space_dim(const ConsistentSpace& space);
// Same quantity from dense exact projector products (small spaces only).
std::size_t ground_space_dim_dense(const ConsistentSpace& space);

struct VertexViolation {
  Pt vertex;
  int matched_legs = 0;
};
// For given edge objects, vertices where no vertex vector agrees with all
// three legs (each vertex takes its best-matching vector).
std::vector<VertexViolation> violated_vertex_terms(const LatticePatch& patch,
                                                   const std::vector<int>& edge_objects);

// Three faces around one merge vertex carrying F0 x T -> L, continued by
// single F0, T and L lines through an otherwise X_1 lattice.
PatchSpec defect_line_spec(int p, Boundary b = Boundary::pinned);
PatchSpec parse_patch(const std::string& json_text);

// Full analysis of a patch document: sizes, ground space dimension (with the
// dense cross-check on small spaces), commutation report and, for each entry
// of "states", the violated vertex terms.
nlohmann::json analyze_patch(const std::string& json_text);
std::string render_patch_report(const nlohmann::json& report);

}  // namespace annulus
