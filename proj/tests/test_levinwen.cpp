#include <doctest.h>

#include <fstream>
#include <sstream>

#include "levinwen.hpp"
#include "oracles/lw_dense.hpp"

using namespace annulus;

namespace {

using Faces = std::vector<std::pair<int, int>>;

const std::vector<Faces>& face_sets() {
  static const std::vector<Faces> sets{{{0, 0}}, {{0, 0}, {1, 0}}, {{0, 0}, {-1, 1}, {0, 1}}};
  return sets;
}

PatchSpec spec_of(int p, const Faces& faces, Boundary b) {
  PatchSpec s;
  s.p = p;
  s.faces = faces;
  s.boundary = b;
  return s;
}

ConsistentSpace space_of(const PatchSpec& s) {
  return ConsistentSpace(std::make_shared<const LatticePatch>(s));
}

std::string read_data(const std::string& rel) {
  std::ifstream f(std::string(ANNULUS_DATA_DIR) + "/" + rel);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("honeycomb geometry") {
  LatticePatch one(spec_of(2, {{0, 0}}, Boundary::pinned));
  CHECK(one.vertices().size() == 6u);
  CHECK(one.edges().size() == 12u);
  std::size_t merges = 0, dangling = 0;
  for (const auto& v : one.vertices()) merges += v.merge;
  for (const auto& e : one.edges()) dangling += e.dangling();
  CHECK(merges == 3u);
  CHECK(dangling == 6u);
  for (const auto& e : one.edges()) CHECK(e.from.y < e.to.y);

  LatticePatch three(spec_of(2, {{0, 0}, {-1, 1}, {0, 1}}, Boundary::pinned));
  CHECK(three.vertices().size() == 13u);
  CHECK(three.faces()[1].center == Pt{-1, 3});
}

TEST_CASE("consistent states match the closed string count") {
  for (int p : {2, 3})
    for (const auto& faces : face_sets())
      for (Boundary b : {Boundary::pinned, Boundary::free}) {
        if (p == 3 && b == Boundary::free && faces.size() == 3) continue;
        auto o = lwdense::solve(p, faces, b == Boundary::free, {}, 0);
        CHECK(space_of(spec_of(p, faces, b)).size() == o.configurations);
      }
}

TEST_CASE("ground space agrees with dense diagonalization") {
  for (int p : {2, 3})
    for (const auto& faces : face_sets())
      for (Boundary b : {Boundary::pinned, Boundary::free}) {
        auto space = space_of(spec_of(p, faces, b));
        if (space.size() > 800) continue;
        auto o = lwdense::solve(p, faces, b == Boundary::free, {}, 800);
        CHECK_MESSAGE(ground_space_dim(space) == o.ground_dim, "p=" << p << " faces=" << faces.size());
        if (space.size() <= 256) CHECK(ground_space_dim_dense(space) == o.ground_dim);
      }
}

TEST_CASE("frozen ground space dimensions") {
  CHECK(ground_space_dim(space_of(spec_of(3, {{0, 0}, {-1, 1}, {0, 1}}, Boundary::pinned))) == 1u);
  CHECK(ground_space_dim(space_of(spec_of(2, {{0, 0}, {-1, 1}, {0, 1}}, Boundary::free))) == 256u);
  CHECK(ground_space_dim(space_of(spec_of(3, {{0, 0}}, Boundary::free))) == 243u);
}

TEST_CASE("dropping face terms") {
  for (int p : {2, 3}) {
    PatchSpec s = spec_of(p, {{0, 0}, {1, 0}}, Boundary::pinned);
    std::size_t full = ground_space_dim(space_of(s));
    s.inactive_faces = {1};
    CHECK(ground_space_dim(space_of(s)) == full * p);
    auto o = lwdense::solve(p, s.faces, false, {1});
    CHECK(ground_space_dim(space_of(s)) == o.ground_dim);
    s.inactive_faces = {0, 1};
    auto space = space_of(s);
    CHECK(ground_space_dim(space) == space.size());
  }
}

TEST_CASE("face projectors are commuting idempotents") {
  for (int p : {2, 3}) {
    auto space = space_of(spec_of(p, {{0, 0}, {-1, 1}, {0, 1}}, Boundary::pinned));
    std::vector<ExactMatrix> h;
    for (std::size_t f = 0; f < 3; ++f) h.push_back(face_projector(space, static_cast<int>(f)));
    for (std::size_t a = 0; a < 3; ++a) {
      CHECK(h[a] * h[a] == h[a]);
      for (std::size_t b = a + 1; b < 3; ++b) CHECK(h[a] * h[b] == h[b] * h[a]);
    }
  }
}

TEST_CASE("face operators form a group action") {
  auto space = space_of(spec_of(3, {{0, 0}, {1, 0}}, Boundary::free));
  for (std::size_t s = 0; s < space.size(); s += 7)
    for (int f = 0; f < 2; ++f)
      for (int g = 0; g < 3; ++g)
        for (int g2 = 0; g2 < 3; ++g2) {
          Action a = space.face_action(f, g, static_cast<int>(s));
          Action b = space.face_action(f, g2, a.index);
          Action c = space.face_action(f, g + g2, static_cast<int>(s));
          CHECK(b.index == c.index);
          CHECK(mod(a.zeta_exp + b.zeta_exp - c.zeta_exp, 3) == 0);
        }
}

TEST_CASE("local commutation on plain and defect patches") {
  for (int p : {2, 3}) {
    for (const auto& faces : face_sets()) {
      auto r = check_commutation(LatticePatch(spec_of(p, faces, Boundary::pinned)));
      CHECK(r.ok);
      CHECK(r.checks > 0u);
    }
    auto r = check_commutation(LatticePatch(defect_line_spec(p)));
    CHECK(r.ok);
  }
}

TEST_CASE("defect line patch") {
  auto spec = defect_line_spec(3);
  LatticePatch patch(spec);
  std::size_t non_x = 0;
  for (const auto& e : patch.edges()) non_x += e.wall != wall_X(1, 3);
  CHECK(non_x == 9u);
  auto space = space_of(spec);
  CHECK(space.size() == 27u);
  CHECK(ground_space_dim(space) == 1u);
  CHECK(ground_space_dim_dense(space) == 1u);
}

TEST_CASE("violated vertex terms") {
  auto r = analyze_patch(read_data("patches/single_face.json"));
  REQUIRE(r["states"].size() == 2u);
  CHECK(r["states"][0]["violated_vertex_terms"] == 0);
  CHECK(r["states"][1]["violated_vertex_terms"] == 2);
  CHECK(r["consistent_dim"] == 3);
  CHECK(r["ground_space_dim"] == 1);
  CHECK(r["commutation"]["ok"] == true);
}

TEST_CASE("patch errors") {
  auto code_of = [](const std::string& doc) {
    try {
      analyze_patch(doc);
    } catch (const Error& e) {
      return static_cast<int>(e.code());
    }
    return 0;
  };
  CHECK(code_of(R"J({"p":3,"faces":[[0,0],[1,0],[2,0],[3,0]]})J") == static_cast<int>(ErrorCode::unsupported));
  CHECK(code_of(R"J({"p":3,"faces":[[0,0]],"walls":[{"from":[-1,-1],"to":[-1,1],"wall":"L"}]})J") ==
        static_cast<int>(ErrorCode::wall_mismatch));
  CHECK(code_of(R"J({"p":3,"faces":[[0,0]],"boundary":"open"})J") == static_cast<int>(ErrorCode::parse));
  CHECK(code_of(R"J({"p":3,"faces":[[0,0]],"walls":[{"from":[0,0],"to":[5,5],"wall":"L"}]})J") != 0);
  CHECK(code_of(R"J({"p":4,"faces":[[0,0]]})J") == static_cast<int>(ErrorCode::invalid_argument));
}
