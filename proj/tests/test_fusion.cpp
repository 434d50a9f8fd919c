#include <doctest.h>

#include <fstream>

#include "fusion.hpp"

using namespace annulus;

namespace {

nlohmann::json golden() {
  std::ifstream f(std::string(ANNULUS_DATA_DIR) + "/associator_golden.json");
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  return j;
}

}  // namespace

TEST_CASE("fusion results survive a json round trip") {
  Context c3(3), c5(5);
  std::vector<FusionResult> rs{
      vertical_fuse(c5, parse_defect("RFr(x=1;r=2)", 5), parse_defect("FrR(z=3;r=2)", 5)),
      horizontal_fuse(c3, parse_defect("FqR(x=1;q=2)", 3), parse_defect("LL(a=2,x=1)", 3)),
      associator(c3, wall_R(), wall_F(1, 3), wall_R()),
  };
  for (const auto& r : rs) {
    CHECK(fusion_from_json(to_json(r)) == r);
    CHECK(to_json(fusion_from_json(to_json(r))).dump() == to_json(r).dump());
  }
}

TEST_CASE("fusion output is deterministic") {
  Context ctx(3);
  auto a = to_json(horizontal_fuse(ctx, parse_defect("F0Fr(;r=2)", 3), parse_defect("TFr(;r=1)", 3))).dump();
  auto b = to_json(horizontal_fuse(ctx, parse_defect("F0Fr(;r=2)", 3), parse_defect("TFr(;r=1)", 3))).dump();
  CHECK(a == b);
  CHECK(render_table_text(generate_table(TableKind::associator, 2)) ==
        render_table_text(generate_table(TableKind::associator, 2)));
}

TEST_CASE("the trivial X_1 defect is a horizontal unit") {
  for (int p : {2, 3}) {
    Context ctx(p);
    DefectLabel unit = trivial_defect(wall_X(1, p));
    for (const auto& lo : all_walls(p))
      for (const auto& up : all_walls(p))
        for (const auto& d : enumerate_defects(lo, up, p)) {
          bool uniform = false;
          auto terms = horizontal_fuse(ctx, unit, d).summary(&uniform);
          CHECK(uniform);
          REQUIRE_MESSAGE(terms.size() == 1u, defect_name(d));
          CHECK(terms[0].defect == d);
          CHECK(terms[0].multiplicity == 1);
        }
  }
}

TEST_CASE("corner constraints of the associator") {
  Context c2(2), c3(3);
  FusionResult r = associator(c2, wall_R(), wall_F(0, 2), wall_R());
  CHECK(r.constraints_exact);
  CHECK(r.constraints == std::vector<DeltaConstraint>{{"mu0", 1, "nu0"}});
  CHECK(r.cases.size() == 4u);

  FusionResult s = associator(c3, wall_R(), wall_F(1, 3), wall_R());
  CHECK(s.constraints == std::vector<DeltaConstraint>{{"mu0", 1, "nu1"}});
  for (const auto& c : s.cases) {
    bool on = c.corners[0].value == c.corners[1].value;
    CHECK(c.terms.empty() != on);
    if (on) CHECK(defect_name(c.terms[0].defect).rfind("RR(a=0,x=0)", 0) == 0);
  }
}

TEST_CASE("fixed corners restrict the enumeration") {
  Context ctx(3);
  FusionResult r = associator(ctx, wall_R(), wall_F(1, 3), wall_R(), {{"mu0", 2}});
  CHECK(r.cases.size() == 3u);
  for (const auto& c : r.cases) CHECK(c.corners[0].value == 2);
}

TEST_CASE("golden associator tables") {
  auto g = golden();
  for (int p : {2, 3}) CHECK(compare_associator_golden(generate_table(TableKind::associator, p), g).empty());
}

TEST_CASE("golden comparison notices a changed entry") {
  auto g = golden();
  REQUIRE(!g["entries"].empty());
  g["entries"][0]["defect"] = {1, 0};
  CHECK(!compare_associator_golden(generate_table(TableKind::associator, 2), g).empty());
}

TEST_CASE("table kinds") {
  CHECK(parse_table_kind("vertical") == TableKind::vertical);
  CHECK_THROWS_AS(parse_table_kind("diagonal"), Error);
  auto t = generate_table(TableKind::vertical, 2);
  CHECK(t.is_object());
}

TEST_CASE("mismatched walls are rejected") {
  Context ctx(3);
  try {
    vertical_fuse(ctx, parse_defect("TL(x=0)", 3), parse_defect("RR(a=0,x=0)", 3));
    FAIL("expected wall mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::wall_mismatch);
  }
}
