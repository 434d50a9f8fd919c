#include <doctest.h>

#include "bimodule.hpp"

using namespace annulus;

TEST_CASE("actions are additive, commuting bijections") {
  for (int p : {2, 3, 5}) {
    for (const auto& m : all_walls(p)) {
      auto objs = simple_objects(m, p);
      for (int g = 0; g < p; ++g)
        for (int h = 0; h < p; ++h) {
          std::vector<SimpleObject> image;
          for (const auto& o : objs) {
            CHECK(left_act(m, g, left_act(m, h, o, p), p) == left_act(m, g + h, o, p));
            CHECK(right_act(m, right_act(m, o, h, p), g, p) == right_act(m, o, g + h, p));
            CHECK(left_act(m, g, right_act(m, o, h, p), p) == right_act(m, left_act(m, g, o, p), h, p));
            image.push_back(left_act(m, g, o, p));
          }
          std::sort(image.begin(), image.end());
          auto sorted = objs;
          std::sort(sorted.begin(), sorted.end());
          CHECK(image == sorted);
        }
    }
  }
}

TEST_CASE("object codes agree with the object actions") {
  for (int p : {2, 3}) {
    for (const auto& m : all_walls(p))
      for (int c = 0; c < object_count(m, p); ++c)
        for (int g = 0; g < p; ++g)
          for (int h = 0; h < p; ++h) {
            SimpleObject o = right_act(m, left_act(m, g, object_of(m, c, p), p), h, p);
            CHECK(act_code(m, g, c, h, p) == object_code(m, o, p));
          }
  }
}

TEST_CASE("F_q associator satisfies the 2-cocycle condition") {
  for (int p : {2, 3, 5}) {
    Context ctx(p);
    for (const auto& m : all_walls(p)) {
      SimpleObject o = simple_objects(m, p).front();
      for (int g = 0; g < p; ++g)
        for (int h = 0; h < p; ++h)
          for (int k = 0; k < p; ++k) {
            CycScalar lhs = associator_phase(ctx, m, g, h, o) * associator_phase(ctx, m, g + h, k, o);
            CycScalar rhs = associator_phase(ctx, m, g, h + k, o) * associator_phase(ctx, m, h, k, o);
            CHECK(lhs == rhs);
          }
    }
  }
}

TEST_CASE("associator phases are trivial except on F_q") {
  Context ctx(3);
  for (const auto& m : all_walls(3)) {
    SimpleObject o = simple_objects(m, 3).front();
    bool trivial = associator_phase(ctx, m, 1, 1, o) == CycScalar::one(ctx.N());
    CHECK(trivial == (f_charge(m) == 0));
  }
  // omega^{q g h} with q = 2, g = h = 1 at p = 3.
  CHECK(associator_phase(ctx, wall_F(2, 3), 1, 1, {}) == CycScalar::root(3, 2));
}

TEST_CASE("wall names round trip") {
  for (int p : {2, 3, 5})
    for (const auto& m : all_walls(p)) CHECK(parse_wall(wall_name(m), p) == m);
  CHECK(parse_wall("F3", 5) == wall_F(3, 5));
  CHECK(parse_wall("X2", 5) == wall_X(2, 5));
  CHECK(wall_name(wall_X(2, 5)) == "Xk:2");
  CHECK(all_walls(5).size() == 12u);
}

TEST_CASE("bad wall labels are parse errors") {
  for (const char* s : {"Q", "", "X0", "Fq:5", "Xk:", "T1"}) {
    try {
      parse_wall(s, 5);
      FAIL("accepted " << s);
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::parse || e.code() == ErrorCode::invalid_argument));
    }
  }
}

TEST_CASE("tensor products of walls") {
  int p = 5;
  // R x L = p T, F_q x L = T, X_k X_l = X_{kl}, F_q F_r = X_{q^{-1} r}.
  CHECK(tensor(wall_R(), wall_L(), p) == wall_T());
  CHECK(tensor(wall_F(2, p), wall_L(), p) == wall_T());
  CHECK(tensor(wall_X(2, p), wall_X(3, p), p) == wall_X(1, p));
  CHECK(tensor(wall_F(2, p), wall_F(4, p), p) == wall_X(2, p));
  CHECK(tensor(wall_X(1, p), wall_F(0, p), p) == wall_F(0, p));
  CHECK(tensor(wall_F(0, p), wall_T(), p) == wall_L());
  CHECK(tensor(wall_T(), wall_X(1, p), p) == wall_T());
  CHECK(tensor(wall_L(), wall_R(), p) == wall_F(0, p));
  for (const auto& m : all_walls(p)) {
    CHECK(tensor(wall_X(1, p), m, p) == m);
    CHECK(tensor(m, wall_X(1, p), p) == m);
  }
}

TEST_CASE("tensor product is associative on walls") {
  for (int p : {2, 3}) {
    auto ws = all_walls(p);
    for (const auto& a : ws)
      for (const auto& b : ws)
        for (const auto& c : ws)
          CHECK(tensor(tensor(a, b, p), c, p) == tensor(a, tensor(b, c, p), p));
  }
}
