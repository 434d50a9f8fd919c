#include <doctest.h>

#include <map>
#include <memory>

#include "annular.hpp"
#include "dws.hpp"

using namespace annulus;

namespace {

std::vector<std::shared_ptr<VertexRep>> all_reps(const Context& ctx) {
  int p = ctx.p();
  std::vector<std::shared_ptr<VertexRep>> reps;
  auto walls = all_walls(p);
  for (const auto& lo : walls)
    for (const auto& up : walls)
      for (const auto& d : enumerate_defects(lo, up, p))
        reps.push_back(std::make_shared<BivalentRep>(ctx, d));
  for (auto t : {Template::tri21, Template::tri12})
    for (const auto& l : walls)
      for (const auto& r : walls) {
        int nm = trivalent_has_corner(l, r) ? p : 1;
        for (int mu = 0; mu < nm; ++mu) reps.push_back(std::make_shared<TrivalentRep>(ctx, t, l, r, mu));
      }
  return reps;
}

std::vector<std::array<int, 3>> generators(int p, int arity) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < (arity == 3 ? p : 1); ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace

TEST_CASE("defect names round trip") {
  for (int p : {2, 3, 5})
    for (const auto& lo : all_walls(p))
      for (const auto& up : all_walls(p))
        for (const auto& d : enumerate_defects(lo, up, p)) {
          CHECK(parse_defect(defect_name(d), p) == d);
          CHECK_NOTHROW(validate_defect(d, p));
        }
}

TEST_CASE("defect name examples") {
  DefectLabel d = parse_defect("RFr(x=1;r=2)", 5);
  CHECK(d.lower == wall_R());
  CHECK(d.upper == wall_F(2, 5));
  CHECK(d.params == std::vector<int>{1});
  CHECK(defect_name(trivial_defect(wall_T())) == "TT(a=0,b=0)");
  // Parameters are Z/p representatives.
  CHECK(parse_defect("RR(a=6,x=-1)", 5).params == std::vector<int>{1, 4});
  CHECK_THROWS_AS(parse_defect("RR(a=1)", 5), Error);
  CHECK_THROWS_AS(parse_defect("ZZ()", 5), Error);
}

TEST_CASE("defect counts") {
  auto count = [](int p) {
    std::size_t n = 0;
    for (const auto& lo : all_walls(p))
      for (const auto& up : all_walls(p)) n += enumerate_defects(lo, up, p).size();
    return n;
  };
  CHECK(count(2) == 72u);
}

TEST_CASE("irreps exhaust the two-string algebra") {
  // The algebra on (M, N) has dimension |M| |N| p^2 and is semisimple.
  for (int p : {2, 3, 5}) {
    Context ctx(p);
    for (const auto& lo : all_walls(p))
      for (const auto& up : all_walls(p)) {
        std::size_t sum = 0;
        for (const auto& d : enumerate_defects(lo, up, p)) {
          std::size_t dim = BivalentRep(ctx, d).basis().size();
          sum += dim * dim;
        }
        CHECK_MESSAGE(sum == static_cast<std::size_t>(object_count(lo, p) * object_count(up, p) * p * p),
                      wall_name(lo) << " " << wall_name(up) << " p=" << p);
      }
  }
}

TEST_CASE("theta satisfies its cocycle identity") {
  for (int p : {2, 3, 5, 7}) {
    Context ctx(p);
    for (int x = 0; x < p; ++x)
      for (int a = 0; a < (p == 2 ? 4 : p); ++a)
        for (int g = 0; g < p; ++g)
          for (int h = 0; h < p; ++h) {
            long long lhs = theta_exp(ctx, x, a, g) + theta_exp(ctx, x, a, h) + ctx.omega(static_cast<long long>(a) * g * h);
            CHECK(mod(lhs - theta_exp(ctx, x, a, mod(g + h, p)), ctx.N()) == 0);
          }
  }
}

TEST_CASE("theta at p = 2 sees a modulo 4") {
  Context ctx(2);
  CHECK(theta(ctx, 0, 1, 1) == CycScalar::root(4, 1));
  CHECK(theta(ctx, 0, 3, 1) == CycScalar::root(4, 3));
  CHECK(theta(ctx, 1, 1, 1) == CycScalar::root(4, 3));
}

TEST_CASE("identity generator fixes every basis vector") {
  for (int p : {2, 3}) {
    Context ctx(p);
    for (const auto& rep : all_reps(ctx))
      for (std::size_t i = 0; i < rep->basis().size(); ++i) {
        Action a = rep->act(static_cast<int>(i), {0, 0, 0});
        CHECK(a.index == static_cast<int>(i));
        CHECK(mod(a.zeta_exp, ctx.N()) == 0);
      }
  }
}

TEST_CASE("generators move leg objects by the wall actions") {
  for (int p : {2, 3}) {
    Context ctx(p);
    for (const auto& rep : all_reps(ctx)) {
      int n = rep->arity();
      auto* tri = dynamic_cast<TrivalentRep*>(rep.get());
      for (std::size_t i = 0; i < rep->basis().size(); ++i)
        for (const auto& x : generators(p, n)) {
          Action ax = rep->act(static_cast<int>(i), x);
          const auto& img = rep->basis()[ax.index].legs;
          for (int leg = 0; leg < n; ++leg) {
            auto [g, h] = rep->leg_shift(leg, x);
            CHECK(act_code(rep->leg_wall(leg), g, rep->basis()[i].legs[leg], h, p) == img[leg]);
          }
          if (tri) {
            auto tab = tri->tabulated_image_legs(static_cast<int>(i), x);
            for (int leg = 0; leg < 3; ++leg) CHECK(tab[leg] == img[leg]);
          }
        }
    }
  }
}

TEST_CASE("representations compose up to the cocycle") {
  Context ctx(3);
  for (const auto& rep : all_reps(ctx)) {
    int n = rep->arity();
    std::array<Bimodule, 3> lw{rep->leg_wall(0), rep->leg_wall(1), n == 3 ? rep->leg_wall(2) : Bimodule{}};
    auto gens = generators(3, n);
    for (std::size_t i = 0; i < rep->basis().size(); ++i)
      for (const auto& x : gens)
        for (const auto& y : gens) {
          Action ax = rep->act(static_cast<int>(i), x);
          Action ay = rep->act(ax.index, y);
          Action as = rep->act(static_cast<int>(i), {x[0] + y[0], x[1] + y[1], x[2] + y[2]});
          int sig = n == 2 ? bivalent_cocycle_exp(ctx, lw[0], lw[1], x[0], x[1], y[0], y[1])
                           : trivalent_cocycle_exp(ctx, rep->shape(), lw, x, y);
          REQUIRE(ay.index == as.index);
          CHECK(mod(ax.zeta_exp + ay.zeta_exp - as.zeta_exp - sig, ctx.N()) == 0);
        }
  }
}

TEST_CASE("cocycle is trivial without F_q walls") {
  Context ctx(5);
  CHECK(bivalent_cocycle_exp(ctx, wall_T(), wall_L(), 1, 2, 3, 4) == 0);
  CHECK(mod(bivalent_cocycle_exp(ctx, wall_F(2, 5), wall_T(), 0, 1, 1, 0), 5) != 0);
}

TEST_CASE("idempotents are primitive and orthogonal") {
  for (int p : {2, 3}) {
    Context ctx(p);
    for (const auto& lo : all_walls(p))
      for (const auto& up : all_walls(p)) {
        auto ds = enumerate_defects(lo, up, p);
        for (const auto& d : ds) {
          IdempotentExpr e = idempotent(ctx, d);
          CHECK(compose(ctx, e, e) == e);
          for (const auto& d2 : ds) {
            BivalentRep rep(ctx, d2);
            std::vector<int> piece, loc(rep.basis().size(), -1);
            for (std::size_t i = 0; i < rep.basis().size(); ++i) {
              const auto& v = rep.basis()[i];
              if (v.legs[0] == e.src_lower && v.legs[1] == e.src_upper) {
                loc[i] = static_cast<int>(piece.size());
                piece.push_back(static_cast<int>(i));
              }
            }
            ExactMatrix m = apply_idempotent(ctx, e, static_cast<int>(piece.size()), [&](int g, int h, int j) {
              Action a = rep.act(piece[j], {g, h, 0});
              return Action{loc[a.index], a.zeta_exp};
            });
            CHECK(m * m == m);
            CHECK(matrix_rank(m) == (d2 == d ? 1u : 0u));
          }
        }
      }
  }
}

TEST_CASE("irrep grade dimensions") {
  Context ctx(3);
  // LL(a, x) is supported on upper = lower + a, one dimension per lower object.
  DefectLabel ll = parse_defect("LL(a=2,x=1)", 3);
  CHECK(irrep_grade_dim(ctx, ll, 0, 2) == 1u);
  CHECK(irrep_grade_dim(ctx, ll, 0, 1) == 0u);
  // F0F_r carries an internal label with p values.
  DefectLabel ff = parse_defect("F0Fr(;r=2)", 3);
  CHECK(irrep_grade_dim(ctx, ff, 0, 0) == 3u);
}

TEST_CASE("trivalent rows") {
  CHECK(trivalent_row_exists(wall_R(), wall_L()));
  CHECK(trivalent_has_corner(wall_R(), wall_L()));
  CHECK(trivalent_name(Template::tri21, wall_R(), wall_L(), wall_T(), true, 1) == "R,L->T[mu=1]");
  Context ctx(3);
  auto rep = parse_vertex_rep(ctx, Template::tri12, "T->R,L[mu=2]");
  CHECK(rep->arity() == 3);
  CHECK(rep->label() == "T->R,L[mu=2]");
  CHECK_THROWS_AS(parse_vertex_rep(ctx, Template::tri21, "R,L->L"), Error);
}
