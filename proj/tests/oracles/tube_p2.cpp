#include "oracles/tube_p2.hpp"

#include <stdexcept>

#include "zp_core.hpp"

namespace tube2 {

using annulus::CycScalar;
using annulus::ExactMatrix;

namespace {

constexpr int P = 2;
constexpr int N = 4;  // zeta = i, omega = -1 = zeta^2

struct WallData {
  int objects;
  int q;  // center associator charge
  int (*act)(int g, int x, int h);
};

WallData wall(const std::string& w) {
  if (w == "T") return {4, 0, [](int g, int x, int h) { return ((x / 2 + g) % 2) * 2 + (x % 2 + h) % 2; }};
  if (w == "L") return {2, 0, [](int, int x, int h) { return (x + h) % 2; }};
  if (w == "R") return {2, 0, [](int g, int x, int) { return (x + g) % 2; }};
  if (w == "X1") return {2, 0, [](int g, int x, int h) { return (x + g + h) % 2; }};
  if (w == "F0") return {1, 0, [](int, int, int) { return 0; }};
  if (w == "F1") return {1, 1, [](int, int, int) { return 0; }};
  throw std::invalid_argument("unknown wall " + w);
}

// Element of A_{M,N} with a fixed source object: coefficient per (g, h),
// index g*2 + h.
struct Idem {
  int src_lo = 0;
  int src_up = 0;
  std::vector<CycScalar> c = std::vector<CycScalar>(4, CycScalar::zero(N));
};

// t_{g2,h2} after t_{g,h}: phase exponent of zeta.
int twist(const std::string& lo, const std::string& up, int h, int g2) {
  return 2 * ((wall(lo).q - wall(up).q) * h * g2);
}

Idem idem(const Defect& d) {
  const std::string& M = d.lower;
  const std::string& U = d.upper;
  const auto& a = d.params;
  Idem e;
  mpq_class half(1, 2), quarter(1, 4);
  auto put = [&](int zexp, const mpq_class& w, int g, int h) {
    e.c[(g % 2) * 2 + (h % 2)] += CycScalar::root(N, zexp) * w;
  };
  auto single = [&](int lo, int up) {
    e.src_lo = lo;
    e.src_up = up;
    put(0, 1, 0, 0);
  };
  bool f_lo = M == "F0" || M == "F1", f_up = U == "F0" || U == "F1";
  // Objects stay at the source; all idempotents below sum over stabilizers.
  if (M == "T") {
    if (U == "T") single(0, a[0] * 2 + a[1]);
    else if (f_up) single(0, 0);
    else single(0, a[0]);
  } else if (U == "T") {
    if (M == "L") single(0, a[0]);          // (0, a)
    else if (f_lo) single(0, 0);
    else single(0, a[0] * 2);               // R, X1: (a, 0)
  } else if ((M == "L" && (U == "R" || U == "X1")) || (M == "R" && (U == "L" || U == "X1")) ||
             (M == "X1" && (U == "L" || U == "R"))) {
    single(0, 0);
  } else if (M == "L" && U == "L") {
    e.src_up = a[0];
    for (int g = 0; g < 2; ++g) put(2 * g * a[1], half, g, 0);
  } else if (M == "R" && U == "R") {
    e.src_up = a[0];
    for (int g = 0; g < 2; ++g) put(2 * g * a[1], half, 0, g);
  } else if ((M == "L" && f_up) || (f_lo && U == "L")) {
    for (int g = 0; g < 2; ++g) put(2 * g * a[0], half, g, 0);
  } else if ((M == "R" && f_up) || (f_lo && U == "R")) {
    for (int g = 0; g < 2; ++g) put(2 * g * a[0], half, 0, g);
  } else if (M == "X1" && U == "X1") {
    e.src_up = a[0];
    for (int g = 0; g < 2; ++g) put(2 * g * a[1], half, g, g);
  } else if ((M == "F0" && U == "X1") || (M == "X1" && U == "F0")) {
    for (int g = 0; g < 2; ++g) put(2 * g * a[0], half, g, g);
  } else if (M == "X1" && U == "F1") {
    // (-1)^{gx} i^{g}
    for (int g = 0; g < 2; ++g) put(2 * g * a[0] + g, half, g, g);
  } else if (M == "F1" && U == "X1") {
    // (-1)^{gx} i^{-g}
    for (int g = 0; g < 2; ++g) put(2 * g * a[0] - g, half, g, g);
  } else if (M == U) {  // F0F0, F1F1
    for (int g = 0; g < 2; ++g)
      for (int h = 0; h < 2; ++h) put(2 * (g * a[0] + h * a[1]), quarter, g, h);
  } else {  // F0F1, F1F0
    for (int g = 0; g < 2; ++g) put(0, half, 0, g);
  }
  return e;
}

int nparams(const std::string& M, const std::string& U) {
  bool f_lo = M == "F0" || M == "F1", f_up = U == "F0" || U == "F1";
  if (M == "T" && U == "T") return 2;
  if (M == "T") return f_up ? 0 : 1;
  if (U == "T") return (M == "L" || M == "R" || M == "X1") ? 1 : 0;
  if (M == U) return 2;  // LL, RR, X1X1, F0F0, F1F1
  if (f_lo && f_up) return 0;
  if ((M == "L" || M == "R") && (U == "L" || U == "R" || U == "X1")) return 0;
  if (M == "X1" && (U == "L" || U == "R")) return 0;
  return 1;
}

// Left multiplication of t_{g2,h2} on coordinates (g,h) at a fixed source.
std::vector<CycScalar> left_mul(const std::string& lo, const std::string& up, int g2, int h2,
                                const std::vector<CycScalar>& v) {
  std::vector<CycScalar> out(4, CycScalar::zero(N));
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h)
      out[((g + g2) % 2) * 2 + (h + h2) % 2] += v[g * 2 + h].mul_root(twist(lo, up, h, g2));
  return out;
}

struct Target {
  int lo;
  int up;
};

Target target(const std::string& lo, const std::string& up, int src_lo, int src_up, int g, int h) {
  return {wall(lo).act(g, src_lo, h), wall(up).act(g, src_up, h)};
}

// Basis (as 4-coordinate columns) of the irrep A*i_d at the target (y_lo, y_up).
std::vector<std::vector<CycScalar>> irrep_piece(const Defect& d, int y_lo, int y_up) {
  Idem e = idem(d);
  ExactMatrix m(4, 4, N);
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h) {
      auto v = left_mul(d.lower, d.upper, g, h, e.c);
      for (int i = 0; i < 4; ++i) {
        Target t = target(d.lower, d.upper, e.src_lo, e.src_up, i / 2, i % 2);
        if (t.lo == y_lo && t.up == y_up) m.at(i, g * 2 + h) = v[i];
      }
    }
  std::vector<std::vector<CycScalar>> out;
  for (const auto& col : annulus::image_basis(m)) {
    std::vector<CycScalar> v(4, CycScalar::zero(N));
    for (int i = 0; i < 4; ++i) v[i] = col.at(i, 0);
    out.push_back(v);
  }
  return out;
}

// Matrix of i_d on a compound with two tensor factors on (lo|mid) and (mid|up).
ExactMatrix compound_action(const Defect& d, const std::string& mid) {
  Idem e = idem(d);
  ExactMatrix m(16, 16, N);
  for (int gh = 0; gh < 4; ++gh) {
    if (e.c[gh].is_zero()) continue;
    int g = gh / 2, h = gh % 2;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        int ph = twist(d.lower, mid, a % 2, g) + twist(mid, d.upper, b % 2, g);
        int a2 = ((a / 2 + g) % 2) * 2 + (a % 2 + h) % 2;
        int b2 = ((b / 2 + g) % 2) * 2 + (b % 2 + h) % 2;
        m.at(a2 * 4 + b2, a * 4 + b) += e.c[gh].mul_root(ph);
      }
  }
  return m;
}

}  // namespace

const std::vector<std::string>& walls() {
  static const std::vector<std::string> w{"T", "L", "R", "F0", "X1", "F1"};
  return w;
}

std::vector<Defect> defects(const std::string& lower, const std::string& upper) {
  int n = nparams(lower, upper);
  std::vector<Defect> out;
  for (int v = 0; v < (1 << n); ++v) {
    Defect d{lower, upper, {}};
    for (int i = n - 1; i >= 0; --i) d.params.push_back((v >> i) & 1);
    out.push_back(d);
  }
  return out;
}

std::vector<Term> vertical(const Defect& below, const Defect& above) {
  if (below.upper != above.lower) throw std::invalid_argument("walls do not meet");
  const std::string& M = below.lower;
  const std::string& Nw = below.upper;
  const std::string& U = above.upper;
  std::vector<Term> out;
  for (const auto& d : defects(M, U)) {
    Idem e = idem(d);
    // Compound basis at d's source: sum over middle objects n of V1 (x) V2.
    std::vector<std::vector<CycScalar>> cols;
    for (int n = 0; n < wall(Nw).objects; ++n) {
      auto v1 = irrep_piece(below, e.src_lo, n);
      auto v2 = irrep_piece(above, n, e.src_up);
      for (const auto& x : v1)
        for (const auto& y : v2) {
          std::vector<CycScalar> k(16, CycScalar::zero(N));
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) k[a * 4 + b] = x[a] * y[b];
          cols.push_back(k);
        }
    }
    if (cols.empty()) continue;
    ExactMatrix basis(16, cols.size(), N);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < 16; ++i) basis.at(i, j) = cols[j][i];
    int mult = static_cast<int>(annulus::matrix_rank(compound_action(d, Nw) * basis));
    if (mult > 0) out.push_back({d, mult});
  }
  return out;
}

SelfCheck self_check(const Defect& d) {
  Idem e = idem(d);
  auto piece = irrep_piece(d, e.src_lo, e.src_up);
  SelfCheck s;
  s.grade_dim = static_cast<int>(piece.size());
  if (piece.empty()) return s;
  ExactMatrix basis(4, piece.size(), N);
  for (std::size_t j = 0; j < piece.size(); ++j)
    for (int i = 0; i < 4; ++i) basis.at(i, j) = piece[j][i];
  ExactMatrix act(4, 4, N);
  for (int gh = 0; gh < 4; ++gh) {
    std::vector<CycScalar> unit(4, CycScalar::zero(N));
    unit[gh] = CycScalar::one(N);
    std::vector<CycScalar> col(4, CycScalar::zero(N));
    for (int k = 0; k < 4; ++k) {
      if (e.c[k].is_zero()) continue;
      auto v = left_mul(d.lower, d.upper, k / 2, k % 2, unit);
      for (int i = 0; i < 4; ++i) col[i] += e.c[k] * v[i];
    }
    for (int i = 0; i < 4; ++i) act.at(i, gh) = col[i];
  }
  s.rank = static_cast<int>(annulus::matrix_rank(act * basis));
  return s;
}

}  // namespace tube2
