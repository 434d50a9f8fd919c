#pragma once

#include <string>
#include <vector>

#include "zp_core.hpp"

namespace annulus {

// Arithmetic context for one prime p. Phases are stored as exponents of
// zeta_N with N = p for odd p and N = 4 for p = 2.
class Context {
 public:
  explicit Context(int p);

  int p() const { return p_; }
  int N() const { return N_; }
  // Exponent of zeta_N equal to omega^e.
  int omega(long long e) const { return mod(e, p_) * (N_ / p_); }
  CycScalar phase(long long zeta_exp) const { return CycScalar::root(N_, zeta_exp); }
  CycScalar rational(const mpq_class& r) const { return CycScalar(N_, r); }
  int inv(long long a) const { return inv_mod(a, p_); }
  int r(long long v) const { return mod(v, p_); }

 private:
  int p_;
  int N_;
};

enum class WallKind { T, L, R, F, X };

// The six shapes of wall that index the representation tables.
enum class Shape { T, L, R, F0, X, F };

struct Bimodule {
  WallKind kind = WallKind::T;
  int param = 0;  // q for F, k for X

  Shape shape() const;
  bool invertible() const { return kind == WallKind::X || (kind == WallKind::F && param != 0); }
  bool operator==(const Bimodule& o) const { return kind == o.kind && param == o.param; }
  bool operator!=(const Bimodule& o) const { return !(*this == o); }
  bool operator<(const Bimodule& o) const;
};

Bimodule wall_T();
Bimodule wall_L();
Bimodule wall_R();
Bimodule wall_F(int q, int p);
Bimodule wall_X(int k, int p);

// Canonical names: "T", "L", "R", "F0", "Fq:3", "Xk:2". The parser also
// accepts "F3" and "X2".
std::string wall_name(const Bimodule& b);
Bimodule parse_wall(const std::string& s, int p);
void validate_wall(const Bimodule& b, int p);

// All walls for a given p in canonical order: T, L, R, F0, X_1..X_{p-1}, F_1..F_{p-1}.
std::vector<Bimodule> all_walls(int p);

// Physical reading of the wall on the lattice; documentation only.
std::string interpretation(const Bimodule& b);

// Simple objects. T objects are (a, b); L, R, X objects are a; F has "*".
struct SimpleObject {
  int a = 0;
  int b = 0;
  bool operator==(const SimpleObject& o) const { return a == o.a && b == o.b; }
  bool operator<(const SimpleObject& o) const { return a != o.a ? a < o.a : b < o.b; }
};

int object_count(const Bimodule& m, int p);
// Integer code of an object in [0, object_count): T -> a*p+b, else a.
int object_code(const Bimodule& m, const SimpleObject& o, int p);
SimpleObject object_of(const Bimodule& m, int code, int p);
std::string object_name(const Bimodule& m, int code, int p);
int parse_object(const Bimodule& m, const std::string& s, int p);

std::vector<SimpleObject> simple_objects(const Bimodule& m, int p);
SimpleObject left_act(const Bimodule& m, int g, const SimpleObject& o, int p);
SimpleObject right_act(const Bimodule& m, const SimpleObject& o, int g, int p);
CycScalar associator_phase(const Context& ctx, const Bimodule& m, int g, int h,
                           const SimpleObject& o);

// g |> obj <| h on integer codes.
int act_code(const Bimodule& m, int g, int code, int h, int p);

// Tensor product of walls over Vec(Z/p), as realized by the trivalent tables.
Bimodule tensor(const Bimodule& m, const Bimodule& n, int p);

// The F parameter entering the associator (0 unless F_q).
inline int f_charge(const Bimodule& m) { return m.kind == WallKind::F ? m.param : 0; }

}  // namespace annulus
