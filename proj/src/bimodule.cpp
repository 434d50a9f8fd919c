#include "bimodule.hpp"

#include <cctype>
#include <sstream>

namespace annulus {

Context::Context(int p) : p_(p), N_(p == 2 ? 4 : p) {
  if (!is_prime(p)) fail(ErrorCode::invalid_argument, "p must be prime, got " + std::to_string(p));
}

Shape Bimodule::shape() const {
  switch (kind) {
    case WallKind::T: return Shape::T;
    case WallKind::L: return Shape::L;
    case WallKind::R: return Shape::R;
    case WallKind::X: return Shape::X;
    case WallKind::F: return param == 0 ? Shape::F0 : Shape::F;
  }
  return Shape::T;
}

namespace {
int kind_rank(const Bimodule& b) {
  switch (b.shape()) {
    case Shape::T: return 0;
    case Shape::L: return 1;
    case Shape::R: return 2;
    case Shape::F0: return 3;
    case Shape::X: return 4;
    case Shape::F: return 5;
  }
  return 0;
}
}  // namespace

bool Bimodule::operator<(const Bimodule& o) const {
  int a = kind_rank(*this), b = kind_rank(o);
  return a != b ? a < b : param < o.param;
}

Bimodule wall_T() { return {WallKind::T, 0}; }
Bimodule wall_L() { return {WallKind::L, 0}; }
Bimodule wall_R() { return {WallKind::R, 0}; }
Bimodule wall_F(int q, int p) { return {WallKind::F, mod(q, p)}; }
Bimodule wall_X(int k, int p) {
  if (mod(k, p) == 0) fail(ErrorCode::invalid_argument, "X_k requires k != 0");
  return {WallKind::X, mod(k, p)};
}

std::string wall_name(const Bimodule& b) {
  switch (b.kind) {
    case WallKind::T: return "T";
    case WallKind::L: return "L";
    case WallKind::R: return "R";
    case WallKind::F: return b.param == 0 ? "F0" : "Fq:" + std::to_string(b.param);
    case WallKind::X: return "Xk:" + std::to_string(b.param);
  }
  return "?";
}

void validate_wall(const Bimodule& b, int p) {
  if (b.kind == WallKind::X && (b.param <= 0 || b.param >= p))
    fail(ErrorCode::invalid_argument, "X_k parameter out of range");
  if (b.kind == WallKind::F && (b.param < 0 || b.param >= p))
    fail(ErrorCode::invalid_argument, "F_q parameter out of range");
  if ((b.kind == WallKind::T || b.kind == WallKind::L || b.kind == WallKind::R) && b.param != 0)
    fail(ErrorCode::invalid_argument, "T, L, R take no parameter");
}

Bimodule parse_wall(const std::string& s, int p) {
  auto bad = [&]() -> Bimodule { fail(ErrorCode::parse, "cannot parse wall label '" + s + "'"); };
  if (s == "T") return wall_T();
  if (s == "L") return wall_L();
  if (s == "R") return wall_R();
  if (s.size() < 2 || (s[0] != 'F' && s[0] != 'X')) return bad();
  std::string rest = s.substr(1);
  if (rest.size() >= 2 && std::isalpha(static_cast<unsigned char>(rest[0])) && rest[1] == ':')
    rest = rest.substr(2);
  if (rest.empty()) return bad();
  for (char ch : rest)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return bad();
  long long v = std::stoll(rest);
  if (v >= p) fail(ErrorCode::parse, "wall parameter out of range in '" + s + "'");
  if (s[0] == 'F') return wall_F(static_cast<int>(v), p);
  if (v == 0) fail(ErrorCode::parse, "X_k requires k != 0 in '" + s + "'");
  return wall_X(static_cast<int>(v), p);
}

std::vector<Bimodule> all_walls(int p) {
  std::vector<Bimodule> out{wall_T(), wall_L(), wall_R(), wall_F(0, p)};
  for (int k = 1; k < p; ++k) out.push_back(wall_X(k, p));
  for (int q = 1; q < p; ++q) out.push_back(wall_F(q, p));
  return out;
}

std::string interpretation(const Bimodule& b) {
  switch (b.shape()) {
    case Shape::T: return "Condenses e on both sides";
    case Shape::L: return "Condenses m on left and e on right";
    case Shape::R: return "Condenses e on left and m on right";
    case Shape::F0: return "Condenses m on both sides";
    case Shape::X: return "X_k: e^a m^b -> e^{ka} m^{k^-1 b}";
    case Shape::F: return "F_q = F_1 X_q, F_1: e^a m^b -> e^b m^a";
  }
  return "";
}

int object_count(const Bimodule& m, int p) {
  switch (m.kind) {
    case WallKind::T: return p * p;
    case WallKind::F: return 1;
    default: return p;
  }
}

int object_code(const Bimodule& m, const SimpleObject& o, int p) {
  switch (m.kind) {
    case WallKind::T: return mod(o.a, p) * p + mod(o.b, p);
    case WallKind::F: return 0;
    default: return mod(o.a, p);
  }
}

SimpleObject object_of(const Bimodule& m, int code, int p) {
  switch (m.kind) {
    case WallKind::T: return {code / p, code % p};
    case WallKind::F: return {0, 0};
    default: return {code, 0};
  }
}

std::string object_name(const Bimodule& m, int code, int p) {
  SimpleObject o = object_of(m, code, p);
  switch (m.kind) {
    case WallKind::T: return "(" + std::to_string(o.a) + "," + std::to_string(o.b) + ")";
    case WallKind::F: return "*";
    default: return std::to_string(o.a);
  }
}

int parse_object(const Bimodule& m, const std::string& s, int p) {
  auto bad = [&]() -> int { fail(ErrorCode::parse, "bad object '" + s + "' for wall " + wall_name(m)); };
  if (m.kind == WallKind::F) {
    if (s != "*") return bad();
    return 0;
  }
  try {
    if (m.kind == WallKind::T) {
      if (s.size() < 5 || s.front() != '(' || s.back() != ')') return bad();
      auto comma = s.find(',');
      if (comma == std::string::npos) return bad();
      int a = std::stoi(s.substr(1, comma - 1));
      int b = std::stoi(s.substr(comma + 1, s.size() - comma - 2));
      return object_code(m, {a, b}, p);
    }
    std::size_t used = 0;
    int a = std::stoi(s, &used);
    if (used != s.size()) return bad();
    return mod(a, p);
  } catch (const std::logic_error&) {
    return bad();
  }
}

std::vector<SimpleObject> simple_objects(const Bimodule& m, int p) {
  std::vector<SimpleObject> out;
  for (int c = 0; c < object_count(m, p); ++c) out.push_back(object_of(m, c, p));
  return out;
}

SimpleObject left_act(const Bimodule& m, int g, const SimpleObject& o, int p) {
  switch (m.kind) {
    case WallKind::T: return {mod(o.a + g, p), o.b};
    case WallKind::L: return o;
    case WallKind::R: return {mod(g + o.a, p), 0};
    case WallKind::F: return o;
    case WallKind::X: return {mod(o.a + g, p), 0};
  }
  return o;
}

SimpleObject right_act(const Bimodule& m, const SimpleObject& o, int g, int p) {
  switch (m.kind) {
    case WallKind::T: return {o.a, mod(o.b + g, p)};
    case WallKind::L: return {mod(o.a + g, p), 0};
    case WallKind::R: return o;
    case WallKind::F: return o;
    case WallKind::X: return {mod(o.a + static_cast<long long>(m.param) * g, p), 0};
  }
  return o;
}

CycScalar associator_phase(const Context& ctx, const Bimodule& m, int g, int h,
                           const SimpleObject&) {
  if (m.kind != WallKind::F) return CycScalar::one(ctx.N());
  return ctx.phase(ctx.omega(static_cast<long long>(m.param) * g * h));
}

int act_code(const Bimodule& m, int g, int code, int h, int p) {
  switch (m.kind) {
    case WallKind::T: return mod(code / p + g, p) * p + mod(code % p + h, p);
    case WallKind::L: return mod(code + h, p);
    case WallKind::R: return mod(code + g, p);
    case WallKind::F: return 0;
    case WallKind::X: return mod(code + g + static_cast<long long>(m.param) * h, p);
  }
  return code;
}

Bimodule tensor(const Bimodule& m, const Bimodule& n, int p) {
  Shape a = m.shape(), b = n.shape();
  auto pick = [&](Shape s) {
    switch (s) {
      case Shape::T: return wall_T();
      case Shape::L: return wall_L();
      case Shape::R: return wall_R();
      default: return wall_F(0, p);
    }
  };
  // Invertible with invertible.
  if (m.invertible() && n.invertible()) {
    if (a == Shape::X && b == Shape::X) return wall_X(m.param * n.param, p);
    if (a == Shape::F && b == Shape::F) return wall_X(static_cast<long long>(inv_mod(m.param, p)) * n.param % p, p);
    if (a == Shape::X && b == Shape::F) return wall_F(static_cast<long long>(inv_mod(m.param, p)) * n.param % p, p);
    return wall_F(m.param * n.param, p);
  }
  // Left factor decides the left side, right factor the right side. Each
  // noninvertible wall is a pair (left boundary, right boundary); an invertible
  // factor swaps the relevant side when it is of F type.
  auto left_of = [](Shape s) { return (s == Shape::T || s == Shape::R) ? 'e' : 'm'; };
  auto right_of = [](Shape s) { return (s == Shape::T || s == Shape::L) ? 'e' : 'm'; };
  char l, r;
  if (m.invertible()) {
    // Invertible on the left: the right side is n's right side; the left side
    // is n's left side seen through m.
    char nl = left_of(b);
    l = (a == Shape::F) ? (nl == 'e' ? 'm' : 'e') : nl;
    r = right_of(b);
  } else if (n.invertible()) {
    char mr = right_of(a);
    r = (b == Shape::F) ? (mr == 'e' ? 'm' : 'e') : mr;
    l = left_of(a);
  } else {
    l = left_of(a);
    r = right_of(b);
  }
  if (l == 'e' && r == 'e') return pick(Shape::T);
  if (l == 'm' && r == 'e') return pick(Shape::L);
  if (l == 'e' && r == 'm') return pick(Shape::R);
  return pick(Shape::F0);
}

}  // namespace annulus
