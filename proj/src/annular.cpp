#include "annular.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace annulus {

namespace {

int shape_index(Shape s) {
  switch (s) {
    case Shape::T: return 0;
    case Shape::L: return 1;
    case Shape::R: return 2;
    case Shape::F0: return 3;
    case Shape::X: return 4;
    case Shape::F: return 5;
  }
  return 0;
}

// Bivalent families: lower*6 + upper over (T, L, R, F0, X, F), with the
// unequal-parameter X/X and F/F cells split off.
enum Fam {
  TT, TL, TR, TF0, TX, TF,
  LT, LL, LR, LF0, LX, LF,
  RT, RL, RR, RF0, RX, RF,
  F0T, F0L, F0R, F0F0, F0X, F0F,
  XT, XL, XR, XF0, XXs, XF,
  FT, FL, FR, FF0, FX, FFs,
  XXd, FFd
};

const int kFree[38] = {2, 2, 2, 2, 2, 2, 2, 1, 2, 1, 2, 1, 2, 2, 1, 1, 2, 1, 2,
                       1, 1, 0, 1, 1, 2, 2, 2, 1, 1, 1, 2, 1, 1, 1, 1, 0, 2, 1};
const int kArity[38] = {2, 1, 1, 0, 1, 0, 1, 2, 0, 1, 0, 1, 1, 0, 2, 1, 0, 1, 0,
                        1, 1, 2, 1, 0, 1, 0, 0, 1, 2, 1, 0, 1, 1, 0, 1, 2, 0, 0};

bool internal_family(int f) { return f == F0F || f == FF0 || f == FFd; }

int family_of(const Bimodule& lo, const Bimodule& up) {
  int f = shape_index(lo.shape()) * 6 + shape_index(up.shape());
  if (f == XXs && lo.param != up.param) return XXd;
  if (f == FFs && lo.param != up.param) return FFd;
  return f;
}

std::vector<std::string> names_for(int fam) {
  switch (fam) {
    case TT: return {"a", "b"};
    case LL: case RR: case XXs: return {"a", "x"};
    case F0F0: case FFs: return {"x", "y"};
    case TL: case TR: case TX: case LT: case RT: case XT: return {"a"};
    default: break;
  }
  if (kArity[fam] == 1) return {"x"};
  return {};
}

long long key_of(const std::array<int, 3>& legs, int internal) {
  return (static_cast<long long>(legs[0]) << 48) ^ (static_cast<long long>(legs[1]) << 32) ^
         (static_cast<long long>(legs[2]) << 16) ^ internal;
}

std::string shape_token(const Bimodule& b, char letter) {
  switch (b.shape()) {
    case Shape::T: return "T";
    case Shape::L: return "L";
    case Shape::R: return "R";
    case Shape::F0: return "F0";
    case Shape::X: return std::string("X") + letter;
    case Shape::F: return std::string("F") + letter;
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Labels

bool DefectLabel::operator<(const DefectLabel& o) const {
  if (lower != o.lower) return lower < o.lower;
  if (upper != o.upper) return upper < o.upper;
  if (params != o.params) return params < o.params;
  return corners < o.corners;
}

std::vector<std::string> defect_param_names(const Bimodule& lower, const Bimodule& upper) {
  return names_for(family_of(lower, upper));
}

std::string defect_name(const DefectLabel& d) {
  int fam = family_of(d.lower, d.upper);
  bool shared = (fam == XXs || fam == FFs);
  char lo_letter = d.lower.kind == WallKind::F ? 'q' : 'k';
  char up_letter = shared ? lo_letter : (d.upper.kind == WallKind::F ? 'r' : 'l');
  std::string out = shape_token(d.lower, lo_letter) + shape_token(d.upper, up_letter);

  std::vector<std::string> names = names_for(fam);
  std::ostringstream args;
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    if (i) args << ",";
    args << (i < names.size() ? names[i] : "p" + std::to_string(i)) << "=" << d.params[i];
  }
  std::vector<std::string> wparams;
  bool lo_has = d.lower.shape() == Shape::X || d.lower.shape() == Shape::F;
  bool up_has = d.upper.shape() == Shape::X || d.upper.shape() == Shape::F;
  if (lo_has) wparams.push_back(std::string(1, lo_letter) + "=" + std::to_string(d.lower.param));
  if (up_has && !shared)
    wparams.push_back(std::string(1, up_letter) + "=" + std::to_string(d.upper.param));
  std::string a = args.str();
  if (!a.empty() || !wparams.empty()) {
    out += "(" + a;
    if (!wparams.empty()) {
      out += ";";
      for (std::size_t i = 0; i < wparams.size(); ++i) out += (i ? "," : "") + wparams[i];
    }
    out += ")";
  }
  if (!d.corners.empty()) {
    out += "[";
    for (std::size_t i = 0; i < d.corners.size(); ++i)
      out += (i ? "," : "") + d.corners[i].name + "=" + std::to_string(d.corners[i].value);
    out += "]";
  }
  return out;
}

namespace {

struct WallToken {
  char kind;         // T L R F X
  char letter = 0;   // symbolic parameter name, if any
  int value = -1;    // literal parameter, if any
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

long long parse_int(const std::string& s, const std::string& ctx) {
  std::string t = trim(s);
  try {
    std::size_t used = 0;
    long long v = std::stoll(t, &used);
    if (used == t.size()) return v;
  } catch (const std::logic_error&) {
  }
  fail(ErrorCode::parse, "expected an integer in '" + ctx + "', got '" + t + "'");
}

}  // namespace

DefectLabel parse_defect(const std::string& raw, int p) {
  std::string s = trim(raw);
  std::size_t i = 0;
  auto bad = [&](const std::string& why) -> DefectLabel {
    fail(ErrorCode::parse, "cannot parse defect '" + raw + "': " + why);
  };
  std::vector<WallToken> walls;
  while (walls.size() < 2) {
    if (i >= s.size()) return bad("expected two walls");
    char ch = s[i];
    if (ch == 'T' || ch == 'L' || ch == 'R') {
      walls.push_back({ch});
      ++i;
    } else if (ch == 'F' || ch == 'X') {
      WallToken t{ch};
      ++i;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        t.value = static_cast<int>(std::stol(s.substr(i, j - i)));
        i = j;
      } else if (i < s.size() && std::islower(static_cast<unsigned char>(s[i]))) {
        t.letter = s[i++];
      } else {
        return bad("wall parameter missing");
      }
      walls.push_back(t);
    } else {
      return bad("unexpected character");
    }
  }
  std::string inner, corner_txt;
  if (i < s.size() && s[i] == '(') {
    std::size_t close = s.find(')', i);
    if (close == std::string::npos) return bad("missing ')'");
    inner = s.substr(i + 1, close - i - 1);
    i = close + 1;
  }
  if (i < s.size() && s[i] == '[') {
    std::size_t close = s.find(']', i);
    if (close == std::string::npos || close + 1 != s.size()) return bad("bad corner list");
    corner_txt = s.substr(i + 1, close - i - 1);
    i = close + 1;
  }
  if (i != s.size()) return bad("trailing characters");

  std::string name_part = inner, wall_part;
  auto semi = inner.find(';');
  if (semi != std::string::npos) {
    name_part = inner.substr(0, semi);
    wall_part = inner.substr(semi + 1);
  }
  std::map<char, int> letters;
  if (!trim(wall_part).empty()) {
    for (const auto& item : split(wall_part, ',')) {
      auto eq = item.find('=');
      std::string k = trim(item.substr(0, eq == std::string::npos ? 0 : eq));
      if (eq == std::string::npos || k.size() != 1) return bad("wall parameters must be letter=value");
      letters[k[0]] = mod(parse_int(item.substr(eq + 1), raw), p);
    }
  }
  auto to_wall = [&](const WallToken& t) -> Bimodule {
    switch (t.kind) {
      case 'T': return wall_T();
      case 'L': return wall_L();
      case 'R': return wall_R();
      default: break;
    }
    int v = t.value;
    if (t.letter) {
      auto it = letters.find(t.letter);
      if (it == letters.end()) bad(std::string("no value for wall parameter ") + t.letter);
      v = it->second;
    }
    if (v < 0 || v >= p) bad("wall parameter out of range");
    if (t.kind == 'X') {
      if (v == 0) bad("X_k needs k != 0");
      return wall_X(v, p);
    }
    return wall_F(v, p);
  };
  DefectLabel d;
  d.lower = to_wall(walls[0]);
  d.upper = to_wall(walls[1]);
  if (!trim(name_part).empty()) {
    for (const auto& item : split(name_part, ',')) {
      auto eq = item.find('=');
      std::string v = eq == std::string::npos ? item : item.substr(eq + 1);
      d.params.push_back(mod(parse_int(v, raw), p));
    }
  }
  if (!trim(corner_txt).empty()) {
    for (const auto& item : split(corner_txt, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) return bad("corner entries must be name=value");
      d.corners.push_back({trim(item.substr(0, eq)), mod(parse_int(item.substr(eq + 1), raw), p)});
    }
  }
  validate_defect(d, p);
  return d;
}

void validate_defect(const DefectLabel& d, int p) {
  validate_wall(d.lower, p);
  validate_wall(d.upper, p);
  int fam = family_of(d.lower, d.upper);
  if (static_cast<int>(d.params.size()) != kArity[fam])
    fail(ErrorCode::invalid_argument, "defect " + defect_name(d) + " expects " +
                                          std::to_string(kArity[fam]) + " parameter(s)");
  for (int v : d.params)
    if (v < 0 || v >= p) fail(ErrorCode::invalid_argument, "defect parameter out of range");
}

DefectLabel trivial_defect(const Bimodule& w) { return DefectLabel{w, w, {0, 0}, {}}; }

std::vector<DefectLabel> enumerate_defects(const Bimodule& lower, const Bimodule& upper, int p) {
  int n = kArity[family_of(lower, upper)];
  std::vector<DefectLabel> out;
  if (n == 0) out.push_back({lower, upper, {}, {}});
  if (n == 1)
    for (int a = 0; a < p; ++a) out.push_back({lower, upper, {a}, {}});
  if (n == 2)
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) out.push_back({lower, upper, {a, b}, {}});
  return out;
}

// ---------------------------------------------------------------------------
// VertexRep

int VertexRep::index_of(const std::array<int, 3>& legs, int internal) const {
  auto it = index_.find(key_of(legs, has_internal_ ? internal : 0));
  return it == index_.end() ? -1 : it->second;
}

void VertexRep::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    long long k = key_of(basis_[i].legs, basis_[i].internal);
    if (!index_.emplace(k, static_cast<int>(i)).second)
      fail(ErrorCode::internal, "duplicate basis labels in " + label());
  }
}

std::pair<int, int> VertexRep::leg_shift(int leg, const std::array<int, 3>& x) const {
  int a = x[0], b = x[1], c = x[2];
  switch (tmpl_) {
    case Template::bivalent: return {a, b};
    case Template::tri21:
      if (leg == 0) return {a, c};
      if (leg == 1) return {-c, b};
      return {a, b};
    case Template::tri12:
      if (leg == 0) return {a, -c};
      if (leg == 1) return {c, b};
      return {a, b};
  }
  return {0, 0};
}

bool VertexRep::leg_incoming(int leg) const {
  switch (tmpl_) {
    case Template::bivalent: return leg == 0;
    case Template::tri21: return leg != 2;
    case Template::tri12: return leg == 2;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bivalent table

BivalentRep::BivalentRep(const Context& ctx, const DefectLabel& d)
    : VertexRep(ctx, Template::bivalent), defect_(d) {
  validate_defect(d, ctx.p());
  defect_.corners.clear();
  family_ = family_of(d.lower, d.upper);
  nfree_ = kFree[family_];
  has_internal_ = internal_family(family_);
  walls_ = {d.lower, d.upper, Bimodule{}};
  int p = ctx.p();
  int total = 1;
  for (int i = 0; i < nfree_; ++i) total *= p;
  for (int idx = 0; idx < total; ++idx) {
    LocalVector v;
    int t = idx;
    for (int i = nfree_ - 1; i >= 0; --i) {
      v.free[i] = t % p;
      t /= p;
    }
    auto ob = objects_of(v.free);
    v.legs = {ob[0], ob[1], 0};
    v.internal = has_internal_ ? v.free[0] : 0;
    basis_.push_back(v);
  }
  build_index();
}

int BivalentRep::index_of_free(const std::array<int, 3>& f) const {
  int p = ctx_.p(), idx = 0;
  for (int i = 0; i < nfree_; ++i) idx = idx * p + mod(f[i], p);
  return idx;
}

std::array<int, 2> BivalentRep::objects_of(const std::array<int, 3>& f) const {
  int p = ctx_.p();
  auto r = [p](long long v) { return mod(v, p); };
  auto T = [&](long long a, long long b) { return r(a) * p + r(b); };
  long long m = f[0], n = f[1];
  const auto& P = defect_.params;
  long long P0 = P.size() > 0 ? P[0] : 0;
  long long k = defect_.lower.param, l = defect_.upper.param;
  switch (family_) {
    case TT: return {T(m, n), T(P0 + m, P[1] + n)};
    case TL: return {T(m, n), r(P0 + n)};
    case TR: return {T(m, n), r(P0 + m)};
    case TF0: case TF: return {T(m, n), 0};
    case TX: return {T(m, n), r(P0 + m + l * n)};
    case LT: return {r(n), T(m, P0 + n)};
    case LL: case RR: case XXs: return {r(m), r(P0 + m)};
    case LR: return {r(n), r(m)};
    case LF0: case LF: case RF0: case RF: case XF0: case XF: return {r(m), 0};
    case LX: return {r(n), r(m + l * n)};
    case RT: return {r(m), T(P0 + m, n)};
    case RL: return {r(m), r(n)};
    case RX: return {r(m), r(m + l * n)};
    case F0T: case FT: return {0, T(m, n)};
    case F0L: case F0R: case F0X: case FL: case FR: case FX: return {0, r(m)};
    case F0F0: case FFs: case F0F: case FF0: case FFd: return {0, 0};
    case XT: return {r(m + k * n), T(P0 + m, n)};
    case XL: return {r(m + k * n), r(n)};
    case XR: return {r(m + k * n), r(m)};
    case XXd: return {r(m), r(m + (l - k) * n)};
  }
  return {0, 0};
}

Action BivalentRep::act(int index, const std::array<int, 3>& args) const {
  const Context& c = ctx_;
  long long g = mod(args[0], c.p()), h = mod(args[1], c.p());
  const auto& f = basis_[index].free;
  long long m = f[0], n = f[1];
  const auto& P = defect_.params;
  long long x1 = P.size() == 1 ? P[0] : (P.size() == 2 ? P[1] : 0);  // the "x" parameter
  long long X0 = P.size() == 2 ? P[0] : 0, Y1 = P.size() == 2 ? P[1] : 0;
  long long k = defect_.lower.param, l = defect_.upper.param;
  long long q = f_charge(defect_.lower), r = f_charge(defect_.upper);
  std::array<int, 3> nf = f;
  long long ph = 0;  // omega exponent
  int extra = 0;     // zeta exponent (Theta factors)
  switch (family_) {
    case TT: case TL: case TR: case TF0: case TX:
    case LT: case LR: case LX: case RT: case RL: case RX:
    case F0T: case XT: case XL: case XR:
      nf = {int(m + g), int(n + h), 0};
      break;
    case TF:
      nf = {int(m + g), int(n + h), 0};
      ph = -r * g * n;
      break;
    case FT:
      nf = {int(m + g), int(n + h), 0};
      ph = q * g * n;
      break;
    case XXd:
      nf = {int(m + g + k * h), int(n + h), 0};
      break;
    case LL: case LF0: case F0L:
      nf[0] = int(m + h);
      ph = -g * x1;
      break;
    case LF:
      nf[0] = int(m + h);
      ph = -g * (x1 + m * r);
      break;
    case FL:
      nf[0] = int(m + h);
      ph = g * (m * q - x1);
      break;
    case RR: case RF0: case F0R:
      nf[0] = int(m + g);
      ph = h * x1;
      break;
    case RF:
      nf[0] = int(m + g);
      ph = h * (x1 + r * (m + g));
      break;
    case FR:
      nf[0] = int(m + g);
      ph = h * (x1 - q * (m + g));
      break;
    case F0X:
      nf[0] = int(m + g + l * h);
      ph = -g * x1;
      break;
    case FX:
      nf[0] = int(m + g + l * h);
      extra = theta_exp(c, int(x1), int(-q * l), int(h));
      ph = -q * h * (g + m);
      break;
    case XF0:
      nf[0] = int(m + g + k * h);
      ph = -g * x1;
      break;
    case XXs:
      nf[0] = int(m + g + k * h);
      ph = h * x1;
      break;
    case XF:
      nf[0] = int(m + g + k * h);
      extra = theta_exp(c, int(x1), int(k * r), int(h));
      ph = h * r * (g + m);
      break;
    case F0F0: case FFs:
      ph = -g * X0 + h * Y1;
      break;
    case F0F: case FF0: case FFd:
      nf[0] = int(m + g);
      ph = h * (r - q) * (m + g);
      break;
  }
  return {index_of_free(nf), mod(c.omega(ph) + extra, c.N())};
}

// ---------------------------------------------------------------------------
// Trivalent tables

namespace {

int row_of(Shape a, Shape b) {
  static const int table[6][6] = {
      // right:  T   L   R  F0   X   F
      /* T  */ {1, 2, 17, 18, 3, 19},
      /* L  */ {9, 10, 25, 26, 11, 27},
      /* R  */ {4, 5, 20, 21, 22, 6},
      /* F0 */ {12, 13, 28, 29, 30, 14},
      /* X  */ {7, 15, 23, 31, 33, 35},
      /* F  */ {16, 8, 32, 24, 36, 34},
  };
  return table[shape_index(a)][shape_index(b)];
}

const int kTriFree[37] = {0, 3, 3, 3, 3, 2, 2, 3, 2, 2, 2, 2, 2, 1, 1, 2, 2, 2, 2, 2,
                          2, 1, 2, 2, 1, 1, 1, 1, 1, 0, 1, 1, 1, 2, 1, 1, 1};

bool row_has_mu(int row) {
  return row == 1 || row == 5 || row == 9 || row == 13 || row == 17 || row == 21 || row == 25 ||
         row == 29;
}

}  // namespace

bool trivalent_row_exists(const Bimodule& left, const Bimodule& right) {
  return row_of(left.shape(), right.shape()) > 0;
}

bool trivalent_has_corner(const Bimodule& left, const Bimodule& right) {
  return row_has_mu(row_of(left.shape(), right.shape()));
}

TrivalentRep::TrivalentRep(const Context& ctx, Template t, const Bimodule& left,
                           const Bimodule& right, int mu)
    : VertexRep(ctx, t) {
  if (t == Template::bivalent) fail(ErrorCode::invalid_argument, "trivalent template expected");
  validate_wall(left, ctx.p());
  validate_wall(right, ctx.p());
  row_ = row_of(left.shape(), right.shape());
  nfree_ = kTriFree[row_];
  has_mu_ = row_has_mu(row_);
  mu_ = has_mu_ ? mod(mu, ctx.p()) : 0;
  walls_ = {left, right, tensor(left, right, ctx.p())};
  int p = ctx.p();
  int total = 1;
  for (int i = 0; i < nfree_; ++i) total *= p;
  for (int idx = 0; idx < total; ++idx) {
    LocalVector v;
    int tt = idx;
    for (int i = nfree_ - 1; i >= 0; --i) {
      v.free[i] = tt % p;
      tt /= p;
    }
    v.legs = legs_of(v.free);
    basis_.push_back(v);
  }
  build_index();
}

std::string trivalent_name(Template t, const Bimodule& left, const Bimodule& right,
                           const Bimodule& third, bool has_mu, int mu) {
  std::string corner = has_mu ? "[mu=" + std::to_string(mu) + "]" : "";
  if (t == Template::tri21)
    return wall_name(left) + "," + wall_name(right) + "->" + wall_name(third) + corner;
  return wall_name(third) + "->" + wall_name(left) + "," + wall_name(right) + corner;
}

std::string TrivalentRep::label() const {
  return trivalent_name(tmpl_, walls_[0], walls_[1], walls_[2], has_mu_, mu_);
}

int TrivalentRep::index_of_free(const std::array<int, 3>& f) const {
  int p = ctx_.p(), idx = 0;
  for (int i = 0; i < nfree_; ++i) idx = idx * p + mod(f[i], p);
  return idx;
}

std::array<int, 3> TrivalentRep::legs_of(const std::array<int, 3>& f) const {
  int p = ctx_.p();
  auto r = [p](long long v) { return mod(v, p); };
  auto T = [&](long long a, long long b) { return r(a) * p + r(b); };
  long long k = walls_[0].param, l = walls_[1].param;
  long long mu = mu_;
  long long f0 = f[0], f1 = f[1], f2 = f[2];
  if (tmpl_ == Template::tri21) {
    switch (row_) {
      case 1: return {T(f0, f1), T(mu - f1, f2), T(f0, f2)};
      case 2: return {T(f0, f1), r(f2), T(f0, f2)};
      case 3: return {T(f0, l * f1 - f2), r(f2), T(f0, f1)};
      case 4: return {r(f0), T(f1, f2), T(f0, f2)};
      case 5: return {r(f0), r(f1), T(f0, f1)};
      case 6: return {r(f0), 0, T(f0, f1)};
      case 7: return {r(f0), T(f1, f2), T(k * f1 + f0, f2)};
      case 8: return {0, r(f1), T(f0, f1)};
      case 9: return {r(f0), T(mu - f0, f1), r(f1)};
      case 10: return {r(f0), r(f1), r(f1)};
      case 11: return {r(l * f0 - f1), r(f1), r(f0)};
      case 12: return {0, T(f0, f1), r(f1)};
      case 13: return {0, r(f0), r(f0)};
      case 14: return {0, 0, r(f0)};
      case 15: return {r(f0), r(f1), r(f1)};
      case 16: return {0, T(f0, f1), r(f1)};
      case 17: return {T(f0, f1), r(mu - f1), r(f0)};
      case 18: case 19: return {T(f0, f1), 0, r(f0)};
      case 20: return {r(f0), r(f1), r(f0)};
      case 21: return {r(f0), 0, r(f0)};
      case 22: return {r(f0), r(f1), r(f0)};
      case 23: return {r(f0), r(f1), r(k * f1 + f0)};
      case 24: return {0, 0, r(f0)};
      case 25: return {r(f0), r(mu - f0), 0};
      case 26: case 27: return {r(f0), 0, 0};
      case 28: return {0, r(f0), 0};
      case 29: return {0, 0, 0};
      case 30: return {0, r(f0), 0};
      case 31: return {r(f0), 0, 0};
      case 32: return {0, r(f0), 0};
      case 33: return {r(f0), r(f1), r(k * f1 + f0)};
      case 34: return {0, 0, r(f0)};
      case 35: return {r(f0), 0, 0};
      case 36: return {0, r(f0), 0};
    }
  } else {
    long long il = walls_[1].kind == WallKind::X ? inv_mod(l, p) : 0;
    long long ik = walls_[0].kind == WallKind::X ? inv_mod(k, p) : 0;
    switch (row_) {
      case 1: return {T(f0, f1), T(mu - f1, f2), T(f0, f2)};
      case 2: return {T(f0, f1), r(f2), T(f0, f2)};
      case 3: return {T(f0, f1), r(f2), T(f0, (f2 + f1) * il)};
      case 4: return {r(f0), T(f1, f2), T(f0, f2)};
      case 5: return {r(f0), r(f1), T(f0, f1)};
      case 6: return {r(f0), 0, T(f0, f1)};
      case 7: return {r(f0), T((f1 - f0) * ik, f2), T(f1, f2)};
      case 8: return {0, r(f1), T(f0, f1)};
      case 9: return {r(f0), T(mu - f0, f1), r(f1)};
      case 10: return {r(f0), r(f1), r(f1)};
      case 11: return {r(f0), r(f1), r((f1 + f0) * il)};
      case 12: return {0, T(f0, f1), r(f1)};
      case 13: return {0, r(f0), r(f0)};
      case 14: return {0, 0, r(f0)};
      case 15: return {r(f0), r(f1), r(f1)};
      case 16: return {0, T(f0, f1), r(f1)};
      case 17: return {T(f0, f1), r(mu - f1), r(f0)};
      case 18: case 19: return {T(f0, f1), 0, r(f0)};
      case 20: return {r(f0), r(f1), r(f0)};
      case 21: return {r(f0), 0, r(f0)};
      case 22: return {r(f0), r(f1), r(f0)};
      case 23: return {r(f0), r((f1 - f0) * ik), r(f1)};
      case 24: return {0, 0, r(f0)};
      case 25: return {r(f0), r(mu - f0), 0};
      case 26: case 27: return {r(f0), 0, 0};
      case 28: return {0, r(f0), 0};
      case 29: return {0, 0, 0};
      case 30: return {0, r(f0), 0};
      case 31: return {r(f0), 0, 0};
      case 32: return {0, r(f0), 0};
      case 33: return {r(f0), r(f1), r(k * f1 + f0)};
      case 34: return {0, 0, r(f0)};
      case 35: return {r(f0), 0, 0};
      case 36: return {0, r(f0), 0};
    }
  }
  return {0, 0, 0};
}

Action TrivalentRep::act(int index, const std::array<int, 3>& args) const {
  const Context& cx = ctx_;
  int p = cx.p();
  long long a = mod(args[0], p), b = mod(args[1], p), c = mod(args[2], p);
  const auto& f = basis_[index].free;
  long long f0 = f[0], f1 = f[1], f2 = f[2];
  long long k = walls_[0].param, l = walls_[1].param;
  long long q = f_charge(walls_[0]), r = f_charge(walls_[1]);
  long long mu = mu_;
  std::array<long long, 3> nf{f0, f1, f2};
  long long ph = 0;
  if (tmpl_ == Template::tri21) {
    switch (row_) {
      case 1: case 2: nf = {f0 + a, f1 + c, f2 + b}; break;
      case 3: nf = {f0 + a, f1 + b, f2 + b * l - c}; break;
      case 4: nf = {f0 + a, f1 - c, f2 + b}; break;
      case 5: nf = {f0 + a, f1 + b, 0}; ph = -c * mu; break;
      case 6: nf = {f0 + a, f1 + b, 0}; ph = -c * r * (b + f1); break;
      case 7: nf = {f0 + a + c * k, f1 - c, f2 + b}; break;
      case 8: nf = {f0 + a, f1 + b, 0}; ph = -c * q * (a + f0); break;
      case 9: case 10: nf = {f0 + c, f1 + b, 0}; break;
      case 11: nf = {f0 + b, f1 + b * l - c, 0}; break;
      case 12: nf = {f0 - c, f1 + b, 0}; break;
      case 13: nf = {f0 + b, 0, 0}; ph = -c * mu; break;
      case 14: nf = {f0 + b, 0, 0}; ph = -c * r * (b + f0); break;
      case 15: nf = {f0 + a + c * k, f1 + b, 0}; break;
      case 16: nf = {f0 - c, f1 + b, 0}; ph = -a * q * f0; break;
      case 17: case 18: nf = {f0 + a, f1 + c, 0}; break;
      case 19: nf = {f0 + a, f1 + c, 0}; ph = b * r * f1; break;
      case 20: nf = {f0 + a, f1 - c, 0}; break;
      case 21: nf = {f0 + a, 0, 0}; ph = -c * mu; break;
      case 22: nf = {f0 + a, f1 + b * l - c, 0}; break;
      case 23: nf = {f0 + a + c * k, f1 - c, 0}; break;
      case 24: nf = {f0 + a, 0, 0}; ph = -c * q * (a + f0); break;
      case 25: case 26: nf = {f0 + c, 0, 0}; break;
      case 27: nf = {f0 + c, 0, 0}; ph = b * r * f0; break;
      case 28: nf = {f0 - c, 0, 0}; break;
      case 29: ph = -c * mu; break;
      case 30: nf = {f0 + b * l - c, 0, 0}; break;
      case 31: nf = {f0 + a + c * k, 0, 0}; break;
      case 32: nf = {f0 - c, 0, 0}; ph = -a * q * f0; break;
      case 33: nf = {f0 + a + c * k, f1 + b * l - c, 0}; break;
      case 34:
        nf = {f0 + a + b * r * inv_mod(q, p), 0, 0};
        ph = -c * (q * (a + f0) + b * r);
        break;
      case 35:
        nf = {f0 + a + c * k, 0, 0};
        ph = b * r * (a + f0) * inv_mod(k, p);
        break;
      case 36: nf = {f0 + b * l - c, 0, 0}; ph = -a * f0 * q; break;
    }
  } else {
    switch (row_) {
      case 1: case 2: nf = {f0 + a, f1 - c, f2 + b}; break;
      case 3: nf = {f0 + a, f1 - c, f2 + b * l + c}; break;
      case 4: nf = {f0 + a, f1 + c, f2 + b}; break;
      case 5: nf = {f0 + a, f1 + b, 0}; ph = -c * mu; break;
      case 6: nf = {f0 + a, f1 + b, 0}; ph = -c * r * (b + f1); break;
      case 7: nf = {f0 + a - c * k, f1 + a, f2 + b}; break;
      case 8: nf = {f0 + a, f1 + b, 0}; ph = -c * q * (a + f0); break;
      case 9: case 10: nf = {f0 - c, f1 + b, 0}; break;
      case 11: nf = {f0 - c, f1 + b * l + c, 0}; break;
      case 12: nf = {f0 + c, f1 + b, 0}; break;
      case 13: nf = {f0 + b, 0, 0}; ph = -c * mu; break;
      case 14: nf = {f0 + b, 0, 0}; ph = -c * r * (b + f0); break;
      case 15: nf = {f0 + a - c * k, f1 + b, 0}; break;
      case 16: nf = {f0 + c, f1 + b, 0}; ph = a * q * f0; break;
      case 17: case 18: nf = {f0 + a, f1 - c, 0}; break;
      case 19: nf = {f0 + a, f1 - c, 0}; ph = -b * r * f1; break;
      case 20: nf = {f0 + a, f1 + c, 0}; break;
      case 21: nf = {f0 + a, 0, 0}; ph = -c * mu; break;
      case 22: nf = {f0 + a, f1 + b * l + c, 0}; break;
      case 23: nf = {f0 + a - c * k, f1 + a, 0}; break;
      case 24: nf = {f0 + a, 0, 0}; ph = -c * q * (a + f0); break;
      case 25: case 26: nf = {f0 - c, 0, 0}; break;
      case 27: nf = {f0 - c, 0, 0}; ph = -b * r * f0; break;
      case 28: nf = {f0 + c, 0, 0}; break;
      case 29: ph = -c * mu; break;
      case 30: nf = {f0 + b * l + c, 0, 0}; break;
      case 31: nf = {f0 + a - c * k, 0, 0}; break;
      case 32: nf = {f0 + c, 0, 0}; ph = a * q * f0; break;
      case 33: nf = {f0 + a - c * k, f1 + b * l + c, 0}; break;
      case 34:
        nf = {f0 + a + b * r * inv_mod(q, p), 0, 0};
        ph = -c * (q * (a + f0) + b * r);
        break;
      case 35:
        nf = {f0 + a - c * k, 0, 0};
        ph = -b * r * (a + f0) * inv_mod(k, p);
        break;
      case 36: nf = {f0 + c + b * l, 0, 0}; ph = a * f0 * q; break;
    }
  }
  std::array<int, 3> out{mod(nf[0], p), mod(nf[1], p), mod(nf[2], p)};
  return {index_of_free(out), cx.omega(ph)};
}

std::array<int, 3> TrivalentRep::tabulated_image_legs(int index,
                                                      const std::array<int, 3>& args) const {
  Action a = act(index, args);
  return basis_[a.index].legs;
}

std::shared_ptr<VertexRep> parse_vertex_rep(const Context& ctx, Template t, const std::string& s) {
  if (t == Template::bivalent) return std::make_shared<BivalentRep>(ctx, parse_defect(s, ctx.p()));
  std::string body = s;
  int mu = 0;
  bool has_mu = false;
  auto lb = body.find('[');
  if (lb != std::string::npos) {
    auto rb = body.find(']', lb);
    if (rb == std::string::npos) fail(ErrorCode::parse, "bad corner in '" + s + "'");
    std::string inner = body.substr(lb + 1, rb - lb - 1);
    auto eq = inner.find('=');
    if (eq == std::string::npos) fail(ErrorCode::parse, "bad corner in '" + s + "'");
    mu = mod(parse_int(inner.substr(eq + 1), s), ctx.p());
    has_mu = true;
    body = body.substr(0, lb);
  }
  auto arrow = body.find("->");
  if (arrow == std::string::npos) fail(ErrorCode::parse, "trivalent label needs '->': '" + s + "'");
  std::string lhs = trim(body.substr(0, arrow)), rhs = trim(body.substr(arrow + 2));
  std::string pair = t == Template::tri21 ? lhs : rhs;
  std::string single = t == Template::tri21 ? rhs : lhs;
  auto comma = pair.find(',');
  if (comma == std::string::npos) fail(ErrorCode::parse, "trivalent label needs two walls: '" + s + "'");
  Bimodule left = parse_wall(trim(pair.substr(0, comma)), ctx.p());
  Bimodule right = parse_wall(trim(pair.substr(comma + 1)), ctx.p());
  Bimodule third = parse_wall(single, ctx.p());
  auto rep = std::make_shared<TrivalentRep>(ctx, t, left, right, mu);
  if (rep->leg_wall(2) != third)
    fail(ErrorCode::wall_mismatch, "'" + s + "': " + wall_name(left) + " x " + wall_name(right) +
                                       " is " + wall_name(rep->leg_wall(2)));
  if (has_mu && !rep->has_corner())
    fail(ErrorCode::invalid_argument, "'" + s + "' has no corner parameter");
  return rep;
}

// ---------------------------------------------------------------------------
// Basis-vector level wrappers

std::pair<CycScalar, RepBasisVector> bivalent_action(const Context& ctx, const DefectLabel& d,
                                                     const RepBasisVector& v, int g, int h) {
  BivalentRep rep(ctx, d);
  std::array<int, 3> f{};
  for (std::size_t i = 0; i < v.internal.size() && i < 3; ++i) f[i] = v.internal[i];
  int idx = rep.index_of_free(f);
  const auto& src = rep.basis()[idx];
  if (!v.objects.empty() &&
      (v.objects.size() != 2 || v.objects[0] != src.legs[0] || v.objects[1] != src.legs[1]))
    fail(ErrorCode::invalid_argument, "vector objects do not match its labels");
  Action a = rep.act(idx, {g, h, 0});
  const auto& dst = rep.basis()[a.index];
  RepBasisVector out{{dst.legs[0], dst.legs[1]},
                     std::vector<int>(dst.free.begin(), dst.free.begin() + rep.free_count())};
  return {ctx.phase(a.zeta_exp), out};
}

namespace {
std::pair<CycScalar, RepBasisVector> tri_action(const Context& ctx, Template t,
                                                const Bimodule& third, const Bimodule& left,
                                                const Bimodule& right, int mu,
                                                const RepBasisVector& v, int a, int b, int c) {
  TrivalentRep rep(ctx, t, left, right, mu);
  if (rep.leg_wall(2) != third)
    fail(ErrorCode::unsupported, "no trivalent row for " + wall_name(left) + " x " +
                                     wall_name(right) + " with " + wall_name(third));
  std::array<int, 3> legs{};
  for (std::size_t i = 0; i < 3 && i < v.objects.size(); ++i) legs[i] = v.objects[i];
  int idx = rep.index_of(legs);
  if (idx < 0) fail(ErrorCode::invalid_argument, "not a basis vector of " + rep.label());
  Action r = rep.act(idx, {a, b, c});
  const auto& dst = rep.basis()[r.index];
  RepBasisVector out{{dst.legs[0], dst.legs[1], dst.legs[2]},
                     std::vector<int>(dst.free.begin(), dst.free.begin() + rep.free_count())};
  return {ctx.phase(r.zeta_exp), out};
}
}  // namespace

std::pair<CycScalar, RepBasisVector> trivalent_action_21(const Context& ctx, const Bimodule& top,
                                                         const Bimodule& bl, const Bimodule& br,
                                                         int mu, const RepBasisVector& v, int a,
                                                         int b, int c) {
  return tri_action(ctx, Template::tri21, top, bl, br, mu, v, a, b, c);
}

std::pair<CycScalar, RepBasisVector> trivalent_action_12(const Context& ctx,
                                                         const Bimodule& bottom,
                                                         const Bimodule& tl, const Bimodule& tr,
                                                         int mu, const RepBasisVector& v, int a,
                                                         int b, int c) {
  return tri_action(ctx, Template::tri12, bottom, tl, tr, mu, v, a, b, c);
}

// ---------------------------------------------------------------------------
// Theta, cocycles, idempotents

int theta_exp(const Context& ctx, int x, int a, int g) {
  int p = ctx.p();
  long long xr = mod(x, p), gr = mod(g, p);
  // i^{ag} for p = 2 depends on a mod 4, not mod 2.
  if (p == 2) return mod(2 * gr * xr + static_cast<long long>(a) * gr, 4);
  long long ar = mod(a, p);
  return ctx.omega(gr * xr + ar * gr * gr * inv_mod(2, p));
}

CycScalar theta(const Context& ctx, int x, int a, int g) {
  return ctx.phase(theta_exp(ctx, x, a, g));
}

int bivalent_cocycle_exp(const Context& ctx, const Bimodule& lower, const Bimodule& upper, int,
                         int h, int g2, int) {
  long long d = f_charge(lower) - f_charge(upper);
  return ctx.omega(d * h * g2);
}

int trivalent_cocycle_exp(const Context& ctx, Template t, const std::array<Bimodule, 3>& legs,
                          const std::array<int, 3>& x, const std::array<int, 3>& y) {
  // Per leg: (use right shift of x or left shift of x, sign).
  struct Rule {
    bool x_right;
    int sign;
  };
  Rule rules[3] = {{true, 0}, {true, 0}, {true, 0}};
  switch (t) {
    case Template::bivalent: rules[0] = {true, 1}; rules[1] = {true, -1}; rules[2] = {true, 0}; break;
    case Template::tri21: rules[0] = {true, 1}; rules[1] = {false, -1}; rules[2] = {true, -1}; break;
    case Template::tri12: rules[0] = {true, -1}; rules[1] = {false, 1}; rules[2] = {true, 1}; break;
  }
  auto shift = [&](int leg, const std::array<int, 3>& a) -> std::pair<long long, long long> {
    int A = a[0], B = a[1], C = a[2];
    switch (t) {
      case Template::bivalent: return {A, B};
      case Template::tri21:
        if (leg == 0) return {A, C};
        if (leg == 1) return {-C, B};
        return {A, B};
      case Template::tri12:
        if (leg == 0) return {A, -C};
        if (leg == 1) return {C, B};
        return {A, B};
    }
    return {0, 0};
  };
  long long total = 0;
  int n = t == Template::bivalent ? 2 : 3;
  for (int leg = 0; leg < n; ++leg) {
    auto sx = shift(leg, x), sy = shift(leg, y);
    long long u = rules[leg].x_right ? sx.second : sx.first;
    long long v = rules[leg].x_right ? sy.first : sy.second;
    total += rules[leg].sign * f_charge(legs[leg]) * u * v;
  }
  return ctx.omega(total);
}

bool IdempotentExpr::operator==(const IdempotentExpr& o) const {
  if (lower != o.lower || upper != o.upper || src_lower != o.src_lower ||
      src_upper != o.src_upper || terms.size() != o.terms.size())
    return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].g != o.terms[i].g || terms[i].h != o.terms[i].h ||
        terms[i].coeff != o.terms[i].coeff)
      return false;
  return true;
}

namespace {
void normalize(const Context& ctx, IdempotentExpr& e) {
  std::map<std::pair<int, int>, CycScalar> acc;
  for (auto& t : e.terms) {
    auto key = std::make_pair(mod(t.g, ctx.p()), mod(t.h, ctx.p()));
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, t.coeff);
    else
      it->second += t.coeff;
  }
  e.terms.clear();
  for (auto& [k, c] : acc)
    if (!c.is_zero()) e.terms.push_back({c, k.first, k.second});
}
}  // namespace

IdempotentExpr idempotent(const Context& ctx, const DefectLabel& d) {
  validate_defect(d, ctx.p());
  int p = ctx.p();
  int fam = family_of(d.lower, d.upper);
  const auto& P = d.params;
  int T00 = 0;
  auto T = [p](long long a, long long b) { return mod(a, p) * p + mod(b, p); };
  IdempotentExpr e;
  e.lower = d.lower;
  e.upper = d.upper;
  mpq_class inv_p(1, p), inv_p2(1, p * p);
  auto single = [&](int lo, int up) {
    e.src_lower = lo;
    e.src_upper = up;
    e.terms.push_back({CycScalar::one(ctx.N()), 0, 0});
  };
  // (1/p) sum_g phase(g) gen(G(g), H(g))
  auto sum1 = [&](int lo, int up, auto phase, auto G, auto H) {
    e.src_lower = lo;
    e.src_upper = up;
    for (int g = 0; g < p; ++g)
      e.terms.push_back({ctx.phase(phase(g)) * inv_p, mod(G(g), p), mod(H(g), p)});
  };
  long long k = d.lower.param, l = d.upper.param;
  long long q = f_charge(d.lower), r = f_charge(d.upper);
  auto omega_gx = [&](long long x) { return [&ctx, x](int g) { return ctx.omega(g * x); }; };
  auto zero = [](int) { return 0; };
  auto ident = [](int g) { return g; };
  auto neg = [](int g) { return -g; };
  switch (fam) {
    case TT: single(T00, T(P[0], P[1])); break;
    case TL: case TR: case TX: single(T00, mod(P[0], p)); break;
    case TF0: case TF: single(T00, 0); break;
    case LT: single(0, T(0, P[0])); break;
    case LR: case LX: case RL: case RX: case XL: case XR: case XXd: single(0, 0); break;
    case RT: case XT: single(0, T(P[0], 0)); break;
    case F0T: case FT: single(0, T00); break;
    case LL: sum1(0, P[0], omega_gx(P[1]), ident, zero); break;
    case LF0: case LF: case F0L: case FL: sum1(0, 0, omega_gx(P[0]), ident, zero); break;
    case RR: sum1(0, P[0], omega_gx(P[1]), zero, neg); break;
    case RF0: case RF: case F0R: case FR: sum1(0, 0, omega_gx(P[0]), zero, neg); break;
    case F0X: {
      long long il = inv_mod(l, p);
      sum1(0, 0, omega_gx(P[0]), ident, [il](int g) { return -il * g; });
      break;
    }
    case F0F: case FF0: case FFd: sum1(0, 0, zero, zero, neg); break;
    case XF0: {
      long long ik = inv_mod(k, p);
      sum1(0, 0, omega_gx(P[0]), ident, [ik](int g) { return -ik * g; });
      break;
    }
    case XXs: sum1(0, P[0], omega_gx(P[1]), [k](int g) { return k * g; }, neg); break;
    case XF: {
      long long x = P[0];
      sum1(0, 0, [&ctx, x, k, r](int g) { return theta_exp(ctx, int(x), int(k * r), g); },
           [k](int g) { return k * g; }, neg);
      break;
    }
    case FX: {
      long long x = P[0];
      sum1(0, 0, [&ctx, x, q, l](int g) { return theta_exp(ctx, int(x), int(-q * l), g); },
           [l](int g) { return l * g; }, neg);
      break;
    }
    case F0F0: case FFs:
      e.src_lower = 0;
      e.src_upper = 0;
      for (int g = 0; g < p; ++g)
        for (int h = 0; h < p; ++h)
          e.terms.push_back({ctx.phase(ctx.omega(static_cast<long long>(g) * P[0] +
                                                 static_cast<long long>(h) * P[1])) *
                                 inv_p2,
                             g, mod(-h, p)});
      break;
    default: fail(ErrorCode::internal, "no idempotent for " + defect_name(d));
  }
  normalize(ctx, e);
  return e;
}

IdempotentExpr compose(const Context& ctx, const IdempotentExpr& a, const IdempotentExpr& b) {
  if (a.lower != b.lower || a.upper != b.upper || a.src_lower != b.src_lower ||
      a.src_upper != b.src_upper)
    fail(ErrorCode::invalid_argument, "idempotents live at different objects");
  IdempotentExpr out;
  out.lower = a.lower;
  out.upper = a.upper;
  out.src_lower = a.src_lower;
  out.src_upper = a.src_upper;
  for (const auto& tb : b.terms)
    for (const auto& ta : a.terms) {
      int s = bivalent_cocycle_exp(ctx, a.lower, a.upper, tb.g, tb.h, ta.g, ta.h);
      out.terms.push_back({(tb.coeff * ta.coeff).mul_root(s), tb.g + ta.g, tb.h + ta.h});
    }
  normalize(ctx, out);
  return out;
}

ExactMatrix apply_idempotent(const Context& ctx, const IdempotentExpr& e, int dim,
                             const GradeAction& act) {
  ExactMatrix m(dim, dim, ctx.N());
  for (const auto& t : e.terms)
    for (int j = 0; j < dim; ++j) {
      Action a = act(t.g, t.h, j);
      if (a.index < 0) continue;
      m.at(a.index, j) += t.coeff.mul_root(a.zeta_exp);
    }
  return m;
}

}  // namespace annulus
