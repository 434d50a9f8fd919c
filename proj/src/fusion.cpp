#include "fusion.hpp"

#include <algorithm>
#include <sstream>

namespace annulus {

using nlohmann::json;

namespace {

bool same_terms(const std::vector<DecompositionTerm>& a, const std::vector<DecompositionTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].defect == b[i].defect) || a[i].multiplicity != b[i].multiplicity) return false;
  return true;
}

std::vector<DecompositionTerm> strip_corners(std::vector<DecompositionTerm> t) {
  for (auto& x : t) x.defect.corners.clear();
  return t;
}

FusionCase run_case(std::shared_ptr<const CompoundDefect> cd) {
  auto raw = std::make_shared<CompoundRep>(cd);
  QuotientRep q(raw);
  Decomposition d = decompose(q, true);
  FusionCase c;
  c.corners = cd->corners();
  c.terms = d.terms;
  for (auto& t : c.terms) t.defect.corners = c.corners;
  c.complete = d.complete();
  return c;
}

// Odometer over values for the unset entries.
template <class F>
void for_each_assignment(int p, const std::vector<bool>& free, F&& f) {
  std::vector<int> v(free.size(), 0);
  while (true) {
    f(v);
    std::size_t i = 0;
    for (; i < v.size(); ++i) {
      if (!free[i]) continue;
      if (++v[i] < p) break;
      v[i] = 0;
    }
    if (i == v.size()) break;
  }
}

}  // namespace

bool FusionCase::operator==(const FusionCase& o) const {
  return corners == o.corners && same_terms(terms, o.terms) && complete == o.complete;
}

bool FusionResult::operator==(const FusionResult& o) const {
  return kind == o.kind && p == o.p && inputs == o.inputs && lower == o.lower && upper == o.upper &&
         cases == o.cases && constraints == o.constraints &&
         constraints_exact == o.constraints_exact && vanishes == o.vanishes;
}

std::vector<DecompositionTerm> FusionResult::summary(bool* uniform) const {
  std::vector<DecompositionTerm> first;
  bool found = false, same = true;
  for (const auto& c : cases) {
    if (c.terms.empty()) continue;
    auto t = strip_corners(c.terms);
    if (!found) {
      first = t;
      found = true;
    } else if (!same_terms(first, t)) {
      same = false;
    }
  }
  if (uniform) *uniform = same;
  return first;
}

bool FusionResult::complete() const {
  return std::all_of(cases.begin(), cases.end(), [](const FusionCase& c) { return c.complete; });
}

FusionResult vertical_fuse(const Context& ctx, const DefectLabel& below, const DefectLabel& above) {
  FusionResult r;
  r.kind = "vertical";
  r.p = ctx.p();
  r.inputs = {defect_name(below), defect_name(above)};
  auto cd = vertical_structure(ctx, below, above);
  r.lower = below.lower;
  r.upper = above.upper;
  r.cases.push_back(run_case(cd));
  r.vanishes = r.cases[0].terms.empty();
  return r;
}

FusionResult horizontal_fuse(const Context& ctx, const DefectLabel& d1, const DefectLabel& d2,
                             std::optional<int> mu, std::optional<int> nu) {
  int p = ctx.p();
  FusionResult r;
  r.kind = "horizontal";
  r.p = p;
  r.inputs = {defect_name(d1), defect_name(d2)};
  r.lower = tensor(d1.lower, d2.lower, p);
  r.upper = tensor(d1.upper, d2.upper, p);
  bool has_mu = trivalent_has_corner(d1.lower, d2.lower);
  bool has_nu = trivalent_has_corner(d1.upper, d2.upper);
  std::vector<bool> free{has_mu && !mu, has_nu && !nu};
  for_each_assignment(p, free, [&](const std::vector<int>& v) {
    int m = free[0] ? v[0] : mod(mu.value_or(0), p);
    int n = free[1] ? v[1] : mod(nu.value_or(0), p);
    r.cases.push_back(run_case(diamond_structure(ctx, d1, d2, m, n)));
  });
  compress_constraints(r);
  return r;
}

FusionResult associator(const Context& ctx, const Bimodule& m, const Bimodule& n,
                        const Bimodule& pw, const std::map<std::string, int>& fixed) {
  int p = ctx.p();
  FusionResult r;
  r.kind = "associator";
  r.p = p;
  r.inputs = {wall_name(m), wall_name(n), wall_name(pw)};
  auto mask = associator_corner_mask(m, n, pw, p);
  static const char* names[4] = {"mu0", "mu1", "nu0", "nu1"};
  std::array<int, 4> base{0, 0, 0, 0};
  std::vector<bool> free(4, false);
  for (int i = 0; i < 4; ++i) {
    auto it = fixed.find(names[i]);
    if (it != fixed.end()) {
      if (!mask[i])
        fail(ErrorCode::invalid_argument,
             std::string("corner ") + names[i] + " does not occur for this triple");
      base[i] = mod(it->second, p);
    } else {
      free[i] = mask[i];
    }
  }
  for (const auto& [k, _] : fixed)
    if (k != "mu0" && k != "mu1" && k != "nu0" && k != "nu1")
      fail(ErrorCode::invalid_argument, "unknown corner '" + k + "'");
  for_each_assignment(p, free, [&](const std::vector<int>& v) {
    std::array<int, 4> c = base;
    for (int i = 0; i < 4; ++i)
      if (free[i]) c[i] = v[i];
    auto cd = associator_structure(ctx, m, n, pw, c);
    if (r.cases.empty()) {
      r.lower = cd->edges()[cd->external()[0]].wall;
      r.upper = cd->edges()[cd->external()[1]].wall;
    }
    r.cases.push_back(run_case(cd));
  });
  compress_constraints(r);
  return r;
}

FusionResult decompose_structure(std::shared_ptr<const CompoundDefect> cd,
                                 const std::vector<std::string>& inputs) {
  FusionResult r;
  r.kind = "decompose";
  r.p = cd->context().p();
  r.inputs = inputs;
  if (cd->external().size() != 2)
    fail(ErrorCode::unsupported, "decomposition needs a two-string external boundary");
  r.lower = cd->edges()[cd->external()[0]].wall;
  r.upper = cd->edges()[cd->external()[1]].wall;
  r.cases.push_back(run_case(cd));
  r.vanishes = r.cases[0].terms.empty();
  return r;
}

void compress_constraints(FusionResult& r) {
  r.constraints.clear();
  r.constraints_exact = true;
  r.vanishes = std::none_of(r.cases.begin(), r.cases.end(),
                            [](const FusionCase& c) { return !c.terms.empty(); });
  if (r.cases.empty() || r.vanishes) return;
  int p = r.p;
  std::vector<std::string> names;
  for (const auto& c : r.cases[0].corners) names.push_back(c.name);
  auto value = [&](const FusionCase& c, const std::string& n) {
    for (const auto& x : c.corners)
      if (x.name == n) return x.value;
    return 0;
  };
  auto holds = [&](const FusionCase& c, const DeltaConstraint& d) {
    return mod(value(c, d.left) - static_cast<long long>(d.coeff) * value(c, d.right), p) == 0;
  };
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      for (int lam = 1; lam < p; ++lam) {
        DeltaConstraint d{sorted[i], lam, sorted[j]};
        bool on_support = true;
        for (const auto& c : r.cases)
          if (!c.terms.empty() && !holds(c, d)) on_support = false;
        if (!on_support) continue;
        bool implied = true;
        for (const auto& c : r.cases) {
          bool all = std::all_of(r.constraints.begin(), r.constraints.end(),
                                 [&](const DeltaConstraint& k) { return holds(c, k); });
          if (all && !holds(c, d)) implied = false;
        }
        if (!implied) r.constraints.push_back(d);
      }
  for (const auto& c : r.cases) {
    bool all = std::all_of(r.constraints.begin(), r.constraints.end(),
                           [&](const DeltaConstraint& k) { return holds(c, k); });
    if (all != !c.terms.empty()) r.constraints_exact = false;
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json terms_json(const std::vector<DecompositionTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back({{"defect", defect_name(t.defect)}, {"multiplicity", t.multiplicity}});
  return a;
}

std::vector<DecompositionTerm> terms_from(const json& a, int p) {
  std::vector<DecompositionTerm> out;
  for (const auto& t : a)
    out.push_back({parse_defect(t.at("defect").get<std::string>(), p), t.at("multiplicity").get<int>()});
  return out;
}

json constraints_json(const std::vector<DeltaConstraint>& cs) {
  json a = json::array();
  for (const auto& d : cs) a.push_back({{"left", d.left}, {"coeff", d.coeff}, {"right", d.right}});
  return a;
}

}  // namespace

std::string scalar_header(int p) {
  int N = p == 2 ? 4 : p;
  return "scalars in Q(w), w = exp(2 pi i/" + std::to_string(N) + "), written as w^k";
}

json to_json(const FusionResult& r) {
  json j;
  j["kind"] = r.kind;
  j["p"] = r.p;
  j["scalars"] = scalar_header(r.p);
  j["inputs"] = r.inputs;
  j["lower"] = wall_name(r.lower);
  j["upper"] = wall_name(r.upper);
  json cases = json::array();
  for (const auto& c : r.cases) {
    json cj;
    json corners = json::array();
    for (const auto& x : c.corners) corners.push_back({x.name, x.value});
    cj["corners"] = corners;
    cj["terms"] = terms_json(c.terms);
    cj["complete"] = c.complete;
    cases.push_back(cj);
  }
  j["cases"] = cases;
  j["constraints"] = constraints_json(r.constraints);
  j["constraints_exact"] = r.constraints_exact;
  j["vanishes"] = r.vanishes;
  return j;
}

FusionResult fusion_from_json(const json& j) {
  try {
    FusionResult r;
    r.kind = j.at("kind").get<std::string>();
    r.p = j.at("p").get<int>();
    Context ctx(r.p);
    r.inputs = j.at("inputs").get<std::vector<std::string>>();
    r.lower = parse_wall(j.at("lower").get<std::string>(), r.p);
    r.upper = parse_wall(j.at("upper").get<std::string>(), r.p);
    for (const auto& cj : j.at("cases")) {
      FusionCase c;
      for (const auto& x : cj.at("corners")) c.corners.push_back({x.at(0).get<std::string>(), x.at(1).get<int>()});
      c.terms = terms_from(cj.at("terms"), r.p);
      c.complete = cj.at("complete").get<bool>();
      r.cases.push_back(std::move(c));
    }
    for (const auto& d : j.at("constraints"))
      r.constraints.push_back({d.at("left").get<std::string>(), d.at("coeff").get<int>(),
                               d.at("right").get<std::string>()});
    r.constraints_exact = j.at("constraints_exact").get<bool>();
    r.vanishes = j.at("vanishes").get<bool>();
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("fusion result document: ") + e.what());
  }
}

namespace {

std::string terms_text(const std::vector<DecompositionTerm>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    if (terms[i].multiplicity != 1) s += std::to_string(terms[i].multiplicity) + " ";
    s += defect_name(terms[i].defect);
  }
  return s;
}

std::string constraints_text(const std::vector<DeltaConstraint>& cs) {
  if (cs.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ", ";
    s += cs[i].left + " = " + (cs[i].coeff == 1 ? "" : std::to_string(cs[i].coeff) + "*") + cs[i].right;
  }
  return s;
}

}  // namespace

std::string render_text(const FusionResult& r) {
  std::ostringstream o;
  o << "# " << r.kind << ", p = " << r.p << "; " << scalar_header(r.p) << "\n";
  o << "inputs: ";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) o << (i ? ", " : "") << r.inputs[i];
  o << "\nwalls:  " << wall_name(r.lower) << " -> " << wall_name(r.upper) << "\n";
  for (const auto& c : r.cases) {
    if (!c.corners.empty()) {
      o << "[";
      for (std::size_t i = 0; i < c.corners.size(); ++i)
        o << (i ? "," : "") << c.corners[i].name << "=" << c.corners[i].value;
      o << "] ";
    }
    o << terms_text(c.terms) << (c.complete ? "" : "   (INCOMPLETE)") << "\n";
  }
  if (r.cases.size() > 1 || !r.constraints.empty()) {
    o << "constraints: " << (r.vanishes ? "vanishes for all corners" : constraints_text(r.constraints));
    if (!r.constraints_exact) o << " (not a delta pattern)";
    o << "\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// Tables

TableKind parse_table_kind(const std::string& s) {
  if (s == "vertical") return TableKind::vertical;
  if (s == "horizontal") return TableKind::horizontal;
  if (s == "associator") return TableKind::associator;
  fail(ErrorCode::invalid_argument, "unknown table kind '" + s + "'");
}

json generate_table(TableKind kind, int p) {
  Context ctx(p);
  auto walls = all_walls(p);
  json t;
  t["p"] = p;
  t["scalars"] = scalar_header(p);
  json entries = json::array();
  if (kind == TableKind::associator) {
    t["kind"] = "associator";
    for (const auto& pw : walls)
      for (const auto& m : walls)
        for (const auto& n : walls) {
          FusionResult r = associator(ctx, m, n, pw);
          bool uniform = true;
          auto sum = r.summary(&uniform);
          json e;
          e["M"] = wall_name(m);
          e["N"] = wall_name(n);
          e["P"] = wall_name(pw);
          e["wall"] = wall_name(r.lower);
          json names = json::array();
          if (!r.cases.empty())
            for (const auto& c : r.cases[0].corners) names.push_back(c.name);
          e["corners"] = names;
          e["cases"] = r.cases.size();
          e["nonvanishing"] = std::count_if(r.cases.begin(), r.cases.end(),
                                            [](const FusionCase& c) { return !c.terms.empty(); });
          e["output"] = terms_json(sum);
          e["uniform"] = uniform;
          e["constraints"] = constraints_json(r.constraints);
          e["constraints_exact"] = r.constraints_exact;
          e["complete"] = r.complete();
          entries.push_back(e);
        }
  } else if (kind == TableKind::vertical) {
    t["kind"] = "vertical";
    for (const auto& w0 : walls)
      for (const auto& w1 : walls)
        for (const auto& w2 : walls)
          for (const auto& d1 : enumerate_defects(w0, w1, p))
            for (const auto& d2 : enumerate_defects(w1, w2, p)) {
              FusionResult r = vertical_fuse(ctx, d1, d2);
              entries.push_back({{"below", defect_name(d1)},
                                 {"above", defect_name(d2)},
                                 {"output", terms_json(r.cases[0].terms)},
                                 {"complete", r.complete()}});
            }
  } else {
    t["kind"] = "horizontal";
    std::vector<DefectLabel> all;
    for (const auto& a : walls)
      for (const auto& b : walls)
        for (const auto& d : enumerate_defects(a, b, p)) all.push_back(d);
    for (const auto& d1 : all)
      for (const auto& d2 : all) {
        FusionResult r = horizontal_fuse(ctx, d1, d2);
        json cases = json::array();
        for (const auto& c : r.cases) {
          json corners = json::object();
          for (const auto& x : c.corners) corners[x.name] = x.value;
          cases.push_back({{"corners", corners}, {"output", terms_json(strip_corners(c.terms))}});
        }
        entries.push_back({{"left", defect_name(d1)},
                           {"right", defect_name(d2)},
                           {"cases", cases},
                           {"complete", r.complete()}});
      }
  }
  t["entries"] = entries;
  return t;
}

std::string render_table_text(const json& t) {
  std::ostringstream o;
  std::string kind = t.at("kind").get<std::string>();
  o << "# " << kind << " table, p = " << t.at("p").get<int>() << "; "
    << t.at("scalars").get<std::string>() << "\n";
  auto out_text = [](const json& terms) {
    if (terms.empty()) return std::string("0");
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += " + ";
      int m = terms[i].at("multiplicity").get<int>();
      if (m != 1) s += std::to_string(m) + " ";
      s += terms[i].at("defect").get<std::string>();
    }
    return s;
  };
  for (const auto& e : t.at("entries")) {
    if (kind == "associator") {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%-6s %-6s %-6s | %-6s | ", e["M"].get<std::string>().c_str(),
                    e["N"].get<std::string>().c_str(), e["P"].get<std::string>().c_str(),
                    e["wall"].get<std::string>().c_str());
      o << buf << out_text(e["output"]);
      std::vector<DeltaConstraint> cs;
      for (const auto& d : e["constraints"])
        cs.push_back({d["left"].get<std::string>(), d["coeff"].get<int>(), d["right"].get<std::string>()});
      if (!cs.empty()) o << "  if " << constraints_text(cs);
      if (!e["constraints_exact"].get<bool>() || !e["uniform"].get<bool>()) o << "  (irregular)";
      o << "\n";
    } else if (kind == "vertical") {
      o << e["below"].get<std::string>() << " o " << e["above"].get<std::string>() << " = "
        << out_text(e["output"]) << "\n";
    } else {
      for (const auto& c : e["cases"]) {
        o << e["left"].get<std::string>() << " x " << e["right"].get<std::string>();
        if (!c["corners"].empty()) {
          o << " [";
          bool first = true;
          for (auto it = c["corners"].begin(); it != c["corners"].end(); ++it) {
            o << (first ? "" : ",") << it.key() << "=" << it.value().get<int>();
            first = false;
          }
          o << "]";
        }
        o << " = " << out_text(c["output"]) << "\n";
      }
    }
  }
  return o.str();
}

namespace {

int golden_scalar(const std::string& sym, const Bimodule& m, const Bimodule& n,
                  const Bimodule& pw) {
  if (sym == "1") return 1;
  if (sym == "a" || sym == "x") return m.param;
  if (sym == "b" || sym == "y") return n.param;
  if (sym == "c" || sym == "z") return pw.param;
  fail(ErrorCode::parse, "golden table: unknown symbol '" + sym + "'");
}

int golden_product(const std::string& expr, const Bimodule& m, const Bimodule& n,
                   const Bimodule& pw, int p) {
  std::istringstream in(expr);
  std::string tok;
  long long v = 1;
  while (in >> tok) {
    bool inv = tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1";
    int s = golden_scalar(inv ? tok.substr(0, tok.size() - 3) : tok, m, n, pw);
    v = v * (inv ? inv_mod(s, p) : s) % p;
  }
  return mod(v, p);
}

std::string shape_key(const Bimodule& b) {
  switch (b.shape()) {
    case Shape::T: return "T";
    case Shape::L: return "L";
    case Shape::R: return "R";
    case Shape::F0: return "F0";
    case Shape::X: return "X";
    case Shape::F: return "F";
  }
  return "?";
}

}  // namespace

std::vector<std::string> compare_associator_golden(const json& table, const json& golden) {
  std::vector<std::string> diffs;
  int p = table.at("p").get<int>();
  std::map<std::string, json> cells;
  for (const auto& g : golden.at("entries"))
    cells[g.at("M").get<std::string>() + "|" + g.at("N").get<std::string>() + "|" +
          g.at("P").get<std::string>()] = g;
  std::size_t expected = all_walls(p).size();
  if (table.at("entries").size() != expected * expected * expected)
    diffs.push_back("table has " + std::to_string(table.at("entries").size()) + " entries, expected " +
                    std::to_string(expected * expected * expected));
  for (const auto& e : table.at("entries")) {
    Bimodule m = parse_wall(e["M"].get<std::string>(), p);
    Bimodule n = parse_wall(e["N"].get<std::string>(), p);
    Bimodule pw = parse_wall(e["P"].get<std::string>(), p);
    std::string where = "[" + wall_name(m) + "," + wall_name(n) + "," + wall_name(pw) + "]";
    auto it = cells.find(shape_key(m) + "|" + shape_key(n) + "|" + shape_key(pw));
    if (it == cells.end()) {
      diffs.push_back(where + ": no golden cell");
      continue;
    }
    const json& g = it->second;
    std::string gk = g.at("wall").get<std::string>();
    Bimodule gw;
    if (gk == "T") gw = wall_T();
    else if (gk == "L") gw = wall_L();
    else if (gk == "R") gw = wall_R();
    else if (gk == "F0") gw = wall_F(0, p);
    else if (gk == "X") gw = wall_X(golden_product(g.at("wall_param").get<std::string>(), m, n, pw, p), p);
    else gw = wall_F(golden_product(g.at("wall_param").get<std::string>(), m, n, pw, p), p);
    if (e["wall"].get<std::string>() != wall_name(gw))
      diffs.push_back(where + ": wall " + e["wall"].get<std::string>() + ", golden " + wall_name(gw));
    DefectLabel want = trivial_defect(gw);
    if (g.contains("defect")) want.params = g["defect"].get<std::vector<int>>();
    json want_terms = json::array({{{"defect", defect_name(want)}, {"multiplicity", 1}}});
    if (e["output"] != want_terms)
      diffs.push_back(where + ": output " + e["output"].dump() + ", golden " + want_terms.dump());
    if (!e["uniform"].get<bool>()) diffs.push_back(where + ": output depends on corners");
    if (!e["constraints_exact"].get<bool>()) diffs.push_back(where + ": support is not a delta pattern");
    if (!e["complete"].get<bool>()) diffs.push_back(where + ": decomposition incomplete");
    std::vector<DeltaConstraint> gc, ec;
    for (const auto& d : g.at("deltas")) {
      std::string l = d["left"]["corner"], r = d["right"]["corner"];
      int cl = golden_scalar(d["left"]["coeff"], m, n, pw);
      int cr = golden_scalar(d["right"]["coeff"], m, n, pw);
      // cl * l = cr * r
      if (l < r) gc.push_back({l, mod(static_cast<long long>(cr) * inv_mod(cl, p), p), r});
      else gc.push_back({r, mod(static_cast<long long>(cl) * inv_mod(cr, p), p), l});
    }
    for (const auto& d : e["constraints"])
      ec.push_back({d["left"].get<std::string>(), d["coeff"].get<int>(), d["right"].get<std::string>()});
    std::sort(gc.begin(), gc.end());
    std::sort(ec.begin(), ec.end());
    if (gc != ec) {
      std::string a = constraints_text(ec), b = constraints_text(gc);
      diffs.push_back(where + ": constraints " + a + ", golden " + b);
    }
  }
  return diffs;
}

}  // namespace annulus
