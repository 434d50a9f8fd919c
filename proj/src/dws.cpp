#include "dws.hpp"

#include <cstdlib>
#include <json.hpp>

namespace annulus {

using nlohmann::json;

std::size_t max_basis() {
  if (const char* env = std::getenv("ANNULUS_MAX_BASIS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 2000000;
}

// ---------------------------------------------------------------------------
// CompoundDefect

int CompoundDefect::add_vertex(StructVertex v) {
  vertices_.push_back(std::move(v));
  return static_cast<int>(vertices_.size()) - 1;
}

int CompoundDefect::add_edge(StructEdge e) {
  edges_.push_back(std::move(e));
  return static_cast<int>(edges_.size()) - 1;
}

int CompoundDefect::add_cavity(const std::string& name) {
  cavities_.push_back(name);
  return static_cast<int>(cavities_.size()) - 1;
}

int CompoundDefect::cavity_index(const std::string& name) const {
  for (std::size_t i = 0; i < cavities_.size(); ++i)
    if (cavities_[i] == name) return static_cast<int>(i);
  fail(ErrorCode::invalid_argument, "unknown cavity '" + name + "'");
}

std::vector<Corner> CompoundDefect::corners() const {
  std::vector<Corner> out;
  for (const auto& v : vertices_) {
    auto* t = dynamic_cast<const TrivalentRep*>(v.rep.get());
    if (t && t->has_corner())
      out.push_back({v.corner_name.empty() ? v.id : v.corner_name, t->corner()});
  }
  return out;
}

std::array<int, 3> CompoundDefect::boundary_args(int vertex, int g, int h) const {
  std::array<int, 3> a{0, 0, 0};
  const auto& v = vertices_[vertex];
  for (int s = 0; s < v.rep->region_count(); ++s) {
    if (v.region[s] == kOuterLeft) a[s] = g;
    if (v.region[s] == kOuterRight) a[s] = h;
  }
  return a;
}

// A g-bubble enters a left slot as -g and a right slot as +g; the middle slot
// of a merge sees +g and the middle slot of a split sees -g.
std::array<int, 3> CompoundDefect::bubble_args(int vertex, int cavity, int g) const {
  std::array<int, 3> a{0, 0, 0};
  const auto& v = vertices_[vertex];
  for (int s = 0; s < v.rep->region_count(); ++s) {
    if (v.region[s] != cavity) continue;
    if (s == 0) a[s] = -g;
    if (s == 1) a[s] = g;
    if (s == 2) a[s] = v.rep->shape() == Template::tri21 ? g : -g;
  }
  return a;
}

void CompoundDefect::validate() const {
  int p = ctx_.p();
  std::vector<std::array<int, 3>> used(vertices_.size(), {0, 0, 0});
  for (const auto& v : vertices_) {
    if (!v.rep) fail(ErrorCode::invalid_argument, "vertex " + v.id + " has no representation");
    for (int s = 0; s < v.rep->region_count(); ++s) {
      int r = v.region[s];
      if (r == kNoRegion || r < kNoRegion || r >= static_cast<int>(cavities_.size()))
        fail(ErrorCode::invalid_argument, "vertex " + v.id + " slot " + std::to_string(s) +
                                              " has no valid region");
    }
  }
  auto use = [&](const StructEdge& e, const EdgeEnd& end) {
    if (end.vertex < 0) return;
    if (end.vertex >= static_cast<int>(vertices_.size()))
      fail(ErrorCode::invalid_argument, "edge " + e.id + " references a missing vertex");
    const auto& v = vertices_[end.vertex];
    if (end.leg < 0 || end.leg >= v.rep->arity())
      fail(ErrorCode::invalid_argument, "edge " + e.id + " uses a missing leg of " + v.id);
    if (used[end.vertex][end.leg]++)
      fail(ErrorCode::invalid_argument, "leg " + std::to_string(end.leg) + " of " + v.id +
                                            " is used twice");
    if (v.rep->leg_wall(end.leg) != e.wall)
      fail(ErrorCode::wall_mismatch, "edge " + e.id + " carries " + wall_name(e.wall) + " but " +
                                         v.id + " expects " + wall_name(v.rep->leg_wall(end.leg)));
  };
  for (const auto& e : edges_) {
    validate_wall(e.wall, p);
    if (e.from.vertex < 0 && e.to.vertex < 0)
      fail(ErrorCode::invalid_argument, "edge " + e.id + " has no endpoint");
    use(e, e.from);
    use(e, e.to);
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (int l = 0; l < vertices_[i].rep->arity(); ++l)
      if (!used[i][l])
        fail(ErrorCode::invalid_argument, "leg " + std::to_string(l) + " of " + vertices_[i].id +
                                              " is not attached");
  for (int x : external_) {
    if (x < 0 || x >= static_cast<int>(edges_.size()))
      fail(ErrorCode::invalid_argument, "external edge out of range");
    if (edges_[x].from.vertex >= 0 && edges_[x].to.vertex >= 0)
      fail(ErrorCode::invalid_argument, "external edge " + edges_[x].id + " is internal");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    bool internal = e.from.vertex >= 0 && e.to.vertex >= 0;
    bool listed = std::find(external_.begin(), external_.end(), static_cast<int>(i)) != external_.end();
    if (!internal && !listed)
      fail(ErrorCode::invalid_argument, "dangling edge " + e.id + " is not declared external");
  }
  for (std::size_t c = 0; c < cavities_.size(); ++c) {
    bool seen = false;
    for (const auto& v : vertices_)
      for (int s = 0; s < v.rep->region_count(); ++s) seen |= v.region[s] == static_cast<int>(c);
    if (!seen) fail(ErrorCode::invalid_argument, "cavity " + cavities_[c] + " touches no vertex");
  }
  // Both ends of an internal edge must move its object the same way.
  std::vector<std::function<std::array<int, 3>(int)>> moves;
  moves.push_back([&](int v) { return boundary_args(v, 1, 0); });
  moves.push_back([&](int v) { return boundary_args(v, 0, 1); });
  for (std::size_t c = 0; c < cavities_.size(); ++c)
    moves.push_back([&, c](int v) { return bubble_args(v, static_cast<int>(c), 1); });
  for (const auto& e : edges_) {
    if (e.from.vertex < 0 || e.to.vertex < 0) continue;
    for (const auto& mv : moves) {
      auto s1 = vertices_[e.from.vertex].rep->leg_shift(e.from.leg, mv(e.from.vertex));
      auto s2 = vertices_[e.to.vertex].rep->leg_shift(e.to.leg, mv(e.to.vertex));
      for (int o = 0; o < object_count(e.wall, p); ++o)
        if (act_code(e.wall, s1.first, o, s1.second, p) != act_code(e.wall, s2.first, o, s2.second, p))
          fail(ErrorCode::invalid_argument,
               "edge " + e.id + ": its two ends absorb strings inconsistently (check regions)");
    }
  }
}

// ---------------------------------------------------------------------------
// CompoundRep

CompoundRep::CompoundRep(std::shared_ptr<const CompoundDefect> cd) : cd_(std::move(cd)) {
  cd_->validate();
  enumerate();
}

void CompoundRep::enumerate() {
  const auto& vs = cd_->vertices();
  const auto& es = cd_->edges();
  std::vector<std::array<int, 3>> leg_edge(vs.size(), {-1, -1, -1});
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].from.vertex >= 0) leg_edge[es[i].from.vertex][es[i].from.leg] = static_cast<int>(i);
    if (es[i].to.vertex >= 0) leg_edge[es[i].to.vertex][es[i].to.leg] = static_cast<int>(i);
  }
  std::vector<int> edge_obj(es.size(), -1);
  std::vector<int> edge_owner(es.size(), -1);
  CompoundVector cur(vs.size(), 0);
  std::size_t cap = max_basis();

  std::function<void(std::size_t)> rec = [&](std::size_t vi) {
    if (vi == vs.size()) {
      if (basis_.size() >= cap)
        fail(ErrorCode::size_limit, "compound basis exceeds " + std::to_string(cap) +
                                        " vectors (set ANNULUS_MAX_BASIS to raise)");
      basis_.push_back(cur);
      return;
    }
    const auto& rep = *vs[vi].rep;
    const auto& basis = rep.basis();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      bool ok = true;
      for (int l = 0; l < rep.arity() && ok; ++l) {
        int e = leg_edge[vi][l];
        if (edge_owner[e] >= 0 && edge_obj[e] != basis[b].legs[l]) ok = false;
      }
      if (!ok) continue;
      std::array<int, 3> claimed{0, 0, 0};
      for (int l = 0; l < rep.arity(); ++l) {
        int e = leg_edge[vi][l];
        if (edge_owner[e] < 0) {
          edge_owner[e] = static_cast<int>(vi);
          edge_obj[e] = basis[b].legs[l];
          claimed[l] = 1;
        }
      }
      cur[vi] = static_cast<int>(b);
      rec(vi + 1);
      for (int l = 0; l < rep.arity(); ++l)
        if (claimed[l]) edge_owner[leg_edge[vi][l]] = -1;
    }
  };
  rec(0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    lookup_.emplace(basis_[i], static_cast<int>(i));
    pieces_[grade(static_cast<int>(i))].push_back(static_cast<int>(i));
  }
}

int CompoundRep::find(const CompoundVector& v) const {
  auto it = lookup_.find(v);
  return it == lookup_.end() ? -1 : it->second;
}

int CompoundRep::edge_object(int vec, int edge) const {
  const auto& e = cd_->edges()[edge];
  const EdgeEnd& end = e.from.vertex >= 0 ? e.from : e.to;
  const auto& rep = *cd_->vertices()[end.vertex].rep;
  return rep.basis()[basis_[vec][end.vertex]].legs[end.leg];
}

std::vector<int> CompoundRep::grade(int vec) const {
  std::vector<int> g;
  for (int e : cd_->external()) g.push_back(edge_object(vec, e));
  return g;
}

const std::vector<int>& CompoundRep::piece(const std::vector<int>& grade) const {
  static const std::vector<int> empty;
  auto it = pieces_.find(grade);
  return it == pieces_.end() ? empty : it->second;
}

std::vector<std::vector<int>> CompoundRep::grades() const {
  std::vector<std::vector<int>> out;
  for (const auto& [g, _] : pieces_) out.push_back(g);
  return out;
}

Action CompoundRep::apply(int vec, const std::vector<std::array<int, 3>>& args) const {
  const auto& vs = cd_->vertices();
  CompoundVector out(vs.size());
  int phase = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Action a = vs[i].rep->act(basis_[vec][i], args[i]);
    out[i] = a.index;
    phase += a.zeta_exp;
  }
  int idx = find(out);
  if (idx < 0) fail(ErrorCode::internal, "generator left the consistent labelings");
  return {idx, mod(phase, context().N())};
}

Action CompoundRep::boundary_action(int vec, int g, int h) const {
  std::vector<std::array<int, 3>> args(cd_->vertices().size());
  for (std::size_t i = 0; i < args.size(); ++i) args[i] = cd_->boundary_args(static_cast<int>(i), g, h);
  return apply(vec, args);
}

Action CompoundRep::bubble_action(int cavity, int vec, int g) const {
  if (cavity < 0 || cavity >= static_cast<int>(cd_->cavities().size()))
    fail(ErrorCode::invalid_argument, "unknown cavity");
  std::vector<std::array<int, 3>> args(cd_->vertices().size());
  for (std::size_t i = 0; i < args.size(); ++i)
    args[i] = cd_->bubble_args(static_cast<int>(i), cavity, g);
  return apply(vec, args);
}

// ---------------------------------------------------------------------------
// Quotient

namespace {
std::map<int, int> local_index(const std::vector<int>& raw) {
  std::map<int, int> m;
  for (std::size_t i = 0; i < raw.size(); ++i) m[raw[i]] = static_cast<int>(i);
  return m;
}
}  // namespace

ExactMatrix cavity_symmetrizer(const CompoundRep& rep, int cavity, const std::vector<int>& grade) {
  const Context& ctx = rep.context();
  const auto& raw = rep.piece(grade);
  auto loc = local_index(raw);
  ExactMatrix m(raw.size(), raw.size(), ctx.N());
  mpq_class w(1, ctx.p());
  for (int g = 0; g < ctx.p(); ++g)
    for (std::size_t j = 0; j < raw.size(); ++j) {
      Action a = rep.bubble_action(cavity, raw[j], g);
      auto it = loc.find(a.index);
      if (it == loc.end()) fail(ErrorCode::internal, "bubble changed the external grade");
      m.at(it->second, j) += ctx.phase(a.zeta_exp) * w;
    }
  return m;
}

QuotientRep::QuotientRep(std::shared_ptr<const CompoundRep> raw) : raw_(std::move(raw)) {}

const QuotientGrade& QuotientRep::at(const std::vector<int>& grade) const {
  auto it = cache_.find(grade);
  if (it != cache_.end()) return it->second;
  QuotientGrade q;
  q.grade = grade;
  q.raw = raw_->piece(grade);
  int N = raw_->context().N();
  q.projector = ExactMatrix::identity(q.raw.size(), N);
  if (!q.raw.empty()) {
    for (std::size_t c = 0; c < raw_->defect().cavities().size(); ++c)
      q.projector = cavity_symmetrizer(*raw_, static_cast<int>(c), grade) * q.projector;
    q.dim = matrix_rank(q.projector);
  }
  return cache_.emplace(grade, std::move(q)).first->second;
}

std::size_t QuotientRep::total_dim() const {
  std::size_t n = 0;
  for (const auto& g : grades()) n += at(g).dim;
  return n;
}

std::vector<ExactMatrix> QuotientRep::basis(const std::vector<int>& grade) const {
  return image_basis(at(grade).projector);
}

std::size_t irrep_grade_dim(const Context& ctx, const DefectLabel& d, int lower, int upper) {
  BivalentRep rep(ctx, d);
  std::size_t n = 0;
  for (const auto& v : rep.basis())
    if (v.legs[0] == lower && v.legs[1] == upper) ++n;
  return n;
}

Decomposition decompose(const QuotientRep& q, bool check_completeness) {
  const CompoundRep& raw = q.raw();
  const CompoundDefect& cd = raw.defect();
  const Context& ctx = raw.context();
  if (cd.external().size() != 2)
    fail(ErrorCode::unsupported, "decomposition needs a two-string external boundary");
  Decomposition out;
  out.lower = cd.edges()[cd.external()[0]].wall;
  out.upper = cd.edges()[cd.external()[1]].wall;
  for (const auto& d : enumerate_defects(out.lower, out.upper, ctx.p())) {
    IdempotentExpr e = idempotent(ctx, d);
    const QuotientGrade& qg = q.at({e.src_lower, e.src_upper});
    if (qg.dim == 0) continue;
    auto loc = local_index(qg.raw);
    ExactMatrix E = apply_idempotent(ctx, e, static_cast<int>(qg.raw.size()),
                                     [&](int g, int h, int j) {
                                       Action a = raw.boundary_action(qg.raw[j], g, h);
                                       auto it = loc.find(a.index);
                                       return Action{it == loc.end() ? -1 : it->second, a.zeta_exp};
                                     });
    int mult = static_cast<int>(matrix_rank(E * qg.projector));
    if (mult > 0) out.terms.push_back({d, mult});
  }
  if (check_completeness) {
    out.completeness_checked = true;
    std::vector<std::map<std::pair<int, int>, std::size_t>> dims;
    for (const auto& t : out.terms) {
      std::map<std::pair<int, int>, std::size_t> m;
      BivalentRep rep(ctx, t.defect);
      for (const auto& v : rep.basis()) ++m[{v.legs[0], v.legs[1]}];
      dims.push_back(std::move(m));
    }
    int p = ctx.p();
    for (int x = 0; x < object_count(out.lower, p); ++x)
      for (int y = 0; y < object_count(out.upper, p); ++y) {
        std::size_t acc = 0;
        for (std::size_t i = 0; i < out.terms.size(); ++i) {
          auto it = dims[i].find({x, y});
          if (it != dims[i].end()) acc += out.terms[i].multiplicity * it->second;
        }
        std::size_t have = q.at({x, y}).dim;
        if (acc != have) out.mismatches.push_back({{x, y}, have, acc});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Templates

std::shared_ptr<CompoundDefect> vertical_structure(const Context& ctx, const DefectLabel& below,
                                                   const DefectLabel& above) {
  if (below.upper != above.lower)
    fail(ErrorCode::wall_mismatch, "cannot stack " + defect_name(above) + " on " +
                                       defect_name(below) + ": " + wall_name(below.upper) +
                                       " vs " + wall_name(above.lower));
  auto cd = std::make_shared<CompoundDefect>(ctx);
  int v1 = cd->add_vertex({"lower", std::make_shared<BivalentRep>(ctx, below),
                           {kOuterLeft, kOuterRight, kNoRegion}, ""});
  int v2 = cd->add_vertex({"upper", std::make_shared<BivalentRep>(ctx, above),
                           {kOuterLeft, kOuterRight, kNoRegion}, ""});
  int e0 = cd->add_edge({"bottom", below.lower, {}, {v1, 0}});
  cd->add_edge({"middle", below.upper, {v1, 1}, {v2, 0}});
  int e2 = cd->add_edge({"top", above.upper, {v2, 1}, {}});
  cd->set_external({e0, e2});
  return cd;
}

std::shared_ptr<CompoundDefect> diamond_structure(const Context& ctx, const DefectLabel& d1,
                                                  const DefectLabel& d2, int mu, int nu) {
  int p = ctx.p();
  auto cd = std::make_shared<CompoundDefect>(ctx);
  int cav = cd->add_cavity("inner");
  auto split = std::make_shared<TrivalentRep>(ctx, Template::tri12, d1.lower, d2.lower, mu);
  auto merge = std::make_shared<TrivalentRep>(ctx, Template::tri21, d1.upper, d2.upper, nu);
  int a = cd->add_vertex({"split", split, {kOuterLeft, kOuterRight, cav}, "mu"});
  int v1 = cd->add_vertex({"left", std::make_shared<BivalentRep>(ctx, d1), {kOuterLeft, cav, kNoRegion}, ""});
  int v2 = cd->add_vertex({"right", std::make_shared<BivalentRep>(ctx, d2), {cav, kOuterRight, kNoRegion}, ""});
  int d = cd->add_vertex({"merge", merge, {kOuterLeft, kOuterRight, cav}, "nu"});
  int w = cd->add_edge({"bottom", tensor(d1.lower, d2.lower, p), {}, {a, 2}});
  cd->add_edge({"M1", d1.lower, {a, 0}, {v1, 0}});
  cd->add_edge({"M2", d2.lower, {a, 1}, {v2, 0}});
  cd->add_edge({"N1", d1.upper, {v1, 1}, {d, 0}});
  cd->add_edge({"N2", d2.upper, {v2, 1}, {d, 1}});
  int w2 = cd->add_edge({"top", tensor(d1.upper, d2.upper, p), {d, 2}, {}});
  cd->set_external({w, w2});
  return cd;
}

std::array<bool, 4> associator_corner_mask(const Bimodule& m, const Bimodule& n,
                                           const Bimodule& pw, int p) {
  Bimodule y = tensor(n, pw, p), z = tensor(m, n, p);
  return {trivalent_has_corner(m, y), trivalent_has_corner(n, pw), trivalent_has_corner(m, n),
          trivalent_has_corner(z, pw)};
}

std::shared_ptr<CompoundDefect> associator_structure(const Context& ctx, const Bimodule& m,
                                                     const Bimodule& n, const Bimodule& pw,
                                                     const std::array<int, 4>& corners) {
  int p = ctx.p();
  Bimodule y = tensor(n, pw, p), z = tensor(m, n, p);
  auto A = std::make_shared<TrivalentRep>(ctx, Template::tri12, m, y, corners[0]);
  auto B = std::make_shared<TrivalentRep>(ctx, Template::tri12, n, pw, corners[1]);
  auto C = std::make_shared<TrivalentRep>(ctx, Template::tri21, m, n, corners[2]);
  auto D = std::make_shared<TrivalentRep>(ctx, Template::tri21, z, pw, corners[3]);
  if (A->leg_wall(2) != D->leg_wall(2))
    fail(ErrorCode::internal, "wall tensor product is not associative on this triple");
  auto cd = std::make_shared<CompoundDefect>(ctx);
  int bot = cd->add_cavity("lower");
  int top = cd->add_cavity("upper");
  int a = cd->add_vertex({"A", A, {kOuterLeft, kOuterRight, bot}, "mu0"});
  int b = cd->add_vertex({"B", B, {bot, kOuterRight, top}, "mu1"});
  int c = cd->add_vertex({"C", C, {kOuterLeft, top, bot}, "nu0"});
  int d = cd->add_vertex({"D", D, {kOuterLeft, kOuterRight, top}, "nu1"});
  int w = cd->add_edge({"bottom", A->leg_wall(2), {}, {a, 2}});
  cd->add_edge({"M", m, {a, 0}, {c, 0}});
  cd->add_edge({"NP", y, {a, 1}, {b, 2}});
  cd->add_edge({"N", n, {b, 0}, {c, 1}});
  cd->add_edge({"P", pw, {b, 1}, {d, 1}});
  cd->add_edge({"MN", z, {c, 2}, {d, 0}});
  int w2 = cd->add_edge({"top", D->leg_wall(2), {d, 2}, {}});
  cd->set_external({w, w2});
  return cd;
}

// ---------------------------------------------------------------------------
// Structure documents

namespace {

int slot_of(const json& j) {
  if (j.is_number_integer()) {
    int s = j.get<int>();
    if (s < 0 || s > 2) fail(ErrorCode::parse, "slot index out of range");
    return s;
  }
  std::string s = j.get<std::string>();
  if (s == "left") return 0;
  if (s == "right") return 1;
  if (s == "middle") return 2;
  fail(ErrorCode::parse, "unknown slot '" + s + "'");
}

Template template_of(const std::string& s) {
  if (s == "bivalent") return Template::bivalent;
  if (s == "tri21") return Template::tri21;
  if (s == "tri12") return Template::tri12;
  fail(ErrorCode::parse, "unknown vertex template '" + s + "'");
}

int corner_value(const json& doc, const char* key, int p) {
  if (!doc.contains("corners") || !doc["corners"].contains(key)) return 0;
  return mod(doc["corners"][key].get<long long>(), p);
}

}  // namespace

std::shared_ptr<CompoundDefect> parse_structure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("structure document: ") + e.what());
  }
  try {
    if (!doc.contains("p")) fail(ErrorCode::parse, "structure document needs \"p\"");
    Context ctx(doc["p"].get<int>());
    int p = ctx.p();
    if (doc.contains("template")) {
      std::string t = doc["template"].get<std::string>();
      if (t == "vertical")
        return vertical_structure(ctx, parse_defect(doc.at("below").get<std::string>(), p),
                                  parse_defect(doc.at("above").get<std::string>(), p));
      if (t == "diamond")
        return diamond_structure(ctx, parse_defect(doc.at("left").get<std::string>(), p),
                                 parse_defect(doc.at("right").get<std::string>(), p),
                                 corner_value(doc, "mu", p), corner_value(doc, "nu", p));
      if (t == "associator") {
        const auto& w = doc.at("walls");
        if (!w.is_array() || w.size() != 3) fail(ErrorCode::parse, "associator needs three walls");
        return associator_structure(
            ctx, parse_wall(w[0].get<std::string>(), p), parse_wall(w[1].get<std::string>(), p),
            parse_wall(w[2].get<std::string>(), p),
            {corner_value(doc, "mu0", p), corner_value(doc, "mu1", p),
             corner_value(doc, "nu0", p), corner_value(doc, "nu1", p)});
      }
      fail(ErrorCode::parse, "unknown structure template '" + t + "'");
    }

    auto cd = std::make_shared<CompoundDefect>(ctx);
    std::map<std::string, int> vid, cid;
    // Named cavities first, so vertex slots can refer to them.
    if (doc.contains("cavities")) {
      int k = 0;
      for (const auto& c : doc["cavities"]) {
        std::string name = c.is_string() ? c.get<std::string>() : "c" + std::to_string(k);
        cid[name] = cd->add_cavity(name);
        ++k;
      }
    }
    for (const auto& v : doc.at("vertices")) {
      StructVertex sv;
      sv.id = v.at("id").get<std::string>();
      sv.rep = parse_vertex_rep(ctx, template_of(v.at("template").get<std::string>()),
                                v.at("defect").get<std::string>());
      if (v.contains("corner")) sv.corner_name = v["corner"].get<std::string>();
      if (v.contains("slots")) {
        const auto& s = v["slots"];
        if (static_cast<int>(s.size()) != sv.rep->region_count())
          fail(ErrorCode::parse, "vertex " + sv.id + " needs one region per slot");
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i].is_null()) continue;
          std::string r = s[i].get<std::string>();
          if (r == "L") sv.region[i] = kOuterLeft;
          else if (r == "R") sv.region[i] = kOuterRight;
          else if (cid.count(r)) sv.region[i] = cid[r];
          else fail(ErrorCode::parse, "vertex " + sv.id + ": unknown region '" + r + "'");
        }
      }
      if (vid.count(sv.id)) fail(ErrorCode::parse, "duplicate vertex id " + sv.id);
      std::string id = sv.id;
      vid[id] = cd->add_vertex(std::move(sv));
    }
    // Cavities given as incidence lists.
    if (doc.contains("cavities")) {
      int k = 0;
      for (const auto& c : doc["cavities"]) {
        if (c.is_array()) {
          for (const auto& inc : c) {
            std::string v = inc.at(0).get<std::string>();
            if (!vid.count(v)) fail(ErrorCode::parse, "cavity references unknown vertex " + v);
            int s = slot_of(inc.at(1));
            const auto& sv = cd->vertices()[vid[v]];
            if (s >= sv.rep->region_count())
              fail(ErrorCode::invalid_argument, "cavity uses a missing slot of " + v);
            if (sv.region[s] >= 0 && sv.region[s] != k)
              fail(ErrorCode::invalid_argument, "slot " + std::to_string(s) + " of " + v +
                                                    " belongs to two cavities");
            cd->set_region(vid[v], s, k);
          }
        }
        ++k;
      }
    }
    std::map<std::string, int> eid;
    auto end_of = [&](const json& j) -> EdgeEnd {
      if (j.is_null()) return {};
      std::string v = j.at(0).get<std::string>();
      if (!vid.count(v)) fail(ErrorCode::parse, "edge references unknown vertex " + v);
      return {vid[v], j.at(1).get<int>()};
    };
    for (const auto& e : doc.at("edges")) {
      StructEdge se;
      se.id = e.at("id").get<std::string>();
      se.wall = parse_wall(e.at("wall").get<std::string>(), p);
      if (e.contains("from")) se.from = end_of(e["from"]);
      if (e.contains("to")) se.to = end_of(e["to"]);
      std::string id = se.id;
      eid[id] = cd->add_edge(std::move(se));
    }
    std::vector<int> ext;
    for (const auto& x : doc.at("external")) {
      std::string id = x.get<std::string>();
      if (!eid.count(id)) fail(ErrorCode::parse, "unknown external edge " + id);
      ext.push_back(eid[id]);
    }
    cd->set_external(ext);
    cd->validate();
    return cd;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("structure document: ") + e.what());
  }
}

}  // namespace annulus
