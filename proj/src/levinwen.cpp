#include "levinwen.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>

#include <json.hpp>

#include "dws.hpp"
#include "errors.hpp"

namespace annulus {

namespace {

const std::array<Pt, 6> kCorner{{{0, 2}, {1, 1}, {1, -1}, {0, -2}, {-1, -1}, {-1, 1}}};

Pt add(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }

Pt hex_center(int col, int row) { return {2 * col + mod(row, 2), 3 * row}; }

bool is_center(Pt c) {
  if (mod(c.y, 3) != 0) return false;
  int row = (c.y - mod(c.y, 3)) / 3;
  return mod(c.x - mod(row, 2), 2) == 0;
}

// Neighbor of a vertex along each leg, and the hexagon in each region slot.
std::array<Pt, 3> leg_neighbors(Pt v, bool merge) {
  if (merge) return {add(v, {-1, -1}), add(v, {1, -1}), add(v, {0, 2})};
  return {add(v, {-1, 1}), add(v, {1, 1}), add(v, {0, -2})};
}

std::array<Pt, 3> region_centers(Pt v, bool merge) {
  if (merge) return {add(v, {-1, 1}), add(v, {1, 1}), add(v, {0, -2})};
  return {add(v, {-1, -1}), add(v, {1, -1}), add(v, {0, 2})};
}

std::string pt_str(Pt p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

}  // namespace

// ---------------------------------------------------------------------------
// Patch geometry

LatticePatch::LatticePatch(const PatchSpec& spec) : ctx_(spec.p) {
  if (!is_prime(spec.p)) fail(ErrorCode::invalid_argument, "p must be prime");
  int p = spec.p;
  if (spec.faces.size() > kMaxFaces)
    fail(ErrorCode::unsupported, "patches are limited to " + std::to_string(kMaxFaces) + " faces");
  std::map<Pt, int> face_at;
  for (auto [col, row] : spec.faces) {
    LwFace f;
    f.col = col;
    f.row = row;
    f.center = hex_center(col, row);
    if (face_at.count(f.center)) fail(ErrorCode::invalid_argument, "duplicate face");
    face_at[f.center] = static_cast<int>(faces_.size());
    faces_.push_back(f);
  }
  active_.assign(faces_.size(), true);
  for (int f : spec.inactive_faces) {
    if (f < 0 || f >= static_cast<int>(faces_.size()))
      fail(ErrorCode::invalid_argument, "inactive face index out of range");
    active_[f] = false;
  }

  std::set<Pt> pts;
  for (const auto& f : faces_)
    for (Pt o : kCorner) pts.insert(add(f.center, o));
  // Bottom-to-top, left-to-right keeps neighbors close in the enumeration.
  std::vector<Pt> order(pts.begin(), pts.end());
  std::sort(order.begin(), order.end(),
            [](Pt a, Pt b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  std::map<Pt, int> vertex_at;
  for (Pt v : order) {
    LwVertex lv;
    lv.pos = v;
    lv.merge = is_center(add(v, {0, -2}));
    auto rc = region_centers(v, lv.merge);
    for (int s = 0; s < 3; ++s) {
      auto it = face_at.find(rc[s]);
      lv.face[s] = it == face_at.end() ? -1 : it->second;
    }
    vertex_at[v] = static_cast<int>(vertices_.size());
    vertices_.push_back(lv);
  }

  std::map<std::pair<Pt, Pt>, int> edge_at;
  for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
    auto& lv = vertices_[vi];
    auto nb = leg_neighbors(lv.pos, lv.merge);
    for (int l = 0; l < 3; ++l) {
      bool incoming = lv.merge ? l != 2 : l == 2;
      std::pair<Pt, Pt> key = incoming ? std::make_pair(nb[l], lv.pos) : std::make_pair(lv.pos, nb[l]);
      auto it = edge_at.find(key);
      int e;
      if (it == edge_at.end()) {
        LwEdge edge;
        edge.from = key.first;
        edge.to = key.second;
        auto wit = spec.walls.find(key);
        edge.wall = wit == spec.walls.end() ? wall_X(1, p) : wit->second;
        validate_wall(edge.wall, p);
        e = static_cast<int>(edges_.size());
        edge_at[key] = e;
        edges_.push_back(edge);
      } else {
        e = it->second;
      }
      int end = incoming ? 1 : 0;
      edges_[e].vertex[end] = static_cast<int>(vi);
      edges_[e].leg[end] = l;
      lv.edge[l] = e;
    }
  }
  for (const auto& [key, w] : spec.walls)
    if (!edge_at.count(key))
      fail(ErrorCode::invalid_argument,
           "wall given for an edge not in the patch: " + pt_str(key.first) + "->" + pt_str(key.second));

  for (auto& e : edges_) {
    if (!e.dangling()) continue;
    auto it = spec.pins.find({e.from, e.to});
    if (it != spec.pins.end()) {
      if (it->second < 0 || it->second >= object_count(e.wall, p))
        fail(ErrorCode::invalid_argument, "pinned object out of range");
      e.pin = it->second;
    } else if (spec.boundary == Boundary::pinned) {
      e.pin = 0;
    }
  }
  for (const auto& [key, obj] : spec.pins) {
    auto it = edge_at.find(key);
    if (it == edge_at.end() || !edges_[it->second].dangling())
      fail(ErrorCode::invalid_argument, "pins apply to dangling edges only");
    (void)obj;
  }

  for (auto& lv : vertices_) {
    const Bimodule& left = edges_[lv.edge[0]].wall;
    const Bimodule& right = edges_[lv.edge[1]].wall;
    const Bimodule& third = edges_[lv.edge[2]].wall;
    if (!trivalent_row_exists(left, right) || tensor(left, right, p) != third)
      fail(ErrorCode::wall_mismatch, "walls " + wall_name(left) + ", " + wall_name(right) +
                                         " do not fuse to " + wall_name(third) + " at vertex " +
                                         pt_str(lv.pos));
    int mu = 0;
    if (auto it = spec.corners.find(lv.pos); it != spec.corners.end()) mu = it->second;
    lv.rep = std::make_shared<TrivalentRep>(ctx_, lv.merge ? Template::tri21 : Template::tri12,
                                            left, right, mu);
  }
  for (const auto& [pos, mu] : spec.corners)
    if (!vertex_at.count(pos)) fail(ErrorCode::invalid_argument, "corner given off the patch");

  for (auto& f : faces_) {
    for (Pt o : kCorner) f.vertices.push_back(vertex_at.at(add(f.center, o)));
    for (int i = 0; i < 6; ++i) {
      Pt a = add(f.center, kCorner[i]), b = add(f.center, kCorner[(i + 1) % 6]);
      auto it = edge_at.find({a, b});
      if (it == edge_at.end()) it = edge_at.find({b, a});
      f.edges.push_back(it->second);
    }
  }
}

bool LatticePatch::face_active(int f) const { return active_.at(f); }

std::array<int, 3> LatticePatch::face_args(int z, int f, int g) const {
  const auto& v = vertices_.at(z);
  std::array<int, 3> a{0, 0, 0};
  for (int s = 0; s < 3; ++s) {
    if (v.face[s] != f) continue;
    int sign = s == 0 ? -1 : s == 1 ? 1 : (v.merge ? 1 : -1);
    a[s] = ctx_.r(sign * g);
  }
  return a;
}

std::pair<int, int> LatticePatch::edge_shift(int e, int f, int g) const {
  const auto& edge = edges_.at(e);
  int end = edge.vertex[0] >= 0 ? 0 : 1;
  int z = edge.vertex[end];
  return vertices_[z].rep->leg_shift(edge.leg[end], face_args(z, f, g));
}

// ---------------------------------------------------------------------------
// Consistent space

ConsistentSpace::ConsistentSpace(std::shared_ptr<const LatticePatch> patch)
    : patch_(std::move(patch)) {
  const auto& vs = patch_->vertices();
  const auto& es = patch_->edges();
  std::vector<int> edge_obj(es.size(), -1);
  for (std::size_t e = 0; e < es.size(); ++e)
    if (es[e].pin >= 0) edge_obj[e] = es[e].pin;
  std::vector<int> cur(vs.size(), 0);
  std::size_t cap = max_basis();

  std::function<void(std::size_t)> rec = [&](std::size_t vi) {
    if (vi == vs.size()) {
      if (states_.size() >= cap)
        fail(ErrorCode::size_limit, "consistent space exceeds " + std::to_string(cap) +
                                        " states (set ANNULUS_MAX_BASIS to raise)");
      index_[cur] = static_cast<int>(states_.size());
      states_.push_back(cur);
      return;
    }
    const auto& v = vs[vi];
    const auto& basis = v.rep->basis();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      bool ok = true;
      for (int l = 0; l < 3 && ok; ++l)
        if (edge_obj[v.edge[l]] >= 0 && edge_obj[v.edge[l]] != basis[b].legs[l]) ok = false;
      if (!ok) continue;
      std::array<bool, 3> set{};
      for (int l = 0; l < 3; ++l)
        if (edge_obj[v.edge[l]] < 0) {
          edge_obj[v.edge[l]] = basis[b].legs[l];
          set[l] = true;
        }
      cur[vi] = static_cast<int>(b);
      rec(vi + 1);
      for (int l = 0; l < 3; ++l)
        if (set[l]) edge_obj[v.edge[l]] = -1;
    }
  };
  rec(0);
}

int ConsistentSpace::find(const std::vector<int>& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int ConsistentSpace::edge_object(int state, int e) const {
  const auto& edge = patch_->edges().at(e);
  int end = edge.vertex[0] >= 0 ? 0 : 1;
  int z = edge.vertex[end];
  return patch_->vertices()[z].rep->basis()[states_.at(state)[z]].legs[edge.leg[end]];
}

Action ConsistentSpace::face_action(int f, int g, int state) const {
  std::vector<int> out = states_.at(state);
  int phase = 0;
  for (int z : patch_->faces().at(f).vertices) {
    Action a = patch_->vertices()[z].rep->act(out[z], patch_->face_args(z, f, g));
    out[z] = a.index;
    phase += a.zeta_exp;
  }
  int idx = find(out);
  if (idx < 0) fail(ErrorCode::internal, "face operator left the consistent space");
  return {idx, mod(phase, patch_->context().N())};
}

ExactMatrix face_projector(const ConsistentSpace& space, int f) {
  const Context& ctx = space.patch().context();
  std::size_t n = space.size();
  ExactMatrix m(n, n, ctx.N());
  mpq_class w(1, ctx.p());
  for (int g = 0; g < ctx.p(); ++g)
    for (std::size_t s = 0; s < n; ++s) {
      Action a = space.face_action(f, g, static_cast<int>(s));
      m.at(a.index, s) += ctx.phase(a.zeta_exp) * w;
    }
  return m;
}

// ---------------------------------------------------------------------------
// Commutation

CommutationReport check_commutation(const LatticePatch& patch) {
  CommutationReport rep;
  const Context& ctx = patch.context();
  int p = ctx.p(), N = ctx.N();
  const auto& vs = patch.vertices();
  const auto& es = patch.edges();
  const auto& fs = patch.faces();
  auto note = [&](const std::string& s) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(s);
  };

  // Vertex terms against face operators, one leg at a time.
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (!patch.face_active(static_cast<int>(f))) continue;
    for (int g = 1; g < p; ++g)
      for (std::size_t z = 0; z < vs.size(); ++z) {
        auto args = patch.face_args(static_cast<int>(z), static_cast<int>(f), g);
        const auto& rz = *vs[z].rep;
        for (int l = 0; l < 3; ++l) {
          int e = vs[z].edge[l];
          auto [sg, sh] = patch.edge_shift(e, static_cast<int>(f), g);
          bool bad = false;
          for (std::size_t b = 0; b < rz.basis().size() && !bad; ++b) {
            int b2 = rz.act(static_cast<int>(b), args).index;
            for (int o = 0; o < object_count(es[e].wall, p); ++o) {
              int o2 = act_code(es[e].wall, sg, o, sh, p);
              bool before = rz.basis()[b].legs[l] == o;
              bool after = rz.basis()[b2].legs[l] == o2;
              ++rep.checks;
              if (before != after) {
                bad = true;
                break;
              }
            }
          }
          if (!bad && es[e].pin >= 0 && act_code(es[e].wall, sg, es[e].pin, sh, p) != es[e].pin)
            bad = true;
          if (bad)
            note("vertex " + pt_str(vs[z].pos) + " leg " + std::to_string(l) + " vs face " +
                 std::to_string(f) + " g=" + std::to_string(g));
        }
      }
  }

  // Face operators against each other and the group law within one face.
  auto phase_constant = [&](const std::vector<int>& zs, const std::function<Action(int, int)>& lhs,
                            const std::function<Action(int, int)>& rhs, int* total) {
    *total = 0;
    for (int z : zs) {
      std::optional<int> c;
      for (std::size_t b = 0; b < vs[z].rep->basis().size(); ++b) {
        Action x = lhs(z, static_cast<int>(b)), y = rhs(z, static_cast<int>(b));
        ++rep.checks;
        if (x.index != y.index) return false;
        int d = mod(x.zeta_exp - y.zeta_exp, N);
        if (c && *c != d) return false;
        c = d;
      }
      *total += c.value_or(0);
    }
    *total = mod(*total, N);
    return true;
  };
  auto chain = [&](int z, int b, int f1, int g1, int f2, int g2) {
    Action a = vs[z].rep->act(b, patch.face_args(z, f1, g1));
    Action c = vs[z].rep->act(a.index, patch.face_args(z, f2, g2));
    return Action{c.index, a.zeta_exp + c.zeta_exp};
  };
  for (int f1 = 0; f1 < static_cast<int>(fs.size()); ++f1) {
    if (!patch.face_active(f1)) continue;
    for (int f2 = f1; f2 < static_cast<int>(fs.size()); ++f2) {
      if (!patch.face_active(f2)) continue;
      std::set<int> zset(fs[f1].vertices.begin(), fs[f1].vertices.end());
      zset.insert(fs[f2].vertices.begin(), fs[f2].vertices.end());
      std::vector<int> zs(zset.begin(), zset.end());
      for (int g1 = 0; g1 < p; ++g1)
        for (int g2 = 0; g2 < p; ++g2) {
          int total = 0;
          bool ok;
          if (f1 == f2) {
            ok = phase_constant(
                zs, [&](int z, int b) { return chain(z, b, f1, g1, f1, g2); },
                [&](int z, int b) { return vs[z].rep->act(b, patch.face_args(z, f1, g1 + g2)); },
                &total);
          } else {
            ok = phase_constant(
                zs, [&](int z, int b) { return chain(z, b, f1, g1, f2, g2); },
                [&](int z, int b) { return chain(z, b, f2, g2, f1, g1); }, &total);
          }
          if (!ok || total != 0)
            note("faces " + std::to_string(f1) + "," + std::to_string(f2) + " g=" +
                 std::to_string(g1) + "," + std::to_string(g2) +
                 (ok ? " phase w^" + std::to_string(total) : " state-dependent"));
        }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ground space

std::size_t ground_space_dim(const ConsistentSpace& space) {
  const auto& patch = space.patch();
  int N = patch.context().N();
  std::vector<int> gens;
  for (int f = 0; f < static_cast<int>(patch.faces().size()); ++f)
    if (patch.face_active(f)) gens.push_back(f);
  std::vector<int> phase(space.size(), -1);
  std::size_t count = 0;
  for (std::size_t s0 = 0; s0 < space.size(); ++s0) {
    if (phase[s0] >= 0) continue;
    bool trivial = true;
    std::deque<int> queue{static_cast<int>(s0)};
    phase[s0] = 0;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int f : gens) {
        Action a = space.face_action(f, 1, t);
        int c = mod(phase[t] + a.zeta_exp, N);
        if (phase[a.index] < 0) {
          phase[a.index] = c;
          queue.push_back(a.index);
        } else if (phase[a.index] != c) {
          trivial = false;
        }
      }
    }
    if (trivial) ++count;
  }
  return count;
}

std::size_t ground_space_dim_dense(const ConsistentSpace& space) {
  const auto& patch = space.patch();
  ExactMatrix prod = ExactMatrix::identity(space.size(), patch.context().N());
  for (int f = 0; f < static_cast<int>(patch.faces().size()); ++f)
    if (patch.face_active(f)) prod = face_projector(space, f) * prod;
  return matrix_rank(prod);
}

std::vector<VertexViolation> violated_vertex_terms(const LatticePatch& patch,
                                                   const std::vector<int>& edge_objects) {
  if (edge_objects.size() != patch.edges().size())
    fail(ErrorCode::invalid_argument, "one object per edge expected");
  std::vector<VertexViolation> out;
  for (const auto& v : patch.vertices()) {
    int best = 0;
    for (const auto& b : v.rep->basis()) {
      int m = 0;
      for (int l = 0; l < 3; ++l) m += b.legs[l] == edge_objects[v.edge[l]];
      best = std::max(best, m);
    }
    if (best < 3) out.push_back({v.pos, best});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Specs

PatchSpec defect_line_spec(int p, Boundary b) {
  PatchSpec s;
  s.p = p;
  s.boundary = b;
  s.faces = {{0, 0}, {-1, 1}, {0, 1}};
  auto put = [&](Pt from, Pt to, Bimodule w) { s.walls[{from, to}] = w; };
  // Center vertex (0,2): F0 from the lower left, T from the lower right, L up.
  put({-1, 1}, {0, 2}, wall_F(0, p));
  put({1, 1}, {0, 2}, wall_T());
  put({0, 2}, {0, 4}, wall_L());
  put({-1, -1}, {-1, 1}, wall_F(0, p));
  put({-2, -2}, {-1, -1}, wall_F(0, p));
  put({1, -1}, {1, 1}, wall_T());
  put({2, -2}, {1, -1}, wall_T());
  put({0, 4}, {-1, 5}, wall_L());
  put({-1, 5}, {-1, 7}, wall_L());
  return s;
}

namespace {
Pt read_pt(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::parse, "point must be [x, y]");
  return {j[0].get<int>(), j[1].get<int>()};
}
}  // namespace

PatchSpec parse_patch(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::parse, std::string("patch: ") + e.what());
  }
  try {
    int p = j.value("p", 2);
    if (!is_prime(p)) fail(ErrorCode::invalid_argument, "p must be prime");
    Boundary b = Boundary::pinned;
    std::string bs = j.value("boundary", "pinned");
    if (bs == "free") b = Boundary::free;
    else if (bs != "pinned") fail(ErrorCode::parse, "boundary must be pinned or free");
    PatchSpec s;
    if (j.contains("template")) {
      if (j["template"] != "defect_line") fail(ErrorCode::parse, "unknown patch template");
      s = defect_line_spec(p, b);
    } else {
      s.p = p;
      s.boundary = b;
      for (const auto& f : j.at("faces")) s.faces.push_back({f.at(0).get<int>(), f.at(1).get<int>()});
      for (const auto& w : j.value("walls", nlohmann::json::array()))
        s.walls[{read_pt(w.at("from")), read_pt(w.at("to"))}] =
            parse_wall(w.at("wall").get<std::string>(), p);
    }
    for (const auto& c : j.value("corners", nlohmann::json::array()))
      s.corners[read_pt(c.at("at"))] = c.at("value").get<int>();
    for (const auto& q : j.value("pins", nlohmann::json::array()))
      s.pins[{read_pt(q.at("from")), read_pt(q.at("to"))}] = q.at("object").get<int>();
    for (const auto& f : j.value("inactive", nlohmann::json::array()))
      s.inactive_faces.push_back(f.get<int>());
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("patch: ") + e.what());
  }
}

}  // namespace annulus

namespace annulus {

namespace {
constexpr std::size_t kDenseLimit = 256;

nlohmann::json pt_json(Pt p) { return nlohmann::json::array({p.x, p.y}); }
}  // namespace

nlohmann::json analyze_patch(const std::string& text) {
  PatchSpec spec = parse_patch(text);
  auto doc = nlohmann::json::parse(text);
  auto patch = std::make_shared<LatticePatch>(spec);
  ConsistentSpace space(patch);
  nlohmann::json r;
  r["p"] = spec.p;
  r["boundary"] = spec.boundary == Boundary::free ? "free" : "pinned";
  r["faces"] = patch->faces().size();
  int active = 0;
  for (std::size_t f = 0; f < patch->faces().size(); ++f) active += patch->face_active(static_cast<int>(f));
  r["active_faces"] = active;
  r["vertices"] = patch->vertices().size();
  r["edges"] = patch->edges().size();
  nlohmann::json walls = nlohmann::json::array();
  for (const auto& e : patch->edges())
    if (e.wall != wall_X(1, spec.p))
      walls.push_back({{"from", pt_json(e.from)}, {"to", pt_json(e.to)}, {"wall", wall_name(e.wall)}});
  r["walls"] = walls;
  r["consistent_dim"] = space.size();
  r["ground_space_dim"] = ground_space_dim(space);
  if (space.size() <= kDenseLimit) r["ground_space_dim_dense"] = ground_space_dim_dense(space);
  auto comm = check_commutation(*patch);
  r["commutation"] = {{"ok", comm.ok}, {"checks", comm.checks}, {"failures", comm.failures}};

  nlohmann::json states = nlohmann::json::array();
  std::map<std::pair<Pt, Pt>, int> edge_index;
  for (std::size_t e = 0; e < patch->edges().size(); ++e)
    edge_index[{patch->edges()[e].from, patch->edges()[e].to}] = static_cast<int>(e);
  try {
    for (const auto& st : doc.value("states", nlohmann::json::array())) {
      std::vector<int> obj(patch->edges().size(), 0);
      for (const auto& e : st.at("edges")) {
        auto it = edge_index.find({read_pt(e.at("from")), read_pt(e.at("to"))});
        if (it == edge_index.end()) fail(ErrorCode::invalid_argument, "state names an edge not in the patch");
        int o = e.at("object").get<int>();
        if (o < 0 || o >= object_count(patch->edges()[it->second].wall, spec.p))
          fail(ErrorCode::invalid_argument, "state object out of range");
        obj[it->second] = o;
      }
      nlohmann::json viol = nlohmann::json::array();
      for (const auto& v : violated_vertex_terms(*patch, obj))
        viol.push_back({{"vertex", pt_json(v.vertex)}, {"matched_legs", v.matched_legs}});
      states.push_back({{"violated_vertex_terms", viol.size()}, {"vertices", viol}});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("states: ") + e.what());
  }
  r["states"] = states;
  return r;
}

std::string render_patch_report(const nlohmann::json& r) {
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + ": " + v + "\n"; };
  line("p", std::to_string(r["p"].get<int>()));
  line("boundary", r["boundary"].get<std::string>());
  line("faces", std::to_string(r["faces"].get<int>()) + " (" +
                    std::to_string(r["active_faces"].get<int>()) + " in the Hamiltonian)");
  line("vertices", std::to_string(r["vertices"].get<int>()));
  line("edges", std::to_string(r["edges"].get<int>()));
  for (const auto& w : r["walls"])
    line("wall", w["from"].dump() + " -> " + w["to"].dump() + " " + w["wall"].get<std::string>());
  line("consistent_dim", std::to_string(r["consistent_dim"].get<std::size_t>()));
  line("ground_space_dim", std::to_string(r["ground_space_dim"].get<std::size_t>()));
  if (r.contains("ground_space_dim_dense"))
    line("ground_space_dim_dense", std::to_string(r["ground_space_dim_dense"].get<std::size_t>()));
  const auto& c = r["commutation"];
  line("commuting_projectors", c["ok"].get<bool>() ? "yes" : "no");
  for (const auto& f : c["failures"]) line("  failure", f.get<std::string>());
  int i = 0;
  for (const auto& st : r["states"]) {
    std::string v = std::to_string(st["violated_vertex_terms"].get<int>());
    for (const auto& x : st["vertices"]) v += " " + x["vertex"].dump();
    line("state " + std::to_string(i++) + " violated vertex terms", v);
  }
  return s;
}

}  // namespace annulus
