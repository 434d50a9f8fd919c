#include "oracles/lw_dense.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include <Eigen/Dense>

namespace lwdense {

namespace {

using Pt = std::pair<int, int>;

int pmod(int v, int p) { return ((v % p) + p) % p; }

// Vertices with y = 2 (mod 3) have two edges below and one above.
std::array<Pt, 3> neighbours(Pt v) {
  auto [x, y] = v;
  if (pmod(y, 3) == 2) return {Pt{x - 1, y - 1}, Pt{x + 1, y - 1}, Pt{x, y + 2}};
  return {Pt{x - 1, y + 1}, Pt{x + 1, y + 1}, Pt{x, y - 2}};
}

}  // namespace

Result solve(int p, const std::vector<std::pair<int, int>>& faces, bool free_boundary,
             const std::vector<int>& skip, std::size_t dense_limit) {
  // Counterclockwise corners from the top.
  const std::array<Pt, 6> ring{Pt{0, 2}, Pt{-1, 1}, Pt{-1, -1}, Pt{0, -2}, Pt{1, -1}, Pt{1, 1}};
  std::vector<Pt> centers;
  for (auto [c, r] : faces) centers.push_back({2 * c + pmod(r, 2), 3 * r});

  std::set<Pt> verts;
  for (auto c : centers)
    for (auto o : ring) verts.insert({c.first + o.first, c.second + o.second});

  // Edges as (lower, upper) point pairs.
  std::map<std::pair<Pt, Pt>, int> edge_id;
  std::vector<std::pair<Pt, Pt>> edges;
  for (auto v : verts)
    for (auto n : neighbours(v)) {
      auto key = n.second < v.second ? std::make_pair(n, v) : std::make_pair(v, n);
      if (!edge_id.count(key)) {
        edge_id[key] = static_cast<int>(edges.size());
        edges.push_back(key);
      }
    }
  std::vector<bool> dangling(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    dangling[e] = !verts.count(edges[e].first) || !verts.count(edges[e].second);

  // Loop around each face: (edge, +1 when traversed upward).
  std::vector<std::vector<std::pair<int, int>>> loops;
  for (auto c : centers) {
    std::vector<std::pair<int, int>> loop;
    for (int i = 0; i < 6; ++i) {
      Pt a{c.first + ring[i].first, c.second + ring[i].second};
      Pt b{c.first + ring[(i + 1) % 6].first, c.second + ring[(i + 1) % 6].second};
      bool up = b.second > a.second;
      auto key = up ? std::make_pair(a, b) : std::make_pair(b, a);
      loop.push_back({edge_id.at(key), up ? 1 : -1});
    }
    loops.push_back(loop);
  }

  // Enumerate labelings edge by edge, checking each vertex once its edges are set.
  std::vector<std::vector<int>> vertex_edges;
  std::vector<std::vector<int>> vertex_sign;
  for (auto v : verts) {
    std::vector<int> es, ss;
    for (auto n : neighbours(v)) {
      bool below = n.second < v.second;
      auto key = below ? std::make_pair(n, v) : std::make_pair(v, n);
      es.push_back(edge_id.at(key));
      ss.push_back(below ? 1 : -1);
    }
    vertex_edges.push_back(es);
    vertex_sign.push_back(ss);
  }
  std::vector<int> last_vertex_of_edge(edges.size(), -1);
  std::vector<std::vector<int>> check_at(edges.size());
  for (std::size_t v = 0; v < vertex_edges.size(); ++v) {
    int last = *std::max_element(vertex_edges[v].begin(), vertex_edges[v].end());
    check_at[last].push_back(static_cast<int>(v));
  }
  std::vector<std::vector<int>> configs;
  std::vector<int> lab(edges.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t e) {
    if (e == edges.size()) {
      configs.push_back(lab);
      return;
    }
    int range = (dangling[e] && !free_boundary) ? 1 : p;
    for (int x = 0; x < range; ++x) {
      lab[e] = x;
      bool ok = true;
      for (int v : check_at[e]) {
        int s = 0;
        for (int i = 0; i < 3; ++i) s += vertex_sign[v][i] * lab[vertex_edges[v][i]];
        if (pmod(s, p) != 0) ok = false;
      }
      if (ok) rec(e + 1);
    }
    lab[e] = 0;
  };
  rec(0);

  Result res;
  res.configurations = configs.size();
  if (configs.size() > dense_limit) return res;
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < configs.size(); ++i) index[configs[i]] = static_cast<int>(i);
  const auto n = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t f = 0; f < loops.size(); ++f) {
    if (std::find(skip.begin(), skip.end(), static_cast<int>(f)) != skip.end()) continue;
    H += Eigen::MatrixXd::Identity(n, n);
    for (int g = 0; g < p; ++g)
      for (std::size_t s = 0; s < configs.size(); ++s) {
        auto t = configs[s];
        for (auto [e, sign] : loops[f]) t[e] = pmod(t[e] + sign * g, p);
        H(index.at(t), static_cast<Eigen::Index>(s)) -= 1.0 / p;
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i)) < 1e-8) ++res.ground_dim;
  return res;
}

}  // namespace lwdense
