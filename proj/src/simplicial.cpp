#include "ksubdiv/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

#include "ksubdiv/error.hpp"

namespace ksubdiv {

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : f) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

SimplicialComplex SimplicialComplex::from_facets(std::vector<std::string> labels,
                                                 std::vector<Face> facets,
                                                 std::size_t max_faces) {
  const int n = static_cast<int>(labels.size());
  SimplicialComplex k;
  for (int v = 0; v < n; ++v) {
    if (!k.label_index_.emplace(labels[v], v).second) {
      throw InvalidArgument("duplicate vertex label '" + labels[v] + "'");
    }
  }
  k.labels_ = std::move(labels);

  std::vector<std::unordered_set<Face, FaceHash>> sets;
  std::size_t total = 0;
  for (auto& facet : facets) {
    if (facet.empty()) throw InvalidArgument("empty facet");
    std::sort(facet.begin(), facet.end());
    if (std::adjacent_find(facet.begin(), facet.end()) != facet.end()) {
      throw InvalidArgument("facet repeats a vertex");
    }
    if (facet.front() < 0 || facet.back() >= n) throw InvalidArgument("facet vertex out of range");
    if (facet.size() > 24) throw ResourceLimit("facet too large to close downward");
    if (sets.size() < facet.size()) sets.resize(facet.size());
    // Skip the subset walk when the facet is already known.
    if (sets[facet.size() - 1].count(facet)) continue;

    const std::uint32_t subsets = 1u << facet.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      Face sub;
      for (std::size_t i = 0; i < facet.size(); ++i) {
        if (mask & (1u << i)) sub.push_back(facet[i]);
      }
      if (sets[sub.size() - 1].insert(std::move(sub)).second && ++total > max_faces) {
        throw ResourceLimit("complex exceeds the cap of " + std::to_string(max_faces) + " faces");
      }
    }
  }

  if (static_cast<int>(sets.empty() ? 0 : sets[0].size()) != n) {
    throw InvalidArgument("every vertex must lie in some face");
  }

  k.by_dim_.resize(sets.size());
  k.index_.resize(sets.size());
  for (std::size_t d = 0; d < sets.size(); ++d) {
    k.by_dim_[d].assign(sets[d].begin(), sets[d].end());
    std::sort(k.by_dim_[d].begin(), k.by_dim_[d].end());
    k.index_[d].reserve(k.by_dim_[d].size());
    for (std::size_t i = 0; i < k.by_dim_[d].size(); ++i) k.index_[d].emplace(k.by_dim_[d][i], i);
  }
  while (!k.by_dim_.empty() && k.by_dim_.back().empty()) {
    k.by_dim_.pop_back();
    k.index_.pop_back();
  }
  return k;
}

std::optional<int> SimplicialComplex::vertex_by_label(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::face_count() const {
  std::size_t total = 0;
  for (const auto& d : by_dim_) total += d.size();
  return total;
}

const std::vector<Face>& SimplicialComplex::faces(int dim) const {
  static const std::vector<Face> none;
  if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return none;
  return by_dim_[dim];
}

bool SimplicialComplex::contains(const Face& face) const { return index_of(face).has_value(); }

std::optional<std::size_t> SimplicialComplex::index_of(const Face& face) const {
  if (face.empty() || face.size() > by_dim_.size()) return std::nullopt;
  const auto& idx = index_[face.size() - 1];
  auto it = idx.find(face);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::vector<Face> SimplicialComplex::facets() const {
  std::vector<Face> out;
  for (int d = 0; d <= dimension(); ++d) {
    std::unordered_set<Face, FaceHash> covered;
    if (d < dimension()) {
      for (const auto& f : by_dim_[d + 1]) {
        for (std::size_t i = 0; i < f.size(); ++i) {
          Face sub = f;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
          covered.insert(std::move(sub));
        }
      }
    }
    for (const auto& f : by_dim_[d]) {
      if (!covered.count(f)) out.push_back(f);
    }
  }
  return out;
}

std::vector<std::size_t> f_vector(const SimplicialComplex& k) {
  std::vector<std::size_t> f;
  for (int d = 0; d <= k.dimension(); ++d) f.push_back(k.faces(d).size());
  return f;
}

long long euler_characteristic(const SimplicialComplex& k) {
  long long chi = 0;
  for (int d = 0; d <= k.dimension(); ++d) {
    const auto count = static_cast<long long>(k.faces(d).size());
    chi += (d % 2 == 0) ? count : -count;
  }
  return chi;
}

int dimension(const SimplicialComplex& k) { return k.dimension(); }

bool is_pure(const SimplicialComplex& k) {
  const auto top = static_cast<std::size_t>(k.dimension() + 1);
  for (const auto& f : k.facets()) {
    if (f.size() != top) return false;
  }
  return true;
}

SimplicialComplex stellar_subdivide(const SimplicialComplex& k, const Face& sigma,
                                    const std::string& new_label) {
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (!k.contains(s)) throw FaceNotPresent("stellar subdivision at a face not in the complex");
  if (s.size() == 1) return k;

  const int apex = k.vertex_count();
  std::vector<Face> facets;
  for (const auto& f : k.facets()) {
    if (!std::includes(f.begin(), f.end(), s.begin(), s.end())) {
      facets.push_back(f);
      continue;
    }
    // (f \ sigma) + (sigma minus one vertex) + apex, for each vertex of sigma.
    for (int drop : s) {
      Face g;
      for (int v : f) {
        if (v != drop) g.push_back(v);
      }
      g.push_back(apex);
      facets.push_back(std::move(g));
    }
  }
  auto labels = k.labels();
  labels.push_back(new_label);
  return SimplicialComplex::from_facets(std::move(labels), std::move(facets),
                                        std::numeric_limits<std::size_t>::max());
}

SimplicialComplex cone(const SimplicialComplex& k, const std::string& apex_label) {
  const int apex = k.vertex_count();
  std::vector<Face> facets = k.facets();
  for (auto& f : facets) f.push_back(apex);
  if (facets.empty()) facets.push_back({apex});
  auto labels = k.labels();
  labels.push_back(apex_label);
  return SimplicialComplex::from_facets(std::move(labels), std::move(facets),
                                        std::numeric_limits<std::size_t>::max());
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int d) {
  const auto& cols = k.faces(d);
  if (d == 0) {
    SparseIntMatrix m(1, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) m.add(0, j, 1);
    return m;
  }
  const auto& rows = k.faces(d - 1);
  SparseIntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < cols[j].size(); ++i) {
      Face sub = cols[j];
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      const auto row = k.index_of(sub);
      m.add(static_cast<int>(*row), static_cast<int>(j), (i % 2 == 0) ? 1 : -1);
    }
  }
  return m;
}

std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& k,
                                            std::size_t max_dense_entries) {
  const int top = k.dimension();
  if (top < 0) return {};
  // summaries[d] describes the boundary map out of degree d.
  std::vector<SmithSummary> summaries(top + 2);
  for (int d = 0; d <= top; ++d) {
    summaries[d] = smith_normal_form(boundary_matrix(k, d), max_dense_entries);
  }
  std::vector<HomologyGroup> groups(top + 1);
  for (int d = 0; d <= top; ++d) {
    groups[d].betti = k.faces(d).size() - summaries[d].rank - summaries[d + 1].rank;
    groups[d].torsion = summaries[d + 1].torsion;
  }
  return groups;
}

namespace {

// Per-vertex invariant: faces containing the vertex counted by dimension,
// refined once by the multiset of neighbour invariants.
std::vector<std::vector<std::size_t>> vertex_invariants(const SimplicialComplex& k,
                                                        const std::vector<Bits>& adj) {
  const int n = k.vertex_count();
  std::vector<std::vector<std::size_t>> base(n, std::vector<std::size_t>(k.dimension() + 1, 0));
  for (int d = 0; d <= k.dimension(); ++d) {
    for (const auto& f : k.faces(d)) {
      for (int v : f) ++base[v][d];
    }
  }
  std::map<std::vector<std::size_t>, std::size_t> ids;
  for (const auto& b : base) ids.emplace(b, 0);
  std::size_t next = 0;
  for (auto& [key, id] : ids) id = next++;

  std::vector<std::vector<std::size_t>> refined(n);
  for (int v = 0; v < n; ++v) {
    std::vector<std::size_t> neighbour_ids;
    for (auto u = adj[v].find_first(); u != Bits::npos; u = adj[v].find_next(u)) {
      neighbour_ids.push_back(ids[base[u]]);
    }
    std::sort(neighbour_ids.begin(), neighbour_ids.end());
    refined[v] = base[v];
    refined[v].push_back(neighbour_ids.size());
    refined[v].insert(refined[v].end(), neighbour_ids.begin(), neighbour_ids.end());
  }
  return refined;
}

std::vector<Bits> adjacency(const SimplicialComplex& k) {
  const int n = k.vertex_count();
  std::vector<Bits> adj(n, Bits(n));
  for (const auto& e : k.faces(1)) {
    adj[e[0]].set(e[1]);
    adj[e[1]].set(e[0]);
  }
  return adj;
}

class ComplexMatcher {
 public:
  ComplexMatcher(const SimplicialComplex& a, const SimplicialComplex& b)
      : a_(a), b_(b), adj_a_(adjacency(a)), adj_b_(adjacency(b)) {
    inv_a_ = vertex_invariants(a, adj_a_);
    inv_b_ = vertex_invariants(b, adj_b_);
    const int n = a.vertex_count();
    map_.assign(n, -1);
    used_.assign(n, false);
    star_.resize(n);
    for (int d = 2; d <= a.dimension(); ++d) {
      for (const auto& f : a.faces(d)) {
        for (int v : f) star_[v].push_back(&f);
      }
    }
  }

  bool invariants_match() const {
    auto x = inv_a_, y = inv_b_;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

  std::vector<int> search_order() const {
    // Breadth-first from each unvisited vertex so that most vertices have a
    // mapped neighbour when they are reached.
    const int n = a_.vertex_count();
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      order.push_back(s);
      for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
        const int v = order[head];
        for (auto u = adj_a_[v].find_first(); u != Bits::npos; u = adj_a_[v].find_next(u)) {
          if (!seen[u]) {
            seen[u] = true;
            order.push_back(static_cast<int>(u));
          }
        }
      }
    }
    return order;
  }

  bool search(const std::vector<int>& order, std::size_t depth) {
    if (depth == order.size()) return is_face_bijection(a_, b_, map_);
    const int x = order[depth];

    std::vector<int> candidates;
    auto same = b_.vertex_by_label(a_.label(x));
    if (same) candidates.push_back(*same);
    int anchor = -1;
    for (auto u = adj_a_[x].find_first(); u != Bits::npos; u = adj_a_[x].find_next(u)) {
      if (map_[u] != -1) {
        anchor = map_[u];
        break;
      }
    }
    if (anchor >= 0) {
      for (auto y = adj_b_[anchor].find_first(); y != Bits::npos; y = adj_b_[anchor].find_next(y)) {
        candidates.push_back(static_cast<int>(y));
      }
    } else {
      for (int y = 0; y < b_.vertex_count(); ++y) candidates.push_back(y);
    }

    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const int y = candidates[ci];
      if (ci > 0 && same && y == *same) continue;
      if (used_[y] || inv_a_[x] != inv_b_[y] || !consistent(x, y)) continue;
      map_[x] = y;
      used_[y] = true;
      mapped_.push_back(x);
      if (faces_consistent(x) && search(order, depth + 1)) return true;
      mapped_.pop_back();
      used_[y] = false;
      map_[x] = -1;
    }
    return false;
  }

  const std::vector<int>& map() const { return map_; }

 private:
  bool consistent(int x, int y) const {
    for (int u : mapped_) {
      if (adj_a_[u][x] != adj_b_[map_[u]][y]) return false;
    }
    return true;
  }

  bool faces_consistent(int x) const {
    for (const Face* f : star_[x]) {
      Face image;
      for (int v : *f) {
        if (map_[v] == -1) break;
        image.push_back(map_[v]);
      }
      if (image.size() != f->size()) continue;
      std::sort(image.begin(), image.end());
      if (!b_.contains(image)) return false;
    }
    return true;
  }

  const SimplicialComplex& a_;
  const SimplicialComplex& b_;
  std::vector<Bits> adj_a_, adj_b_;
  std::vector<std::vector<std::size_t>> inv_a_, inv_b_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> mapped_;
  std::vector<std::vector<const Face*>> star_;
};

}  // namespace

bool is_face_bijection(const SimplicialComplex& k1, const SimplicialComplex& k2,
                       std::span<const int> map) {
  if (k1.vertex_count() != k2.vertex_count() || f_vector(k1) != f_vector(k2)) return false;
  if (static_cast<int>(map.size()) != k1.vertex_count()) return false;
  std::vector<bool> hit(k2.vertex_count(), false);
  for (int y : map) {
    if (y < 0 || y >= k2.vertex_count() || hit[y]) return false;
    hit[y] = true;
  }
  for (int d = 0; d <= k1.dimension(); ++d) {
    for (const auto& f : k1.faces(d)) {
      Face image;
      for (int v : f) image.push_back(map[v]);
      std::sort(image.begin(), image.end());
      if (!k2.contains(image)) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> is_isomorphic(const SimplicialComplex& k1,
                                              const SimplicialComplex& k2) {
  if (k1.vertex_count() != k2.vertex_count() || f_vector(k1) != f_vector(k2)) return std::nullopt;
  ComplexMatcher matcher(k1, k2);
  if (!matcher.invariants_match()) return std::nullopt;
  if (!matcher.search(matcher.search_order(), 0)) return std::nullopt;
  return matcher.map();
}

SimplicialComplex apply_vertex_permutation(const SimplicialComplex& k, std::span<const int> perm) {
  const int n = k.vertex_count();
  if (static_cast<int>(perm.size()) != n) throw InvalidArgument("permutation has the wrong size");
  std::vector<bool> hit(n, false);
  for (int y : perm) {
    if (y < 0 || y >= n || hit[y]) throw InvalidArgument("not a permutation of the vertices");
    hit[y] = true;
  }
  std::vector<Face> facets = k.facets();
  for (auto& f : facets) {
    for (int& v : f) v = perm[v];
  }
  return SimplicialComplex::from_facets(k.labels(), std::move(facets),
                                        std::numeric_limits<std::size_t>::max());
}

bool same_labelled_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count() || f_vector(a) != f_vector(b)) return false;
  std::vector<int> map(a.vertex_count());
  for (int v = 0; v < a.vertex_count(); ++v) {
    auto w = b.vertex_by_label(a.label(v));
    if (!w) return false;
    map[v] = *w;
  }
  return is_face_bijection(a, b, map);
}

FacePoset face_poset(const SimplicialComplex& k) {
  FacePoset out;
  for (int d = 0; d <= k.dimension(); ++d) {
    for (const auto& f : k.faces(d)) out.faces.push_back(f);
  }
  std::unordered_map<Face, int, FaceHash> id;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < out.faces.size(); ++i) {
    id.emplace(out.faces[i], static_cast<int>(i));
    std::string s = "{";
    for (std::size_t j = 0; j < out.faces[i].size(); ++j) {
      if (j > 0) s += ",";
      s += k.label(out.faces[i][j]);
    }
    labels.push_back(s + "}");
  }
  std::vector<std::pair<int, int>> covers;
  for (std::size_t i = 0; i < out.faces.size(); ++i) {
    const auto& f = out.faces[i];
    if (f.size() < 2) continue;
    for (std::size_t j = 0; j < f.size(); ++j) {
      Face sub = f;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
      covers.emplace_back(id.at(sub), static_cast<int>(i));
    }
  }
  out.poset = Poset::from_covers(std::move(labels), covers);
  return out;
}

}  // namespace ksubdiv
