#include "ksubdiv/carrier.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ksubdiv/error.hpp"
#include "ksubdiv/parallel.hpp"

namespace ksubdiv {

namespace {

bool is_subset(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Face without(const Face& f, std::size_t i) {
  Face out = f;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

// Image of a source face in coordinates of q (last barycentric coordinate
// dropped), one row per vertex.
RationalMatrix image_in(const CarrierMap& cm, const Face& cell, const Face& q) {
  RationalMatrix rows;
  for (int v : cell) {
    RationalVector row;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      row.push_back(cm.vertex_map[static_cast<std::size_t>(v)].coordinate(q[i]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CellReport check_target_face(const CarrierMap& cm, const Face& q,
                             const std::vector<std::pair<int, std::size_t>>& bucket) {
  const int d = static_cast<int>(q.size()) - 1;
  CellReport r{q, 0, 0, Rational(0), true, {}};
  auto fail = [&](std::string why) {
    if (r.pass) r.witness = std::move(why);
    r.pass = false;
  };

  std::vector<const Face*> top, lower;
  long long euler = 0;
  for (const auto& [dim, idx] : bucket) {
    const Face& cell = cm.source.faces(dim)[idx];
    euler += (dim % 2 == 0) ? 1 : -1;
    if (dim > d) {
      fail("cell " + face_name(cm.source, cell) + " has dimension above its carrier");
    } else if (dim == d) {
      top.push_back(&cell);
    } else {
      lower.push_back(&cell);
    }
    for (int v : cell) {
      if (!is_subset(cm.vertex_map[static_cast<std::size_t>(v)].support(), q)) {
        fail("vertex " + cm.source.label(v) + " of " + face_name(cm.source, cell) +
             " lies outside the carrier");
      }
    }
  }
  r.top_cells = top.size();
  r.lower_cells = lower.size();
  if (!r.pass) return r;
  if (top.empty()) {
    fail("no cell of full dimension is carried by this face");
    return r;
  }

  std::vector<RationalMatrix> images;
  for (const Face* cell : top) {
    images.push_back(image_in(cm, *cell, q));
    const Rational vol = normalized_volume(images.back());
    if (vol == 0) {
      fail("degenerate cell " + face_name(cm.source, *cell));
      return r;
    }
    r.volume += vol;
  }
  for (std::size_t i = 0; i < top.size(); ++i) {
    for (std::size_t j = i + 1; j < top.size(); ++j) {
      if (interiors_intersect(images[i], images[j])) {
        fail("overlap: interiors of " + face_name(cm.source, *top[i]) + " and " +
             face_name(cm.source, *top[j]) + " meet inside " + face_name(cm.target, q));
        return r;
      }
    }
  }
  // The open simplex q has normalized volume 1 in these coordinates.
  if (r.volume != 1) {
    fail("cells cover volume " + to_string(r.volume) + " of " + face_name(cm.target, q));
    return r;
  }
  for (const Face* cell : lower) {
    const bool in_top = std::any_of(top.begin(), top.end(),
                                    [&](const Face* t) { return is_subset(*cell, *t); });
    if (!in_top) {
      fail("cell " + face_name(cm.source, *cell) + " is not a face of a full-dimensional cell");
      return r;
    }
    if (affine_dimension(image_in(cm, *cell, q)) + 1 != cell->size()) {
      fail("degenerate cell " + face_name(cm.source, *cell));
      return r;
    }
  }
  const long long expected = (d % 2 == 0) ? 1 : -1;
  if (euler != expected) {
    fail("alternating cell count " + std::to_string(euler) + " over " + face_name(cm.target, q) +
         ", expected " + std::to_string(expected));
  }
  return r;
}

}  // namespace

std::string face_name(const SimplicialComplex& k, const Face& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ",";
    out += k.label(f[i]);
  }
  return out + "}";
}

const Face& CarrierMap::carrier(const Face& source_face) const {
  auto idx = source.index_of(source_face);
  if (!idx) throw FaceNotPresent("not a face of the source complex");
  return face_carrier[source_face.size() - 1][*idx];
}

bool CarrierVerification::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass; });
}

CarrierVerification verify_carrier_map(const CarrierMap& cm, unsigned threads) {
  const auto& p = cm.source;
  const auto& q = cm.target;
  CarrierVerification out;
  auto note = [](PropertyCheck& c, std::string why) {
    if (c.pass) c.witness = std::move(why);
    c.pass = false;
  };

  PropertyCheck shape{"carrier data matches the source complex", true, 1, {}};
  bool shaped = cm.vertex_map.size() == static_cast<std::size_t>(p.vertex_count()) &&
                cm.face_carrier.size() == static_cast<std::size_t>(p.dimension() + 1);
  for (int d = 0; shaped && d <= p.dimension(); ++d) {
    shaped = cm.face_carrier[static_cast<std::size_t>(d)].size() == p.faces(d).size();
  }
  if (!shaped) {
    note(shape, "sizes of the carrier table or vertex map differ from the source");
    out.checks.push_back(shape);
    return out;
  }
  out.checks.push_back(shape);

  PropertyCheck faces{"carriers are faces of the target", true, 0, {}};
  PropertyCheck monotone{"carrier map is order-preserving", true, 0, {}};
  for (int d = 0; d <= p.dimension(); ++d) {
    for (std::size_t i = 0; i < p.faces(d).size(); ++i) {
      const Face& cell = p.faces(d)[i];
      const Face& c = cm.face_carrier[static_cast<std::size_t>(d)][i];
      ++faces.cases;
      if (!q.contains(c)) note(faces, face_name(p, cell) + " -> non-face");
      if (d == 0) continue;
      for (std::size_t j = 0; j < cell.size(); ++j) {
        ++monotone.cases;
        if (!is_subset(cm.carrier(without(cell, j)), c)) {
          note(monotone, face_name(p, without(cell, j)) + " ⊂ " + face_name(p, cell));
        }
      }
    }
  }
  out.checks.push_back(faces);
  out.checks.push_back(monotone);

  PropertyCheck placement{"vertex map lies in the open carrier of each vertex", true, 0, {}};
  PropertyCheck injective{"vertex map is injective", true, 0, {}};
  std::map<std::vector<std::pair<int, Rational>>, int> seen;
  for (int v = 0; v < p.vertex_count(); ++v) {
    ++placement.cases;
    ++injective.cases;
    const auto& point = cm.vertex_map[static_cast<std::size_t>(v)];
    Rational total = 0;
    bool positive = true;
    for (const auto& [w, c] : point.coords) {
      total += c;
      positive = positive && c > 0;
    }
    if (!positive || total != 1 || point.support() != cm.face_carrier[0][static_cast<std::size_t>(v)]) {
      note(placement, "vertex " + p.label(v));
    }
    auto [it, fresh] = seen.emplace(point.coords, v);
    if (!fresh) note(injective, "vertices " + p.label(it->second) + " and " + p.label(v));
  }
  out.checks.push_back(placement);
  out.checks.push_back(injective);

  // Bucket source faces by carrier.
  std::vector<std::vector<std::vector<std::pair<int, std::size_t>>>> buckets(
      static_cast<std::size_t>(q.dimension() + 1));
  for (int d = 0; d <= q.dimension(); ++d) buckets[static_cast<std::size_t>(d)].resize(q.faces(d).size());
  for (int d = 0; d <= p.dimension(); ++d) {
    for (std::size_t i = 0; i < p.faces(d).size(); ++i) {
      const Face& c = cm.face_carrier[static_cast<std::size_t>(d)][i];
      if (auto idx = q.index_of(c)) buckets[c.size() - 1][*idx].emplace_back(d, i);
    }
  }
  std::vector<std::pair<int, std::size_t>> targets;
  for (int d = 0; d <= q.dimension(); ++d) {
    for (std::size_t i = 0; i < q.faces(d).size(); ++i) targets.emplace_back(d, i);
  }
  out.cells.resize(targets.size());
  parallel_for(targets.size(), threads, [&](std::size_t t) {
    const auto [d, i] = targets[t];
    out.cells[t] = check_target_face(cm, q.faces(d)[i], buckets[static_cast<std::size_t>(d)][i]);
  });

  PropertyCheck partition{"open cells partition every open face of the target", true,
                          targets.size(), {}};
  for (const auto& r : out.cells) {
    if (!r.pass) note(partition, r.witness);
  }
  out.checks.push_back(partition);
  return out;
}

TheoremInstance build_instance(int k, int n, const Limits& limits) {
  const int m = ground_size_for(n, k);
  auto poset = enumerate_partitions(m, k, limits.max_elements);
  auto trees = enumerate_ktree_complex(poset, n, limits);
  auto order = order_complex(poset.poset(), limits.max_faces);
  auto proper = poset.poset().proper_part();
  TheoremInstance inst{k, n, m, std::move(poset), std::move(trees), std::move(order), std::move(proper), {}, {}};
  inst.tree_vertex.assign(static_cast<std::size_t>(inst.poset.size()), -1);
  inst.chain_vertex.assign(static_cast<std::size_t>(inst.poset.size()), -1);
  for (std::size_t v = 0; v < inst.trees.vertices.size(); ++v) {
    inst.tree_vertex[static_cast<std::size_t>(inst.trees.vertices[v])] = static_cast<int>(v);
  }
  for (std::size_t v = 0; v < inst.proper.size(); ++v) {
    inst.chain_vertex[static_cast<std::size_t>(inst.proper[v])] = static_cast<int>(v);
  }
  return inst;
}

CarrierMap global_carrier_map(const TheoremInstance& inst) {
  CarrierMap cm{inst.order_complex, inst.trees.complex, {}, {}};
  std::vector<Face> factor_vertices(inst.proper.size());
  for (std::size_t v = 0; v < inst.proper.size(); ++v) {
    for (int f : factors_k(inst.poset, inst.proper[v])) {
      const int w = inst.tree_vertex[static_cast<std::size_t>(f)];
      if (w < 0) throw InvalidArgument("factor outside the vertex set of the k-tree complex");
      factor_vertices[v].push_back(w);
    }
    std::sort(factor_vertices[v].begin(), factor_vertices[v].end());
    cm.vertex_map.push_back(barycenter(factor_vertices[v]));
  }
  for (int d = 0; d <= cm.source.dimension(); ++d) {
    auto& row = cm.face_carrier.emplace_back();
    for (const Face& chain : cm.source.faces(d)) {
      std::set<int> u;
      for (int v : chain) u.insert(factor_vertices[static_cast<std::size_t>(v)].begin(),
                                   factor_vertices[static_cast<std::size_t>(v)].end());
      row.emplace_back(u.begin(), u.end());
    }
  }
  return cm;
}

std::vector<LocalCarrier> local_carrier_maps(const TheoremInstance& inst) {
  std::vector<LocalCarrier> out;
  const auto& q = inst.trees.complex;
  for (int d = 0; d <= q.dimension(); ++d) {
    for (const Face& face : q.faces(d)) {
      LocalCarrier lc;
      lc.face = face;
      std::vector<int> nested;
      for (int v : face) nested.push_back(inst.trees.vertices[static_cast<std::size_t>(v)]);
      lc.sigma = sigma_lattice(inst.poset, nested);
      const Poset& l = lc.sigma.poset;

      Bits nonzero = l.full_set();
      nonzero.reset(0);
      auto chains = nested_set_complex(l, nonzero, true);
      for (int x : chains.vertex_elements) {
        lc.source_elements.push_back(lc.sigma.elements[static_cast<std::size_t>(x)]);
      }

      // Target: the full simplex on N, vertex j being face[j].
      std::vector<std::string> labels;
      Face all;
      for (std::size_t j = 0; j < face.size(); ++j) {
        labels.push_back(q.label(face[j]));
        all.push_back(static_cast<int>(j));
      }
      auto target = SimplicialComplex::from_facets(std::move(labels), {all});

      // Local vertex j of the target is the j-th base element (both ascend
      // by poset index).
      std::vector<int> target_of_local(static_cast<std::size_t>(l.size()), -1);
      int j = 0;
      for (auto b = lc.sigma.base_local.find_first(); b != Bits::npos;
           b = lc.sigma.base_local.find_next(b)) {
        target_of_local[b] = j++;
      }
      std::vector<Face> f_local;
      for (int x : chains.vertex_elements) {
        Face f;
        for (int z : factors(l, lc.sigma.base_local, x)) f.push_back(target_of_local[static_cast<std::size_t>(z)]);
        std::sort(f.begin(), f.end());
        f_local.push_back(f);
        lc.map.vertex_map.push_back(barycenter(f));
        Face g;
        for (int t : f) g.push_back(face[static_cast<std::size_t>(t)]);
        lc.global_positions.push_back(barycenter(g));
      }
      lc.map.source = std::move(chains.complex);
      lc.map.target = std::move(target);
      for (int dd = 0; dd <= lc.map.source.dimension(); ++dd) {
        auto& row = lc.map.face_carrier.emplace_back();
        for (const Face& chain : lc.map.source.faces(dd)) {
          std::set<int> u;
          for (int v : chain) u.insert(f_local[static_cast<std::size_t>(v)].begin(), f_local[static_cast<std::size_t>(v)].end());
          row.emplace_back(u.begin(), u.end());
        }
      }
      out.push_back(std::move(lc));
    }
  }
  return out;
}

std::vector<PropertyCheck> check_compatibility(const TheoremInstance& inst,
                                               const std::vector<LocalCarrier>& locals,
                                               const CarrierMap& global) {
  auto note = [](PropertyCheck& c, std::string why) {
    if (c.pass) c.witness = std::move(why);
    c.pass = false;
  };
  const auto& label = [&](int element) { return inst.poset.element(element).to_string(); };
  const auto& q = inst.trees.complex;

  std::map<Face, std::size_t> by_face;
  for (std::size_t i = 0; i < locals.size(); ++i) by_face.emplace(locals[i].face, i);

  // element -> (local, position in that local)
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> occurrences;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    for (std::size_t v = 0; v < locals[i].source_elements.size(); ++v) {
      occurrences[locals[i].source_elements[v]].emplace_back(i, v);
    }
  }

  PropertyCheck agree{"local vertex maps agree on shared vertices", true, 0, {}};
  PropertyCheck meet{"Δ(Σ(N1)) ∩ Δ(Σ(N2)) = Δ(Σ(N1 ∩ N2))", true, 0, {}};
  for (const auto& [element, occ] : occurrences) {
    const auto& first = locals[occ.front().first].global_positions[occ.front().second];
    for (std::size_t a = 0; a < occ.size(); ++a) {
      ++agree.cases;
      if (locals[occ[a].first].global_positions[occ[a].second] != first) {
        note(agree, label(element) + " in " + face_name(q, locals[occ.front().first].face) +
                        " and " + face_name(q, locals[occ[a].first].face));
      }
      for (std::size_t b = a + 1; b < occ.size(); ++b) {
        ++meet.cases;
        const Face& n1 = locals[occ[a].first].face;
        const Face& n2 = locals[occ[b].first].face;
        Face both;
        std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(both));
        auto it = by_face.find(both);
        const bool inside =
            it != by_face.end() &&
            std::binary_search(locals[it->second].sigma.elements.begin(),
                               locals[it->second].sigma.elements.end(), element);
        if (!inside) {
          note(meet, label(element) + " lies in Σ of " + face_name(q, n1) + " and " +
                         face_name(q, n2) + " but not of their intersection");
        }
      }
    }
  }

  PropertyCheck restrict{"local carrier maps are restrictions of the global map", true, 0, {}};
  for (const auto& lc : locals) {
    for (std::size_t v = 0; v < lc.source_elements.size(); ++v) {
      ++restrict.cases;
      const int gv = inst.chain_vertex[static_cast<std::size_t>(lc.source_elements[v])];
      if (gv < 0 || global.vertex_map[static_cast<std::size_t>(gv)] != lc.global_positions[v]) {
        note(restrict, "vertex " + label(lc.source_elements[v]) + " of " + face_name(q, lc.face));
      }
    }
    for (int d = 0; d <= lc.map.source.dimension(); ++d) {
      for (std::size_t i = 0; i < lc.map.source.faces(d).size(); ++i) {
        ++restrict.cases;
        Face chain;
        for (int v : lc.map.source.faces(d)[i]) {
          chain.push_back(inst.chain_vertex[static_cast<std::size_t>(lc.source_elements[static_cast<std::size_t>(v)])]);
        }
        std::sort(chain.begin(), chain.end());
        Face local_carrier;
        for (int t : lc.map.face_carrier[static_cast<std::size_t>(d)][i]) {
          local_carrier.push_back(lc.face[static_cast<std::size_t>(t)]);
        }
        if (!global.source.contains(chain) || global.carrier(chain) != local_carrier) {
          note(restrict, "chain " + face_name(lc.map.source, lc.map.source.faces(d)[i]) + " over " +
                             face_name(q, lc.face));
        }
      }
    }
  }
  return {agree, meet, restrict};
}

}  // namespace ksubdiv
