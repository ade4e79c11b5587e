#include "ksubdiv/nested_sets.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "ksubdiv/error.hpp"

namespace ksubdiv {

namespace {

std::vector<int> to_vector(const Bits& bits) {
  std::vector<int> out;
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

// Antichain test with memoized bound computations.
class NestedTest {
 public:
  NestedTest(const Poset& l, const Bits& g) : l_(l), g_(g) {}

  bool antichain_ok(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    const auto bounds = minimal_upper_bounds(l_, s);
    const bool ok = bounds.size() == 1 && !g_[bounds.front()];
    memo_.emplace(std::move(s), ok);
    return ok;
  }

  // Antichains of `family` that contain family[fixed] (all when fixed < 0).
  bool check(std::span<const int> family, int fixed = -1) {
    if (family.size() > 20) throw ResourceLimit("family too large for the antichain test");
    const std::uint32_t subsets = 1u << family.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      if (std::popcount(mask) < 2) continue;
      if (fixed >= 0 && !(mask & (1u << fixed))) continue;
      std::vector<int> s;
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (mask & (1u << i)) s.push_back(family[i]);
      }
      if (is_antichain(l_, s) && !antichain_ok(std::move(s))) return false;
    }
    return true;
  }

 private:
  const Poset& l_;
  const Bits& g_;
  std::map<std::vector<int>, bool> memo_;
};

}  // namespace

std::vector<int> factors(const Poset& l, const Bits& g, int x) {
  return maximal_elements(l, l.down_set(x) & g);
}

BuildingSetResult is_building_set(const Poset& l, const Bits& g) {
  if (!l.min()) throw InvalidArgument("building sets need a designated minimum");
  const int zero = *l.min();
  if (g[zero]) throw InvalidArgument("the minimum cannot belong to a building set");

  for (int x = 0; x < l.size(); ++x) {
    if (x == zero) continue;
    const auto fs = factors(l, g, x);
    const auto target_elems = interval_elements(l, zero, x);
    std::vector<Poset> parts;
    std::size_t product_size = 1;
    for (int z : fs) {
      parts.push_back(interval(l, zero, z));
      product_size *= static_cast<std::size_t>(parts.back().size());
    }
    if (product_size != target_elems.size()) return {false, x};

    const Poset prod = product(parts);
    const Poset target = interval(l, zero, x);
    auto local = [&](int element) {
      return static_cast<int>(std::lower_bound(target_elems.begin(), target_elems.end(), element) -
                              target_elems.begin());
    };
    std::vector<std::vector<int>> part_elems;
    std::vector<int> zero_tuple;
    for (int z : fs) {
      part_elems.push_back(interval_elements(l, zero, z));
      const auto& e = part_elems.back();
      zero_tuple.push_back(static_cast<int>(std::find(e.begin(), e.end(), zero) - e.begin()));
    }
    std::vector<std::pair<int, int>> fixed;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const auto& elems = part_elems[j];
      for (std::size_t e = 0; e < elems.size(); ++e) {
        std::vector<int> tuple = zero_tuple;
        tuple[j] = static_cast<int>(e);
        fixed.emplace_back(product_index(parts, tuple), local(elems[e]));
      }
    }
    if (!is_isomorphic(prod, target, fixed)) return {false, x};
  }
  return {true, std::nullopt};
}

bool is_nested_set(const Poset& l, const Bits& g, std::span<const int> family) {
  NestedTest test(l, g);
  std::vector<int> f(family.begin(), family.end());
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return test.check(f);
}

NestedSetComplex nested_set_complex(const Poset& l, const Bits& g, bool keep_apex,
                                    std::size_t max_faces) {
  NestedSetComplex out;
  for (int x : to_vector(g)) {
    if (keep_apex || l.max() != x) out.vertex_elements.push_back(x);
  }
  std::vector<std::string> labels;
  for (int x : out.vertex_elements) labels.push_back(l.label(x));

  NestedTest test(l, g);
  std::vector<Face> faces;
  Face face;
  std::vector<int> elements;
  std::size_t total = 0;
  std::function<void(int)> grow = [&](int next) {
    bool extended = false;
    for (int v = next; v < static_cast<int>(out.vertex_elements.size()); ++v) {
      elements.push_back(out.vertex_elements[static_cast<std::size_t>(v)]);
      if (test.check(elements, static_cast<int>(elements.size()) - 1)) {
        if (++total > max_faces) {
          throw ResourceLimit("nested set complex exceeds the cap of " + std::to_string(max_faces) +
                              " faces");
        }
        extended = true;
        face.push_back(v);
        grow(v + 1);
        face.pop_back();
      }
      elements.pop_back();
    }
    if (!extended && !face.empty()) faces.push_back(face);
  };
  grow(0);
  out.complex = SimplicialComplex::from_facets(std::move(labels), std::move(faces), max_faces);
  return out;
}

SigmaLattice sigma_lattice(const PartitionPoset& p, std::span<const int> nested) {
  SigmaLattice s;
  s.base.assign(nested.begin(), nested.end());
  std::sort(s.base.begin(), s.base.end());
  s.base.erase(std::unique(s.base.begin(), s.base.end()), s.base.end());
  if (s.base.size() > 20) throw ResourceLimit("nested family too large for Σ(N)");
  const auto zero = p.poset().min();
  if (!zero) throw InvalidArgument("partition poset without a minimum");

  Bits members = p.poset().empty_set();
  members.set(static_cast<std::size_t>(*zero));
  const std::uint32_t subsets = 1u << s.base.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    std::vector<int> x;
    for (std::size_t i = 0; i < s.base.size(); ++i) {
      if (mask & (1u << i)) x.push_back(s.base[i]);
    }
    const auto bounds = k_minimal_upper_bounds(p, std::span<const int>(x));
    if (bounds.size() != 1) {
      std::string names;
      for (int e : x) names += " " + p.element(e).to_string();
      throw NotNested("subset {" + names + " } has " + std::to_string(bounds.size()) +
                      " minimal upper bounds");
    }
    members.set(static_cast<std::size_t>(bounds.front()));
  }
  s.elements = to_vector(members);
  // The full join is the top: every other element lies below it.
  const auto top = std::max_element(s.elements.begin(), s.elements.end(), [&](int a, int b) {
    return p.poset().down_set(a).count() < p.poset().down_set(b).count();
  });
  s.poset = induced_subposet(p.poset(), s.elements, 0,
                             static_cast<int>(top - s.elements.begin()));
  s.base_local = s.poset.empty_set();
  for (int b : s.base) {
    s.base_local.set(static_cast<std::size_t>(
        std::lower_bound(s.elements.begin(), s.elements.end(), b) - s.elements.begin()));
  }
  return s;
}

std::vector<PropertyCheck> check_sigma_lattice(const PartitionPoset& p, const SigmaLattice& s) {
  const Poset& l = s.poset;
  const int n = l.size();
  auto name_of = [&](int local) { return p.element(s.elements[static_cast<std::size_t>(local)]).to_string(); };
  // ∨^k of local elements, as a local index (the empty join is 0̂).
  auto k_join = [&](const std::vector<int>& local) -> std::optional<int> {
    if (local.empty()) return 0;
    std::vector<int> global;
    for (int a : local) global.push_back(s.elements[static_cast<std::size_t>(a)]);
    const auto bounds = k_minimal_upper_bounds(p, std::span<const int>(global));
    if (bounds.size() != 1) return std::nullopt;
    auto it = std::lower_bound(s.elements.begin(), s.elements.end(), bounds.front());
    if (it == s.elements.end() || *it != bounds.front()) return std::nullopt;
    return static_cast<int>(it - s.elements.begin());
  };

  PropertyCheck lattice{"Σ(N) is a lattice", true, 0, {}};
  PropertyCheck meet_formula{"Σ(N) meet is ∨^k max(N≤a ∩ N≤b)", true, 0, {}};
  for (int a = 0; a < n && lattice.pass; ++a) {
    for (int b = a + 1; b < n; ++b) {
      ++lattice.cases;
      const std::vector<int> pair{a, b};
      std::optional<int> m;
      try {
        join(l, pair);
        m = meet(l, pair);
      } catch (const Error&) {
        lattice.pass = false;
        lattice.witness = name_of(a) + " , " + name_of(b);
        break;
      }
      ++meet_formula.cases;
      const auto below = l.down_set(a) & l.down_set(b) & s.base_local;
      const auto formula = k_join(maximal_elements(l, below));
      if (meet_formula.pass && formula != m) {
        meet_formula.pass = false;
        meet_formula.witness = name_of(a) + " , " + name_of(b);
      }
    }
  }

  PropertyCheck building{"N is a building set of Σ(N)", true, 0, {}};
  building.cases = static_cast<std::size_t>(n);
  const auto b = is_building_set(l, s.base_local);
  if (!b.pass) {
    building.pass = false;
    building.witness = name_of(*b.witness);
  }

  PropertyCheck remark{"a = ∨^k max N≤a in Σ(N)", true, 0, {}};
  for (int a = 0; a < n; ++a) {
    ++remark.cases;
    if (k_join(maximal_elements(l, l.down_set(a) & s.base_local)) != a) {
      remark.pass = false;
      remark.witness = name_of(a);
      break;
    }
  }
  return {lattice, building, remark, meet_formula};
}

PropertyCheck check_union_claim(const Poset& l, const Bits& g, std::string name) {
  PropertyCheck check{std::move(name), true, 0, {}};
  NestedTest test(l, g);
  std::vector<std::vector<int>> fs(static_cast<std::size_t>(l.size()));
  for (int x = 0; x < l.size(); ++x) fs[static_cast<std::size_t>(x)] = factors(l, g, x);
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (!l.less(y, x)) continue;
      ++check.cases;
      std::vector<int> u = fs[static_cast<std::size_t>(x)];
      u.insert(u.end(), fs[static_cast<std::size_t>(y)].begin(), fs[static_cast<std::size_t>(y)].end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (!test.check(u)) {
        check.pass = false;
        check.witness = l.label(x) + " > " + l.label(y);
        return check;
      }
    }
  }
  return check;
}

std::vector<int> blowup_carrier(const Poset& l, const Bits& h, std::span<const int> nested) {
  Bits acc(static_cast<std::size_t>(l.size()));
  for (int x : nested) {
    for (int f : factors(l, h, x)) acc.set(static_cast<std::size_t>(f));
  }
  return to_vector(acc);
}

BlowupResult blowup_sequence(const Poset& l, const Bits& h, const Bits& g,
                             std::span<const int> ext, bool keep_apex) {
  if (!h.is_subset_of(g)) throw InvalidArgument("H must be contained in G");
  const Bits rest = g - h;
  Bits listed(static_cast<std::size_t>(l.size()));
  for (int x : ext) {
    if (x < 0 || x >= l.size() || !rest[static_cast<std::size_t>(x)] ||
        listed[static_cast<std::size_t>(x)]) {
      throw NotLinearExtension("sequence must list every element of G \\ H exactly once");
    }
    listed.set(static_cast<std::size_t>(x));
  }
  if (listed != rest) throw NotLinearExtension("sequence misses elements of G \\ H");
  if (!is_linear_extension(l, ext)) throw NotLinearExtension("sequence is not order-compatible");

  auto start = nested_set_complex(l, h, keep_apex);
  BlowupResult out;
  out.complex = std::move(start.complex);
  out.vertex_elements = std::move(start.vertex_elements);
  for (int v = 0; v < static_cast<int>(out.vertex_elements.size()); ++v) {
    out.positions.push_back(BarycentricPoint{{{v, Rational(1)}}});
  }
  std::vector<int> vertex_of(static_cast<std::size_t>(l.size()), -1);
  for (int v = 0; v < static_cast<int>(out.vertex_elements.size()); ++v) {
    vertex_of[static_cast<std::size_t>(out.vertex_elements[static_cast<std::size_t>(v)])] = v;
  }

  // Top-down: when h is reached every element above it is already a
  // vertex, and the current factors of h are its factors in H.
  for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
    const int x = *it;
    if (!keep_apex && l.max() == x) continue;
    Face face;
    for (int f : factors(l, h, x)) {
      const int v = vertex_of[static_cast<std::size_t>(f)];
      if (v < 0) throw FaceNotPresent("factor " + l.label(f) + " is not a vertex");
      face.push_back(v);
    }
    std::sort(face.begin(), face.end());
    out.complex = stellar_subdivide(out.complex, face, l.label(x));
    out.steps.push_back({x, face});
    if (face.size() == 1) continue;  // stellar subdivision at a vertex changes nothing

    std::map<int, Rational> sum;
    for (int v : face) {
      for (const auto& [w, c] : out.positions[static_cast<std::size_t>(v)].coords) sum[w] += c;
    }
    BarycentricPoint p;
    const Rational scale(1, static_cast<long long>(face.size()));
    for (const auto& [w, c] : sum) p.coords.emplace_back(w, c * scale);
    vertex_of[static_cast<std::size_t>(x)] = static_cast<int>(out.vertex_elements.size());
    out.vertex_elements.push_back(x);
    out.positions.push_back(std::move(p));
  }
  return out;
}

}  // namespace ksubdiv
