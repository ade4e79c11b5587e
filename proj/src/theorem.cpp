#include "ksubdiv/theorem.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ksubdiv/error.hpp"
#include "ksubdiv/parallel.hpp"

namespace ksubdiv {

namespace {

void note(PropertyCheck& c, std::string why) {
  if (c.pass) c.witness = std::move(why);
  c.pass = false;
}

// Folds per-face results into one check.
void absorb(PropertyCheck& into, const PropertyCheck& part, const std::string& where) {
  into.cases += part.cases;
  if (!part.pass) note(into, where + ": " + part.witness);
}

Face tree_face(const TheoremInstance& inst, const std::vector<int>& elements) {
  Face f;
  for (int e : elements) f.push_back(inst.tree_vertex[static_cast<std::size_t>(e)]);
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

std::vector<int> subdivision_elements(const TheoremInstance& inst) {
  std::vector<int> out;
  for (int x : inst.proper) {
    if (!inst.poset.in_g(x)) out.push_back(x);
  }
  return out;
}

std::vector<std::vector<int>> theorem_extensions(const TheoremInstance& inst, std::size_t count,
                                                 std::uint64_t seed) {
  const auto elems = subdivision_elements(inst);
  const Poset& p = inst.poset.poset();
  std::vector<std::vector<int>> out;
  if (count == 0) return out;
  out.push_back(linear_extension(p, elems, ExtensionPolicy::RankThenCanonical));
  std::set<std::vector<int>> seen(out.begin(), out.end());
  for (std::uint64_t attempt = 0; out.size() < count && attempt < 64 * count; ++attempt) {
    auto ext = linear_extension(p, elems, ExtensionPolicy::SeededRandom, seed + attempt);
    if (seen.insert(ext).second) out.push_back(std::move(ext));
  }
  return out;
}

SimplicialComplex global_stellar_sequence(const TheoremInstance& inst, std::span<const int> ext) {
  const Poset& p = inst.poset.poset();
  if (!is_linear_extension(p, ext)) throw NotLinearExtension("sequence is not order-compatible");
  auto expected = subdivision_elements(inst);
  std::vector<int> given(ext.begin(), ext.end());
  std::sort(given.begin(), given.end());
  if (given != expected) {
    throw NotLinearExtension("sequence must list the proper part outside G exactly once");
  }

  SimplicialComplex current = inst.trees.complex;
  for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
    const Face face = tree_face(inst, factors_k(inst.poset, *it));
    current = stellar_subdivide(current, face, p.label(*it));
  }
  return current;
}

std::vector<Permutation> symmetric_group_generators(int m) {
  std::vector<Permutation> out{identity_permutation(m)};
  if (m < 2) return out;
  out.push_back(transposition(m, 1, 2));
  Permutation cycle(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) cycle[static_cast<std::size_t>(i - 1)] = i % m + 1;
  out.push_back(std::move(cycle));
  return out;
}

PropertyCheck check_equivariance(const TheoremInstance& inst, const CarrierMap& global,
                                 std::span<const Permutation> perms, unsigned threads) {
  const auto& p = inst.order_complex;
  const auto& q = inst.trees.complex;
  std::vector<std::string> failures(perms.size());
  std::vector<std::size_t> cases(perms.size(), 0);

  parallel_for(perms.size(), threads, [&](std::size_t t) {
    const Permutation& pi = perms[t];
    auto fail = [&](std::string why) {
      std::string name;
      for (int x : pi) name += (name.empty() ? "" : " ") + std::to_string(x);
      failures[t] = "π = [" + name + "]: " + why;
    };
    if (!is_permutation(pi, inst.m)) return fail("not a permutation of {1..m}");

    std::vector<int> image(static_cast<std::size_t>(inst.poset.size()));
    for (int i = 0; i < inst.poset.size(); ++i) {
      auto j = inst.poset.find(apply_permutation(inst.poset.element(i), pi));
      if (!j) return fail(inst.poset.element(i).to_string() + " leaves the poset");
      image[static_cast<std::size_t>(i)] = *j;
    }
    auto chain_image = [&](const Face& f) {
      Face out;
      for (int v : f) {
        out.push_back(inst.chain_vertex[static_cast<std::size_t>(
            image[static_cast<std::size_t>(inst.proper[static_cast<std::size_t>(v)])])]);
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    auto tree_image = [&](const Face& f) {
      Face out;
      for (int v : f) {
        out.push_back(inst.tree_vertex[static_cast<std::size_t>(
            image[static_cast<std::size_t>(inst.trees.vertices[static_cast<std::size_t>(v)])])]);
      }
      std::sort(out.begin(), out.end());
      return out;
    };

    for (const Face& f : q.facets()) {
      ++cases[t];
      const Face g = tree_image(f);
      if (std::count(g.begin(), g.end(), -1) || !q.contains(g)) {
        return fail("T^k_n is not invariant at " + face_name(q, f));
      }
    }
    for (int d = 0; d <= p.dimension(); ++d) {
      for (const Face& omega : p.faces(d)) {
        ++cases[t];
        const Face moved = chain_image(omega);
        if (std::count(moved.begin(), moved.end(), -1) || !p.contains(moved)) {
          return fail("Δ(Π^(k)_m) is not invariant at " + face_name(p, omega));
        }
        if (global.carrier(moved) != tree_image(global.carrier(omega))) {
          return fail("φ(π·ω) ≠ π·φ(ω) for ω = " + face_name(p, omega));
        }
      }
    }
  });

  PropertyCheck check{"carrier map is S_m-equivariant", true, 0, {}};
  for (std::size_t t = 0; t < perms.size(); ++t) {
    check.cases += cases[t];
    if (!failures[t].empty()) note(check, failures[t]);
  }
  return check;
}

std::vector<PropertyCheck> structural_checks(const TheoremInstance& inst,
                                             const std::vector<LocalCarrier>& locals) {
  std::vector<PropertyCheck> out;
  out.push_back(check_factor_lemma(inst.poset));
  out.push_back(check_disjointness_lemma(inst.poset));

  const auto& p = inst.order_complex;
  const auto& q = inst.trees.complex;
  PropertyCheck corollary{"F^k(ω) is a face of T^k_n for every chain ω", true, 0, {}};
  PropertyCheck onto{"every face of T^k_n is F^k(ω) for some chain ω", true, 0, {}};
  std::set<Face> hit;
  for (int d = 0; d <= p.dimension(); ++d) {
    for (const Face& omega : p.faces(d)) {
      ++corollary.cases;
      std::vector<int> chain;
      for (int v : omega) chain.push_back(inst.proper[static_cast<std::size_t>(v)]);
      std::sort(chain.begin(), chain.end(), [&](int a, int b) {
        return inst.poset.poset().less(a, b);
      });
      const Face f = tree_face(inst, factors_k_of_chain(inst.poset, chain));
      if (!q.contains(f)) {
        note(corollary, face_name(p, omega));
      } else {
        hit.insert(f);
      }
    }
  }
  for (int d = 0; d <= q.dimension(); ++d) {
    for (const Face& f : q.faces(d)) {
      ++onto.cases;
      if (!hit.count(f)) note(onto, face_name(q, f));
    }
  }
  out.push_back(corollary);
  out.push_back(onto);

  std::vector<PropertyCheck> sigma;
  PropertyCheck local_claim{"F(x) ∪ F(y) is N-nested for x > y in every Σ(N)", true, 0, {}};
  PropertyCheck local_blowup{"stellar sequences carry the simplex on N to Δ(Σ(N))", true, 0, {}};
  for (const auto& lc : locals) {
    const std::string where = face_name(q, lc.face);
    const auto parts = check_sigma_lattice(inst.poset, lc.sigma);
    if (sigma.empty()) {
      for (const auto& c : parts) sigma.push_back({c.name + " for every face N", true, 0, {}});
    }
    for (std::size_t i = 0; i < parts.size(); ++i) absorb(sigma[i], parts[i], where);
    absorb(local_claim, check_union_claim(lc.sigma.poset, lc.sigma.base_local, ""), where);

    ++local_blowup.cases;
    const Poset& l = lc.sigma.poset;
    Bits nonzero = l.full_set();
    nonzero.reset(0);
    std::vector<int> rest;
    for (auto x = nonzero.find_first(); x != Bits::npos; x = nonzero.find_next(x)) {
      if (!lc.sigma.base_local[x]) rest.push_back(static_cast<int>(x));
    }
    const auto blown = blowup_sequence(l, lc.sigma.base_local, nonzero, linear_extension(l, rest), true);
    if (!same_labelled_complex(blown.complex, lc.map.source)) {
      note(local_blowup, where + ": final complex differs from Δ(Σ(N))");
      continue;
    }
    for (std::size_t v = 0; v < blown.vertex_elements.size(); ++v) {
      const auto src = lc.map.source.vertex_by_label(blown.complex.label(static_cast<int>(v)));
      if (!src || lc.map.vertex_map[static_cast<std::size_t>(*src)] != blown.positions[v]) {
        note(local_blowup, where + ": vertex " + blown.complex.label(static_cast<int>(v)) +
                               " is not at the barycenter of its factors");
        break;
      }
    }
  }
  for (auto& c : sigma) out.push_back(std::move(c));
  out.push_back(check_union_claim(inst.poset.poset(), inst.poset.g_mask(),
                                  "F^k(x) ∪ F^k(y) is k-nested for x > y in Π^(k)_m"));
  out.push_back(local_claim);
  out.push_back(local_blowup);
  return out;
}

SubdivisionReport verify_theorem(int k, int n, const TheoremOptions& options) {
  const auto inst = build_instance(k, n, options.limits);
  SubdivisionReport r;
  r.k = k;
  r.n = n;
  r.m = inst.m;
  r.poset_elements = static_cast<std::size_t>(inst.poset.size());
  r.proper_elements = inst.proper.size();
  r.source_f_vector = f_vector(inst.order_complex);
  r.target_f_vector = f_vector(inst.trees.complex);
  r.source_euler = euler_characteristic(inst.order_complex);
  r.target_euler = euler_characteristic(inst.trees.complex);

  PropertyCheck iso{"stellar sequence result is isomorphic to Δ(Π^(k)_m)", true, 0, {}};
  PropertyCheck same{"stellar sequence result equals Δ(Π^(k)_m) vertex by vertex", true, 0, {}};
  for (const auto& ext : theorem_extensions(inst, std::max<std::size_t>(1, options.extensions),
                                            options.seed)) {
    auto& names = r.extensions.emplace_back();
    for (int x : ext) names.push_back(inst.poset.element(x).to_string());
    const auto result = global_stellar_sequence(inst, ext);
    ++iso.cases;
    ++same.cases;
    const std::string which = "extension " + std::to_string(r.extensions.size());
    if (!is_isomorphic(result, inst.order_complex)) note(iso, which);
    if (!same_labelled_complex(result, inst.order_complex)) note(same, which);
  }
  r.checks.push_back(iso);
  r.checks.push_back(same);

  const auto global = global_carrier_map(inst);
  const auto verification = verify_carrier_map(global, options.limits.threads);
  for (const auto& c : verification.checks) r.checks.push_back(c);

  const auto locals = local_carrier_maps(inst);
  PropertyCheck local_ok{"local carrier maps subdivide their simplices", true, 0, {}};
  for (const auto& lc : locals) {
    ++local_ok.cases;
    const auto v = verify_carrier_map(lc.map);
    for (const auto& c : v.checks) {
      if (!c.pass) {
        note(local_ok, face_name(inst.trees.complex, lc.face) + ": " + c.name + ": " + c.witness);
        break;
      }
    }
  }
  r.checks.push_back(local_ok);
  for (auto& c : check_compatibility(inst, locals, global)) r.checks.push_back(std::move(c));
  for (auto& c : structural_checks(inst, locals)) r.checks.push_back(std::move(c));

  r.source_homology = reduced_homology(inst.order_complex);
  r.target_homology = reduced_homology(inst.trees.complex);
  PropertyCheck euler{"Euler characteristics agree", r.source_euler == r.target_euler, 1, {}};
  if (!euler.pass) {
    euler.witness = std::to_string(r.source_euler) + " vs " + std::to_string(r.target_euler);
  }
  r.checks.push_back(euler);
  PropertyCheck homology{"reduced homology agrees in every degree", true,
                         std::max(r.source_homology.size(), r.target_homology.size()), {}};
  for (std::size_t d = 0; d < homology.cases; ++d) {
    const HomologyGroup zero{};
    const auto& a = d < r.source_homology.size() ? r.source_homology[d] : zero;
    const auto& b = d < r.target_homology.size() ? r.target_homology[d] : zero;
    if (a != b) note(homology, "degree " + std::to_string(d));
  }
  r.checks.push_back(homology);

  const auto gens = symmetric_group_generators(inst.m);
  auto eq = check_equivariance(inst, global, gens, options.limits.threads);
  eq.name += " (generators of S_m)";
  r.checks.push_back(eq);

  r.verdict = std::all_of(r.checks.begin(), r.checks.end(),
                          [](const PropertyCheck& c) { return c.pass; });
  return r;
}

}  // namespace ksubdiv
