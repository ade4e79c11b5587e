// Acceptance run: one line per criterion, nonzero exit if a gating line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ksubdiv/error.hpp"
#include "ksubdiv/ktree.hpp"
#include "ksubdiv/theorem.hpp"
#include "oracles.hpp"

using namespace ksubdiv;

namespace {

// Wall-clock limits in seconds.
constexpr double kSmallLimit = 1.0;
constexpr double kMediumLimit = 10.0;
constexpr double kLargeLimit = 60.0;
constexpr double kStretchLimit = 300.0;
constexpr std::size_t kSampledPermutations = 200;
constexpr std::uint64_t kSeed = 2024;

struct Line {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

int failures = 0;

void report(const std::string& id, const std::string& title, Line& line, bool gating = true) {
  std::printf("[%s] %s %s:%s\n", line.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              line.detail.str().c_str());
  if (!line.pass && gating) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

template <class T>
std::string vec(const std::vector<T>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::vector<std::size_t> betti(const std::vector<HomologyGroup>& h) {
  std::vector<std::size_t> out;
  for (const auto& g : h) out.push_back(g.betti);
  return out;
}

bool torsion_free(const std::vector<HomologyGroup>& h) {
  for (const auto& g : h)
    if (!g.torsion.empty()) return false;
  return true;
}

bool all_pass(const std::vector<PropertyCheck>& checks, std::string& first_failure) {
  for (const auto& c : checks) {
    if (!c.pass) {
      first_failure = c.name + ": " + c.witness;
      return false;
    }
  }
  return true;
}

struct Timed {
  SubdivisionReport report;
  double seconds = 0;
};

Timed timed_verify(int k, int n) {
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{verify_theorem(k, n), 0};
  t.seconds = seconds_since(t0);
  return t;
}

std::vector<std::vector<int>> all_faces(const SimplicialComplex& k) {
  std::vector<std::vector<int>> out;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& f : k.faces(d)) out.push_back(f);
  return out;
}

std::size_t top_rank(const std::vector<HomologyGroup>& h) { return h.empty() ? 0 : h.back().betti; }

}  // namespace

int main() {
  struct Instance {
    int k, n;
    double limit;
  };
  const std::vector<Instance> gating{{1, 3, kSmallLimit}, {2, 3, kSmallLimit}, {3, 3, kSmallLimit},
                                     {1, 4, kMediumLimit}, {2, 4, kLargeLimit}};
  std::vector<Timed> runs;

  // 1. Instances pass within their time limits.
  {
    Line line;
    for (const auto& inst : gating) {
      runs.push_back(timed_verify(inst.k, inst.n));
      const auto& r = runs.back();
      std::string why;
      line.detail << " (" << inst.k << "," << inst.n << ") " << fmt(r.seconds) << "/" << fmt(inst.limit);
      line.require(r.report.verdict && all_pass(r.report.checks, why), why);
      line.require(r.seconds < inst.limit, "time");
    }
    report("1", "verify passes for (1,3),(2,3),(3,3),(1,4),(2,4) within limits", line);
  }
  {
    Line line;
    const auto r = timed_verify(1, 5);
    std::string why;
    line.detail << " (1,5) " << fmt(r.seconds) << "/" << fmt(kStretchLimit);
    line.require(r.report.verdict && all_pass(r.report.checks, why), why);
    line.require(r.seconds < kStretchLimit, "time");
    report("1s", "stretch, non-gating: verify (1,5) under 300s", line, false);
  }

  // 2. Counts against brute-force oracles.
  {
    Line line;
    const auto p5 = enumerate_partitions(5, 2);
    const auto p7 = enumerate_partitions(7, 2);
    line.detail << " |Π^(2)_5|=" << p5.size() << " |Π^(2)_7|=" << p7.size();
    line.require(p5.size() == 12 && oracle::restricted_partitions(5, 2).size() == 12, "Π^(2)_5");
    line.require(p7.size() == 128 && oracle::restricted_partitions(7, 2).size() == 128, "Π^(2)_7");

    const auto t14 = enumerate_ktree_complex(4, 1).complex;
    std::vector<std::size_t> tree_f;
    for (const auto& t : oracle::rooted_ktrees({1, 2, 3, 4}, 1)) {
      if (t.empty()) continue;
      if (tree_f.size() < t.size()) tree_f.resize(t.size());
      ++tree_f[t.size() - 1];
    }
    line.detail << " T^1_4=" << vec(f_vector(t14));
    line.require(f_vector(t14) == std::vector<std::size_t>{10, 15} && tree_f == f_vector(t14), "T^1_4");

    const auto t23 = enumerate_ktree_complex(3, 2).complex;
    std::size_t oracle_points = 0;
    for (const auto& t : oracle::rooted_ktrees({1, 2, 3, 4, 5}, 2)) oracle_points += t.size() == 1;
    line.detail << " T^2_3=" << vec(f_vector(t23));
    line.require(f_vector(t23) == std::vector<std::size_t>{10} && oracle_points == 10, "T^2_3");

    const auto p4 = enumerate_partitions(4, 1);
    const auto d4 = order_complex(p4.poset());
    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(p4.size()), std::vector<bool>(static_cast<std::size_t>(p4.size())));
    for (int a = 0; a < p4.size(); ++a)
      for (int b = 0; b < p4.size(); ++b)
        leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = oracle::refines(p4.element(a).block_lists(), p4.element(b).block_lists());
    line.detail << " Δ(Π_4)=" << vec(f_vector(d4));
    line.require(f_vector(d4) == std::vector<std::size_t>{13, 18} &&
                     oracle::chain_counts(leq, p4.poset().proper_part()) == f_vector(d4),
                 "Δ(Π_4)");
    line.detail << " χ=" << euler_characteristic(d4) << "," << euler_characteristic(t14);
    line.require(euler_characteristic(d4) == -5 && euler_characteristic(t14) == -5, "Euler");
    report("2", "counts agree with oracles", line);
  }

  // 3. Homology.
  {
    Line line;
    const auto& r14 = runs[3].report;
    line.detail << " β̃(Δ(Π_4))=" << vec(betti(r14.source_homology)) << " β̃(T^1_4)=" << vec(betti(r14.target_homology));
    line.require(betti(r14.source_homology) == std::vector<std::size_t>{0, 6}, "Δ(Π_4)");
    line.require(betti(r14.target_homology) == std::vector<std::size_t>{0, 6}, "T^1_4");
    line.require(torsion_free(r14.source_homology) && torsion_free(r14.target_homology), "torsion");
    line.require(oracle::reduced_betti(all_faces(enumerate_ktree_complex(4, 1).complex)) ==
                     std::vector<std::size_t>{0, 6},
                 "rank oracle");
    for (std::size_t i = 0; i < gating.size(); ++i) {
      line.require(runs[i].report.source_homology == runs[i].report.target_homology,
                   "(" + std::to_string(gating[i].k) + "," + std::to_string(gating[i].n) + ")");
    }
    line.detail << " all instances agree";
    report("3", "homology of Π_4 and subdivision invariance", line);
  }

  // 4. Structural lemmas.
  {
    Line line;
    for (auto [m, k] : {std::pair{5, 2}, std::pair{7, 2}, std::pair{7, 3}}) {
      const int n = (m - 1) / k + 1;
      const auto inst = build_instance(k, n);
      const auto locals = local_carrier_maps(inst);
      const auto checks = structural_checks(inst, locals);
      std::size_t cases = 0;
      for (const auto& c : checks) cases += c.cases;
      std::string why;
      line.require(all_pass(checks, why), why);
      line.detail << " (m=" << m << ",k=" << k << ") " << checks.size() << " checks/" << cases << " cases";
    }
    report("4", "structural lemmas on (5,2),(7,2),(7,3)", line);
  }

  // 5. Independence of the linear extension.
  {
    Line line;
    for (auto [k, n] : {std::pair{1, 4}, std::pair{2, 4}}) {
      const auto inst = build_instance(k, n);
      const auto exts = theorem_extensions(inst, 3, kSeed);
      line.require(exts.size() == 3 && std::set<std::vector<int>>(exts.begin(), exts.end()).size() == 3,
                   "three distinct extensions");
      std::vector<SimplicialComplex> results;
      for (const auto& e : exts) results.push_back(global_stellar_sequence(inst, e));
      bool same = true;
      for (std::size_t i = 0; i < results.size(); ++i)
        for (std::size_t j = i + 1; j < results.size(); ++j) same = same && same_labelled_complex(results[i], results[j]);
      line.require(same, "label-identical");
      line.detail << " (" << k << "," << n << ") " << exts.size() << " extensions identical=" << (same ? "yes" : "no");
    }
    report("5", "seeded linear extensions give identical complexes", line);
  }

  // 6. Equivariance.
  {
    Line line;
    struct Eq {
      int k, n;
      bool exhaustive;
    };
    for (const auto& e : {Eq{2, 3, true}, Eq{1, 4, true}, Eq{2, 4, false}}) {
      const auto inst = build_instance(e.k, e.n);
      const auto global = global_carrier_map(inst);
      const auto perms = e.exhaustive ? all_permutations(inst.m) : sample_permutations(inst.m, kSampledPermutations, kSeed);
      const auto c = check_equivariance(inst, global, perms, 0);
      const auto hs = reduced_homology(inst.order_complex);
      const auto ht = reduced_homology(inst.trees.complex);
      line.require(c.pass, c.witness);
      line.require(top_rank(hs) == top_rank(ht), "top rank");
      line.detail << " (" << e.k << "," << e.n << ") " << perms.size() << " perms, top rank " << top_rank(hs);
    }
    report("6", "S_m-equivariance of the carrier map", line);
  }

  // 7. Negative controls.
  {
    Line line;
    const auto bad = verify_carrier_map(subdivided_edge(true));
    std::string witness;
    for (const auto& cell : bad.cells)
      if (!cell.pass && witness.empty()) witness = cell.witness;
    line.require(!bad.pass() && witness.find("overlap") != std::string::npos, "overlap witness");
    line.detail << " perturbed map: \"" << witness << "\"";

    const auto p = enumerate_partitions(7, 2);
    const std::vector<Partition> family{Partition::parse("(123)4567"), Partition::parse("1(234)567")};
    const auto bounds = k_minimal_upper_bounds(p, family);
    line.require(!is_k_nested(p, family), "non-nested family accepted");
    line.require(bounds.size() == 3, "three upper bounds");
    line.detail << "; {(123)4567,1(234)567} rejected with " << bounds.size() << " minimal upper bounds";
    report("7", "negative controls", line);
  }

  std::printf("%s\n", failures == 0 ? "ALL GATING CRITERIA PASS" : "GATING FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
