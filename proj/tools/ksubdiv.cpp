// Command-line front end: enumerate, verify, homology, equivariance, bounds.
//
// Exit codes: 0 pass, 1 verification failed, 2 usage error, 3 resource limit.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ksubdiv/carrier.hpp"
#include "ksubdiv/error.hpp"
#include "ksubdiv/json_io.hpp"
#include "ksubdiv/ktree.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/simplicial.hpp"
#include "ksubdiv/theorem.hpp"

using namespace ksubdiv;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct RunConfig {
  std::string command;
  std::string object;
  int m = 0;
  int n = 0;
  int k = 0;
  std::string out;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t extensions = 1;
  std::size_t sample = 200;
  bool sample_given = false;
  bool compare = false;
  std::string complex_file;
  std::vector<std::string> partitions;
  Limits limits;
  bool verbose = false;
};

std::string join_numbers(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

std::string betti_string(const std::vector<HomologyGroup>& h) {
  std::vector<std::size_t> b;
  for (const auto& g : h) b.push_back(g.betti);
  std::string s = join_numbers(b);
  for (std::size_t d = 0; d < h.size(); ++d) {
    for (const auto& t : h[d].torsion) s += " Z/" + t.str() + " in degree " + std::to_string(d);
  }
  return s;
}

// Resolves m and n from whichever was given; n stays 0 when m is not of
// the form (n-1)k+1.
void resolve_sizes(RunConfig& c, bool need_n) {
  if (c.k < 1) throw InvalidArgument("--k must be at least 1");
  if (c.n != 0) {
    const int m = ground_size_for(c.n, c.k);
    if (c.m != 0 && c.m != m) throw InvalidArgument("--m and --n disagree");
    c.m = m;
  } else if (c.m != 0) {
    if (c.m < 1) throw InvalidArgument("--m must be positive");
    if ((c.m - 1) % c.k == 0 && (c.m - 1) / c.k + 1 >= 3) c.n = (c.m - 1) / c.k + 1;
  } else {
    throw InvalidArgument("give --m or --n");
  }
  if (c.m < 1) throw InvalidArgument("--m must be positive");
  if (need_n && c.n == 0) throw InvalidArgument("this object needs m = (n-1)k+1 with n >= 3");
}

void write_artifact(const RunConfig& c, const std::string& default_name, const Json& j) {
  std::filesystem::path path;
  if (!c.out.empty()) {
    path = c.out;
  } else if (const char* dir = std::getenv("KSUBDIV_OUTPUT_DIR"); dir && *dir) {
    path = std::filesystem::path(dir) / default_name;
  } else {
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  f << j.dump(2) << "\n";
  if (c.verbose) std::cerr << "wrote " << path.string() << "\n";
}

void emit(const RunConfig& c, const Json& j, const std::string& text) {
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int cmd_enumerate(RunConfig& c) {
  const bool trees = c.object == "ktree-complex";
  resolve_sizes(c, trees);
  Json j;
  std::ostringstream text;
  const std::string tag = "m" + std::to_string(c.m) + "-k" + std::to_string(c.k);
  const auto poset = enumerate_partitions(c.m, c.k, c.limits.max_elements);

  if (c.object == "pi-k") {
    j["object"] = "pi-k";
    j["m"] = c.m;
    j["k"] = c.k;
    j["poset"] = to_json(poset.poset());
    Json parts = Json::array();
    for (const auto& x : poset.elements()) parts.push_back(to_json(x));
    j["partitions"] = std::move(parts);
    text << "Π^(" << c.k << ")_" << c.m << ": " << poset.size() << " elements, "
         << poset.poset().covers().size() << " cover relations\n";
  } else if (c.object == "g-set") {
    j["object"] = "g-set";
    j["m"] = c.m;
    j["k"] = c.k;
    Json parts = Json::array();
    for (int g : poset.g_elements()) parts.push_back(to_json(poset.element(g)));
    j["elements"] = std::move(parts);
    text << "G in Π^(" << c.k << ")_" << c.m << ": " << poset.g_elements().size() << " elements\n";
    if (c.verbose) {
      for (int g : poset.g_elements()) text << "  " << poset.element(g).to_string() << "\n";
    }
  } else {
    SimplicialComplex k;
    if (trees) {
      k = enumerate_ktree_complex(poset, c.n, c.limits).complex;
    } else {
      k = order_complex(poset.poset(), c.limits.max_faces);
    }
    const auto f = f_vector(k);
    j["object"] = c.object;
    j["m"] = c.m;
    j["k"] = c.k;
    if (c.n) j["n"] = c.n;
    j["f_vector"] = f;
    j["complex"] = to_json(k);
    text << (trees ? "T^" + std::to_string(c.k) + "_" + std::to_string(c.n)
                   : "Δ(Π^(" + std::to_string(c.k) + ")_" + std::to_string(c.m) + ")")
         << ": " << k.vertex_count() << " vertices, " << k.face_count() << " faces, f-vector "
         << join_numbers(f) << "\n";
  }
  emit(c, j, text.str());
  write_artifact(c, c.object + "-" + tag + ".json", j);
  return kPass;
}

int cmd_verify(RunConfig& c) {
  TheoremOptions options{c.extensions, c.seed, c.limits};
  const auto start = std::chrono::steady_clock::now();
  const auto report = verify_theorem(c.k, c.n, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json j = to_json(report);

  std::ostringstream text;
  text << "instance k=" << report.k << " n=" << report.n << " m=" << report.m << "\n"
       << "  Π^(k)_m: " << report.poset_elements << " elements, " << report.proper_elements
       << " in the proper part\n"
       << "  Δ(Π^(k)_m) f-vector " << join_numbers(report.source_f_vector) << ", χ "
       << report.source_euler << ", reduced Betti " << betti_string(report.source_homology) << "\n"
       << "  T^k_n      f-vector " << join_numbers(report.target_f_vector) << ", χ "
       << report.target_euler << ", reduced Betti " << betti_string(report.target_homology) << "\n"
       << "  linear extensions tested: " << report.extensions.size() << "\n";
  for (const auto& check : report.checks) {
    text << "  [" << (check.pass ? "pass" : "FAIL") << "] " << check.name;
    if (c.verbose) text << " (" << check.cases << " cases)";
    if (!check.pass) text << " -- " << check.witness;
    text << "\n";
  }
  text << "verdict: " << (report.verdict ? "pass" : "fail") << "\n";
  if (c.verbose) text << "elapsed " << seconds << " s\n";
  emit(c, j, text.str());
  write_artifact(c, "verify-k" + std::to_string(c.k) + "-n" + std::to_string(c.n) + ".json", j);
  return report.verdict ? kPass : kFail;
}

int cmd_homology(RunConfig& c) {
  Json j;
  std::ostringstream text;
  int code = kPass;
  if (!c.complex_file.empty()) {
    std::ifstream f(c.complex_file);
    if (!f) throw InvalidArgument("cannot read " + c.complex_file);
    std::stringstream buf;
    buf << f.rdbuf();
    const auto k = complex_from_json(parse_json(buf.str()), c.limits.max_faces);
    const auto h = reduced_homology(k);
    j["complex"] = c.complex_file;
    j["homology"] = to_json(h);
    text << c.complex_file << ": reduced Betti " << betti_string(h) << "\n";
  } else if (c.compare) {
    if (c.n == 0) throw InvalidArgument("--compare needs --n");
    const auto inst = build_instance(c.k, c.n, c.limits);
    const auto hs = reduced_homology(inst.order_complex);
    const auto ht = reduced_homology(inst.trees.complex);
    const auto top = static_cast<std::size_t>(c.n - 3);
    const auto rank = [&](const std::vector<HomologyGroup>& h) {
      return top < h.size() ? h[top].betti : 0;
    };
    const bool equal = rank(hs) == rank(ht);
    j["instance"] = {{"k", c.k}, {"n", c.n}, {"m", inst.m}};
    j["order_complex"] = to_json(hs);
    j["ktree_complex"] = to_json(ht);
    j["top_degree"] = top;
    j["top_ranks_equal"] = equal;
    text << "degree  Δ(Π^(k)_m)  T^k_n\n";
    for (std::size_t d = 0; d < std::max(hs.size(), ht.size()); ++d) {
      text << "  " << d << "       " << (d < hs.size() ? hs[d].betti : 0) << "           "
           << (d < ht.size() ? ht[d].betti : 0) << "\n";
    }
    text << "top degree " << top << ": ranks " << (equal ? "equal" : "differ") << "\n";
    code = equal ? kPass : kFail;
  } else {
    const bool trees = c.object == "ktree-complex";
    if (!trees && c.object != "order-complex") {
      throw InvalidArgument("--object must be order-complex or ktree-complex");
    }
    resolve_sizes(c, trees);
    const auto poset = enumerate_partitions(c.m, c.k, c.limits.max_elements);
    const auto k = trees ? enumerate_ktree_complex(poset, c.n, c.limits).complex
                         : order_complex(poset.poset(), c.limits.max_faces);
    const auto h = reduced_homology(k);
    j["object"] = c.object;
    j["m"] = c.m;
    j["k"] = c.k;
    j["homology"] = to_json(h);
    text << c.object << " m=" << c.m << " k=" << c.k << ": reduced Betti " << betti_string(h)
         << "\n";
  }
  emit(c, j, text.str());
  write_artifact(c, "homology-m" + std::to_string(c.m) + "-k" + std::to_string(c.k) + ".json", j);
  return code;
}

int cmd_equivariance(RunConfig& c) {
  if (c.n == 0) throw InvalidArgument("--n is required");
  const int m = ground_size_for(c.n, c.k);
  // Read the optional complex first so a bad file fails before any work.
  std::optional<SimplicialComplex> extra;
  if (!c.complex_file.empty()) {
    std::ifstream f(c.complex_file);
    if (!f) throw InvalidArgument("cannot read " + c.complex_file);
    std::stringstream buf;
    buf << f.rdbuf();
    extra = complex_from_json(parse_json(buf.str()), c.limits.max_faces);
    for (const auto& label : extra->labels()) Partition::parse(label, m);
  }

  const auto inst = build_instance(c.k, c.n, c.limits);
  std::vector<Permutation> perms;
  std::string mode;
  if (m <= 5 && !c.sample_given) {
    perms = all_permutations(m);
    mode = "all";
  } else {
    perms.push_back(identity_permutation(m));
    for (auto& p : sample_permutations(m, c.sample, c.seed)) perms.push_back(std::move(p));
    mode = "sample";
  }
  const auto global = global_carrier_map(inst);
  auto check = check_equivariance(inst, global, perms, c.limits.threads);

  std::vector<PropertyCheck> checks{check};
  if (extra) {
    PropertyCheck inv{"input complex is S_m-invariant", true, 0, {}};
    for (const auto& pi : perms) {
      for (const auto& facet : extra->facets()) {
        ++inv.cases;
        Face moved;
        bool ok = true;
        for (int v : facet) {
          const auto x = apply_permutation(Partition::parse(extra->label(v), m), pi);
          const auto w = extra->vertex_by_label(x.to_string());
          if (!w) {
            ok = false;
            break;
          }
          moved.push_back(*w);
        }
        std::sort(moved.begin(), moved.end());
        if ((!ok || !extra->contains(moved)) && inv.pass) {
          inv.pass = false;
          inv.witness = face_name(*extra, facet);
        }
      }
    }
    checks.push_back(inv);
  }

  const auto hs = reduced_homology(inst.order_complex);
  const auto ht = reduced_homology(inst.trees.complex);
  const auto top = static_cast<std::size_t>(c.n - 3);
  const std::size_t rs = top < hs.size() ? hs[top].betti : 0;
  const std::size_t rt = top < ht.size() ? ht[top].betti : 0;
  PropertyCheck ranks{"top reduced homology ranks agree", rs == rt, 1, {}};
  if (!ranks.pass) ranks.witness = std::to_string(rs) + " vs " + std::to_string(rt);
  checks.push_back(ranks);

  bool pass = true;
  Json j;
  j["instance"] = {{"k", c.k}, {"n", c.n}, {"m", m}};
  j["permutations"] = {{"mode", mode}, {"count", perms.size()}, {"seed", c.seed}};
  j["top_degree"] = top;
  j["top_ranks"] = {{"order_complex", rs}, {"ktree_complex", rt}};
  Json list = Json::array();
  std::ostringstream text;
  text << "equivariance k=" << c.k << " n=" << c.n << " m=" << m << ": " << perms.size()
       << " permutations (" << mode << ")\n";
  for (const auto& ch : checks) {
    pass = pass && ch.pass;
    list.push_back(to_json(ch));
    text << "  [" << (ch.pass ? "pass" : "FAIL") << "] " << ch.name;
    if (!ch.pass) text << " -- " << ch.witness;
    text << "\n";
  }
  text << "  top degree " << top << " ranks: " << rs << " and " << rt << "\n";
  j["checks"] = std::move(list);
  j["verdict"] = pass ? "pass" : "fail";
  text << "verdict: " << (pass ? "pass" : "fail") << "\n";
  emit(c, j, text.str());
  write_artifact(c, "equivariance-k" + std::to_string(c.k) + "-n" + std::to_string(c.n) + ".json",
                 j);
  return pass ? kPass : kFail;
}

int cmd_bounds(RunConfig& c) {
  if (c.partitions.empty()) throw InvalidArgument("give at least one partition");
  std::vector<Partition> given;
  for (const auto& s : c.partitions) given.push_back(Partition::parse(s, c.m));
  if (c.m == 0) c.m = given.front().ground_size();
  for (auto& x : given) {
    if (x.ground_size() != c.m) x = Partition::parse(x.to_string(), c.m);
  }
  if (c.k < 1) throw InvalidArgument("--k must be at least 1");
  const auto poset = enumerate_partitions(c.m, c.k, c.limits.max_elements);
  const auto bounds = k_minimal_upper_bounds(poset, std::span<const Partition>(given));
  Json j;
  j["m"] = c.m;
  j["k"] = c.k;
  Json list = Json::array();
  std::ostringstream text;
  text << bounds.size() << " minimal upper bound" << (bounds.size() == 1 ? "" : "s") << " in Π^("
       << c.k << ")_" << c.m << ":\n";
  for (const auto& b : bounds) {
    list.push_back(to_json(b));
    text << "  " << b.to_string() << "\n";
  }
  j["minimal_upper_bounds"] = std::move(list);
  emit(c, j, text.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition posets with block sizes ≡ 1 (mod k) and complexes of k-trees"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-elements", c.limits.max_elements, "cap on poset elements")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-faces", c.limits.max_faces, "cap on complex faces")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.limits.threads, "worker threads (0 = all cores)");
    sub->add_flag("--verbose,-v", c.verbose, "more detail");
    sub->add_option("--out", c.out, "artifact path (default: $KSUBDIV_OUTPUT_DIR/<name>.json)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "write a poset, complex or G as JSON");
  enumerate->add_option("--object", c.object, "pi-k | ktree-complex | order-complex | g-set")
      ->required()
      ->check(CLI::IsMember({"pi-k", "ktree-complex", "order-complex", "g-set"}));
  enumerate->add_option("--m", c.m, "ground set size");
  enumerate->add_option("--n", c.n, "n, with m = (n-1)k+1");
  enumerate->add_option("--k", c.k, "modulus")->required();
  common(enumerate);

  auto* verify = app.add_subcommand("verify", "check that Δ(Π^(k)_m) subdivides T^k_n");
  verify->add_option("--k", c.k, "modulus")->required();
  verify->add_option("--n", c.n, "n, with m = (n-1)k+1")->required();
  verify->add_option("--extensions", c.extensions, "number of linear extensions to run")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", c.seed, "seed for the alternate extensions");
  common(verify);

  auto* homology = app.add_subcommand("homology", "reduced integral homology");
  homology->add_option("--object", c.object, "order-complex | ktree-complex")
      ->check(CLI::IsMember({"order-complex", "ktree-complex"}));
  homology->add_option("--m", c.m, "ground set size");
  homology->add_option("--n", c.n, "n, with m = (n-1)k+1");
  homology->add_option("--k", c.k, "modulus");
  homology->add_flag("--compare", c.compare, "both complexes side by side");
  homology->add_option("--complex", c.complex_file, "complex JSON file");
  common(homology);

  auto* equivariance = app.add_subcommand("equivariance", "S_m-equivariance of the carrier map");
  equivariance->add_option("--k", c.k, "modulus")->required();
  equivariance->add_option("--n", c.n, "n, with m = (n-1)k+1")->required();
  auto* sample = equivariance->add_option("--sample", c.sample,
                                          "random permutations (all of S_m when m <= 5 "
                                          "and this is not given)");
  equivariance->add_option("--seed", c.seed, "sampling seed");
  equivariance->add_option("--complex", c.complex_file,
                           "also check S_m-invariance of this complex JSON");
  common(equivariance);

  auto* bounds = app.add_subcommand("bounds", "minimal upper bounds ∨^k of partitions");
  bounds->add_option("partitions", c.partitions, "partitions, e.g. (123)4567")->required();
  bounds->add_option("--m", c.m, "ground set size (default: largest element)");
  bounds->add_option("--k", c.k, "modulus")->required();
  common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  c.sample_given = sample->count() > 0;

  try {
    if (*enumerate) return cmd_enumerate(c);
    if (*verify) return cmd_verify(c);
    if (*homology) return cmd_homology(c);
    if (*equivariance) return cmd_equivariance(c);
    if (*bounds) return cmd_bounds(c);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
