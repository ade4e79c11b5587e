#include "ksubdiv/json_io.hpp"

#include "ksubdiv/error.hpp"

namespace ksubdiv {

namespace {

std::optional<int> optional_index(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<int>();
}

}  // namespace

Json to_json(const Poset& p) {
  Json j;
  j["elements"] = p.labels();
  Json covers = Json::array();
  for (const auto& [a, b] : p.covers()) covers.push_back({a, b});
  j["covers"] = std::move(covers);
  j["min"] = p.min() ? Json(*p.min()) : Json(nullptr);
  j["max"] = p.max() ? Json(*p.max()) : Json(nullptr);
  return j;
}

Json to_json(const SimplicialComplex& k) {
  Json j;
  j["vertices"] = k.labels();
  j["facets"] = k.facets();
  return j;
}

Json to_json(const Partition& x) { return Json(x.block_lists()); }

Json to_json(const std::vector<HomologyGroup>& h) {
  Json out = Json::array();
  for (std::size_t d = 0; d < h.size(); ++d) {
    Json torsion = Json::array();
    for (const auto& t : h[d].torsion) torsion.push_back(t.str());
    out.push_back({{"degree", d}, {"betti", h[d].betti}, {"torsion", std::move(torsion)}});
  }
  return out;
}

Json to_json(const PropertyCheck& c) {
  Json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["cases"] = c.cases;
  if (!c.pass) j["witness"] = c.witness;
  return j;
}

Json to_json(const SubdivisionReport& r) {
  Json j;
  j["instance"] = {{"k", r.k}, {"n", r.n}, {"m", r.m}};
  std::size_t source_faces = 0, target_faces = 0;
  for (auto f : r.source_f_vector) source_faces += f;
  for (auto f : r.target_f_vector) target_faces += f;
  j["sizes"] = {{"poset_elements", r.poset_elements},
                {"proper_part", r.proper_elements},
                {"order_complex_faces", source_faces},
                {"ktree_complex_faces", target_faces}};
  j["f_vectors"] = {{"order_complex", r.source_f_vector}, {"ktree_complex", r.target_f_vector}};
  j["euler_characteristic"] = {{"order_complex", r.source_euler}, {"ktree_complex", r.target_euler}};
  j["extension_used"] = r.extensions.empty() ? Json::array() : Json(r.extensions.front());
  j["extensions"] = r.extensions;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["homology"] = {{"source", to_json(r.source_homology)}, {"target", to_json(r.target_homology)}};
  j["verdict"] = r.verdict ? "pass" : "fail";
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

Poset poset_from_json(const Json& j) {
  try {
    auto labels = j.at("elements").get<std::vector<std::string>>();
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw InvalidArgument("cover must be a pair");
      covers.emplace_back(c[0].get<int>(), c[1].get<int>());
    }
    return Poset::from_covers(std::move(labels), covers, optional_index(j, "min"),
                              optional_index(j, "max"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed poset JSON: ") + e.what());
  }
}

SimplicialComplex complex_from_json(const Json& j, std::size_t max_faces) {
  try {
    auto labels = j.at("vertices").get<std::vector<std::string>>();
    auto facets = j.at("facets").get<std::vector<Face>>();
    return SimplicialComplex::from_facets(std::move(labels), std::move(facets), max_faces);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed complex JSON: ") + e.what());
  }
}

Partition partition_from_json(const Json& j, int m) {
  std::vector<std::vector<int>> blocks;
  try {
    blocks = j.get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed partition JSON: ") + e.what());
  }
  if (m == 0) {
    for (const auto& b : blocks) {
      for (int e : b) m = std::max(m, e);
    }
  }
  return Partition::from_blocks(m, blocks);
}

}  // namespace ksubdiv
