#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/poset.hpp"
#include "ksubdiv/simplicial.hpp"
#include "ksubdiv/theorem.hpp"

namespace ksubdiv {

using Json = nlohmann::ordered_json;

/// {"elements": [labels], "covers": [[lower, upper], ...], "min": i|null, "max": i|null}
Json to_json(const Poset& p);
/// {"vertices": [labels], "facets": [[v, ...], ...]}
Json to_json(const SimplicialComplex& k);
/// [[1,2,3],[4],[5]]
Json to_json(const Partition& x);
Json to_json(const std::vector<HomologyGroup>& h);
Json to_json(const PropertyCheck& c);
/// Fields: instance, sizes, f_vectors, extension_used, checks, homology, verdict.
Json to_json(const SubdivisionReport& r);

/// The readers throw InvalidArgument on malformed input.
Poset poset_from_json(const Json& j);
SimplicialComplex complex_from_json(const Json& j,
                                    std::size_t max_faces = SimplicialComplex::kDefaultMaxFaces);
Partition partition_from_json(const Json& j, int m = 0);

/// Parses text, turning syntax errors into InvalidArgument.
Json parse_json(const std::string& text);

}  // namespace ksubdiv
