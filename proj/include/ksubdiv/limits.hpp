#pragma once

#include <cstddef>

namespace ksubdiv {

/// Resource caps shared by the enumerators and the verifier.
struct Limits {
  std::size_t max_elements = 5000;
  std::size_t max_faces = 200000;
  /// Worker threads for independent checks; 0 picks the hardware count.
  unsigned threads = 1;
};

}  // namespace ksubdiv
