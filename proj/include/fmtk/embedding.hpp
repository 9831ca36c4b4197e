#pragma once

#include <optional>
#include <vector>

#include "fmtk/structure.hpp"

namespace fmtk {

using ElementMap = std::vector<Element>;

/// Searches for an injective map from A into B that preserves constants and is an
/// isomorphism onto its induced image. Deterministic backtracking; nullopt means
/// every candidate was refuted. Throws InvalidArgument on a vocabulary mismatch.
std::optional<ElementMap> find_embedding(const Structure& a, const Structure& b);

/// Checks that `map` is an embedding of A into B.
bool is_embedding(const Structure& a, const Structure& b, const ElementMap& map);

bool is_isomorphic(const Structure& a, const Structure& b);

}  // namespace fmtk
