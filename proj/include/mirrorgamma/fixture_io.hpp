#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "mirrorgamma/toric.hpp"

namespace mirrorgamma {

/// A polytope input file:
///   { "name": ..., "description": ...,
///     "dimension": d, "vertices": [[...], ...],
///     "ray_order": [i, ...]            optional permutation (0-based) of the vertices,
///     "mori_basis_override": [[l_0, ..., l_p], ...]   optional,
///     "expected": {...}                optional goldens }
struct Fixture {
  std::string name;
  std::string description;
  LatticePolytope polytope;
  std::optional<MoriBasis> mori_override;
  std::optional<nlohmann::json> expected;
  nlohmann::json raw;
};

/// Throws ParseError naming the offending field (and line/column for syntax errors).
Fixture parse_fixture(const std::string& text);
Fixture load_fixture(const std::string& path);

/// Two-space indented JSON with arrays of scalars kept on one line.
std::string pretty_json(const nlohmann::json& j);

/// Rewrites the file with its "expected" block replaced by `goldens`.
void write_goldens(const std::string& path, const Fixture& fixture, const nlohmann::json& goldens);

}  // namespace mirrorgamma
