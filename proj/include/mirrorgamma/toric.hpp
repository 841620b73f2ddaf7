#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mirrorgamma/linalg.hpp"

namespace mirrorgamma {

using LatticePoint = std::vector<long>;

/// Lattice polytope given by its vertices in Z^d.
struct LatticePolytope {
  int dimension = 0;
  std::vector<LatticePoint> vertices;
};

/// Facet with outer primitive normal: normal . x <= value on the polytope,
/// equality exactly on the facet's vertices.
struct Facet {
  std::vector<std::size_t> vertices;  // sorted indices into LatticePolytope::vertices
  LatticePoint normal;
  long value = 0;
};

struct ConditionResult {
  std::string id;
  std::string description;
  bool passed = true;
  std::vector<std::string> witnesses;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;
  std::vector<Facet> facets;
  /// Orientation used for the facet-equation check.
  std::string convention;
  bool ok() const;
  const ConditionResult& condition(const std::string& id) const;
};

/// Checks the smooth reflexive (Fano) conditions:
///   a  vertices are lattice points,
///   b  the origin is the only interior lattice point,
///   c  every facet is a simplex whose vertices form a Z-basis,
///   d  every facet lies on a primitive functional with value -1 (inner normal).
/// Also reports structural problems (duplicate vertices, not full-dimensional,
/// points that are not vertices). Never throws on geometric failure.
ValidationReport validate_fano(const LatticePolytope& p);

/// Complete regular fan: rays mu_1..mu_p (index 0..p-1 here) and maximal cones
/// as sorted ray-index sets, cones sorted lexicographically.
struct FanData {
  int dimension = 0;
  std::vector<LatticePoint> rays;
  std::vector<std::vector<std::size_t>> cones;
  std::size_t num_rays() const { return rays.size(); }
  /// r = p - d, the rank of the relation lattice.
  std::size_t picard_rank() const { return rays.size() - static_cast<std::size_t>(dimension); }
};

/// Face fan of the polytope: rays are the vertices, maximal cones the facets.
/// Throws PreconditionError unless validate_fano passes.
FanData fan_from_polytope(const LatticePolytope& p);

/// Z-basis of L_A = {(l_0, ..., l_p) : sum_i l_i (1, mu_i) = 0} with mu_0 = 0,
/// in canonical Hermite form.
IntMatrix relation_lattice(const FanData& f);

/// Integer relations (l_0, l_1, ..., l_p) defining the Mori basis l^(1..r).
struct MoriBasis {
  std::vector<std::vector<long>> vectors;
  std::size_t rank() const { return vectors.size(); }
  std::size_t num_rays() const { return vectors.empty() ? 0 : vectors[0].size() - 1; }
};

/// One primitive relation per wall (codimension-one cone shared by two maximal
/// cones), positive on the two rays off the wall, lifted to L_A. Deduplicated
/// and sorted.
std::vector<std::vector<long>> wall_relations(const FanData& f);

/// Selects r wall relations forming a Z-basis of L_A such that every wall
/// relation is a nonnegative integer combination of them. Throws
/// MoriBasisError when no such basis exists.
MoriBasis mori_basis(const FanData& f);

/// Validates a user-supplied basis: lattice membership, unimodularity in L_A,
/// l_0 <= 0, and nonnegativity of every wall relation. Throws MoriBasisError.
void check_mori_basis(const FanData& f, const MoriBasis& mb);

/// Coordinates of l in the Mori basis, if l lies in its integer span.
std::optional<std::vector<long>> mori_coordinates(const MoriBasis& mb, const std::vector<long>& l);

/// The p x r matrix (l_i^(k)) expressing D_i = sum_k l_i^(k) J_k.
std::vector<std::vector<long>> divisors_in_J_basis(const FanData& f, const MoriBasis& mb);

/// The simplex conv(e_1, ..., e_d, -e_1 - ... - e_d) whose fan is P^d.
LatticePolytope projective_space_polytope(int d);

std::string point_to_string(const LatticePoint& v);

}  // namespace mirrorgamma
