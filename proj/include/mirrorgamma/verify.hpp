#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "mirrorgamma/cohomology.hpp"
#include "mirrorgamma/gammaseq.hpp"
#include "mirrorgamma/periods.hpp"
#include "mirrorgamma/toric.hpp"

namespace mirrorgamma {

/// One line of a verification report. lhs/rhs are printed exact values.
struct CheckEntry {
  std::string id;
  std::string lhs;
  std::string rhs;
  bool exact_match = false;
  /// |lhs - rhs| evaluated numerically, 30 significant digits.
  std::string numeric_residual;
  std::string detail;
};

struct VerificationReport {
  std::string subject;
  /// How the index bookkeeping of the theorem is read.
  std::string interpretation;
  std::vector<CheckEntry> entries;

  bool all_exact() const;
  void append(const VerificationReport& other);
  nlohmann::json to_json() const;
  std::string to_table() const;
};

CheckEntry make_entry(std::string id, const TransScalar& lhs, const TransScalar& rhs, std::string detail = {});

/// Everything derived from one fan, computed once.
struct FanContext {
  FanData fan;
  MoriBasis basis;
  CohClass::RingPtr ring;
  std::vector<CohClass> js;
  ChernVector<CohClass> chern;  // c_1..c_d of V as ambient classes
  GammaCoeffSeries gamma;
  int order = 0;

  /// order < 0 picks the default d + 2.
  static FanContext build(const FanData& fan, const std::optional<MoriBasis>& override_basis = std::nullopt,
                          int order = -1);
  /// Complex dimension of the hypersurface V.
  int cy_dimension() const { return fan.dimension - 1; }
  std::size_t rank() const { return basis.rank(); }
};

/// Integral over V of a J-monomial (1-based indices, d - 1 of them).
TransScalar coupling(const FanContext& ctx, const std::vector<std::size_t>& indices);

/// Theorem check for Q_k against sum_{j in {1..r}^k} (1/k!) d^k c(0)/d rho_j K_{j, trailing}.
/// For k <= dim V both sides are integrals over V and `trailing` has dim V - k
/// entries. For k = d (one above dim V) the identity is checked one level up,
/// as an integral over the ambient space with d - k = 0 trailing entries.
CheckEntry check_theorem(const FanContext& ctx, int k, const std::vector<std::size_t>& trailing);

/// All admissible (k, trailing) pairs, trailing running over sorted multisets.
VerificationReport check_theorem_all(const FanContext& ctx);

/// Gamma-class of V three ways, degree by degree 0..d:
/// the multiplicative sequence on c(V), Gamma(1 + sum D_i) / prod Gamma(1 + D_i)
/// in the ring, and the coefficient series with rho_k -> J_k.
VerificationReport check_three_way(const FanContext& ctx);

/// Hypersurface of degree d + 1 in P^d: ((d+1)m)! / (m!)^(d+1) against the
/// Gamma-ratio at h = m (exact and through MPFR) and against the period series.
VerificationReport check_pd_example(int d, int order);

/// Coefficient ratio of the two Grassmannian period series for m = 0..order,
/// compared with both Gamma-ratio candidates.
VerificationReport grassmannian_ratio_check(int order);

/// Exact invariants used as fixture goldens.
nlohmann::json compute_goldens(const FanContext& ctx);
VerificationReport check_goldens(const FanContext& ctx, const nlohmann::json& expected);

/// The full battery for one fan (theorem, three-way, couplings, box check,
/// goldens when given).
VerificationReport verify_fan(const FanContext& ctx, const nlohmann::json* expected = nullptr);

}  // namespace mirrorgamma
