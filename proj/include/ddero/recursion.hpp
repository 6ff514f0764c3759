#pragma once

// Recursion operators: rank matrix, candidate construction, coefficient
// solving, verification and hierarchy generation.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddero/conservation.hpp"
#include "ddero/opalgebra.hpp"
#include "ddero/symmetry.hpp"

namespace ddero {

using RankMatrix = std::vector<std::vector<Rational>>;

/// Entry (i, j) = rank high_i - rank low_j. Throws InputError when a
/// component of either symmetry is zero.
RankMatrix rank_matrix(const Symmetry& low, const Symmetry& high);

enum class VerifyMode { action, operator_identity, both };

struct RecursionConfig {
  int gap = 1;
  int pairs = 1;
  /// Window for symmetries the pipeline computes itself.
  std::optional<ShiftWindow> window;
  /// Variables allowed in local coefficients; default: those occurring in F.
  std::optional<std::vector<ShiftedVariable>> coefficient_pool;
  VerifyMode mode = VerifyMode::both;
  int hierarchy_length = 2;
  /// Add operator-identity conditions when the action constraints leave
  /// parameters free.
  bool operator_conditions = true;
  Execution exec = Execution::parallel;
};

/// Which (symmetry, covariant) pair produced a nonlocal parameter.
struct NonlocalOrigin {
  Parameter parameter;
  std::size_t symmetry = 0;
  std::size_t covariant = 0;
};

struct CandidateBundle {
  PseudoDifferenceOperator op;
  std::vector<Parameter> parameters;
  std::size_t local_parameter_count = 0;
  std::vector<NonlocalOrigin> nonlocal;
  /// D-power range per entry, nullopt where the entry has no local part.
  std::vector<std::vector<std::optional<std::pair<int, int>>>> powers;
};

/// D-power range of the local part of entry (i, j), read off the shift
/// extents of high_i and low_j.
std::optional<std::pair<int, int>> power_range(const Expression& high_i,
                                               const Expression& low_j);

/// symmetries[0], symmetries[1] are the linked pair that fixes the power
/// ranges; every symmetry is tried against every covariant for the nonlocal
/// part. Parameters are numbered c1, c2, ... in entry (row-major), power,
/// basis order, then nonlocal terms. Throws EmptyCandidate.
CandidateBundle build_candidate(const DDESystem& s, const WeightAssignment& w,
                                const std::vector<Symmetry>& symmetries,
                                const std::vector<Covariant>& covariants,
                                const RankMatrix& rm,
                                const RecursionConfig& cfg = {});

using SymmetryPair = std::pair<VectorExpression, VectorExpression>;

struct SolvedOperator {
  PseudoDifferenceOperator op;
  /// Parameter values before the final normalization.
  Solution solution;
  /// Factor applied to reach a leading local coefficient of 1.
  Rational scale = 1;
  bool used_operator_conditions = false;
  /// Nonlocal parameters forced to zero because their argument alone is not
  /// an exact difference.
  std::vector<Parameter> forced_zero;
};

/// Action constraints of apply(R, low) - high == 0 for every pair.
LinearSystem action_conditions(const CandidateBundle& bundle,
                               const std::vector<SymmetryPair>& pairs,
                               Execution exec,
                               std::vector<Parameter>* forced_zero = nullptr);

/// Throws NoSolution or Underdetermined.
SolvedOperator solve_candidate(const DDESystem& s, const CandidateBundle& bundle,
                               const std::vector<SymmetryPair>& pairs,
                               const RecursionConfig& cfg = {});

/// Scales r so its first nonzero local coefficient (row-major entries,
/// ascending powers, leading term) is 1. Returns the factor used.
Rational normalize_scale(PseudoDifferenceOperator& r);

struct ActionStep {
  VectorExpression image;
  bool ok = false;
  std::string diagnostic;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::both;
  std::optional<ZeroVerdict> operator_verdict;
  /// Set when the operator identity could not be evaluated.
  std::string operator_note;
  std::vector<ActionStep> steps;
  bool action_checked = false;
  bool action_ok = false;
  bool passed = false;
};

/// Operator identity and/or the action check on cfg.hierarchy_length images
/// of the seed.
VerificationReport verify(const PseudoDifferenceOperator& r,
                          const DDESystem& s, const VectorExpression& seed,
                          const RecursionConfig& cfg = {});

struct Hierarchy {
  std::vector<VectorExpression> members;
  /// Empty when all requested members were produced.
  std::string failure;
  bool complete() const { return failure.empty(); }
};

/// Iterates apply(r, .) from the seed; every member passes verify_symmetry.
/// Stops at the first failure, keeping the valid prefix.
Hierarchy generate_hierarchy(const PseudoDifferenceOperator& r,
                             const DDESystem& s, const VectorExpression& seed,
                             int count);

/// apply(r1, apply(r2, g)) == g and apply(r2, apply(r1, g)) == g for every
/// seed.
bool inverse_pair_check(const PseudoDifferenceOperator& r1,
                        const PseudoDifferenceOperator& r2,
                        const std::vector<VectorExpression>& seeds,
                        std::string* diagnostic = nullptr);

/// Symmetries and densities supplied with the system, used in place of
/// computed ones.
struct RecursionInputs {
  std::vector<Symmetry> symmetries;
  std::vector<LogDensity> densities;
};

struct RecursionResult {
  std::vector<Symmetry> symmetries;
  std::vector<Covariant> covariants;
  RankMatrix ranks;
  CandidateBundle candidate;
  SolvedOperator solved;
  VerificationReport report;
  int gap = 1;
};

/// Rank matrix, candidate, solve and verify in one call. Retries with gap 2 when gap 1 fails and the
/// supplied symmetries allow it.
RecursionResult find_recursion_operator(const DDESystem& s,
                                        const WeightAssignment& w,
                                        const RecursionInputs& inputs,
                                        const RecursionConfig& cfg = {});

}  // namespace ddero
