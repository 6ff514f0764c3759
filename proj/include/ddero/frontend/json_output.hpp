#pragma once

// Machine-readable results. Every document carries "schema" and "version";
// keys appear in a fixed order so equal results give identical bytes.

#include <string>
#include <vector>

#include "ddero/conservation.hpp"
#include "ddero/recursion.hpp"
#include "ddero/scaling.hpp"
#include "ddero/symmetry.hpp"

namespace ddero::frontend {

inline constexpr int kJsonVersion = 1;

std::string weights_json(const std::vector<std::string>& names,
                         const WeightAssignment& w);
std::string densities_json(const std::vector<std::string>& names,
                           const Rational& rank,
                           const std::vector<DensityFluxPair>& pairs);
std::string symmetries_json(const std::vector<std::string>& names, int level,
                            const std::vector<Symmetry>& syms);
std::string recursion_json(const std::vector<std::string>& names,
                           const RecursionResult& r);
std::string hierarchy_json(const std::vector<std::string>& names,
                           const Hierarchy& h);
std::string verify_json(const std::vector<std::string>& names,
                        const VerificationReport& r);
/// {"schema": "ddero/error", "kind": ..., "message": ...}
std::string error_json(const std::string& kind, const std::string& message);

std::string to_string(VerifyMode m);

}  // namespace ddero::frontend
