#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catfield/causal.hpp"

namespace catfield {

struct TheoremRow {
  std::string name;
  bool pass = false;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;
};

struct TheoremOptions {
  std::size_t subsets = 20;          // random object subsets for the structure check
  std::size_t region_pairs = 50;     // spacelike region pairs for the remaining checks
  std::size_t element_pairs = 100;   // random element pairs per region pair
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
};

/// Candidate regions: singletons, causal diamonds {r : p ⤳ r ⤳ q}, and the
/// whole object set, kept when is_region holds. Deterministic order.
std::vector<std::vector<bool>> candidate_regions(const CausalCategory& cc);

/// Spacelike separated pairs among the candidates, seeded shuffle, first `limit`.
std::vector<std::pair<std::vector<bool>, std::vector<bool>>> spacelike_region_pairs(const CausalCategory& cc,
                                                                                   std::size_t limit,
                                                                                   std::uint64_t seed);

/// Largest |ab - ba| relative to max(1, |ab|, |ba|) over random local elements.
double max_commutator(const CausalCategory& cc, const LocalAlgebraBasis& a, const LocalAlgebraBasis& b,
                      std::size_t pairs, std::mt19937_64& gen);

/// Structure, Nonexistence, Commutativity (and its involutive variant when
/// the category has a partial involution).
std::vector<TheoremRow> theorem_suite(const CausalCategory& cc, const TheoremOptions& options);

}  // namespace catfield
