#include "catfield/theorems.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace catfield {

std::vector<std::vector<bool>> candidate_regions(const CausalCategory& cc) {
  const FinCategory& cat = cc.cat();
  const std::size_t n = cat.object_count();
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> out;
  auto offer = [&](std::vector<bool> mask) {
    if (seen.insert(mask).second && is_region(cc, mask)) out.push_back(std::move(mask));
  };
  for (Index p = 0; p < n; ++p) {
    std::vector<bool> mask(n, false);
    mask[p] = true;
    offer(std::move(mask));
  }
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      if (p == q || !cc.precedes(p, q)) continue;
      std::vector<bool> mask(n, false);
      for (Index r = 0; r < n; ++r) mask[r] = cc.precedes(p, r) && cc.precedes(r, q);
      offer(std::move(mask));
    }
  }
  offer(std::vector<bool>(n, true));
  return out;
}

std::vector<std::pair<std::vector<bool>, std::vector<bool>>> spacelike_region_pairs(const CausalCategory& cc,
                                                                                   std::size_t limit,
                                                                                   std::uint64_t seed) {
  const auto regions = candidate_regions(cc);
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (spacelike_separated(cc, regions[i], regions[j])) idx.emplace_back(i, j);
    }
  }
  std::mt19937_64 gen(seed);
  for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[gen() % i]);
  if (idx.size() > limit) idx.resize(limit);
  std::vector<std::pair<std::vector<bool>, std::vector<bool>>> out;
  for (const auto& [i, j] : idx) out.emplace_back(regions[i], regions[j]);
  return out;
}

double max_commutator(const CausalCategory& cc, const LocalAlgebraBasis& a, const LocalAlgebraBasis& b,
                      std::size_t pairs, std::mt19937_64& gen) {
  const ComplexRig rig;
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const ComplexElement x = sample_local_element(cc, a, rig, gen);
    const ComplexElement y = sample_local_element(cc, b, rig, gen);
    const ComplexElement xy = convolve(x, y);
    const ComplexElement yx = convolve(y, x);
    const double scale = std::max({1.0, max_abs(xy), max_abs(yx)});
    worst = std::max(worst, max_abs_diff(xy, yx) / scale);
  }
  return worst;
}

namespace {

std::string describe(const FinCategory& cat, const std::vector<bool>& mask) {
  std::string s = "{";
  bool first = true;
  for (Index o = 0; o < mask.size(); ++o) {
    if (!mask[o]) continue;
    s += (first ? "" : " ") + cat.object_id(o);
    first = false;
  }
  return s + "}";
}

}  // namespace

std::vector<TheoremRow> theorem_suite(const CausalCategory& cc, const TheoremOptions& options) {
  const FinCategory& cat = cc.cat();
  const std::size_t n = cat.object_count();
  std::mt19937_64 gen(options.seed);
  std::vector<TheoremRow> rows;

  TheoremRow structure{"Structure", true, 0, 0, ""};
  std::vector<std::vector<bool>> subsets{std::vector<bool>(n, false), std::vector<bool>(n, true)};
  for (std::size_t i = 0; i < options.subsets; ++i) {
    std::vector<bool> mask(n);
    for (std::size_t o = 0; o < n; ++o) mask[o] = (gen() & 1U) != 0;
    subsets.push_back(std::move(mask));
  }
  for (const auto& mask : subsets) {
    const StructureReport r = check_structure(cc, relevant_category(cc, mask));
    ++structure.cases;
    if (!r.ok()) {
      ++structure.failures;
      if (structure.detail.empty()) structure.detail = describe(cat, mask) + ": " + r.first_problem;
    }
  }
  structure.pass = structure.failures == 0;
  rows.push_back(structure);

  const auto pairs = spacelike_region_pairs(cc, options.region_pairs, gen());
  TheoremRow nonexistence{"Nonexistence", true, 0, 0, ""};
  for (const auto& [a, b] : pairs) {
    const auto cross = composable_cross_pairs(cc, relevant_category(cc, a), relevant_category(cc, b));
    ++nonexistence.cases;
    if (!cross.empty()) {
      ++nonexistence.failures;
      if (nonexistence.detail.empty()) {
        nonexistence.detail = describe(cat, a) + " / " + describe(cat, b) + ": '" + cat.arrow_id(cross[0].first) +
                              "' then '" + cat.arrow_id(cross[0].second) + "'";
      }
    }
  }
  nonexistence.pass = nonexistence.failures == 0;
  if (nonexistence.cases == 0) nonexistence.detail = "vacuous: no spacelike separated region pairs";
  rows.push_back(nonexistence);

  const RigSpec complex = rig_instance("complex");
  auto commutativity = [&](const char* name, bool involutive) {
    TheoremRow row{name, true, 0, 0, ""};
    std::map<std::vector<bool>, LocalAlgebraBasis> cache;
    auto basis = [&](const std::vector<bool>& mask) -> const LocalAlgebraBasis& {
      auto it = cache.find(mask);
      if (it == cache.end()) it = cache.emplace(mask, local_algebra(cc, mask, complex, involutive)).first;
      return it->second;
    };
    double worst = 0.0;
    for (const auto& [a, b] : pairs) {
      const double c = max_commutator(cc, basis(a), basis(b), options.element_pairs, gen);
      worst = std::max(worst, c);
      ++row.cases;
      if (c > options.tolerance) {
        ++row.failures;
        if (row.detail.empty()) row.detail = describe(cat, a) + " / " + describe(cat, b);
      }
    }
    row.pass = row.failures == 0;
    if (row.cases == 0) {
      row.detail = "vacuous: no spacelike separated region pairs";
    } else if (row.detail.empty()) {
      std::ostringstream s;
      s.precision(3);
      s << "max relative commutator " << worst;
      row.detail = s.str();
    }
    rows.push_back(row);
  };
  commutativity("Commutativity", false);
  if (cc.involution()) commutativity("Commutativity (involution)", true);
  return rows;
}

}  // namespace catfield
