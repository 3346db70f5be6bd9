#include "catfield/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace catfield::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail("io.MalformedInput", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::size_t size_of(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    malformed(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Variance variance_of(const Json& j) {
  const std::string v = string_of(j, "variance");
  if (v == "contravariant") return Variance::Contravariant;
  if (v == "covariant") return Variance::Covariant;
  malformed("variance must be 'covariant' or 'contravariant'");
}

LoadedCategory standard_category(const Json& j) {
  const std::string kind = string_of(field(j, "standard"), "standard");
  LoadedCategory out;
  if (kind == "minkowski") {
    const std::string flavor = j.contains("flavor") ? string_of(j.at("flavor"), "flavor") : "indiscrete";
    if (flavor != "thin" && flavor != "indiscrete") malformed("flavor must be 'thin' or 'indiscrete'");
    const CausalCategory cc = minkowski_lattice(size_of(field(j, "t"), "t"), size_of(field(j, "x"), "x"),
                                                flavor == "thin" ? LatticeFlavor::Thin : LatticeFlavor::Indiscrete);
    out.category = cc.category();
    out.causal = members(cc.causal_mask());
    out.involution = cc.involution();
    return out;
  }
  if (kind == "s3") {
    out.category = make_symmetric_group3();
  } else {
    const std::size_t n = size_of(field(j, "n"), "n");
    if (kind == "discrete") out.category = make_discrete(n);
    else if (kind == "indiscrete") out.category = make_indiscrete(n);
    else if (kind == "cyclic") out.category = make_cyclic_group(n);
    else malformed("unknown standard category '" + kind + "'");
  }
  return out;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("io.ParseError", "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("io.ParseError", "'" + path.string() + "': " + e.what());
  }
}

LoadedCategory category_from_json(const Json& j) {
  if (!j.is_object()) malformed("category must be a JSON object");
  LoadedCategory out;
  if (j.contains("standard")) {
    out = standard_category(j);
  } else {
    CategoryDescription d;
    d.name = j.contains("id") ? string_of(j.at("id"), "id") : "category";
    for (const auto& o : field(j, "objects")) d.objects.push_back(string_of(o, "object id"));
    for (const auto& a : field(j, "arrows")) {
      d.arrows.push_back({string_of(field(a, "id"), "arrow id"), string_of(field(a, "dom"), "dom"),
                          string_of(field(a, "cod"), "cod")});
    }
    const Json& ids = field(j, "identities");
    if (!ids.is_object()) malformed("identities must map objects to arrows");
    for (const auto& [obj, arrow] : ids.items()) d.identities[obj] = string_of(arrow, "identity arrow");
    for (const auto& triple : field(j, "compose")) {
      if (!triple.is_array() || triple.size() != 3) malformed("compose entries are [g, f, g∘f] triples");
      d.compose.push_back({string_of(triple[0], "arrow"), string_of(triple[1], "arrow"), string_of(triple[2], "arrow")});
    }
    out.category = FinCategory::validate(d);
  }
  const FinCategory& cat = *out.category;

  if (j.contains("causal")) {
    std::vector<Index> causal;
    for (const auto& a : j.at("causal")) causal.push_back(cat.arrow_index(string_of(a, "causal arrow")));
    out.causal = std::move(causal);
  }
  if (j.contains("involution")) {
    const Json& inv = j.at("involution");
    if (inv.is_string()) {
      const std::string kind = inv.get<std::string>();
      if (kind == "reversal" || kind == "inverse") out.involution = inverse_involution(out.category);
      else if (kind == "trivial") out.involution = trivial_involution(out.category);
      else malformed("involution must be 'reversal', 'trivial' or an object");
    } else {
      const Json& dagger = field(inv, "dagger");
      if (!dagger.is_object()) malformed("dagger must map arrows to arrows");
      std::vector<Index> carrier;
      std::vector<Index> map(cat.arrow_count(), kNone);
      for (const auto& [from, to] : dagger.items()) {
        const Index a = cat.arrow_index(from);
        carrier.push_back(a);
        map[a] = cat.arrow_index(string_of(to, "dagger image"));
      }
      const Variance v = inv.contains("variance") ? variance_of(inv.at("variance")) : Variance::Contravariant;
      out.involution = validate_involution(out.category, carrier, map, v);
    }
  }
  return out;
}

LoadedCategory load_category(const std::filesystem::path& path) { return category_from_json(read_json(path)); }

CausalCategory LoadedCategory::causal_category() const {
  if (causal) return make_causal(category, *causal, involution);
  return make_causal(category, involution);
}

const InvolutionStructure& LoadedCategory::require_involution() const {
  if (!involution) fail("io.NoInvolution", "category '" + category->name() + "' declares no involution");
  return *involution;
}

Json category_to_json(const FinCategory& cat, const std::vector<bool>* causal, const InvolutionStructure* involution) {
  const CategoryDescription d = cat.describe();
  Json j;
  j["id"] = d.name;
  j["objects"] = d.objects;
  Json arrows = Json::array();
  for (const auto& a : d.arrows) arrows.push_back({{"id", a.id}, {"dom", a.dom}, {"cod", a.cod}});
  j["arrows"] = std::move(arrows);
  Json ids = Json::object();
  for (const auto& o : d.objects) ids[o] = d.identities.at(o);
  j["identities"] = std::move(ids);
  Json compose = Json::array();
  for (const auto& t : d.compose) compose.push_back({t[0], t[1], t[2]});
  j["compose"] = std::move(compose);
  if (causal) {
    Json list = Json::array();
    for (Index a = 0; a < cat.arrow_count(); ++a) {
      if ((*causal)[a]) list.push_back(cat.arrow_id(a));
    }
    j["causal"] = std::move(list);
  }
  if (involution) {
    Json dagger = Json::object();
    for (Index a : involution->carrier_arrows()) dagger[cat.arrow_id(a)] = cat.arrow_id(involution->dagger(a));
    j["involution"] = {{"variance", involution->variance() == Variance::Contravariant ? "contravariant" : "covariant"},
                       {"dagger", std::move(dagger)}};
  }
  return j;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  malformed("complex values are numbers or [re, im] pairs");
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(complex_to_json(m(i, k)));
  }
  return out;
}

namespace {

template <Rig R>
typename R::value_type value_from_json(const R& rig, const Json& j) {
  if constexpr (std::is_same_v<R, ComplexRig>) {
    return complex_from_json(j);
  } else if constexpr (std::is_same_v<R, BooleanRig>) {
    if (!j.is_boolean()) malformed("boolean rig values are true/false");
    return j.get<bool>();
  } else if constexpr (std::is_same_v<R, NaturalRig>) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
      malformed("natural rig values are nonnegative integers");
    }
    return j.get<std::uint64_t>();
  } else if constexpr (std::is_same_v<R, TropicalRig>) {
    if (j.is_string() && j.get<std::string>() == "inf") return rig.zero();
    if (!j.is_number()) malformed("tropical values are numbers or \"inf\"");
    return j.get<double>();
  } else {
    const auto d = static_cast<std::size_t>(rig.dim);
    if (!j.is_array() || j.size() != d * d) malformed("matrix values are row-major lists of n*n [re, im] pairs");
    SmallMatrix m(rig.dim, rig.dim);
    for (std::size_t i = 0; i < d * d; ++i) m(static_cast<int>(i / d), static_cast<int>(i % d)) = complex_from_json(j[i]);
    return m;
  }
}

template <Rig R>
Json value_to_json(const R&, const typename R::value_type& v) {
  if constexpr (std::is_same_v<R, ComplexRig>) {
    return complex_to_json(v);
  } else if constexpr (std::is_same_v<R, TropicalRig>) {
    if (std::isinf(v)) return "inf";
    return v;
  } else if constexpr (std::is_same_v<R, MatrixRig>) {
    return matrix_to_json(v);
  } else {
    return Json(v);
  }
}

template <Rig R>
AlgElement<R> parse_element(const CategoryPtr& cat, const R& rig, const Json& weights) {
  if (!weights.is_object()) malformed("weights must map arrow ids to values");
  AlgElement<R> e(cat, rig);
  for (const auto& [arrow, value] : weights.items()) {
    auto a = cat->find_arrow(arrow);
    if (!a) fail("algebra.UnknownArrow", "no arrow '" + arrow + "' in '" + cat->name() + "'");
    e.set(*a, value_from_json(rig, value));
  }
  return e;
}

LoadedCategory resolve_category(const Json& j, const std::filesystem::path& base) {
  const Json& c = field(j, "category");
  if (c.is_object()) return category_from_json(c);
  const std::filesystem::path p = string_of(c, "category");
  return load_category(p.is_absolute() ? p : base / p);
}

}  // namespace

AnyElement element_on(const CategoryPtr& cat, const RigSpec& rig, const Json& weights) {
  return std::visit([&](const auto& r) -> AnyElement { return parse_element(cat, r, weights); }, make_rig(rig));
}

LoadedElement element_from_json(const Json& j, const std::filesystem::path& base) {
  LoadedCategory cat = resolve_category(j, base);
  const RigSpec rig = rig_instance(j.contains("rig") ? string_of(j.at("rig"), "rig") : "complex");
  AnyElement e = element_on(cat.category, rig, field(j, "weights"));
  return {std::move(cat), rig, std::move(e)};
}

LoadedElement load_element(const std::filesystem::path& path) {
  return element_from_json(read_json(path), path.parent_path());
}

Json element_to_json(const AnyElement& any) {
  return std::visit(
      [](const auto& e) {
        Json weights = Json::object();
        const FinCategory& cat = *e.category();
        for (Index a : e.support()) weights[cat.arrow_id(a)] = value_to_json(e.rig(), e.weight(a));
        return Json{{"category", cat.name()}, {"rig", e.rig().name()}, {"weights", std::move(weights)}};
      },
      any);
}

LoadedState state_from_json(const Json& j, const std::filesystem::path& base,
                            const std::optional<LoadedCategory>& category, std::optional<double> tolerance_override) {
  LoadedCategory cat = category ? *category : resolve_category(j, base);
  const InvolutionStructure& inv = cat.require_involution();
  const RigSpec rig = rig_instance(j.contains("rig") ? string_of(j.at("rig"), "rig") : "complex");
  const int d = state_dimension(rig);
  double tol = kDefaultTolerance;
  if (j.contains("tolerance")) {
    if (!j.at("tolerance").is_number()) malformed("tolerance must be a number");
    tol = j.at("tolerance").get<double>();
  }
  if (tolerance_override) tol = *tolerance_override;
  const Json& weights = field(j, "weights");
  if (!weights.is_object()) malformed("weights must map arrow ids to values");
  std::vector<StateWeight> blocks(cat.category->arrow_count(), StateWeight::Zero(d, d));
  for (const auto& [arrow, value] : weights.items()) {
    auto a = cat.category->find_arrow(arrow);
    if (!a) fail("states.UnknownArrow", "no arrow '" + arrow + "' in '" + cat.category->name() + "'");
    if (d == 1) {
      blocks[*a](0, 0) = complex_from_json(value);
    } else {
      const SmallMatrix m = value_from_json(MatrixRig(d), value);
      blocks[*a] = m;
    }
  }
  State s = state_from_weights(inv, rig, std::move(blocks), tol);
  return {std::move(cat), std::move(s)};
}

WalkConfig walk_from_json(const Json& j) {
  const Json& coined = field(j, "coined");
  const std::size_t n = size_of(field(coined, "n"), "n");
  Eigen::Matrix2cd coin = hadamard_coin();
  if (coined.contains("coin")) {
    const Json& c = coined.at("coin");
    if (c.is_string()) {
      if (c.get<std::string>() == "identity") coin.setIdentity();
      else if (c.get<std::string>() != "hadamard") malformed("coin must be 'hadamard', 'identity' or a 2x2 matrix");
    } else {
      if (!c.is_array() || c.size() != 2 || !c[0].is_array() || c[0].size() != 2 || !c[1].is_array() || c[1].size() != 2) {
        malformed("coin matrix must be 2x2, rows of [re, im] entries");
      }
      for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < 2; ++k) coin(r, k) = complex_from_json(c[r][k]);
      }
    }
  }
  WalkConfig cfg = coined_walk(n, coin);
  std::size_t site = 0;
  Eigen::Vector2cd v(1.0, 0.0);
  if (j.contains("initial")) {
    const Json& init = j.at("initial");
    if (init.contains("site")) site = size_of(init.at("site"), "site");
    if (init.contains("coin")) {
      const Json& c = init.at("coin");
      if (!c.is_array() || c.size() != 2) malformed("initial coin state is a pair of complex values");
      v = Eigen::Vector2cd(complex_from_json(c[0]), complex_from_json(c[1]));
    }
  }
  cfg.initial = coined_initial_state(cfg, site, v);
  if (j.contains("horizon")) cfg.horizon = size_of(j.at("horizon"), "horizon");
  return cfg;
}

}  // namespace catfield::io
