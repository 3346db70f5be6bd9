#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "catfield/algebra.hpp"
#include "catfield/causal.hpp"
#include "catfield/dynamics.hpp"
#include "catfield/states.hpp"

namespace catfield::io {

using Json = nlohmann::ordered_json;

/// A category file: the structure plus the optional "causal" arrow list and
/// "involution" block.
struct LoadedCategory {
  CategoryPtr category;
  std::optional<std::vector<Index>> causal;
  std::optional<InvolutionStructure> involution;

  /// Causal structure from the file (every arrow causal when absent).
  CausalCategory causal_category() const;
  /// The file's involution, or throws io.NoInvolution.
  const InvolutionStructure& require_involution() const;
};

/// Throws io.ParseError / io.MalformedInput and the category.* validation codes.
Json read_json(const std::filesystem::path& path);
LoadedCategory category_from_json(const Json& j);
LoadedCategory load_category(const std::filesystem::path& path);
Json category_to_json(const FinCategory& cat, const std::vector<bool>* causal = nullptr,
                      const InvolutionStructure* involution = nullptr);

using AnyElement = std::variant<AlgElement<ComplexRig>, AlgElement<BooleanRig>, AlgElement<NaturalRig>,
                                AlgElement<TropicalRig>, AlgElement<MatrixRig>>;

struct LoadedElement {
  LoadedCategory category;
  RigSpec rig;
  AnyElement element;
};

/// `"category"` is an inline category object or a path relative to `base`.
LoadedElement element_from_json(const Json& j, const std::filesystem::path& base);
LoadedElement load_element(const std::filesystem::path& path);
/// Elements over a category that is already loaded (the "category" field is ignored).
AnyElement element_on(const CategoryPtr& cat, const RigSpec& rig, const Json& weights);
Json element_to_json(const AnyElement& e);

struct LoadedState {
  LoadedCategory category;
  State state;
};
/// The state's category comes from `category` when given, else from the file.
LoadedState state_from_json(const Json& j, const std::filesystem::path& base,
                            const std::optional<LoadedCategory>& category = std::nullopt,
                            std::optional<double> tolerance_override = std::nullopt);

/// {"coined": {"n", "coin"}, "initial": {"site", "coin"}, "horizon"}.
WalkConfig walk_from_json(const Json& j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Eigen::MatrixXcd& m);

}  // namespace catfield::io
