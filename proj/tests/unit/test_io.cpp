#include "common.hpp"

#include <filesystem>
#include <fstream>

using namespace catfield;
using catfield::io::Json;

namespace {

const std::filesystem::path kData = CATFIELD_DATA_DIR;

}  // namespace

TEST_CASE("category JSON round trip with causal list and involution") {
  const auto cc = minkowski_lattice(2, 3, LatticeFlavor::Indiscrete);
  const Json j = io::category_to_json(cc.cat(), &cc.causal_mask(), &*cc.involution());
  const auto loaded = io::category_from_json(j);
  CHECK(loaded.category->same_structure(cc.cat()));
  REQUIRE(loaded.causal.has_value());
  CHECK(loaded.causal_category().causal_mask() == cc.causal_mask());
  REQUIRE(loaded.involution.has_value());
  for (Index a = 0; a < cc.cat().arrow_count(); ++a) CHECK(loaded.involution->dagger(a) == cc.involution()->dagger(a));
}

TEST_CASE("standard shorthand and sample files") {
  CHECK(io::category_from_json(Json{{"standard", "indiscrete"}, {"n", 3}}).category->arrow_count() == 9);
  CHECK(io::category_from_json(Json{{"standard", "s3"}}).category->arrow_count() == 6);
  const auto thin = io::category_from_json(Json{{"standard", "minkowski"}, {"t", 2}, {"x", 2}, {"flavor", "thin"}});
  CHECK(thin.causal_category().cat().object_count() == 4);
  CHECK_CODE(io::category_from_json(Json{{"standard", "torus"}, {"n", 2}}), "io.MalformedInput");

  const auto i2 = io::load_category(kData / "indiscrete2.json");
  CHECK(i2.category->same_structure(*make_indiscrete(2)));
  CHECK(i2.require_involution().is_dagger());
  CHECK_CODE(io::load_category(kData / "missing.json"), "io.ParseError");
  CHECK_CODE(io::category_from_json(Json{{"objects", Json::array({"a"})}}), "io.MalformedInput");
  CHECK_CODE(io::category_from_json(Json{{"standard", "discrete"}, {"n", 2}}).require_involution(), "io.NoInvolution");
}

TEST_CASE("elements over every rig") {
  const CategoryPtr c = make_indiscrete(2);
  const auto cx = io::element_on(c, rig_instance("complex"), Json{{"a2_1", Json::array({1.5, -2})}});
  CHECK(std::get<ComplexElement>(cx).weight(c->arrow_index("a2_1")) == Complex(1.5, -2.0));
  const auto bl = io::element_on(c, rig_instance("boolean"), Json{{"a1_1", true}});
  CHECK(std::get<AlgElement<BooleanRig>>(bl).support().size() == 1);
  const auto nat = io::element_on(c, rig_instance("natural"), Json{{"a1_2", 7}});
  CHECK(std::get<AlgElement<NaturalRig>>(nat).weight(c->arrow_index("a1_2")) == 7u);
  const auto tr = io::element_on(c, rig_instance("tropical"), Json{{"a1_2", -3}, {"a2_2", "inf"}});
  CHECK(std::get<AlgElement<TropicalRig>>(tr).support().size() == 1);
  const Json mj{{"a1_1", Json::array({Json::array({1, 0}), Json::array({0, 1}), Json::array({0, 0}), Json::array({2, 0})})}};
  const auto mx = io::element_on(c, rig_instance("matrix 2"), mj);
  const SmallMatrix m = std::get<AlgElement<MatrixRig>>(mx).weight(c->arrow_index("a1_1"));
  CHECK(m(0, 1) == Complex(0.0, 1.0));
  CHECK(m(1, 1) == Complex(2.0, 0.0));

  for (const auto& any : {cx, bl, nat, tr, mx}) {
    const Json out = io::element_to_json(any);
    std::visit(
        [&](const auto& e) {
          const auto back = io::element_on(c, rig_instance(out.at("rig").get<std::string>()), out.at("weights"));
          CHECK(std::get<std::decay_t<decltype(e)>>(back).weights() == e.weights());
        },
        any);
  }
  CHECK_CODE(io::element_on(c, rig_instance("natural"), Json{{"a1_2", -1}}), "io.MalformedInput");
  CHECK_CODE(io::element_on(c, rig_instance("complex"), Json{{"nope", 1}}), "algebra.UnknownArrow");
}

TEST_CASE("element and state files resolve their category relative to the file") {
  const auto a = io::load_element(kData / "elem_a.json");
  CHECK(a.category.category->same_structure(*make_indiscrete(2)));
  const auto s = io::state_from_json(io::read_json(kData / "trace_state.json"), kData, std::nullopt, std::nullopt);
  CHECK(std::abs(s.state.normalization() - Complex(1.0, 0.0)) < 1e-12);
  CHECK_CODE(io::state_from_json(io::read_json(kData / "z2_bad_state.json"), kData, std::nullopt, std::nullopt),
             "states.NotPSD");
  const Json bad_arrow{{"category", "indiscrete2.json"}, {"weights", {{"zz", 1}}}};
  CHECK_CODE(io::state_from_json(bad_arrow, kData, std::nullopt, std::nullopt), "states.UnknownArrow");
}

TEST_CASE("walk configuration") {
  const WalkConfig cfg = io::walk_from_json(io::read_json(kData / "hadamard4.json"));
  CHECK(cfg.horizon == 3);
  CHECK(cfg.omega.category()->object_count() == 4);
  REQUIRE(cfg.initial.has_value());
  const Json real_rows{{"coined", {{"n", 3}, {"coin", Json::array({Json::array({0, 1}), Json::array({1, 0})})}}}};
  const WalkConfig pauli = io::walk_from_json(real_rows);
  CHECK(is_unitary(pauli.omega, pauli.involution));
  const Json three_rows{{"coined", {{"n", 3}, {"coin", Json::array({Json::array({0, 1}), Json::array({1, 0}), Json::array({1, 0})})}}}};
  CHECK_CODE(io::walk_from_json(three_rows), "io.MalformedInput");
  const Json flip{{"coined",
                   {{"n", 3},
                    {"coin", Json::array({Json::array({Json::array({0, 0}), Json::array({1, 0})}),
                                          Json::array({Json::array({1, 0}), Json::array({0, 0})})})}}}};
  CHECK(io::walk_from_json(flip).omega.category()->object_count() == 3);
}
