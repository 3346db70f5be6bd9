#include "common.hpp"

using namespace catfield;
using testsupport::Gen;

namespace {

std::vector<bool> points(const CausalCategory& cc, std::initializer_list<const char*> ids) {
  std::vector<std::string> v(ids.begin(), ids.end());
  return object_set(cc.cat(), v);
}

}  // namespace

TEST_CASE("minkowski lattice order is the discrete light cone") {
  for (auto flavor : {LatticeFlavor::Thin, LatticeFlavor::Indiscrete}) {
    const auto cc = minkowski_lattice(3, 4, flavor);
    const FinCategory& cat = cc.cat();
    REQUIRE(cat.object_count() == 12);
    std::size_t related = 0;
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t x = 0; x < 4; ++x) {
        for (std::size_t t2 = 0; t2 < 3; ++t2) {
          for (std::size_t x2 = 0; x2 < 4; ++x2) {
            const bool expected = static_cast<long>(t2) - static_cast<long>(t) >=
                                  std::abs(static_cast<long>(x2) - static_cast<long>(x));
            related += expected;
            CHECK(cc.precedes(cat.object_index(lattice_point(t, x)), cat.object_index(lattice_point(t2, x2))) ==
                  expected);
          }
        }
      }
    }
    if (flavor == LatticeFlavor::Thin) {
      CHECK(cat.arrow_count() == related);
    } else {
      CHECK(cat.arrow_count() == 144);
      CHECK(cc.involution()->is_dagger());
    }
  }
  CHECK_CODE(minkowski_lattice(9, 8, LatticeFlavor::Thin), "causal.TooLarge");
}

TEST_CASE("causal structure validation") {
  const CategoryPtr cat = make_indiscrete(3);
  std::vector<Index> no_identities{cat->arrow_index("a2_1")};
  CHECK_CODE(make_causal(cat, no_identities), "causal.NotWide");
  std::vector<Index> open{cat->identity(0), cat->identity(1), cat->identity(2), cat->arrow_index("a2_1"),
                          cat->arrow_index("a3_2")};
  CHECK_CODE(make_causal(cat, open), "causal.NotClosed");
  CHECK_CODE(make_causal(cat, inverse_involution(make_indiscrete(2))), "causal.MismatchedCategory");
  open.push_back(cat->arrow_index("a3_1"));
  const auto cc = make_causal(cat, open);
  CHECK(cc.precedes(0, 2));
  CHECK_FALSE(cc.precedes(2, 0));
}

TEST_CASE("relevant category matches the naive closure oracle") {
  Gen gen(41);
  for (const auto& [label, cc] : testsupport::causal_corpus()) {
    CAPTURE(label);
    for (int i = 0; i < 10; ++i) {
      const auto mask = gen.subset(cc.cat().object_count());
      const auto sel = relevant_category(cc, mask);
      CHECK(sel.relevant == testsupport::relevant_closure_oracle(cc, mask));
      const auto report = check_structure(cc, sel);
      CHECK_MESSAGE(report.ok(), report.first_problem);
    }
  }
}

TEST_CASE("structure forms on a chain") {
  const auto cc = make_causal(testsupport::chain(3));
  const FinCategory& cat = cc.cat();
  const auto sel = relevant_category(cc, object_set(cat, std::vector<std::string>{"v1", "v2"}));
  const Index through = cat.arrow_index("e2.e1.e0");
  REQUIRE(sel.relevant[through]);
  CHECK(*sel.form[through] == RelevantForm::OutInnerIn);
  const FormWitness w = *sel.witness[through];
  CHECK(cat.compose(w.out, cat.compose(w.inner, w.in)) == through);
  CHECK(*sel.form[cat.arrow_index("e1")] == RelevantForm::Inner);
  CHECK(*sel.form[cat.arrow_index("e0")] == RelevantForm::InnerAfterIn);
  CHECK(*sel.form[cat.arrow_index("e2.e1")] == RelevantForm::OutAfterInner);
  CHECK(sel.is_outside_identity(cat.arrow_index("id_v0")));
}

TEST_CASE("spacelike separation and regions") {
  const auto cc = minkowski_lattice(3, 3, LatticeFlavor::Indiscrete);
  CHECK(spacelike_separated(cc, points(cc, {"0,0"}), points(cc, {"0,2"})));
  CHECK(spacelike_separated(cc, points(cc, {"1,0"}), points(cc, {"1,2"})));
  CHECK_FALSE(spacelike_separated(cc, points(cc, {"0,0"}), points(cc, {"2,2"})));
  CHECK_FALSE(spacelike_separated(cc, points(cc, {"0,1"}), points(cc, {"0,1"})));

  for (Index p = 0; p < cc.cat().object_count(); ++p) {
    const auto single = object_set(cc.cat(), std::vector<Index>{p});
    CHECK(is_region(cc, single));
    CHECK(is_region(cc, single, RegionReading::OutsideIdentity));
  }
  const auto gapped = points(cc, {"0,0", "2,0"});
  CHECK_FALSE(is_region(cc, gapped));
  CHECK_FALSE(is_region(cc, gapped, RegionReading::OutsideIdentity));
  CHECK_FALSE(is_region(cc, points(cc, {"0,0", "1,0", "2,0"})));  // detour through 1,1
  CHECK(is_region(cc, points(cc, {"0,0", "1,0", "1,1", "2,0"})));
}

TEST_CASE("no composable cross pairs between spacelike regions") {
  for (const auto& [label, cc] : testsupport::causal_corpus()) {
    CAPTURE(label);
    for (const auto& [a, b] : spacelike_region_pairs(cc, 20, 7)) {
      CHECK(composable_cross_pairs(cc, relevant_category(cc, a), relevant_category(cc, b)).empty());
    }
  }
  const auto cc = minkowski_lattice(3, 3, LatticeFlavor::Indiscrete);
  const auto timelike =
      composable_cross_pairs(cc, relevant_category(cc, points(cc, {"0,1"})), relevant_category(cc, points(cc, {"1,1"})));
  CHECK_FALSE(timelike.empty());
}

TEST_CASE("involutive relevant category is closed under the dagger") {
  const auto cc = minkowski_lattice(3, 3, LatticeFlavor::Indiscrete);
  Gen gen(42);
  for (int i = 0; i < 10; ++i) {
    const auto sel = relevant_category(cc, gen.subset(9));
    const auto inv = involutive_relevant(cc, sel);
    for (Index a = 0; a < inv.size(); ++a) {
      if (!inv[a]) continue;
      CHECK(sel.relevant[a]);
      CHECK(inv[cc.involution()->dagger(a)]);
    }
  }
  const auto bare = make_causal(testsupport::chain(2));
  CHECK_CODE(involutive_relevant(bare, relevant_category(bare, std::vector<bool>{true, false, false})),
             "causal.NoPartialInvolution");
}

TEST_CASE("local algebras") {
  const auto cc = minkowski_lattice(3, 3, LatticeFlavor::Indiscrete);
  CHECK_CODE(local_algebra(cc, points(cc, {"0,0", "2,0"}), rig_instance("complex"), false), "causal.NotARegion");
  CHECK_CODE(local_algebra(cc, points(cc, {"0,0"}), rig_instance("natural"), true), "causal.UnsupportedRig");
  CHECK_CODE(object_set(cc.cat(), std::vector<std::string>{"9,9"}), "causal.UnknownObject");

  const auto basis = local_algebra(cc, points(cc, {"1,1"}), rig_instance("complex"), false);
  for (Index a : basis.span_main) CHECK_FALSE(basis.region.is_outside_identity(a));
  CHECK(basis.span_central.size() == 1);  // the center of indiscrete categories is C·ε

  const auto m = local_algebra(cc, points(cc, {"1,1"}), rig_instance("matrix 2"), true);
  CHECK(m.central_is_unit_multiples);
  CHECK(m.span_main.size() <= basis.span_main.size());
}

TEST_CASE("property: spacelike local algebras commute") {
  Gen gen(43);
  for (const auto& [label, cc] : testsupport::causal_corpus()) {
    CAPTURE(label);
    for (const auto& [a, b] : spacelike_region_pairs(cc, 5, gen.engine()())) {
      for (bool with_inv : {false, true}) {
        if (with_inv && !cc.involution()) continue;
        const auto la = local_algebra(cc, a, rig_instance("complex"), with_inv);
        const auto lb = local_algebra(cc, b, rig_instance("complex"), with_inv);
        CHECK(max_commutator(cc, la, lb, 10, gen.engine()) <= 1e-9);

        const MatrixRig rig(2);
        const auto ma = local_algebra(cc, a, rig_instance("matrix 2"), with_inv);
        const auto mb = local_algebra(cc, b, rig_instance("matrix 2"), with_inv);
        const auto x = sample_local_element(cc, ma, rig, gen.engine());
        const auto y = sample_local_element(cc, mb, rig, gen.engine());
        CHECK(approx_equal(convolve(x, y), convolve(y, x)));
      }
    }
  }
}

TEST_CASE("theorem suite on the demo lattice") {
  const auto rows = theorem_suite(minkowski_lattice(3, 3, LatticeFlavor::Indiscrete), TheoremOptions{});
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CAPTURE(r.name);
    CHECK(r.pass);
    CHECK(r.cases > 0);
  }
}
