#include "catfield/causal.hpp"

#include <cstdlib>
#include <deque>

namespace catfield {

CausalCategory make_causal(const CategoryPtr& cat, std::span<const Index> causal,
                           std::optional<InvolutionStructure> involution) {
  const FinCategory& c = *cat;
  CausalCategory cc;
  cc.cat_ = cat;
  cc.causal_.assign(c.arrow_count(), false);
  for (Index a : causal) {
    if (a >= c.arrow_count()) fail("causal.UnknownArrow", "causal arrow index out of range");
    cc.causal_[a] = true;
  }
  for (Index o = 0; o < c.object_count(); ++o) {
    if (!cc.causal_[c.identity(o)]) {
      fail("causal.NotWide", "identity of '" + c.object_id(o) + "' is not causal");
    }
  }
  for (Index g = 0; g < c.arrow_count(); ++g) {
    if (!cc.causal_[g]) continue;
    for (Index f : c.arrows_into(c.dom(g))) {
      if (cc.causal_[f] && !cc.causal_[c.compose(g, f)]) {
        fail("causal.NotClosed", "'" + c.arrow_id(g) + "' after '" + c.arrow_id(f) + "' is '" +
                                     c.arrow_id(c.compose(g, f)) + "', which is not causal");
      }
    }
  }
  if (involution && !same_category(involution->category(), cat)) {
    fail("causal.MismatchedCategory", "involution is defined on another category");
  }
  const std::size_t n = c.object_count();
  cc.order_.assign(n * n, false);
  for (Index a = 0; a < c.arrow_count(); ++a) {
    if (cc.causal_[a]) cc.order_[c.dom(a) * n + c.cod(a)] = true;
  }
  cc.involution_ = std::move(involution);
  return cc;
}

CausalCategory make_causal(const CategoryPtr& cat, std::optional<InvolutionStructure> involution) {
  std::vector<Index> all(cat->arrow_count());
  for (Index a = 0; a < all.size(); ++a) all[a] = a;
  return make_causal(cat, all, std::move(involution));
}

std::string lattice_point(std::size_t t, std::size_t x) { return std::to_string(t) + "," + std::to_string(x); }

CausalCategory minkowski_lattice(std::size_t time_extent, std::size_t space_extent, LatticeFlavor flavor) {
  if (time_extent == 0 || space_extent == 0) {
    fail("causal.TooLarge", "lattice extents must be at least 1");
  }
  if (time_extent * space_extent > kMaxLatticePoints) {
    fail("causal.TooLarge", std::to_string(time_extent) + "x" + std::to_string(space_extent) +
                                " lattice exceeds " + std::to_string(kMaxLatticePoints) + " points");
  }
  struct Point {
    long t, x;
  };
  std::vector<Point> points;
  std::vector<std::string> objects;
  for (std::size_t t = 0; t < time_extent; ++t) {
    for (std::size_t x = 0; x < space_extent; ++x) {
      points.push_back({static_cast<long>(t), static_cast<long>(x)});
      objects.push_back(lattice_point(t, x));
    }
  }
  auto lightcone = [&](std::size_t p, std::size_t q) {
    return points[q].t - points[p].t >= std::labs(points[q].x - points[p].x);
  };
  const std::string name = "minkowski" + std::to_string(time_extent) + "x" + std::to_string(space_extent);

  std::vector<std::pair<std::string, std::string>> relation;
  for (std::size_t p = 0; p < objects.size(); ++p) {
    for (std::size_t q = 0; q < objects.size(); ++q) {
      if (flavor == LatticeFlavor::Indiscrete || lightcone(p, q)) relation.emplace_back(objects[p], objects[q]);
    }
  }
  CategoryPtr cat = make_preorder(objects, relation, name + (flavor == LatticeFlavor::Thin ? "-thin" : "-indiscrete"));
  if (flavor == LatticeFlavor::Thin) return make_causal(cat, trivial_involution(cat));

  std::vector<Index> causal;
  for (Index a = 0; a < cat->arrow_count(); ++a) {
    if (lightcone(cat->dom(a), cat->cod(a))) causal.push_back(a);
  }
  return make_causal(cat, causal, inverse_involution(cat));
}

std::vector<bool> object_set(const FinCategory& cat, const std::vector<std::string>& ids) {
  std::vector<bool> mask(cat.object_count(), false);
  for (const auto& id : ids) {
    auto o = cat.find_object(id);
    if (!o) fail("causal.UnknownObject", "no object '" + id + "' in '" + cat.name() + "'");
    mask[*o] = true;
  }
  return mask;
}

std::vector<bool> object_set(const FinCategory& cat, std::span<const Index> objects) {
  std::vector<bool> mask(cat.object_count(), false);
  for (Index o : objects) {
    if (o >= cat.object_count()) fail("causal.UnknownObject", "object index out of range");
    mask[o] = true;
  }
  return mask;
}

std::vector<Index> members(const std::vector<bool>& mask) {
  std::vector<Index> out;
  for (Index i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

const char* form_name(RelevantForm form) {
  switch (form) {
    case RelevantForm::Inner: return "inner";
    case RelevantForm::OutAfterInner: return "out*inner";
    case RelevantForm::InnerAfterIn: return "inner*in";
    case RelevantForm::OutInnerIn: return "out*inner*in";
    case RelevantForm::OutsideIdentity: return "outside-identity";
  }
  return "?";
}

namespace {

void require_objects(const FinCategory& cat, const std::vector<bool>& objects) {
  if (objects.size() != cat.object_count()) {
    fail("causal.UnknownObject", "object set has " + std::to_string(objects.size()) + " entries, '" + cat.name() +
                                     "' has " + std::to_string(cat.object_count()) + " objects");
  }
}

std::vector<bool> closure(const FinCategory& cat, std::vector<bool> mask) {
  std::deque<Index> work;
  for (Index a = 0; a < mask.size(); ++a) {
    if (mask[a]) work.push_back(a);
  }
  auto insert = [&](Index a) {
    if (!mask[a]) {
      mask[a] = true;
      work.push_back(a);
    }
  };
  while (!work.empty()) {
    const Index a = work.front();
    work.pop_front();
    for (Index f : cat.arrows_into(cat.dom(a))) {
      if (mask[f]) insert(cat.compose(a, f));
    }
    for (Index g : cat.arrows_out_of(cat.cod(a))) {
      if (mask[g]) insert(cat.compose(g, a));
    }
  }
  return mask;
}

// Causal arrows from O into `target` (target outside O).
std::vector<Index> out_arrows_to(const CausalCategory& cc, const std::vector<bool>& objects, Index target) {
  std::vector<Index> out;
  for (Index a : cc.cat().arrows_into(target)) {
    if (cc.is_causal(a) && objects[cc.cat().dom(a)]) out.push_back(a);
  }
  return out;
}

// Causal arrows from `source` (outside O) into O.
std::vector<Index> in_arrows_from(const CausalCategory& cc, const std::vector<bool>& objects, Index source) {
  std::vector<Index> out;
  for (Index a : cc.cat().arrows_out_of(source)) {
    if (cc.is_causal(a) && objects[cc.cat().cod(a)]) out.push_back(a);
  }
  return out;
}

std::optional<FormWitness> find_witness(const CausalCategory& cc, const std::vector<bool>& objects, Index a,
                                        RelevantForm form) {
  const FinCategory& cat = cc.cat();
  const Index d = cat.dom(a);
  const Index c = cat.cod(a);
  switch (form) {
    case RelevantForm::Inner:
    case RelevantForm::OutsideIdentity:
      return FormWitness{kNone, a, kNone};
    case RelevantForm::OutAfterInner:
      for (Index out : out_arrows_to(cc, objects, c)) {
        for (Index inner : cat.hom(d, cat.dom(out))) {
          if (cat.compose(out, inner) == a) return FormWitness{out, inner, kNone};
        }
      }
      return std::nullopt;
    case RelevantForm::InnerAfterIn:
      for (Index in : in_arrows_from(cc, objects, d)) {
        for (Index inner : cat.hom(cat.cod(in), c)) {
          if (cat.compose(inner, in) == a) return FormWitness{kNone, inner, in};
        }
      }
      return std::nullopt;
    case RelevantForm::OutInnerIn: {
      const auto outs = out_arrows_to(cc, objects, c);
      for (Index in : in_arrows_from(cc, objects, d)) {
        for (Index out : outs) {
          for (Index inner : cat.hom(cat.cod(in), cat.dom(out))) {
            if (cat.compose(out, cat.compose(inner, in)) == a) return FormWitness{out, inner, in};
          }
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

RelevantForm tag(const FinCategory& cat, const std::vector<bool>& objects, Index a) {
  const bool d = objects[cat.dom(a)];
  const bool c = objects[cat.cod(a)];
  if (d && c) return RelevantForm::Inner;
  if (d) return RelevantForm::OutAfterInner;
  if (c) return RelevantForm::InnerAfterIn;
  return cat.is_identity(a) ? RelevantForm::OutsideIdentity : RelevantForm::OutInnerIn;
}

}  // namespace

RegionSelection relevant_category(const CausalCategory& cc, const std::vector<bool>& objects) {
  const FinCategory& cat = cc.cat();
  require_objects(cat, objects);
  std::vector<bool> gen(cat.arrow_count(), false);
  for (Index a = 0; a < cat.arrow_count(); ++a) {
    const bool d = objects[cat.dom(a)];
    const bool c = objects[cat.cod(a)];
    if (d && c) gen[a] = true;
    else if (d != c && cc.is_causal(a)) gen[a] = true;
    else if (!d && !c && cat.is_identity(a)) gen[a] = true;
  }
  RegionSelection sel;
  sel.objects = objects;
  sel.relevant = closure(cat, std::move(gen));
  sel.form.assign(cat.arrow_count(), std::nullopt);
  sel.witness.assign(cat.arrow_count(), std::nullopt);
  for (Index a = 0; a < cat.arrow_count(); ++a) {
    if (!sel.relevant[a]) continue;
    const RelevantForm f = tag(cat, objects, a);
    sel.form[a] = f;
    sel.witness[a] = find_witness(cc, objects, a, f);
  }
  return sel;
}

StructureReport check_structure(const CausalCategory& cc, const RegionSelection& sel) {
  const FinCategory& cat = cc.cat();
  StructureReport report;
  auto problem = [&](std::size_t& counter, Index a, const std::string& what) {
    if (report.first_problem.empty()) report.first_problem = "'" + cat.arrow_id(a) + "': " + what;
    ++counter;
  };
  auto in_o = [&](Index obj) { return sel.objects[obj]; };
  for (Index a = 0; a < cat.arrow_count(); ++a) {
    if (!sel.relevant[a]) continue;
    ++report.relevant;
    if (!sel.form[a] || !sel.witness[a]) {
      problem(report.unclassified, a, "no decomposition found");
      continue;
    }
    const FormWitness& w = *sel.witness[a];
    const RelevantForm f = *sel.form[a];
    bool ok = w.inner != kNone && sel.relevant[w.inner];
    if (ok && f != RelevantForm::OutsideIdentity) ok = in_o(cat.dom(w.inner)) && in_o(cat.cod(w.inner));
    const bool wants_out = f == RelevantForm::OutAfterInner || f == RelevantForm::OutInnerIn;
    const bool wants_in = f == RelevantForm::InnerAfterIn || f == RelevantForm::OutInnerIn;
    if (ok && wants_out) {
      ok = w.out != kNone && cc.is_causal(w.out) && in_o(cat.dom(w.out)) && !in_o(cat.cod(w.out));
    }
    if (ok && wants_in) {
      ok = w.in != kNone && cc.is_causal(w.in) && !in_o(cat.dom(w.in)) && in_o(cat.cod(w.in));
    }
    if (ok) {
      Index rebuilt = w.inner;
      if (wants_in) rebuilt = cat.compose(rebuilt, w.in);
      if (rebuilt != kNone && wants_out) rebuilt = cat.compose(w.out, rebuilt);
      ok = rebuilt == a;
    }
    if (ok && f == RelevantForm::OutsideIdentity) ok = cat.is_identity(a) && !in_o(cat.dom(a));
    if (!ok) problem(report.inconsistent, a, std::string("witness does not realize form ") + form_name(f));
  }
  return report;
}

bool spacelike_separated(const CausalCategory& cc, const std::vector<bool>& a, const std::vector<bool>& b) {
  const FinCategory& cat = cc.cat();
  require_objects(cat, a);
  require_objects(cat, b);
  for (Index p = 0; p < cat.object_count(); ++p) {
    for (Index q = 0; q < cat.object_count(); ++q) {
      if (((a[p] && b[q]) || (b[p] && a[q])) && cc.precedes(p, q)) return false;
    }
  }
  return true;
}

bool is_region(const CausalCategory& cc, const std::vector<bool>& objects, RegionReading reading) {
  const FinCategory& cat = cc.cat();
  require_objects(cat, objects);
  if (reading == RegionReading::CausalConvexity) {
    for (Index c = 0; c < cat.object_count(); ++c) {
      if (objects[c]) continue;
      bool from_o = false;
      bool into_o = false;
      for (Index a = 0; a < cat.object_count(); ++a) {
        if (!objects[a]) continue;
        from_o = from_o || cc.precedes(a, c);
        into_o = into_o || cc.precedes(c, a);
      }
      if (from_o && into_o) return false;
    }
    return true;
  }
  const RegionSelection sel = relevant_category(cc, objects);
  for (Index c = 0; c < cat.object_count(); ++c) {
    if (objects[c]) continue;
    const Index id = cat.identity(c);
    for (Index y : cat.arrows_out_of(c)) {
      if (!sel.relevant[y] || y == id) continue;
      for (Index x : cat.arrows_into(c)) {
        if (sel.relevant[x] && x != id && cat.compose(x, y) == id) return false;
      }
    }
  }
  return true;
}

std::vector<bool> involutive_relevant(const CausalCategory& cc, const RegionSelection& sel) {
  if (!cc.involution()) fail("causal.NoPartialInvolution", "'" + cc.cat().name() + "' has no partial involution");
  const InvolutionStructure& inv = *cc.involution();
  std::vector<bool> mask(cc.cat().arrow_count(), false);
  for (Index a = 0; a < mask.size(); ++a) {
    mask[a] = sel.relevant[a] && inv.in_carrier(a) && sel.relevant[inv.dagger(a)];
  }
  return mask;
}

std::vector<CrossPair> composable_cross_pairs(const CausalCategory& cc, const RegionSelection& a,
                                              const RegionSelection& b) {
  const FinCategory& cat = cc.cat();
  std::vector<CrossPair> out;
  auto scan = [&](const RegionSelection& first, const RegionSelection& second) {
    for (Index c = 0; c < cat.arrow_count(); ++c) {
      if (!first.relevant[c] || first.is_outside_identity(c)) continue;
      for (Index c2 : cat.arrows_out_of(cat.cod(c))) {
        if (!second.relevant[c2] || second.is_outside_identity(c2)) continue;
        if (cat.is_identity(c) && cat.is_identity(c2)) continue;
        out.push_back({c, c2});
      }
    }
  };
  scan(a, b);
  scan(b, a);
  return out;
}

LocalAlgebraBasis local_algebra(const CausalCategory& cc, const std::vector<bool>& objects, const RigSpec& rig,
                                bool with_involution, RegionReading reading) {
  const FinCategory& cat = cc.cat();
  if (!is_region(cc, objects, reading)) {
    fail("causal.NotARegion", "object set is not a region of '" + cat.name() + "'");
  }
  if (with_involution && !rig.has_involution) {
    fail("causal.UnsupportedRig", "rig '" + rig.name + "' has no involution");
  }
  LocalAlgebraBasis basis;
  basis.region = relevant_category(cc, objects);
  basis.with_involution = with_involution;
  basis.rig = rig;
  const std::vector<bool> allowed = with_involution ? involutive_relevant(cc, basis.region) : basis.region.relevant;
  std::vector<bool> main(cat.arrow_count(), false);
  for (Index a = 0; a < cat.arrow_count(); ++a) {
    if (allowed[a] && !basis.region.is_outside_identity(a)) {
      main[a] = true;
      basis.span_main.push_back(a);
    }
  }

  if (rig.kind == RigKind::Complex) {
    basis.span_central = detail::center_basis_unbounded(cc.category(), &allowed, rig.tolerance);
  } else {
    basis.central_is_unit_multiples = true;
  }

  // Products of indeterminates from the main span may not land on an outside
  // identity; central elements times main indeterminates must avoid them too.
  for (Index g : basis.span_main) {
    for (Index f : cat.arrows_into(cat.dom(g))) {
      if (!main[f]) continue;
      const Index gf = cat.compose(g, f);
      if (!main[gf]) {
        fail("causal.NotClosed", "'" + cat.arrow_id(g) + "' after '" + cat.arrow_id(f) + "' leaves the local span");
      }
    }
  }
  const double tol = std::max(rig.tolerance, kDefaultTolerance);
  for (const auto& d : basis.span_central) {
    for (Index a : basis.span_main) {
      for (Index side = 0; side < 2; ++side) {
        const auto ia = indeterminate(cc.category(), ComplexRig{}, a);
        const auto p = side == 0 ? convolve(d, ia) : convolve(ia, d);
        for (Index k : p.support()) {
          if (!main[k] && std::abs(p.weight(k)) > tol) {
            fail("causal.NotClosed", "central element times '" + cat.arrow_id(a) + "' has weight on '" +
                                         cat.arrow_id(k) + "'");
          }
        }
      }
    }
  }
  return basis;
}

}  // namespace catfield
