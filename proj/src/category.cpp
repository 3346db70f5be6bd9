#include "catfield/category.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "catfield/error.hpp"

namespace catfield {

namespace {

std::string triple_name(const FinCategory& c, Index h, Index g, Index f) {
  std::ostringstream os;
  os << "(" << c.arrow_id(h) << ", " << c.arrow_id(g) << ", " << c.arrow_id(f) << ")";
  return os.str();
}

}  // namespace

CategoryPtr FinCategory::validate(const CategoryDescription& raw) {
  if (raw.arrows.size() > kMaxArrows) {
    fail("category.TooLarge", std::to_string(raw.arrows.size()) + " arrows exceeds limit " +
                                  std::to_string(kMaxArrows));
  }
  auto cat = std::shared_ptr<FinCategory>(new FinCategory());
  cat->name_ = raw.name;
  cat->objects_ = raw.objects;
  for (Index i = 0; i < raw.objects.size(); ++i) {
    if (!cat->object_lookup_.emplace(raw.objects[i], i).second) {
      fail("category.MalformedDescription", "duplicate object '" + raw.objects[i] + "'");
    }
  }

  const std::size_t n = raw.arrows.size();
  cat->arrow_ids_.reserve(n);
  cat->dom_.reserve(n);
  cat->cod_.reserve(n);
  for (Index a = 0; a < n; ++a) {
    const ArrowSpec& spec = raw.arrows[a];
    if (!cat->arrow_lookup_.emplace(spec.id, a).second) {
      fail("category.MalformedDescription", "duplicate arrow '" + spec.id + "'");
    }
    auto d = cat->find_object(spec.dom);
    auto c = cat->find_object(spec.cod);
    if (!d || !c) {
      fail("category.DanglingEndpoint", "arrow '" + spec.id + "' has undeclared endpoint '" +
                                            (d ? spec.cod : spec.dom) + "'");
    }
    cat->arrow_ids_.push_back(spec.id);
    cat->dom_.push_back(*d);
    cat->cod_.push_back(*c);
  }

  cat->identity_.assign(cat->objects_.size(), kNone);
  std::vector<bool> is_id(n, false);
  for (const auto& [obj, arrow] : raw.identities) {
    auto o = cat->find_object(obj);
    auto a = cat->find_arrow(arrow);
    if (!o) fail("category.MalformedDescription", "identity declared for unknown object '" + obj + "'");
    if (!a) fail("category.MalformedDescription", "identity arrow '" + arrow + "' is not declared");
    if (cat->dom_[*a] != *o || cat->cod_[*a] != *o) {
      fail("category.IdentityViolation", "identity '" + arrow + "' is not an endomorphism of '" + obj + "'");
    }
    if (is_id[*a]) {
      fail("category.IdentityViolation", "arrow '" + arrow + "' is the identity of two objects");
    }
    is_id[*a] = true;
    cat->identity_[*o] = *a;
  }
  for (Index o = 0; o < cat->objects_.size(); ++o) {
    if (cat->identity_[o] == kNone) {
      fail("category.MalformedDescription", "object '" + cat->objects_[o] + "' has no identity");
    }
  }

  cat->compose_.assign(n * n, kNone);
  for (const auto& entry : raw.compose) {
    auto g = cat->find_arrow(entry[0]);
    auto f = cat->find_arrow(entry[1]);
    auto gf = cat->find_arrow(entry[2]);
    if (!g || !f || !gf) {
      fail("category.MalformedDescription", "composition entry [" + entry[0] + ", " + entry[1] +
                                                ", " + entry[2] + "] names an undeclared arrow");
    }
    if (cat->dom_[*g] != cat->cod_[*f]) {
      fail("category.MalformedDescription",
           "composite declared for non-composable pair (" + entry[0] + ", " + entry[1] + ")");
    }
    if (cat->dom_[*gf] != cat->dom_[*f] || cat->cod_[*gf] != cat->cod_[*g]) {
      fail("category.MalformedDescription", "composite '" + entry[2] + "' of (" + entry[0] + ", " +
                                                entry[1] + ") has the wrong endpoints");
    }
    Index& slot = cat->compose_[static_cast<std::size_t>(*g) * n + *f];
    if (slot != kNone && slot != *gf) {
      fail("category.MalformedDescription",
           "pair (" + entry[0] + ", " + entry[1] + ") has two different composites");
    }
    slot = *gf;
  }

  cat->build_indexes();
  const FinCategory& c = *cat;

  for (Index f = 0; f < n; ++f) {
    for (Index g : c.arrows_out_of(c.cod(f))) {
      if (c.compose(g, f) == kNone) {
        fail("category.MissingComposite",
             "no composite declared for (" + c.arrow_id(g) + ", " + c.arrow_id(f) + ")");
      }
    }
  }
  for (Index f = 0; f < n; ++f) {
    if (c.compose(f, c.identity(c.dom(f))) != f || c.compose(c.identity(c.cod(f)), f) != f) {
      fail("category.IdentityViolation", "identity law fails for '" + c.arrow_id(f) + "'");
    }
  }
  for (Index f = 0; f < n; ++f) {
    for (Index g : c.arrows_out_of(c.cod(f))) {
      const Index gf = c.compose(g, f);
      for (Index h : c.arrows_out_of(c.cod(g))) {
        if (c.compose(c.compose(h, g), f) != c.compose(h, gf)) {
          fail("category.AssociativityViolation",
               "(h∘g)∘f != h∘(g∘f) for (h, g, f) = " + triple_name(c, h, g, f));
        }
      }
    }
  }
  return cat;
}

void FinCategory::build_indexes() {
  const std::size_t n = arrow_count();
  into_.assign(object_count(), {});
  out_of_.assign(object_count(), {});
  for (Index a = 0; a < n; ++a) {
    into_[cod_[a]].push_back(a);
    out_of_[dom_[a]].push_back(a);
  }
  std::vector<std::vector<std::pair<Index, Index>>> by_composite(n);
  for (Index f = 0; f < n; ++f) {
    for (Index g : out_of_[cod_[f]]) {
      const Index gf = compose_[static_cast<std::size_t>(g) * n + f];
      if (gf != kNone) by_composite[gf].emplace_back(g, f);
    }
  }
  conv_.offsets.assign(n + 1, 0);
  conv_.left.clear();
  conv_.right.clear();
  for (Index k = 0; k < n; ++k) {
    conv_.offsets[k] = static_cast<Index>(conv_.left.size());
    for (auto [g, f] : by_composite[k]) {
      conv_.left.push_back(g);
      conv_.right.push_back(f);
    }
  }
  conv_.offsets[n] = static_cast<Index>(conv_.left.size());
}

std::optional<Index> FinCategory::find_object(std::string_view id) const {
  auto it = object_lookup_.find(std::string(id));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FinCategory::find_arrow(std::string_view id) const {
  auto it = arrow_lookup_.find(std::string(id));
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

Index FinCategory::object_index(std::string_view id) const {
  auto o = find_object(id);
  if (!o) fail("category.UnknownObject", "no object '" + std::string(id) + "' in '" + name_ + "'");
  return *o;
}

Index FinCategory::arrow_index(std::string_view id) const {
  auto a = find_arrow(id);
  if (!a) fail("category.UnknownArrow", "no arrow '" + std::string(id) + "' in '" + name_ + "'");
  return *a;
}

std::vector<Index> FinCategory::hom(Index from, Index to) const {
  std::vector<Index> out;
  for (Index a : out_of_[from]) {
    if (cod_[a] == to) out.push_back(a);
  }
  return out;
}

CategoryDescription FinCategory::describe() const {
  CategoryDescription d;
  d.name = name_;
  d.objects = objects_;
  for (Index a = 0; a < arrow_count(); ++a) {
    d.arrows.push_back({arrow_ids_[a], objects_[dom_[a]], objects_[cod_[a]]});
  }
  for (Index o = 0; o < object_count(); ++o) d.identities[objects_[o]] = arrow_ids_[identity_[o]];
  for (Index f = 0; f < arrow_count(); ++f) {
    for (Index g : out_of_[cod_[f]]) {
      d.compose.push_back({arrow_ids_[g], arrow_ids_[f], arrow_ids_[compose(g, f)]});
    }
  }
  return d;
}

CategoryPtr FinCategory::wide_subcategory(const std::vector<bool>& mask, std::string name) const {
  if (mask.size() != arrow_count()) {
    fail("category.NotASubcategory", "arrow mask has the wrong length");
  }
  for (Index o = 0; o < object_count(); ++o) {
    if (!mask[identity_[o]]) {
      fail("category.NotASubcategory", "identity of '" + objects_[o] + "' is missing");
    }
  }
  CategoryDescription d;
  d.name = name.empty() ? name_ + "/sub" : std::move(name);
  d.objects = objects_;
  for (Index o = 0; o < object_count(); ++o) d.identities[objects_[o]] = arrow_ids_[identity_[o]];
  for (Index a = 0; a < arrow_count(); ++a) {
    if (mask[a]) d.arrows.push_back({arrow_ids_[a], objects_[dom_[a]], objects_[cod_[a]]});
  }
  for (Index f = 0; f < arrow_count(); ++f) {
    if (!mask[f]) continue;
    for (Index g : out_of_[cod_[f]]) {
      if (!mask[g]) continue;
      const Index gf = compose(g, f);
      if (!mask[gf]) {
        fail("category.NotASubcategory", "composite of (" + arrow_ids_[g] + ", " + arrow_ids_[f] +
                                             ") leaves the arrow set");
      }
      d.compose.push_back({arrow_ids_[g], arrow_ids_[f], arrow_ids_[gf]});
    }
  }
  return validate(d);
}

CategoryPtr FinCategory::generated_subcategory(std::span<const Index> arrows, std::string name) const {
  std::vector<bool> in(arrow_count(), false);
  std::vector<Index> members;
  auto add = [&](Index a) {
    if (!in[a]) {
      in[a] = true;
      members.push_back(a);
    }
  };
  for (Index a : arrows) {
    add(a);
    add(identity_[dom_[a]]);
    add(identity_[cod_[a]]);
  }
  // Closure to fixpoint; each pass only needs pairs involving new arrows, but
  // sizes here are small enough for the plain double loop.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        const Index gf = compose(members[i], members[j]);
        if (gf != kNone && !in[gf]) {
          add(gf);
          grew = true;
        }
      }
    }
  }
  std::vector<bool> obj_in(object_count(), false);
  for (Index a : members) obj_in[dom_[a]] = obj_in[cod_[a]] = true;

  CategoryDescription d;
  d.name = name.empty() ? name_ + "/generated" : std::move(name);
  for (Index o = 0; o < object_count(); ++o) {
    if (!obj_in[o]) continue;
    d.objects.push_back(objects_[o]);
    d.identities[objects_[o]] = arrow_ids_[identity_[o]];
  }
  for (Index a = 0; a < arrow_count(); ++a) {
    if (in[a]) d.arrows.push_back({arrow_ids_[a], objects_[dom_[a]], objects_[cod_[a]]});
  }
  for (Index f = 0; f < arrow_count(); ++f) {
    if (!in[f]) continue;
    for (Index g : out_of_[cod_[f]]) {
      if (in[g]) d.compose.push_back({arrow_ids_[g], arrow_ids_[f], arrow_ids_[compose(g, f)]});
    }
  }
  return validate(d);
}

bool FinCategory::same_structure(const FinCategory& other) const {
  return objects_ == other.objects_ && arrow_ids_ == other.arrow_ids_ && dom_ == other.dom_ &&
         cod_ == other.cod_ && identity_ == other.identity_ && compose_ == other.compose_;
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

std::optional<Index> inverse_of(const FinCategory& cat, Index arrow) {
  const Index x = cat.dom(arrow);
  const Index y = cat.cod(arrow);
  for (Index g : cat.hom(y, x)) {
    if (cat.compose(g, arrow) == cat.identity(x) && cat.compose(arrow, g) == cat.identity(y)) {
      return g;
    }
  }
  return std::nullopt;
}

CategoryPtr core_groupoid(const CategoryPtr& cat) {
  std::vector<bool> mask(cat->arrow_count(), false);
  for (Index a = 0; a < cat->arrow_count(); ++a) mask[a] = inverse_of(*cat, a).has_value();
  return cat->wide_subcategory(mask, cat->name() + "/core");
}

// --- functors -----------------------------------------------------------------

void check_functor(const FunctorMap& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  if (f.object_map.size() != s.object_count() || f.arrow_map.size() != s.arrow_count()) {
    fail("category.NotAFunctor", "object/arrow map sizes do not match the source category");
  }
  for (Index o = 0; o < s.object_count(); ++o) {
    if (f.object_map[o] >= t.object_count()) fail("category.NotAFunctor", "object map out of range");
    if (f.arrow_map[s.identity(o)] != t.identity(f.object_map[o])) {
      fail("category.NotAFunctor", "identity of '" + s.object_id(o) + "' is not sent to an identity");
    }
  }
  const bool contra = f.variance == Variance::Contravariant;
  for (Index a = 0; a < s.arrow_count(); ++a) {
    const Index fa = f.arrow_map[a];
    if (fa >= t.arrow_count()) fail("category.NotAFunctor", "arrow map out of range");
    const Index want_dom = f.object_map[contra ? s.cod(a) : s.dom(a)];
    const Index want_cod = f.object_map[contra ? s.dom(a) : s.cod(a)];
    if (t.dom(fa) != want_dom || t.cod(fa) != want_cod) {
      fail("category.NotAFunctor", "image of '" + s.arrow_id(a) + "' has the wrong endpoints");
    }
  }
  for (Index a = 0; a < s.arrow_count(); ++a) {
    for (Index b : s.arrows_out_of(s.cod(a))) {
      const Index image = f.arrow_map[s.compose(b, a)];
      const Index expected = contra ? t.compose(f.arrow_map[a], f.arrow_map[b])
                                    : t.compose(f.arrow_map[b], f.arrow_map[a]);
      if (image != expected) {
        fail("category.NotAFunctor", "composition of (" + s.arrow_id(b) + ", " + s.arrow_id(a) +
                                         ") is not preserved");
      }
    }
  }
}

FunctorMap identity_functor(const CategoryPtr& cat) {
  FunctorMap f{cat, cat, {}, {}, Variance::Covariant};
  for (Index o = 0; o < cat->object_count(); ++o) f.object_map.push_back(o);
  for (Index a = 0; a < cat->arrow_count(); ++a) f.arrow_map.push_back(a);
  return f;
}

FunctorMap compose_functors(const FunctorMap& outer, const FunctorMap& inner) {
  if (!same_category(inner.target, outer.source)) {
    fail("category.NotAFunctor", "functors are not composable");
  }
  FunctorMap f{inner.source, outer.target, {}, {}, Variance::Covariant};
  f.variance = outer.variance == inner.variance ? Variance::Covariant : Variance::Contravariant;
  for (Index o : inner.object_map) f.object_map.push_back(outer.object_map[o]);
  for (Index a : inner.arrow_map) f.arrow_map.push_back(outer.arrow_map[a]);
  return f;
}

std::optional<FunctorMap> inverse_functor(const FunctorMap& f) {
  const FinCategory& t = *f.target;
  FunctorMap inv{f.target, f.source, std::vector<Index>(t.object_count(), kNone),
                 std::vector<Index>(t.arrow_count(), kNone), f.variance};
  if (f.object_map.size() != t.object_count() || f.arrow_map.size() != t.arrow_count()) {
    return std::nullopt;
  }
  for (Index o = 0; o < f.object_map.size(); ++o) {
    if (inv.object_map[f.object_map[o]] != kNone) return std::nullopt;
    inv.object_map[f.object_map[o]] = o;
  }
  for (Index a = 0; a < f.arrow_map.size(); ++a) {
    if (inv.arrow_map[f.arrow_map[a]] != kNone) return std::nullopt;
    inv.arrow_map[f.arrow_map[a]] = a;
  }
  return inv;
}

bool same_functor(const FunctorMap& a, const FunctorMap& b) {
  return same_category(a.source, b.source) && same_category(a.target, b.target) &&
         a.variance == b.variance && a.object_map == b.object_map && a.arrow_map == b.arrow_map;
}

// --- involutions ----------------------------------------------------------------

std::vector<Index> InvolutionStructure::carrier_arrows() const {
  std::vector<Index> out;
  for (Index a = 0; a < carrier_.size(); ++a) {
    if (carrier_[a]) out.push_back(a);
  }
  return out;
}

bool InvolutionStructure::carrier_is_whole() const {
  return std::all_of(carrier_.begin(), carrier_.end(), [](bool b) { return b; });
}

InvolutionStructure InvolutionStructure::restricted(const std::vector<bool>& mask) const {
  std::vector<Index> arrows;
  for (Index a = 0; a < mask.size(); ++a) {
    if (mask[a]) {
      if (!carrier_[a]) {
        fail("category.NotClosedUnderComposition",
             "restriction includes '" + cat_->arrow_id(a) + "' outside the carrier");
      }
      arrows.push_back(a);
    }
  }
  return validate_involution(cat_, arrows, dagger_, variance_);
}

InvolutionStructure validate_involution(const CategoryPtr& cat, std::span<const Index> carrier,
                                        const std::vector<Index>& dagger, Variance variance) {
  const FinCategory& c = *cat;
  InvolutionStructure inv;
  inv.cat_ = cat;
  inv.variance_ = variance;
  inv.carrier_.assign(c.arrow_count(), false);
  inv.dagger_.assign(c.arrow_count(), kNone);
  if (dagger.size() != c.arrow_count()) {
    fail("category.NotInvolutive", "dagger map has the wrong length");
  }
  for (Index a : carrier) {
    if (a >= c.arrow_count()) fail("category.UnknownArrow", "carrier arrow index out of range");
    inv.carrier_[a] = true;
  }
  for (Index o = 0; o < c.object_count(); ++o) {
    if (!inv.carrier_[c.identity(o)]) {
      fail("category.ObjectsNotCovered", "carrier lacks the identity of '" + c.object_id(o) + "'");
    }
  }
  for (Index f = 0; f < c.arrow_count(); ++f) {
    if (!inv.carrier_[f]) continue;
    for (Index g : c.arrows_out_of(c.cod(f))) {
      if (inv.carrier_[g] && !inv.carrier_[c.compose(g, f)]) {
        fail("category.NotClosedUnderComposition",
             "carrier composite of (" + c.arrow_id(g) + ", " + c.arrow_id(f) + ") is missing");
      }
    }
  }
  for (Index a = 0; a < c.arrow_count(); ++a) {
    if (!inv.carrier_[a]) continue;
    const Index d = dagger[a];
    if (d >= c.arrow_count() || !inv.carrier_[d]) {
      fail("category.NotInvolutive", "dagger of '" + c.arrow_id(a) + "' leaves the carrier");
    }
    inv.dagger_[a] = d;
  }
  for (Index a = 0; a < c.arrow_count(); ++a) {
    if (inv.carrier_[a] && inv.dagger_[inv.dagger_[a]] != a) {
      fail("category.NotInvolutive", "dagger applied twice moves '" + c.arrow_id(a) + "'");
    }
  }

  std::vector<Index> object_map(c.object_count());
  for (Index o = 0; o < c.object_count(); ++o) {
    const Index d = inv.dagger_[c.identity(o)];
    if (!c.is_identity(d)) {
      fail("category.VarianceViolation",
           "dagger sends the identity of '" + c.object_id(o) + "' to a non-identity");
    }
    object_map[o] = c.dom(d);
  }
  const bool contra = variance == Variance::Contravariant;
  for (Index a = 0; a < c.arrow_count(); ++a) {
    if (!inv.carrier_[a]) continue;
    const Index d = inv.dagger_[a];
    const Index want_dom = object_map[contra ? c.cod(a) : c.dom(a)];
    const Index want_cod = object_map[contra ? c.dom(a) : c.cod(a)];
    if (c.dom(d) != want_dom || c.cod(d) != want_cod) {
      fail("category.VarianceViolation", "dagger of '" + c.arrow_id(a) + "' has endpoints " +
                                             c.object_id(c.dom(d)) + " -> " + c.object_id(c.cod(d)) +
                                             ", not those of a " +
                                             (contra ? "contravariant" : "covariant") + " involution");
    }
  }
  for (Index f = 0; f < c.arrow_count(); ++f) {
    if (!inv.carrier_[f]) continue;
    for (Index g : c.arrows_out_of(c.cod(f))) {
      if (!inv.carrier_[g]) continue;
      const Index image = inv.dagger_[c.compose(g, f)];
      const Index expected = contra ? c.compose(inv.dagger_[f], inv.dagger_[g])
                                    : c.compose(inv.dagger_[g], inv.dagger_[f]);
      if (image != expected) {
        fail("category.VarianceViolation", "dagger does not respect the composite of (" +
                                               c.arrow_id(g) + ", " + c.arrow_id(f) + ")");
      }
    }
  }
  bool fixes_objects = true;
  for (Index o = 0; o < c.object_count(); ++o) fixes_objects = fixes_objects && object_map[o] == o;
  inv.dagger_structure_ = contra && fixes_objects;
  return inv;
}

InvolutionStructure trivial_involution(const CategoryPtr& cat) {
  std::vector<Index> ids;
  std::vector<Index> dagger(cat->arrow_count(), kNone);
  for (Index o = 0; o < cat->object_count(); ++o) {
    ids.push_back(cat->identity(o));
    dagger[cat->identity(o)] = cat->identity(o);
  }
  return validate_involution(cat, ids, dagger, Variance::Contravariant);
}

InvolutionStructure inverse_involution(const CategoryPtr& cat) {
  std::vector<Index> all;
  std::vector<Index> dagger(cat->arrow_count(), kNone);
  for (Index a = 0; a < cat->arrow_count(); ++a) {
    auto inv = inverse_of(*cat, a);
    if (!inv) fail("category.NotAGroupoid", "'" + cat->arrow_id(a) + "' has no inverse");
    all.push_back(a);
    dagger[a] = *inv;
  }
  return validate_involution(cat, all, dagger, Variance::Contravariant);
}

}  // namespace catfield
