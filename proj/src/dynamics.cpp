#include "catfield/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "catfield/causal.hpp"

namespace catfield {

CovariantAction validate_action(const CategoryPtr& cat, const CategoryPtr& group,
                                std::vector<std::vector<Index>> object_action, std::vector<std::vector<Index>> u) {
  const FinCategory& c = *cat;
  const FinCategory& g = *group;
  if (g.object_count() != 1) fail("dynamics.MalformedAction", "group category must have one object");
  for (Index x = 0; x < g.arrow_count(); ++x) {
    if (!inverse_of(g, x)) fail("dynamics.MalformedAction", "'" + g.arrow_id(x) + "' has no inverse in the group");
  }
  const std::size_t ng = g.arrow_count();
  const std::size_t no = c.object_count();
  if (object_action.size() != ng || u.size() != ng) {
    fail("dynamics.MalformedAction", "need one object map and one u-family per group element");
  }
  for (Index x = 0; x < ng; ++x) {
    if (object_action[x].size() != no || u[x].size() != no) {
      fail("dynamics.MalformedAction", "object map of '" + g.arrow_id(x) + "' does not cover every object");
    }
    for (Index o = 0; o < no; ++o) {
      if (object_action[x][o] >= no || u[x][o] >= c.arrow_count()) {
        fail("dynamics.MalformedAction", "index out of range for '" + g.arrow_id(x) + "'");
      }
      if (c.dom(u[x][o]) != o || c.cod(u[x][o]) != object_action[x][o]) {
        fail("dynamics.MalformedAction", "u for '" + g.arrow_id(x) + "' at '" + c.object_id(o) + "' is not an arrow C -> gC");
      }
    }
  }
  const Index e = g.identity(0);
  for (Index o = 0; o < no; ++o) {
    if (u[e][o] != c.identity(o)) {
      fail("dynamics.CocycleViolation", "u for the unit at '" + c.object_id(o) + "' is not the identity");
    }
  }
  for (Index h = 0; h < ng; ++h) {
    for (Index x = 0; x < ng; ++x) {
      const Index hx = g.compose(h, x);
      for (Index o = 0; o < no; ++o) {
        const Index xo = object_action[x][o];
        if (object_action[hx][o] != object_action[h][xo]) {
          fail("dynamics.CocycleViolation", "object map is not a group action at '" + c.object_id(o) + "'");
        }
        if (u[hx][o] != c.compose(u[h][xo], u[x][o])) {
          fail("dynamics.CocycleViolation", "u^(" + g.arrow_id(hx) + "," + c.object_id(o) + ") differs from u^(" +
                                                g.arrow_id(h) + "," + c.object_id(xo) + ") after u^(" + g.arrow_id(x) +
                                                "," + c.object_id(o) + ")");
        }
      }
    }
  }
  std::vector<std::vector<Index>> u_inv(ng, std::vector<Index>(no));
  for (Index x = 0; x < ng; ++x) {
    for (Index o = 0; o < no; ++o) {
      auto inv = inverse_of(c, u[x][o]);
      if (!inv) fail("dynamics.NotInvertibleComponent", "'" + c.arrow_id(u[x][o]) + "' is not invertible");
      u_inv[x][o] = *inv;
    }
  }

  CovariantAction action;
  action.group = group;
  action.category = cat;
  for (Index x = 0; x < ng; ++x) {
    FunctorMap f;
    f.source = cat;
    f.target = cat;
    f.variance = Variance::Covariant;
    f.object_map = object_action[x];
    f.arrow_map.resize(c.arrow_count());
    for (Index a = 0; a < c.arrow_count(); ++a) {
      f.arrow_map[a] = c.compose(u[x][c.cod(a)], c.compose(a, u_inv[x][c.dom(a)]));
    }
    try {
      check_functor(f);
    } catch (const Error& err) {
      fail("dynamics.NotAFunctor", err.what());
    }
    if (!inverse_functor(f)) fail("dynamics.NotAFunctor", "ũ for '" + g.arrow_id(x) + "' is not invertible");
    action.functors.push_back(std::move(f));
  }
  for (Index h = 0; h < ng; ++h) {
    for (Index x = 0; x < ng; ++x) {
      if (!same_functor(action.functors[g.compose(h, x)], compose_functors(action.functors[h], action.functors[x]))) {
        fail("dynamics.NotAFunctor", "ũ is not multiplicative at ('" + g.arrow_id(h) + "', '" + g.arrow_id(x) + "')");
      }
    }
  }
  action.object_action = std::move(object_action);
  action.u = std::move(u);
  return action;
}

CovariantAction rotation_action(const CategoryPtr& indiscrete) {
  require_indiscrete(*indiscrete);
  const std::size_t n = indiscrete->object_count();
  CategoryPtr group = make_cyclic_group(n);
  std::vector<std::vector<Index>> objects(n, std::vector<Index>(n));
  std::vector<std::vector<Index>> u(n, std::vector<Index>(n));
  for (Index k = 0; k < n; ++k) {
    const Index g = group->arrow_index("g" + std::to_string(k));
    for (Index o = 0; o < n; ++o) {
      objects[g][o] = static_cast<Index>((o + k) % n);
      u[g][o] = indiscrete->hom(o, objects[g][o]).front();
    }
  }
  return validate_action(indiscrete, group, std::move(objects), std::move(u));
}

ComplexElement action_element(const CovariantAction& action, Index g) {
  ComplexElement out(action.category, ComplexRig{});
  for (Index a : action.u.at(g)) out.set(a, out.weight(a) + 1.0);
  return out;
}

ComplexElement invert_element(const ComplexElement& u, double tol) {
  const FinCategory& cat = *u.category();
  const auto n = static_cast<Eigen::Index>(cat.arrow_count());
  // Column r of L is u * iota^r.
  Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(n, n);
  for (Index l : u.support()) {
    for (Index r : cat.arrows_into(cat.dom(l))) left(cat.compose(l, r), r) += u.weight(l);
  }
  Eigen::VectorXcd eps = Eigen::VectorXcd::Zero(n);
  for (Index o = 0; o < cat.object_count(); ++o) eps(cat.identity(o)) = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(left);
  const Eigen::VectorXcd x = lu.solve(eps);
  std::vector<Complex> w(x.data(), x.data() + x.size());
  ComplexElement inv = ComplexElement::from_weights(u.category(), ComplexRig{}, std::move(w));
  const ComplexElement one = unit(u.category(), ComplexRig{});
  const double scale = 1.0 + max_abs(u) * max_abs(inv);
  if (max_abs_diff(convolve(u, inv), one) > tol * scale || max_abs_diff(convolve(inv, u), one) > tol * scale) {
    fail("dynamics.NotInvertible", "element has no two-sided inverse");
  }
  return inv;
}

ComplexElement inner_automorphism(const ComplexElement& u, const ComplexElement& a) {
  return inner_automorphism(u, invert_element(u), a);
}

State pullback_state(const State& s, const ComplexElement& u) {
  const ComplexElement u_inv = invert_element(u);
  const FinCategory& cat = *s.category();
  std::vector<Complex> w(cat.arrow_count(), Complex(0.0, 0.0));
  for (Index c : s.involution().carrier_arrows()) {
    w[c] = evaluate(s, inner_automorphism(u, u_inv, indeterminate(s.category(), ComplexRig{}, c)));
  }
  return state_from_weights(s.involution(), w, s.tolerance());
}

Trajectory walk_evolve(const WalkConfig& cfg) {
  if (!cfg.initial) fail("dynamics.StateInvalid", "walk has no initial state");
  const State& phi = *cfg.initial;
  const MatrixRig& rig = cfg.omega.rig();
  if (!same_category(phi.category(), cfg.omega.category()) || phi.dimension() != rig.dim) {
    fail("dynamics.StateInvalid", "initial state does not match the walk's category and rig");
  }
  if (!is_unitary(cfg.omega, cfg.involution)) fail("dynamics.NotUnitary", "omega* omega or omega omega* differs from the unit");

  const CategoryPtr& cat = cfg.omega.category();
  const int d = rig.dim;
  const AlgElement<MatrixRig> omega_star = involute_element(cfg.omega, cfg.involution);
  AlgElement<MatrixRig> w = unit(cat, rig);
  AlgElement<MatrixRig> w_star = w;
  const std::vector<Index> carrier = cfg.involution.carrier_arrows();

  Trajectory traj;
  std::optional<State> current = phi;
  for (std::size_t t = 0; t <= cfg.horizon; ++t) {
    if (t > 0) {
      w = convolve(w, cfg.omega);
      w_star = convolve(omega_star, w_star);
      std::vector<StateWeight> weights(cat->arrow_count(), StateWeight::Zero(d, d));
      for (Index c : carrier) {
        for (int k = 0; k < d; ++k) {
          for (int l = 0; l < d; ++l) {
            AlgElement<MatrixRig> e(cat, rig);
            SmallMatrix m = rig.zero();
            m(k, l) = 1.0;
            e.set(c, m);
            weights[c](l, k) = evaluate(phi, convolve(convolve(w_star, e), w));
          }
        }
      }
      try {
        current = state_from_weights(cfg.involution, phi.rig(), std::move(weights), phi.tolerance());
      } catch (const Error& e) {
        fail("dynamics.EvolvedStateInvalid", "step " + std::to_string(t) + ": " + e.what());
      }
    }
    traj.unit_value.push_back(evaluate(phi, convolve(convolve(w_star, unit(cat, rig)), w)));
    traj.min_eigenvalue.push_back(current->min_block_eigenvalue());
    for (const Observable& obs : cfg.observables) traj.rows.push_back({t, obs.id, evaluate(*current, obs.element)});
  }
  traj.final_state = std::move(current);
  return traj;
}

Eigen::Matrix2cd hadamard_coin() {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

WalkConfig coined_walk(std::size_t n, const Eigen::Matrix2cd& coin) {
  if (n < 2) fail("dynamics.BadSize", "a cycle needs at least 2 sites");
  if ((coin.adjoint() * coin - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kCoinTolerance) {
    fail("dynamics.CoinNotUnitary", "coin is not unitary");
  }
  std::vector<std::string> sites;
  for (std::size_t i = 0; i < n; ++i) sites.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> all;
  for (const auto& p : sites) {
    for (const auto& q : sites) all.emplace_back(p, q);
  }
  const CategoryPtr cat = make_preorder(sites, all, "cycle" + std::to_string(n));
  const MatrixRig rig(2);

  SmallMatrix p = rig.zero(), q = rig.zero();
  p(0, 0) = 1.0;
  q(1, 1) = 1.0;
  const SmallMatrix c = coin;
  AlgElement<MatrixRig> omega(cat, rig);
  for (std::size_t i = 0; i < n; ++i) {
    const Index forward = cat->arrow_index(sites[i] + "->" + sites[(i + 1) % n]);
    const Index backward = cat->arrow_index(sites[i] + "->" + sites[(i + n - 1) % n]);
    omega.set(forward, rig.add(omega.weight(forward), rig.mul(p, c)));
    omega.set(backward, rig.add(omega.weight(backward), rig.mul(q, c)));
  }

  std::vector<Observable> observables;
  AlgElement<MatrixRig> left(cat, rig), right(cat, rig);
  for (std::size_t i = 0; i < n; ++i) {
    const Index id = cat->identity(static_cast<Index>(i));
    AlgElement<MatrixRig> site(cat, rig);
    site.set(id, rig.one());
    observables.push_back({"site:" + sites[i], std::move(site)});
    left.set(id, p);
    right.set(id, q);
  }
  observables.push_back({"chirality:0", std::move(left)});
  observables.push_back({"chirality:1", std::move(right)});

  return WalkConfig{inverse_involution(cat), std::move(omega), std::nullopt, 0, std::move(observables)};
}

State coined_initial_state(const WalkConfig& cfg, std::size_t site, const Eigen::Vector2cd& coin_state) {
  const FinCategory& cat = *cfg.omega.category();
  if (site >= cat.object_count()) fail("dynamics.BadSize", "site " + std::to_string(site) + " is not on the cycle");
  std::vector<Eigen::VectorXcd> v(cat.object_count(), Eigen::VectorXcd::Zero(2));
  v[site] = coin_state.normalized();
  return vector_state(cfg.involution, rig_instance("matrix 2"), v);
}

}  // namespace catfield
