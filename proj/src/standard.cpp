#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "catfield/category.hpp"
#include "catfield/error.hpp"

namespace catfield {

namespace {

// Thin category on `objects` with one arrow per related pair.
CategoryPtr thin_category(std::string name, const std::vector<std::string>& objects,
                          const std::function<bool(std::size_t, std::size_t)>& related,
                          const std::function<std::string(std::size_t, std::size_t)>& arrow_name) {
  CategoryDescription d;
  d.name = std::move(name);
  d.objects = objects;
  const std::size_t n = objects.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (related(j, i)) d.arrows.push_back({arrow_name(j, i), objects[j], objects[i]});
    }
  }
  for (std::size_t o = 0; o < n; ++o) d.identities[objects[o]] = arrow_name(o, o);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!related(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (related(b, c)) d.compose.push_back({arrow_name(b, c), arrow_name(a, b), arrow_name(a, c)});
      }
    }
  }
  return FinCategory::validate(d);
}

std::vector<std::string> numbered_objects(std::size_t n) {
  std::vector<std::string> objects;
  for (std::size_t i = 1; i <= n; ++i) objects.push_back(std::to_string(i));
  return objects;
}

void check_table(const std::vector<std::string>& elements,
                 const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t k = elements.size();
  if (k == 0 || table.size() != k) fail("category.NotAssociativeTable", "table must be k x k with k >= 1");
  for (const auto& row : table) {
    if (row.size() != k) fail("category.NotAssociativeTable", "table must be k x k");
    for (std::size_t v : row) {
      if (v >= k) fail("category.NotAssociativeTable", "table entry out of range");
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t c = 0; c < k; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          fail("category.NotAssociativeTable", "(" + elements[a] + elements[b] + ")" + elements[c] +
                                                   " != " + elements[a] + "(" + elements[b] +
                                                   elements[c] + ")");
        }
      }
    }
  }
}

std::size_t find_unit(const std::vector<std::string>& elements,
                      const std::vector<std::vector<std::size_t>>& table) {
  for (std::size_t e = 0; e < elements.size(); ++e) {
    bool unit = true;
    for (std::size_t x = 0; x < elements.size() && unit; ++x) {
      unit = table[e][x] == x && table[x][e] == x;
    }
    if (unit) return e;
  }
  fail("category.NotAssociativeTable", "table has no two-sided unit");
}

CategoryPtr one_object(std::string name, const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& table, std::size_t unit) {
  CategoryDescription d;
  d.name = std::move(name);
  d.objects = {"*"};
  for (const auto& e : elements) d.arrows.push_back({e, "*", "*"});
  d.identities["*"] = elements[unit];
  for (std::size_t g = 0; g < elements.size(); ++g) {
    for (std::size_t h = 0; h < elements.size(); ++h) {
      d.compose.push_back({elements[g], elements[h], elements[table[g][h]]});
    }
  }
  return FinCategory::validate(d);
}

}  // namespace

CategoryPtr make_discrete(std::size_t n) {
  auto objects = numbered_objects(n);
  return thin_category(
      "discrete" + std::to_string(n), objects, [](std::size_t a, std::size_t b) { return a == b; },
      [&](std::size_t a, std::size_t) { return "id_" + objects[a]; });
}

CategoryPtr make_indiscrete(std::size_t n) {
  auto objects = numbered_objects(n);
  return thin_category(
      "indiscrete" + std::to_string(n), objects, [](std::size_t, std::size_t) { return true; },
      [&](std::size_t from, std::size_t to) { return "a" + objects[to] + "_" + objects[from]; });
}

CategoryPtr make_preorder(const std::vector<std::string>& objects,
                          const std::vector<std::pair<std::string, std::string>>& relation,
                          std::string name) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < objects.size(); ++i) pos[objects[i]] = i;
  const std::size_t n = objects.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (const auto& [p, q] : relation) {
    if (!pos.count(p) || !pos.count(q)) {
      fail("category.NotAPreorder", "relation mentions unknown object in (" + p + ", " + q + ")");
    }
    rel[pos[p]][pos[q]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i][i]) fail("category.NotAPreorder", "relation is not reflexive at '" + objects[i] + "'");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (rel[a][b] && rel[b][c] && !rel[a][c]) {
          fail("category.NotAPreorder", "relation is not transitive at (" + objects[a] + ", " +
                                            objects[b] + ", " + objects[c] + ")");
        }
      }
    }
  }
  return thin_category(
      std::move(name), objects, [&](std::size_t a, std::size_t b) { return static_cast<bool>(rel[a][b]); },
      [&](std::size_t a, std::size_t b) { return objects[a] + "->" + objects[b]; });
}

CategoryPtr make_monoid(const std::vector<std::string>& elements,
                        const std::vector<std::vector<std::size_t>>& table, std::string name) {
  check_table(elements, table);
  return one_object(std::move(name), elements, table, find_unit(elements, table));
}

CategoryPtr make_group(const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& table, std::string name) {
  check_table(elements, table);
  const std::size_t e = find_unit(elements, table);
  for (std::size_t g = 0; g < elements.size(); ++g) {
    bool found = false;
    for (std::size_t h = 0; h < elements.size() && !found; ++h) {
      found = table[g][h] == e && table[h][g] == e;
    }
    if (!found) fail("category.NoInverse", "'" + elements[g] + "' has no inverse");
  }
  return one_object(std::move(name), elements, table, e);
}

CategoryPtr make_cyclic_group(std::size_t n) {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    elements.push_back("g" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return make_group(elements, table, "Z/" + std::to_string(n));
}

CategoryPtr make_symmetric_group3() {
  using Perm = std::array<int, 3>;
  std::vector<Perm> perms;
  Perm p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) {
    names.push_back("s" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  }
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t g = 0; g < 6; ++g) {
    for (std::size_t h = 0; h < 6; ++h) {
      Perm gh{};
      for (int x = 0; x < 3; ++x) gh[x] = perms[g][perms[h][x]];
      table[g][h] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), gh) - perms.begin());
    }
  }
  return make_group(names, table, "S3");
}

CategoryPtr make_free_acyclic(const std::vector<std::string>& vertices,
                              const std::vector<GraphEdge>& edges, std::string name) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = i;
  std::vector<std::vector<std::size_t>> out(vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!pos.count(edges[e].src) || !pos.count(edges[e].dst)) {
      fail("category.DanglingEndpoint", "edge '" + edges[e].id + "' has an undeclared endpoint");
    }
    out[pos[edges[e].src]].push_back(e);
  }
  // Kahn's algorithm; leftover vertices lie on a cycle.
  std::vector<std::size_t> indegree(vertices.size(), 0);
  for (const auto& e : edges) ++indegree[pos[e.dst]];
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (indegree[v] == 0) queue.push_back(v);
  }
  std::size_t seen = 0;
  while (seen < queue.size()) {
    const std::size_t v = queue[seen++];
    for (std::size_t e : out[v]) {
      if (--indegree[pos[edges[e].dst]] == 0) queue.push_back(pos[edges[e].dst]);
    }
  }
  if (seen != vertices.size()) fail("category.GraphHasCycle", "graph '" + name + "' has a directed cycle");

  // Every path as an edge sequence in traversal order.
  std::vector<std::vector<std::size_t>> paths;
  std::function<void(std::size_t, std::vector<std::size_t>&)> walk = [&](std::size_t v,
                                                                         std::vector<std::size_t>& path) {
    for (std::size_t e : out[v]) {
      path.push_back(e);
      paths.push_back(path);
      walk(pos[edges[e].dst], path);
      path.pop_back();
    }
  };
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    std::vector<std::size_t> path;
    walk(v, path);
  }
  if (paths.size() + vertices.size() > kMaxArrows) {
    fail("category.TooLarge", "free category has more than " + std::to_string(kMaxArrows) + " arrows");
  }
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  auto path_name = [&](const std::vector<std::size_t>& path) {
    std::string s;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (!s.empty()) s += ".";
      s += edges[*it].id;
    }
    return s;
  };

  CategoryDescription d;
  d.name = std::move(name);
  d.objects = vertices;
  for (const auto& v : vertices) {
    d.arrows.push_back({"id_" + v, v, v});
    d.identities[v] = "id_" + v;
  }
  std::map<std::vector<std::size_t>, std::string> named;
  for (const auto& path : paths) {
    named[path] = path_name(path);
    d.arrows.push_back({named[path], edges[path.front()].src, edges[path.back()].dst});
  }
  for (const auto& v : vertices) d.compose.push_back({"id_" + v, "id_" + v, "id_" + v});
  for (const auto& f : paths) {
    const std::string& fname = named[f];
    const std::string& src = edges[f.front()].src;
    const std::string& dst = edges[f.back()].dst;
    d.compose.push_back({fname, "id_" + src, fname});
    d.compose.push_back({"id_" + dst, fname, fname});
    for (const auto& g : paths) {
      if (edges[g.front()].src != dst) continue;
      std::vector<std::size_t> gf = f;
      gf.insert(gf.end(), g.begin(), g.end());
      d.compose.push_back({named[g], fname, named[gf]});
    }
  }
  return FinCategory::validate(d);
}

CategoryPtr make_opposite(const FinCategory& cat) {
  CategoryDescription src = cat.describe();
  CategoryDescription d;
  d.name = "op(" + cat.name() + ")";
  d.objects = src.objects;
  d.identities = src.identities;
  for (const auto& a : src.arrows) d.arrows.push_back({a.id, a.cod, a.dom});
  for (const auto& c : src.compose) d.compose.push_back({c[1], c[0], c[2]});
  return FinCategory::validate(d);
}

}  // namespace catfield
