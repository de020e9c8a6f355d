#include "fgt/sigma_model.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <utility>

#include "fgt/errors.hpp"

namespace fgt {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// Boundary coefficients of the face slots (f012, f013, f023, f123).
constexpr int kSlotCoeff[4] = {-1, +1, -1, +1};

}  // namespace

void Triangulation3::audit() const {
  auto fail = [this](const std::string& what) {
    throw ValidationError("complex '" + name + "': " + what);
  };
  if (num_vertices == 0) fail("no vertices");
  if (tets.empty()) fail("no tetrahedra");
  if (signs.size() != tets.size()) fail("need one orientation sign per tetrahedron");
  for (int s : signs)
    if (s != 1 && s != -1) fail("orientation signs must be +1 or -1");
  std::vector<char> vertex_used(num_vertices, 0), edge_used(edges.size(), 0);
  for (const auto& e : edges) {
    if (e[0] >= num_vertices || e[1] >= num_vertices) fail("edge endpoint out of range");
    vertex_used[e[0]] = vertex_used[e[1]] = 1;
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (faces[i][k] >= edges.size()) fail("face " + std::to_string(i) + " edge out of range");
      edge_used[faces[i][k]] = 1;
    }
    const auto& e01 = edges[faces[i][0]];
    const auto& e12 = edges[faces[i][1]];
    const auto& e02 = edges[faces[i][2]];
    if (e12[0] != e01[1] || e02[0] != e01[0] || e02[1] != e12[1])
      fail("face " + std::to_string(i) + " edges do not chain");
  }
  for (std::size_t v = 0; v < num_vertices; ++v)
    if (!vertex_used[v]) fail("vertex " + std::to_string(v) + " lies on no edge");
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!edge_used[e]) fail("edge " + std::to_string(e) + " lies on no face");
  for (std::size_t t = 0; t < tets.size(); ++t) {
    for (std::size_t k = 0; k < 4; ++k)
      if (tets[t][k] >= faces.size()) fail("tetrahedron " + std::to_string(t) + " face out of range");
    const auto& f012 = faces[tets[t][0]];
    const auto& f013 = faces[tets[t][1]];
    const auto& f023 = faces[tets[t][2]];
    const auto& f123 = faces[tets[t][3]];
    bool glued = f012[0] == f013[0] &&  // edge 01
                 f012[2] == f023[0] &&  // edge 02
                 f013[2] == f023[2] &&  // edge 03
                 f012[1] == f123[0] &&  // edge 12
                 f013[1] == f123[2] &&  // edge 13
                 f023[1] == f123[1];    // edge 23
    if (!glued) fail("tetrahedron " + std::to_string(t) + " faces do not share edges correctly");
  }
  std::vector<int> occur(faces.size(), 0), coeff(faces.size(), 0);
  for (std::size_t t = 0; t < tets.size(); ++t)
    for (std::size_t k = 0; k < 4; ++k) {
      occur[tets[t][k]] += 1;
      coeff[tets[t][k]] += signs[t] * kSlotCoeff[k];
    }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (occur[f] != 2)
      fail("face " + std::to_string(f) + " lies in " + std::to_string(occur[f]) +
           " tetrahedron slots instead of 2");
    if (coeff[f] != 0)
      fail("face " + std::to_string(f) + " has non-cancelling induced orientations");
  }
}

bool Triangulation3::connected() const {
  if (num_vertices == 0) return false;
  std::vector<char> seen(num_vertices, 0);
  seen[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges) {
      if (seen[e[0]] != seen[e[1]]) {
        seen[e[0]] = seen[e[1]] = 1;
        grew = true;
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::array<std::size_t, 6> Triangulation3::tet_edges(std::size_t t) const {
  const auto& f012 = faces[tets[t][0]];
  const auto& f013 = faces[tets[t][1]];
  const auto& f023 = faces[tets[t][2]];
  return {f012[0], f012[2], f013[2], f012[1], f013[1], f023[1]};
}

Triangulation3 lower(const VertexTriangulation& vt, std::string name) {
  if (vt.signs.size() != vt.tets.size())
    throw ValidationError("need one orientation sign per tetrahedron");
  for (const auto& t : vt.tets) {
    if (!(t[0] < t[1] && t[1] < t[2] && t[2] < t[3]))
      throw ValidationError("tetrahedron vertices must be strictly increasing");
    if (t[3] >= vt.num_vertices) throw ValidationError("tetrahedron vertex out of range");
  }
  std::map<std::array<std::size_t, 2>, std::size_t> emap;
  std::map<std::array<std::size_t, 3>, std::size_t> fmap;
  for (const auto& t : vt.tets) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) emap.emplace(std::array<std::size_t, 2>{t[i], t[j]}, 0);
    for (std::size_t i = 0; i < 4; ++i) {
      std::array<std::size_t, 3> f;
      std::size_t pos = 0;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) f[pos++] = t[j];
      fmap.emplace(f, 0);
    }
  }
  std::size_t idx = 0;
  for (auto& entry : emap) entry.second = idx++;
  idx = 0;
  for (auto& entry : fmap) entry.second = idx++;

  Triangulation3 out;
  out.num_vertices = vt.num_vertices;
  out.name = std::move(name);
  out.edges.resize(emap.size());
  for (const auto& [k, v] : emap) out.edges[v] = k;
  out.faces.resize(fmap.size());
  for (const auto& [k, v] : fmap)
    out.faces[v] = {emap.at({k[0], k[1]}), emap.at({k[1], k[2]}), emap.at({k[0], k[2]})};
  out.tets.reserve(vt.tets.size());
  for (const auto& t : vt.tets)
    out.tets.push_back({fmap.at({t[0], t[1], t[2]}), fmap.at({t[0], t[1], t[3]}),
                        fmap.at({t[0], t[2], t[3]}), fmap.at({t[1], t[2], t[3]})});
  out.signs = vt.signs;
  out.audit();
  return out;
}

VertexTriangulation boundary_4_simplex() {
  VertexTriangulation vt;
  vt.num_vertices = 5;
  vt.tets = {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}};
  vt.signs = {+1, -1, +1, -1, +1};
  return vt;
}

VertexTriangulation pachner_one_four(const VertexTriangulation& vt, std::size_t t) {
  if (t >= vt.tets.size()) throw PreconditionError("tetrahedron index out of range");
  VertexTriangulation out;
  out.num_vertices = vt.num_vertices + 1;
  const std::size_t w = vt.num_vertices;
  for (std::size_t i = 0; i < vt.tets.size(); ++i) {
    if (i == t) continue;
    out.tets.push_back(vt.tets[i]);
    out.signs.push_back(vt.signs[i]);
  }
  const auto& old = vt.tets[t];
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<std::size_t, 4> nt;
    std::size_t pos = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) nt[pos++] = old[j];
    nt[3] = w;
    out.tets.push_back(nt);
    out.signs.push_back((i % 2 == 0 ? -1 : +1) * vt.signs[t]);
  }
  return out;
}

Triangulation3 kuhn_torus() {
  Triangulation3 out;
  out.name = "kuhn-torus";
  out.num_vertices = 1;
  // Edge classes are the nonempty direction subsets of {1,2,3} as bitmasks;
  // edge index = mask - 1.
  out.edges.assign(7, {0, 0});
  std::map<std::pair<unsigned, unsigned>, std::size_t> face_of;
  for (unsigned d2 = 1; d2 < 8; ++d2)
    for (unsigned d1 = 1; d1 < d2; ++d1) {
      if ((d1 & d2) != d1) continue;
      face_of.emplace(std::make_pair(d1, d2), out.faces.size());
      out.faces.push_back({d1 - 1, (d2 & ~d1) - 1, d2 - 1});
    }
  const std::array<std::array<unsigned, 3>, 6> perms = {
      {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
  const std::array<int, 6> sgn = {+1, -1, -1, +1, +1, -1};
  for (std::size_t p = 0; p < 6; ++p) {
    const unsigned b1 = 1u << (perms[p][0] - 1);
    const unsigned b2 = 1u << (perms[p][1] - 1);
    const unsigned b3 = 1u << (perms[p][2] - 1);
    out.tets.push_back({face_of.at({b1, b1 | b2}), face_of.at({b1, 7u}),
                        face_of.at({b1 | b2, 7u}), face_of.at({b2, b2 | b3})});
    out.signs.push_back(sgn[p]);
  }
  out.audit();
  return out;
}

namespace {

struct Forest {
  std::vector<char> in_tree;  // per edge
  std::size_t components = 0;
  std::size_t tree_edges = 0;
};

Forest spanning_forest(const Triangulation3& m) {
  Forest f;
  f.in_tree.assign(m.edges.size(), 0);
  std::vector<char> seen(m.num_vertices, 0);
  for (std::size_t root = 0; root < m.num_vertices; ++root) {
    if (seen[root]) continue;
    ++f.components;
    seen[root] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t e = 0; e < m.edges.size(); ++e) {
        char a = seen[m.edges[e][0]], b = seen[m.edges[e][1]];
        if (a == b) continue;
        seen[m.edges[e][0]] = seen[m.edges[e][1]] = 1;
        f.in_tree[e] = 1;
        ++f.tree_edges;
        grew = true;
      }
    }
  }
  return f;
}

// Depth-first flat-coloring search with per-face constraint propagation.
struct FlatSearch {
  const Triangulation3& m;
  const FiniteGroup& g;
  long long budget = 10000000;

  // Propagates determined edges in place; false on a violated face.
  bool consistent(std::vector<std::size_t>& a) const {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& f : m.faces) {
        const std::size_t va = a[f[0]], vb = a[f[1]], vc = a[f[2]];
        const int unknown = (va == kUnset) + (vb == kUnset) + (vc == kUnset);
        if (unknown == 0) {
          if (g.mul(vb, va) != vc) return false;
          continue;
        }
        // A face whose unknown edge fills two slots is not determined.
        if (unknown != 1) continue;
        if (va == kUnset)
          a[f[0]] = g.mul(g.inv(vb), vc);
        else if (vb == kUnset)
          a[f[1]] = g.mul(vc, g.inv(va));
        else
          a[f[2]] = g.mul(vb, va);
        progress = true;
      }
    }
    return true;
  }

  template <typename Fn>
  void enumerate(std::vector<std::size_t> a, const Fn& emit) {
    if (--budget < 0) throw SizeGuardError("flat coloring search exceeded its step budget");
    if (!consistent(a)) return;
    std::size_t e = 0;
    while (e < a.size() && a[e] != kUnset) ++e;
    if (e == a.size()) {
      emit(a);
      return;
    }
    for (std::size_t v = 0; v < g.order(); ++v) {
      auto next = a;
      next[e] = v;
      enumerate(std::move(next), emit);
    }
  }
};

std::vector<std::size_t> tree_base(const Triangulation3& m, const Forest& forest,
                                   std::size_t identity) {
  std::vector<std::size_t> a(m.edges.size(), kUnset);
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    if (forest.in_tree[e]) a[e] = identity;
  return a;
}

Phase coloring_phase(const Triangulation3& m, const GroupCochain& alpha,
                     const std::vector<std::size_t>& a) {
  Phase total;
  for (std::size_t t = 0; t < m.tets.size(); ++t) {
    auto e = m.tet_edges(t);
    Phase w = alpha.at({a[e[0]], a[e[3]], a[e[5]]});  // edges 01, 12, 23
    total = m.signs[t] > 0 ? total + w : total - w;
  }
  return total;
}

void check_cochain_shape(const GroupPtr& g, const GroupCochain& alpha) {
  if (!(*alpha.group() == *g)) throw PreconditionError("cochain lives on a different group");
  if (alpha.degree() != 3) throw PreconditionError("state sum needs a degree-3 cochain");
}

}  // namespace

std::vector<std::vector<std::size_t>> flat_colorings(const Triangulation3& m, const GroupPtr& g) {
  m.audit();
  const auto forest = spanning_forest(m);
  FlatSearch search{m, *g};
  std::vector<std::vector<std::size_t>> fixed;
  search.enumerate(tree_base(m, forest, g->identity()),
                   [&fixed](const std::vector<std::size_t>& a) { fixed.push_back(a); });
  Int total = Int(fixed.size());
  for (std::size_t i = 0; i < forest.tree_edges; ++i) total *= Int(g->order());
  if (total > Int(1000000)) throw SizeGuardError("flat coloring list too large to materialize");
  if (forest.tree_edges == 0) return fixed;

  std::vector<std::size_t> tree_ids;
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    if (forest.in_tree[e]) tree_ids.push_back(e);

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> choice(tree_ids.size(), 0);
  while (true) {
    // Vertex potentials determined by the chosen tree values.
    std::vector<std::size_t> phi(m.num_vertices, kUnset);
    for (std::size_t v = 0; v < m.num_vertices; ++v)
      if (phi[v] == kUnset) {
        phi[v] = g->identity();
        bool grew = true;
        while (grew) {
          grew = false;
          for (std::size_t i = 0; i < tree_ids.size(); ++i) {
            const auto& e = m.edges[tree_ids[i]];
            if (phi[e[0]] != kUnset && phi[e[1]] == kUnset) {
              phi[e[1]] = g->mul(choice[i], phi[e[0]]);
              grew = true;
            } else if (phi[e[1]] != kUnset && phi[e[0]] == kUnset) {
              phi[e[0]] = g->mul(g->inv(choice[i]), phi[e[1]]);
              grew = true;
            }
          }
        }
      }
    for (const auto& h : fixed) {
      std::vector<std::size_t> col(m.edges.size());
      for (std::size_t e = 0; e < m.edges.size(); ++e)
        col[e] = g->mul(g->mul(phi[m.edges[e][1]], h[e]), g->inv(phi[m.edges[e][0]]));
      out.push_back(std::move(col));
    }
    std::size_t pos = 0;
    while (pos < choice.size() && choice[pos] == g->order() - 1) choice[pos++] = 0;
    if (pos == choice.size()) break;
    ++choice[pos];
  }
  return out;
}

Cyclotomic dw_state_sum(const Triangulation3& m, const GroupPtr& g, const GroupCochain& alpha,
                        std::size_t workers) {
  m.audit();
  if (!m.connected()) throw PreconditionError("state sum needs a connected complex");
  check_cochain_shape(g, alpha);
  if (!is_three_cocycle(alpha) || !alpha.normalized())
    throw PreconditionError("state sum needs a normalized 3-cocycle");

  const auto forest = spanning_forest(m);
  auto base = tree_base(m, forest, g->identity());
  {
    FlatSearch probe{m, *g};
    if (!probe.consistent(base)) return Cyclotomic::zero();
  }
  std::size_t branch = 0;
  while (branch < base.size() && base[branch] != kUnset) ++branch;

  Cyclotomic total;
  if (branch == base.size()) {
    total = embed(coloring_phase(m, alpha, base));
  } else {
    const std::size_t n = g->order();
    const std::size_t nworkers = std::min(workers == 0 ? 1 : workers, n);
    std::vector<Cyclotomic> partial(n);
    std::vector<std::exception_ptr> errors(nworkers);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w)
      pool.emplace_back([&, w]() {
        try {
          for (std::size_t v = w; v < n; v += nworkers) {
            FlatSearch search{m, *g};
            auto a = base;
            a[branch] = v;
            Cyclotomic sum;
            search.enumerate(a, [&](const std::vector<std::size_t>& col) {
              sum += embed(coloring_phase(m, alpha, col));
            });
            partial[v] = std::move(sum);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (std::size_t v = 0; v < n; ++v) total += partial[v];
  }
  return total.scaled(Rational(Int(1), Int(g->order())));
}

Cyclotomic dw_state_sum_unchecked(const Triangulation3& m, const GroupPtr& g,
                                  const GroupCochain& alpha) {
  m.audit();
  check_cochain_shape(g, alpha);
  FlatSearch search{m, *g};
  Cyclotomic total;
  search.enumerate(std::vector<std::size_t>(m.edges.size(), kUnset),
                   [&](const std::vector<std::size_t>& col) {
                     total += embed(coloring_phase(m, alpha, col));
                   });
  Int denom = 1;
  for (std::size_t v = 0; v < m.num_vertices; ++v) denom *= Int(g->order());
  return total.scaled(Rational(Int(1), denom));
}

void GroupPresentation::audit() const {
  for (const auto& word : relators)
    for (int s : word) {
      if (s == 0) throw ValidationError("relator letters are nonzero signed indices");
      const std::size_t idx = static_cast<std::size_t>(s > 0 ? s : -s);
      if (idx > generators) throw ValidationError("relator letter exceeds the generator count");
    }
}

Int count_homs(const GroupPresentation& p, const GroupPtr& g) {
  p.audit();
  Int space = 1;
  for (std::size_t i = 0; i < p.generators; ++i) {
    space *= Int(g->order());
    if (space > Int(10000000)) throw SizeGuardError("homomorphism search space too large");
  }
  std::vector<std::size_t> tuple(p.generators, 0);
  Int count = 0;
  while (true) {
    bool ok = true;
    for (const auto& word : p.relators) {
      std::size_t acc = g->identity();
      for (int s : word) {
        const std::size_t idx = static_cast<std::size_t>(s > 0 ? s : -s) - 1;
        acc = g->mul(acc, s > 0 ? tuple[idx] : g->inv(tuple[idx]));
      }
      if (acc != g->identity()) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos < tuple.size() && tuple[pos] == g->order() - 1) tuple[pos++] = 0;
    if (pos == tuple.size()) break;
    ++tuple[pos];
  }
  return count;
}

GroupPresentation complex_presentation(const Triangulation3& m) {
  m.audit();
  const auto forest = spanning_forest(m);
  std::vector<int> gen_of(m.edges.size(), 0);
  int next = 0;
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    if (!forest.in_tree[e]) gen_of[e] = ++next;
  GroupPresentation p;
  p.generators = static_cast<std::size_t>(next);
  for (const auto& f : m.faces) {
    std::vector<int> word;
    if (gen_of[f[2]]) word.push_back(-gen_of[f[2]]);  // (e02)^-1 e12 e01 = 1
    if (gen_of[f[1]]) word.push_back(gen_of[f[1]]);
    if (gen_of[f[0]]) word.push_back(gen_of[f[0]]);
    if (!word.empty()) p.relators.push_back(std::move(word));
  }
  return p;
}

void Connection::audit() const {
  for (const auto& e : edges)
    if (e.src >= num_vertices || e.tgt >= num_vertices)
      throw ValidationError("connection edge endpoint out of range");
}

StateVector propagate(const Connection& conn, const StateVector& psi, std::size_t steps) {
  conn.audit();
  if (psi.size() != conn.num_vertices)
    throw PreconditionError("state vector needs one entry per vertex");
  StateVector cur = psi;
  for (std::size_t s = 0; s < steps; ++s) {
    StateVector next(conn.num_vertices);
    for (const auto& e : conn.edges) next[e.tgt] += embed(e.kinetic + e.transport) * cur[e.src];
    cur = std::move(next);
  }
  return cur;
}

MappingCocycle transgress_to_mapping_space(const GroupoidPtr& sigma, const GroupPtr& group,
                                           const GroupCochain& alpha, const Int& cap) {
  if (!(*alpha.group() == *group)) throw PreconditionError("cochain lives on a different group");
  if (alpha.degree() != 3) throw PreconditionError("mapping-space transgression needs degree 3");
  if (!is_three_cocycle(alpha))
    throw PreconditionError("mapping-space transgression needs a 3-cocycle");
  if (!sigma) throw PreconditionError("shape groupoid is null");
  if (sigma->num_objects() != 1)
    throw PreconditionError("mapping-space transgression supports one-object shapes only");

  const auto autos = sigma->automorphisms(0);
  const std::size_t m = autos.size();
  bool cyclic = false;
  for (std::size_t a : autos) {
    std::size_t p = a, len = 1;
    while (p != sigma->identity(0)) {
      p = sigma->then(p, a);
      ++len;
    }
    if (len == m) {
      cyclic = true;
      break;
    }
  }
  if (!cyclic)
    throw PreconditionError("mapping-space transgression supports circle models only");

  MappingCocycle out;
  out.mapping = mapping_groupoid(sigma, delooping(group), cap);
  if (m == 1) {
    out.loop_degree = false;
    out.three = alpha;
    return out;
  }

  // Staircase decomposition of the cylinder over a 2-simplex: three
  // tetrahedra with alternating signs; the vertical edge at corner j carries
  // the loop conjugated by the path of the first j horizontal edges.
  out.loop_degree = true;
  LoopTwoCochain two(group);
  const std::size_t n = group->order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h) {
        const std::size_t horiz[2] = {g, h};
        std::size_t path = group->identity();
        Phase value;
        for (std::size_t j = 0; j <= 2; ++j) {
          std::vector<std::size_t> args;
          args.reserve(3);
          for (std::size_t k = 0; k < j; ++k) args.push_back(horiz[k]);
          args.push_back(group->conj(path, x));
          for (std::size_t k = j; k < 2; ++k) args.push_back(horiz[k]);
          value = j % 2 == 0 ? value + alpha.at(args) : value - alpha.at(args);
          if (j < 2) path = group->mul(horiz[j], path);
        }
        two.set(x, g, h, value);
      }
  out.two = std::move(two);
  return out;
}

}  // namespace fgt
