#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fgt/cohomology.hpp"
#include "fgt/cyclotomic.hpp"
#include "fgt/group.hpp"
#include "fgt/groupoid.hpp"

namespace fgt {

/// Closed oriented 3-dimensional Delta-complex. Cells reference the layer
/// below by index, in the local vertex order: a face lists its edges as
/// (e01, e12, e02), a tetrahedron its faces as (f012, f013, f023, f123).
/// Identifications (repeated cells, loop edges) are allowed, which is what
/// distinguishes this from a vertex-tuple simplicial complex.
struct Triangulation3 {
  std::size_t num_vertices = 0;
  std::vector<std::array<std::size_t, 2>> edges;  // (v0, v1), oriented
  std::vector<std::array<std::size_t, 3>> faces;  // (e01, e12, e02)
  std::vector<std::array<std::size_t, 4>> tets;   // (f012, f013, f023, f123)
  std::vector<int> signs;                         // +1 or -1 per tetrahedron
  std::string name = "complex";

  /// Local gluing consistency (shared edges of adjacent face slots agree,
  /// endpoints chain correctly) plus the closed-oriented condition: every
  /// face occurs in exactly two tetrahedron slots whose induced boundary
  /// orientations cancel.
  void audit() const;
  /// Connectivity of the vertex-edge skeleton.
  bool connected() const;
  /// Edge indices (01, 02, 03, 12, 13, 23) of tetrahedron t, valid once
  /// audit passes.
  std::array<std::size_t, 6> tet_edges(std::size_t t) const;
};

/// Plain simplicial form: tetrahedra as strictly increasing vertex tuples.
struct VertexTriangulation {
  std::size_t num_vertices = 0;
  std::vector<std::array<std::size_t, 4>> tets;
  std::vector<int> signs;
};

/// Expands the vertex form, deriving the edge and face lists in ascending
/// tuple order, and audits the result.
Triangulation3 lower(const VertexTriangulation& vt, std::string name = "complex");

/// The five tetrahedra bounding the standard 4-simplex, alternating signs.
VertexTriangulation boundary_4_simplex();

/// Cone subdivision of tetrahedron t at a fresh interior vertex: the four
/// replacement tetrahedra omit one original vertex each, tet i (omitting
/// vertex i) carrying sign -(-1)^i times the original.
VertexTriangulation pachner_one_four(const VertexTriangulation& vt, std::size_t t);

/// One-vertex torus from the staircase subdivision of the cube with opposite
/// faces identified: 7 edges, 12 faces, 6 tetrahedra with signs the
/// staircase permutation signs.
Triangulation3 kuhn_torus();

/// All assignments of group elements to edges such that every face commutes:
/// g(e02) = g(e12) * g(e01). Deterministic order; enumeration is gauge-fixed
/// on a spanning forest and re-expanded, so the count is
/// #homs * |G|^(vertices - components).
std::vector<std::vector<std::size_t>> flat_colorings(const Triangulation3& m, const GroupPtr& g);

/// Exact state sum |G|^-v * sum over flat colorings of the product over
/// tetrahedra of embed(alpha(g01, g12, g23))^sign. Requires a normalized
/// 3-cocycle on g and a connected complex. workers > 1 fans the search out
/// over the first branching edge's values; partial sums are recombined in a
/// fixed order, so the result is identical for any worker count.
Cyclotomic dw_state_sum(const Triangulation3& m, const GroupPtr& g, const GroupCochain& alpha,
                        std::size_t workers = 1);

/// Diagnostic variant: sums over all flat colorings directly, with no
/// cocycle requirement and no gauge fixing. Off the cocycle variety the
/// value depends on the triangulation, which is the point of exposing it.
Cyclotomic dw_state_sum_unchecked(const Triangulation3& m, const GroupPtr& g,
                                  const GroupCochain& alpha);

struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<std::vector<int>> relators;  // signed 1-based generator indices

  void audit() const;
};

/// Number of homomorphisms from the presented group to g, by enumeration of
/// generator images with every relator word evaluated to the identity.
Int count_homs(const GroupPresentation& p, const GroupPtr& g);

/// Fundamental-group presentation read off a spanning forest: generators are
/// the non-tree edges, one relator per face (tree edges dropped). Its hom
/// count equals flat_colorings count / |G|^(vertices - components).
GroupPresentation complex_presentation(const Triangulation3& m);

struct ConnectionEdge {
  std::size_t src = 0;
  std::size_t tgt = 0;
  Phase transport;  // parallel transport along the edge
  Phase kinetic;    // kinetic action weight, also a root of unity exactly
};

struct Connection {
  std::size_t num_vertices = 0;
  std::vector<ConnectionEdge> edges;

  void audit() const;
};

using StateVector = std::vector<Cyclotomic>;

/// steps-fold push of psi along the graph; one step sends psi to
/// psi'(y) = sum over edges x -> y of embed(kinetic + transport) * psi(x),
/// the weighted-adjacency action.
StateVector propagate(const Connection& conn, const StateVector& psi, std::size_t steps);

/// Cocycle pushed through the internal hom out of a shape with one object.
/// For the point shape the mapping space is the delooping itself and the
/// cocycle comes back unchanged (degree 3). For a circle model (one object,
/// cyclic automorphisms) the mapping space is the subgroupoid of the loop
/// groupoid on the torsion objects, and the output is the degree-2 cochain
/// obtained by pairing alpha with the staircase decomposition of the
/// cylinder over a 2-simplex; it is stored densely on the whole loop
/// groupoid.
struct MappingCocycle {
  MappingGroupoid mapping;
  bool loop_degree = false;            // false: three holds; true: two holds
  std::optional<GroupCochain> three;
  std::optional<LoopTwoCochain> two;
};

MappingCocycle transgress_to_mapping_space(const GroupoidPtr& sigma, const GroupPtr& group,
                                           const GroupCochain& alpha, const Int& cap = 1000000);

}  // namespace fgt
