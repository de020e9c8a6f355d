#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fgt/bibranes.hpp"
#include "fgt/bundles.hpp"
#include "fgt/cohomology.hpp"
#include "fgt/group.hpp"
#include "fgt/groupoid.hpp"
#include "fgt/sigma_model.hpp"
#include "fgt/twisted_double.hpp"

namespace fgt {

/// JSON readers and writers for every file format the tools understand.
/// Readers take whole documents as text and throw ValidationError naming the
/// offending field; writers emit two-space-indented JSON with keys in sorted
/// order, so equal values serialize byte-identically. Phases appear as
/// canonical "p/q" strings, cyclotomic numbers as a plain rational string
/// when the value is rational and as {"order": N, "coeffs": [strings]}
/// otherwise.

/// {"name": str, "table": [[indices]]} or {"permutations": [[images]]}
/// (generators of a subgroup of S_n; the closure is computed).
GroupPtr read_group(const std::string& text);
std::string write_group(const FiniteGroup& g);

/// {"group": <group object>, "degree": n, "values": {"g1,g2,g3": "p/q"}}.
/// Omitted tuples are zero. A supplied group argument overrides the file's
/// "group" member, which may then be absent.
GroupCochain read_cochain(const std::string& text, const GroupPtr& group = nullptr);
std::string write_cochain(const GroupCochain& c);

/// Same shape with keys "x;g;h".
LoopTwoCochain read_twist(const std::string& text, const GroupPtr& group = nullptr);
std::string write_twist(const LoopTwoCochain& w);

/// {"group": ..., "dims": [per object], "matrices": {"x;g": [[entries]]}}.
/// Matrices with an empty shape may be omitted.
LoopRep read_loop_rep(const std::string& text, const GroupPtr& group = nullptr);
std::string write_loop_rep(const LoopRep& rep);

/// {"group": ..., "dim": d, "matrices": [[[entries]] per element]},
/// one square matrix per group element in element order.
MatRep read_mat_rep(const std::string& text, const GroupPtr& group = nullptr);
std::string write_mat_rep(const MatRep& rho);

/// {"group": ..., "base": <groupoid>, "map": {"objects": [...],
///  "morphisms": [...]}} describing a functor base -> BG.
Cocycle read_bundle_cocycle(const std::string& text);
std::string write_bundle_cocycle(const Cocycle& c);

/// {"objects": n, "morphisms": [[src,tgt]...], "identities": [...],
///  "inverses": [...], "composition": [[a,b,ab]...]} listing only the
/// defined composites; the result is audited.
GroupoidPtr read_groupoid(const std::string& text);
std::string write_groupoid(const FiniteGroupoid& x);

/// Either the plain vertex form {"vertices": v, "tets": [[a,b,c,d]...],
/// "signs": [...]} with strictly increasing tuples, or the identified form
/// with explicit "edges": [[v,v]...], "faces": [[e01,e12,e02]...],
/// "tets": [[f012,f013,f023,f123]...]. Audited on read.
Triangulation3 read_triangulation(const std::string& text);
std::string write_triangulation(const Triangulation3& m);

/// {"generators": n, "relators": [[+1,+2,-1,-2]...]}.
GroupPresentation read_presentation(const std::string& text);
std::string write_presentation(const GroupPresentation& p);

/// {"vertices": n, "edges": [{"src", "tgt", "phase", "kinetic"}...]}.
Connection read_connection(const std::string& text);
std::string write_connection(const Connection& c);

/// {"opens": n, "pairs": [[i,j]...], "triples": [[i,j,k]...],
///  "gerbe": {"i,j,k": "p/q"}}; omitted triples carry phase zero.
CechGerbe read_gerbe(const std::string& text);
std::string write_gerbe(const CechGerbe& g);

/// {"opens": n, "transitions": {"i,j": {"perm": [images],
///  "phases": ["p/q"...]}}}.
TwistedBundle read_twisted_bundle(const std::string& text);
std::string write_twisted_bundle(const TwistedBundle& t);

/// {"left": groupoid, "right": groupoid, "carrier": groupoid,
///  "source": {"objects": [...], "morphisms": [...]}, "target": {...},
///  "value": [cyclotomic...]}; feet run carrier -> left / carrier -> right
/// and the result is validated by make_bibrane.
Bibrane read_bibrane(const std::string& text);
std::string write_bibrane(const Bibrane& b);

/// A bare JSON array of cyclotomic values.
std::vector<Cyclotomic> read_state(const std::string& text);
std::string write_state(const std::vector<Cyclotomic>& psi);

/// One cyclotomic number as a standalone JSON value.
Cyclotomic read_cyclotomic_value(const std::string& text);
std::string write_cyclotomic_value(const Cyclotomic& z);

/// Numeric rendering at zeta_N = exp(2 pi i / N): (re, im).
std::pair<double, double> cyclotomic_float(const Cyclotomic& z);

}  // namespace fgt
