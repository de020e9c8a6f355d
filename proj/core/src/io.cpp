#include "fgt/io.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"

#include "fgt/errors.hpp"

namespace fgt {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(std::string(what) + ": malformed JSON");
  return j;
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw ValidationError(std::string(what) + ": expected an object with field '" + key + "'");
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::size_t index_value(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ValidationError(std::string(what) + ": expected a nonnegative index");
  return static_cast<std::size_t>(j.get<long long>());
}

int int_value(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw ValidationError(std::string(what) + ": expected an integer");
  return static_cast<int>(j.get<long long>());
}

std::vector<std::size_t> index_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array");
  std::vector<std::size_t> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(index_value(e, what));
  return out;
}

std::string string_value(const json& j, const char* what) {
  if (!j.is_string()) throw ValidationError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

Phase phase_value(const json& j, const char* what) {
  return Phase::parse(string_value(j, what));
}

std::vector<std::size_t> split_key(const std::string& key, char sep, const char* what) {
  std::vector<std::size_t> out;
  if (key.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto next = key.find(sep, pos);
    const std::string tok =
        key.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": bad key component '" + tok + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string join_key(const std::vector<std::size_t>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(parts[i]);
  }
  return out;
}

json cyclotomic_json(const Cyclotomic& z) {
  if (z.is_rational()) return json(format_rational(z.rational_value()));
  json coeffs = json::array();
  for (const auto& c : z.coeffs()) coeffs.push_back(format_rational(c));
  return json{{"order", z.order()}, {"coeffs", coeffs}};
}

Cyclotomic cyclotomic_value(const json& j, const char* what) {
  if (j.is_string()) return Cyclotomic(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Cyclotomic(Rational(j.get<long long>()));
  if (j.is_object()) {
    const auto order = index_value(field(j, "order", what), what);
    if (order == 0) throw ValidationError(std::string(what) + ": cyclotomic order must be positive");
    const auto& cj = field(j, "coeffs", what);
    if (!cj.is_array()) throw ValidationError(std::string(what) + ": 'coeffs' must be an array");
    std::vector<Rational> coeffs;
    coeffs.reserve(cj.size());
    for (const auto& e : cj) coeffs.push_back(parse_rational(string_value(e, what)));
    return Cyclotomic(static_cast<unsigned>(order), std::move(coeffs));
  }
  throw ValidationError(std::string(what) +
                        ": expected a rational string or {\"order\", \"coeffs\"}");
}

GroupPtr group_from(const json& j, const char* what) {
  std::string name;
  if (j.is_object() && j.contains("name")) name = string_value(j.at("name"), what);
  if (j.is_object() && j.contains("table")) {
    const auto& tj = j.at("table");
    if (!tj.is_array()) throw ValidationError(std::string(what) + ": 'table' must be an array");
    std::vector<std::vector<std::size_t>> table;
    table.reserve(tj.size());
    for (const auto& row : tj) table.push_back(index_vector(row, what));
    return std::make_shared<FiniteGroup>(
        FiniteGroup::from_table(name.empty() ? "group" : name, std::move(table)));
  }
  if (j.is_object() && j.contains("permutations")) {
    const auto& pj = j.at("permutations");
    if (!pj.is_array())
      throw ValidationError(std::string(what) + ": 'permutations' must be an array");
    std::vector<std::vector<std::size_t>> gens;
    gens.reserve(pj.size());
    for (const auto& row : pj) gens.push_back(index_vector(row, what));
    return std::make_shared<FiniteGroup>(
        FiniteGroup::from_permutations(gens, name.empty() ? "perm-group" : name));
  }
  throw ValidationError(std::string(what) + ": need 'table' or 'permutations'");
}

json group_json(const FiniteGroup& g) {
  json table = json::array();
  for (const auto& row : g.table()) table.push_back(row);
  return json{{"name", g.name()}, {"table", table}};
}

GroupPtr cochain_group(const json& j, const GroupPtr& group, const char* what) {
  if (group) return group;
  return group_from(field(j, "group", what), what);
}

GroupoidPtr groupoid_from(const json& j, const char* what) {
  const auto num_objects = index_value(field(j, "objects", what), what);
  const auto& mj = field(j, "morphisms", what);
  if (!mj.is_array()) throw ValidationError(std::string(what) + ": 'morphisms' must be an array");
  std::vector<FiniteGroupoid::Morphism> morphisms;
  morphisms.reserve(mj.size());
  for (const auto& e : mj) {
    auto pair = index_vector(e, what);
    if (pair.size() != 2)
      throw ValidationError(std::string(what) + ": morphism entries are [src, tgt] pairs");
    morphisms.push_back({pair[0], pair[1]});
  }
  auto identities = index_vector(field(j, "identities", what), what);
  auto inverses = index_vector(field(j, "inverses", what), what);
  const auto& cj = field(j, "composition", what);
  if (!cj.is_array()) throw ValidationError(std::string(what) + ": 'composition' must be an array");
  std::vector<std::size_t> then_table(morphisms.size() * morphisms.size(),
                                      FiniteGroupoid::npos);
  for (const auto& e : cj) {
    auto triple = index_vector(e, what);
    if (triple.size() != 3)
      throw ValidationError(std::string(what) + ": composition entries are [a, b, ab] triples");
    if (triple[0] >= morphisms.size() || triple[1] >= morphisms.size())
      throw ValidationError(std::string(what) + ": composition morphism out of range");
    auto& slot = then_table[triple[0] * morphisms.size() + triple[1]];
    if (slot != FiniteGroupoid::npos)
      throw ValidationError(std::string(what) + ": duplicate composition entry");
    slot = triple[2];
  }
  std::string name = j.contains("name") ? string_value(j.at("name"), what) : "groupoid";
  auto out = std::make_shared<FiniteGroupoid>(num_objects, std::move(morphisms),
                                              std::move(identities), std::move(inverses),
                                              std::move(then_table), std::move(name));
  out->audit();
  return out;
}

json groupoid_json(const FiniteGroupoid& x) {
  json morphisms = json::array();
  std::vector<std::size_t> identities, inverses;
  for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
    morphisms.push_back(json::array({x.src(m), x.tgt(m)}));
    inverses.push_back(x.inverse(m));
  }
  for (std::size_t o = 0; o < x.num_objects(); ++o) identities.push_back(x.identity(o));
  json composition = json::array();
  for (std::size_t a = 0; a < x.num_morphisms(); ++a)
    for (std::size_t b = 0; b < x.num_morphisms(); ++b)
      if (x.then(a, b) != FiniteGroupoid::npos)
        composition.push_back(json::array({a, b, x.then(a, b)}));
  return json{{"name", x.name()},       {"objects", x.num_objects()},
              {"morphisms", morphisms}, {"identities", identities},
              {"inverses", inverses},   {"composition", composition}};
}

GroupoidFunctor functor_from(const json& j, GroupoidPtr dom, GroupoidPtr cod,
                             const char* what) {
  GroupoidFunctor f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.object_map = index_vector(field(j, "objects", what), what);
  f.morphism_map = index_vector(field(j, "morphisms", what), what);
  f.audit();
  return f;
}

json functor_json(const GroupoidFunctor& f) {
  return json{{"objects", f.object_map}, {"morphisms", f.morphism_map}};
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

GroupPtr read_group(const std::string& text) {
  return group_from(parse_document(text, "group file"), "group file");
}

std::string write_group(const FiniteGroup& g) { return dump(group_json(g)); }

GroupCochain read_cochain(const std::string& text, const GroupPtr& group) {
  const char* what = "cochain file";
  auto j = parse_document(text, what);
  auto g = cochain_group(j, group, what);
  const auto degree = index_value(field(j, "degree", what), what);
  GroupCochain c(g, static_cast<unsigned>(degree));
  if (j.contains("values")) {
    const auto& vj = j.at("values");
    if (!vj.is_object()) throw ValidationError(std::string(what) + ": 'values' must be an object");
    for (const auto& [key, val] : vj.items()) {
      auto args = split_key(key, ',', what);
      if (args.size() != degree)
        throw ValidationError(std::string(what) + ": key '" + key + "' does not have " +
                              std::to_string(degree) + " components");
      for (auto a : args)
        if (a >= g->order())
          throw ValidationError(std::string(what) + ": element out of range in key '" + key + "'");
      c.set(args, phase_value(val, what));
    }
  }
  return c;
}

std::string write_cochain(const GroupCochain& c) {
  json values = json::object();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c.at_index(i).is_zero())
      values[join_key(c.args_of(i), ',')] = c.at_index(i).to_string();
  return dump(json{{"group", group_json(*c.group())},
                   {"degree", c.degree()},
                   {"values", values}});
}

LoopTwoCochain read_twist(const std::string& text, const GroupPtr& group) {
  const char* what = "twist file";
  auto j = parse_document(text, what);
  auto g = cochain_group(j, group, what);
  LoopTwoCochain w(g);
  if (j.contains("values")) {
    const auto& vj = j.at("values");
    if (!vj.is_object()) throw ValidationError(std::string(what) + ": 'values' must be an object");
    for (const auto& [key, val] : vj.items()) {
      auto args = split_key(key, ';', what);
      if (args.size() != 3)
        throw ValidationError(std::string(what) + ": key '" + key + "' is not 'x;g;h'");
      for (auto a : args)
        if (a >= g->order())
          throw ValidationError(std::string(what) + ": element out of range in key '" + key + "'");
      w.set(args[0], args[1], args[2], phase_value(val, what));
    }
  }
  return w;
}

std::string write_twist(const LoopTwoCochain& w) {
  const std::size_t n = w.group()->order();
  json values = json::object();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (!w.at(x, g, h).is_zero())
          values[join_key({x, g, h}, ';')] = w.at(x, g, h).to_string();
  return dump(json{{"group", group_json(*w.group())}, {"values", values}});
}

LoopRep read_loop_rep(const std::string& text, const GroupPtr& group) {
  const char* what = "representation file";
  auto j = parse_document(text, what);
  auto g = cochain_group(j, group, what);
  const std::size_t n = g->order();
  LoopRep rep;
  rep.group = g;
  rep.dims = index_vector(field(j, "dims", what), what);
  if (rep.dims.size() != n)
    throw ValidationError(std::string(what) + ": 'dims' needs one entry per group element");
  const auto& mj = field(j, "matrices", what);
  if (!mj.is_object()) throw ValidationError(std::string(what) + ": 'matrices' must be an object");
  rep.matrices.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t gg = 0; gg < n; ++gg)
      rep.matrices.emplace_back(rep.dims[g->conj(gg, x)], rep.dims[x]);
  for (const auto& [key, val] : mj.items()) {
    auto args = split_key(key, ';', what);
    if (args.size() != 2 || args[0] >= n || args[1] >= n)
      throw ValidationError(std::string(what) + ": bad matrix key '" + key + "'");
    auto& m = rep.matrices[args[0] * n + args[1]];
    if (!val.is_array() || val.size() != m.rows())
      throw ValidationError(std::string(what) + ": matrix '" + key + "' has the wrong row count");
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const auto& row = val.at(r);
      if (!row.is_array() || row.size() != m.cols())
        throw ValidationError(std::string(what) + ": matrix '" + key +
                              "' has the wrong column count");
      for (std::size_t cidx = 0; cidx < m.cols(); ++cidx)
        m.at(r, cidx) = cyclotomic_value(row.at(cidx), what);
    }
  }
  return rep;
}

std::string write_loop_rep(const LoopRep& rep) {
  const std::size_t n = rep.group->order();
  json matrices = json::object();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g) {
      const auto& m = rep.at(x, g);
      if (m.rows() == 0 || m.cols() == 0) continue;
      json rows = json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cyclotomic_json(m.at(r, c)));
        rows.push_back(std::move(row));
      }
      matrices[join_key({x, g}, ';')] = std::move(rows);
    }
  return dump(json{{"group", group_json(*rep.group)},
                   {"dims", rep.dims},
                   {"matrices", matrices}});
}

MatRep read_mat_rep(const std::string& text, const GroupPtr& group) {
  const char* what = "representation file";
  auto j = parse_document(text, what);
  auto g = cochain_group(j, group, what);
  const auto dim = index_value(field(j, "dim", what), what);
  const auto& mj = field(j, "matrices", what);
  if (!mj.is_array() || mj.size() != g->order())
    throw ValidationError(std::string(what) + ": 'matrices' needs one entry per group element");
  std::vector<CycMatrix> mats;
  mats.reserve(mj.size());
  for (const auto& entry : mj) {
    CycMatrix m(dim, dim);
    if (!entry.is_array() || entry.size() != dim)
      throw ValidationError(std::string(what) + ": matrix is not dim x dim");
    for (std::size_t r = 0; r < dim; ++r) {
      const auto& row = entry.at(r);
      if (!row.is_array() || row.size() != dim)
        throw ValidationError(std::string(what) + ": matrix is not dim x dim");
      for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = cyclotomic_value(row.at(c), what);
    }
    mats.push_back(std::move(m));
  }
  return make_rep(std::move(g), std::move(mats));
}

std::string write_mat_rep(const MatRep& rho) {
  json matrices = json::array();
  for (const auto& m : rho.mats) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cyclotomic_json(m.at(r, c)));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  return dump(json{{"group", group_json(*rho.group)},
                   {"dim", rho.dim},
                   {"matrices", matrices}});
}

Cocycle read_bundle_cocycle(const std::string& text) {
  const char* what = "bundle cocycle file";
  auto j = parse_document(text, what);
  auto group = group_from(field(j, "group", what), what);
  auto base = groupoid_from(field(j, "base", what), what);
  auto map = functor_from(field(j, "map", what), base, delooping(group), what);
  return make_cocycle(std::move(group), std::move(map));
}

std::string write_bundle_cocycle(const Cocycle& c) {
  return dump(json{{"group", group_json(*c.group)},
                   {"base", groupoid_json(*c.map.dom)},
                   {"map", functor_json(c.map)}});
}

GroupoidPtr read_groupoid(const std::string& text) {
  return groupoid_from(parse_document(text, "groupoid file"), "groupoid file");
}

std::string write_groupoid(const FiniteGroupoid& x) { return dump(groupoid_json(x)); }

Triangulation3 read_triangulation(const std::string& text) {
  const char* what = "triangulation file";
  auto j = parse_document(text, what);
  std::string name = j.contains("name") ? string_value(j.at("name"), what) : "complex";
  const auto vertices = index_value(field(j, "vertices", what), what);
  const auto& tj = field(j, "tets", what);
  if (!tj.is_array()) throw ValidationError(std::string(what) + ": 'tets' must be an array");
  const auto& sj = field(j, "signs", what);
  if (!sj.is_array()) throw ValidationError(std::string(what) + ": 'signs' must be an array");
  std::vector<int> signs;
  signs.reserve(sj.size());
  for (const auto& s : sj) signs.push_back(int_value(s, what));

  if (j.contains("edges") || j.contains("faces")) {
    Triangulation3 m;
    m.name = std::move(name);
    m.num_vertices = vertices;
    const auto& ej = field(j, "edges", what);
    if (!ej.is_array()) throw ValidationError(std::string(what) + ": 'edges' must be an array");
    for (const auto& e : ej) {
      auto pair = index_vector(e, what);
      if (pair.size() != 2)
        throw ValidationError(std::string(what) + ": edge entries are [v0, v1] pairs");
      m.edges.push_back({pair[0], pair[1]});
    }
    const auto& fj = field(j, "faces", what);
    if (!fj.is_array()) throw ValidationError(std::string(what) + ": 'faces' must be an array");
    for (const auto& f : fj) {
      auto triple = index_vector(f, what);
      if (triple.size() != 3)
        throw ValidationError(std::string(what) + ": face entries are [e01, e12, e02] triples");
      m.faces.push_back({triple[0], triple[1], triple[2]});
    }
    for (const auto& t : tj) {
      auto quad = index_vector(t, what);
      if (quad.size() != 4)
        throw ValidationError(std::string(what) +
                              ": tet entries are [f012, f013, f023, f123] quadruples");
      m.tets.push_back({quad[0], quad[1], quad[2], quad[3]});
    }
    m.signs = std::move(signs);
    m.audit();
    return m;
  }

  VertexTriangulation vt;
  vt.num_vertices = vertices;
  for (const auto& t : tj) {
    auto quad = index_vector(t, what);
    if (quad.size() != 4)
      throw ValidationError(std::string(what) + ": tet entries are [a, b, c, d] quadruples");
    vt.tets.push_back({quad[0], quad[1], quad[2], quad[3]});
  }
  vt.signs = std::move(signs);
  return lower(vt, std::move(name));
}

std::string write_triangulation(const Triangulation3& m) {
  json edges = json::array(), faces = json::array(), tets = json::array();
  for (const auto& e : m.edges) edges.push_back(json::array({e[0], e[1]}));
  for (const auto& f : m.faces) faces.push_back(json::array({f[0], f[1], f[2]}));
  for (const auto& t : m.tets) tets.push_back(json::array({t[0], t[1], t[2], t[3]}));
  return dump(json{{"name", m.name},   {"vertices", m.num_vertices}, {"edges", edges},
                   {"faces", faces},   {"tets", tets},               {"signs", m.signs}});
}

GroupPresentation read_presentation(const std::string& text) {
  const char* what = "presentation file";
  auto j = parse_document(text, what);
  GroupPresentation p;
  p.generators = index_value(field(j, "generators", what), what);
  const auto& rj = field(j, "relators", what);
  if (!rj.is_array()) throw ValidationError(std::string(what) + ": 'relators' must be an array");
  for (const auto& word : rj) {
    if (!word.is_array())
      throw ValidationError(std::string(what) + ": relators are arrays of signed indices");
    std::vector<int> letters;
    letters.reserve(word.size());
    for (const auto& s : word) letters.push_back(int_value(s, what));
    p.relators.push_back(std::move(letters));
  }
  p.audit();
  return p;
}

std::string write_presentation(const GroupPresentation& p) {
  return dump(json{{"generators", p.generators}, {"relators", p.relators}});
}

Connection read_connection(const std::string& text) {
  const char* what = "connection file";
  auto j = parse_document(text, what);
  Connection c;
  c.num_vertices = index_value(field(j, "vertices", what), what);
  const auto& ej = field(j, "edges", what);
  if (!ej.is_array()) throw ValidationError(std::string(what) + ": 'edges' must be an array");
  for (const auto& e : ej) {
    ConnectionEdge edge;
    edge.src = index_value(field(e, "src", what), what);
    edge.tgt = index_value(field(e, "tgt", what), what);
    edge.transport = phase_value(field(e, "phase", what), what);
    edge.kinetic = phase_value(field(e, "kinetic", what), what);
    c.edges.push_back(edge);
  }
  c.audit();
  return c;
}

std::string write_connection(const Connection& c) {
  json edges = json::array();
  for (const auto& e : c.edges)
    edges.push_back(json{{"src", e.src},
                         {"tgt", e.tgt},
                         {"phase", e.transport.to_string()},
                         {"kinetic", e.kinetic.to_string()}});
  return dump(json{{"vertices", c.num_vertices}, {"edges", edges}});
}

CechGerbe read_gerbe(const std::string& text) {
  const char* what = "cover file";
  auto j = parse_document(text, what);
  CechCover cover;
  cover.opens = index_value(field(j, "opens", what), what);
  for (const auto& p : field(j, "pairs", what)) {
    auto pair = index_vector(p, what);
    if (pair.size() != 2)
      throw ValidationError(std::string(what) + ": pair entries are [i, j]");
    cover.pairs.push_back({pair[0], pair[1]});
  }
  for (const auto& t : field(j, "triples", what)) {
    auto triple = index_vector(t, what);
    if (triple.size() != 3)
      throw ValidationError(std::string(what) + ": triple entries are [i, j, k]");
    cover.triples.push_back({triple[0], triple[1], triple[2]});
  }
  std::vector<Phase> phases(cover.triples.size());
  if (j.contains("gerbe")) {
    const auto& gj = j.at("gerbe");
    if (!gj.is_object()) throw ValidationError(std::string(what) + ": 'gerbe' must be an object");
    for (const auto& [key, val] : gj.items()) {
      auto args = split_key(key, ',', what);
      if (args.size() != 3)
        throw ValidationError(std::string(what) + ": gerbe key '" + key + "' is not 'i,j,k'");
      std::size_t slot = cover.triples.size();
      for (std::size_t i = 0; i < cover.triples.size(); ++i)
        if (cover.triples[i] == std::array<std::size_t, 3>{args[0], args[1], args[2]}) slot = i;
      if (slot == cover.triples.size())
        throw ValidationError(std::string(what) + ": gerbe key '" + key +
                              "' is not a listed triple");
      phases[slot] = phase_value(val, what);
    }
  }
  return make_gerbe(std::move(cover), std::move(phases));
}

std::string write_gerbe(const CechGerbe& g) {
  json pairs = json::array(), triples = json::array(), values = json::object();
  for (const auto& p : g.cover.pairs) pairs.push_back(json::array({p[0], p[1]}));
  for (std::size_t i = 0; i < g.cover.triples.size(); ++i) {
    const auto& t = g.cover.triples[i];
    triples.push_back(json::array({t[0], t[1], t[2]}));
    if (!g.phases[i].is_zero())
      values[join_key({t[0], t[1], t[2]}, ',')] = g.phases[i].to_string();
  }
  return dump(json{{"opens", g.cover.opens},
                   {"pairs", pairs},
                   {"triples", triples},
                   {"gerbe", values}});
}

TwistedBundle read_twisted_bundle(const std::string& text) {
  const char* what = "twisted bundle file";
  auto j = parse_document(text, what);
  TwistedBundle out;
  out.opens = index_value(field(j, "opens", what), what);
  const auto& tj = field(j, "transitions", what);
  if (!tj.is_object())
    throw ValidationError(std::string(what) + ": 'transitions' must be an object");
  for (const auto& [key, val] : tj.items()) {
    auto args = split_key(key, ',', what);
    if (args.size() != 2)
      throw ValidationError(std::string(what) + ": transition key '" + key + "' is not 'i,j'");
    auto perm = index_vector(field(val, "perm", what), what);
    const auto& pj = field(val, "phases", what);
    if (!pj.is_array()) throw ValidationError(std::string(what) + ": 'phases' must be an array");
    std::vector<Phase> phases;
    phases.reserve(pj.size());
    for (const auto& p : pj) phases.push_back(phase_value(p, what));
    out.transitions.emplace(std::array<std::size_t, 2>{args[0], args[1]},
                            MonomialMatrix(std::move(perm), std::move(phases)));
  }
  return out;
}

std::string write_twisted_bundle(const TwistedBundle& t) {
  json transitions = json::object();
  for (const auto& [key, m] : t.transitions) {
    json phases = json::array();
    for (const auto& p : m.phases()) phases.push_back(p.to_string());
    transitions[join_key({key[0], key[1]}, ',')] = json{{"perm", m.perm()}, {"phases", phases}};
  }
  return dump(json{{"opens", t.opens}, {"transitions", transitions}});
}

Bibrane read_bibrane(const std::string& text) {
  const char* what = "bibrane file";
  auto j = parse_document(text, what);
  auto left = groupoid_from(field(j, "left", what), what);
  auto right = groupoid_from(field(j, "right", what), what);
  auto carrier = groupoid_from(field(j, "carrier", what), what);
  auto source = functor_from(field(j, "source", what), carrier, left, what);
  auto target = functor_from(field(j, "target", what), carrier, right, what);
  const auto& vj = field(j, "value", what);
  if (!vj.is_array()) throw ValidationError(std::string(what) + ": 'value' must be an array");
  std::vector<Cyclotomic> value;
  value.reserve(vj.size());
  for (const auto& v : vj) value.push_back(cyclotomic_value(v, what));
  return make_bibrane(std::move(source), std::move(target), std::move(value));
}

std::string write_bibrane(const Bibrane& b) {
  json value = json::array();
  for (const auto& v : b.value) value.push_back(cyclotomic_json(v));
  return dump(json{{"left", groupoid_json(*b.source.cod)},
                   {"right", groupoid_json(*b.target.cod)},
                   {"carrier", groupoid_json(*b.carrier)},
                   {"source", functor_json(b.source)},
                   {"target", functor_json(b.target)},
                   {"value", value}});
}

std::vector<Cyclotomic> read_state(const std::string& text) {
  const char* what = "state vector";
  auto j = parse_document(text, what);
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array");
  std::vector<Cyclotomic> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(cyclotomic_value(v, what));
  return out;
}

std::string write_state(const std::vector<Cyclotomic>& psi) {
  json out = json::array();
  for (const auto& v : psi) out.push_back(cyclotomic_json(v));
  return dump(out);
}

Cyclotomic read_cyclotomic_value(const std::string& text) {
  return cyclotomic_value(parse_document(text, "cyclotomic value"), "cyclotomic value");
}

std::string write_cyclotomic_value(const Cyclotomic& z) { return dump(cyclotomic_json(z)); }

std::pair<double, double> cyclotomic_float(const Cyclotomic& z) {
  const long double tau = 2.0L * std::numbers::pi_v<long double>;
  long double re = 0, im = 0;
  for (std::size_t k = 0; k < z.coeffs().size(); ++k) {
    const long double c = z.coeffs()[k].convert_to<long double>();
    const long double angle = tau * static_cast<long double>(k) / z.order();
    re += c * std::cos(angle);
    im += c * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace fgt
