#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "fgt/errors.hpp"
#include "fgt/io.hpp"

namespace {

using nlohmann::json;
using namespace fgt;

constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Int parse_int(const std::string& text, const char* what) {
  try {
    return Int(text);
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": '" + text + "' is not an integer");
  }
}

/// Loads command inputs ("-" reads stdin) and records their digests so the
/// run manifest can tie the output to the exact input bytes.
struct Inputs {
  json digests = json::object();

  std::string load(const std::string& role, const std::string& path) {
    std::string text;
    if (path == "-") {
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      text = buf.str();
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ValidationError("cannot open '" + path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    digests[role] = json{{"path", path}, {"sha256", sha256_hex(text)}};
    return text;
  }
};

struct Options {
  std::string group;
  std::string cochain = "-";
  std::string twist = "zero";
  std::string alpha = "zero";
  std::string manifold;
  std::string presentation;
  std::string rep;
  std::string left;
  std::string right;
  std::string graph;
  std::string state = "-";
  std::string cocycle;
  std::string cover;
  std::string bundle;
  std::string groupoid;
  std::string shape;
  std::string target;
  std::string model;
  std::string manifest;
  std::string modulus;
  std::string p = "0";
  std::string cap = "1000000";
  std::size_t n = 2;
  std::size_t degree = 3;
  std::size_t steps = 1;
  unsigned workers = 1;
  bool render_float = false;
  bool weighted = false;
};

json float_pair(const Cyclotomic& z) {
  auto [re, im] = cyclotomic_float(z);
  return json{{"re", re}, {"im", im}};
}

json float_array(const std::vector<Cyclotomic>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(float_pair(z));
  return out;
}

struct Cli {
  Options o;
  Inputs in;
  // effective solving modulus, recorded among the manifest conventions
  std::string modulus_used;

  GroupPtr group() { return read_group(in.load("group", o.group)); }

  LoopTwoCochain twist(const GroupPtr& g) {
    if (o.twist == "zero") return LoopTwoCochain(g);
    return read_twist(in.load("twist", o.twist), g);
  }

  GroupCochain alpha(const GroupPtr& g) {
    if (o.alpha == "zero") return GroupCochain(g, 3);
    return read_cochain(in.load("alpha", o.alpha), g);
  }

  json cocycle_cyclic() {
    return json::parse(write_cochain(cyclic_three_cocycle(o.n, parse_int(o.p, "--p"))));
  }

  json cocycle_check() {
    auto c = read_cochain(in.load("cochain", o.cochain));
    bool ok = c.degree() == 3 ? is_three_cocycle(c) : differential(c).is_zero();
    return json{{"cocycle", ok}};
  }

  json cocycle_solve() {
    auto g = group();
    Int m = o.modulus.empty() ? Int(g->order()) * Int(g->order())
                              : parse_int(o.modulus, "--modulus");
    modulus_used = m.str();
    auto res = solve_cocycles(g, static_cast<unsigned>(o.degree), m);
    json reps = json::array();
    for (const auto& rep : res.representatives)
      reps.push_back(json::parse(write_cochain(rep))["values"]);
    return json{{"cocycle_count", res.cocycle_count.str()},
                {"class_count", res.class_count.str()},
                {"matches_homology", res.matches_homology},
                {"modulus", modulus_used},
                {"representatives", reps}};
  }

  json homology() {
    auto g = group();
    auto factors = group_homology(*g, static_cast<unsigned>(o.degree));
    Int order = 1;
    json out = json::array();
    for (const auto& f : factors) {
      order *= f;
      out.push_back(f.str());
    }
    return json{{"degree", o.degree}, {"factors", out}, {"order", order.str()}};
  }

  json do_transgress() {
    auto c = read_cochain(in.load("cochain", o.cochain));
    return json::parse(write_twist(transgress(c)));
  }

  json double_build() {
    auto g = group();
    TwistedLoopAlgebra alg(g, twist(g));
    return json{{"dimension", alg.dimension()},
                {"coefficient_order", alg.coefficient_order()},
                {"associative", check_associativity(alg)}};
  }

  json double_center() {
    auto g = group();
    TwistedLoopAlgebra alg(g, twist(g));
    return json{{"dimension", center_dimension(alg)}};
  }

  json double_rep_check() {
    auto g = group();
    auto w = twist(g);
    auto rep = read_loop_rep(in.load("rep", o.rep), g);
    return json{{"twisted_rep", is_twisted_rep(rep, w)}};
  }

  json double_fuse() {
    auto a = read_loop_rep(in.load("left", o.left));
    auto b = read_loop_rep(in.load("right", o.right));
    return json::parse(write_loop_rep(fuse(a, b)));
  }

  json bundle_principal() {
    auto c = read_bundle_cocycle(in.load("cocycle", o.cocycle));
    auto pb = principal_bundle(c);
    return json{{"total", json::parse(write_groupoid(*pb.total))},
                {"projection", json{{"objects", pb.projection.object_map},
                                    {"morphisms", pb.projection.morphism_map}}}};
  }

  json bundle_sections() {
    auto c = read_bundle_cocycle(in.load("cocycle", o.cocycle));
    MatRep rho = o.rep == "trivial"   ? trivial_rep(c.group)
                 : o.rep == "regular" ? regular_rep(c.group)
                                      : read_mat_rep(in.load("rep", o.rep), c.group);
    return json{{"dimension", sections(c, rho).dimension}};
  }

  json bundle_twisted_check() {
    auto gerbe = read_gerbe(in.load("cover", o.cover));
    auto tw = read_twisted_bundle(in.load("bundle", o.bundle));
    return json{{"consistent", check_twisted_bundle(gerbe, tw)}};
  }

  json bibrane_do_fuse() {
    auto a = read_bibrane(in.load("left", o.left));
    auto b = read_bibrane(in.load("right", o.right));
    return json::parse(write_bibrane(bibrane_fuse(a, b)));
  }

  json bibrane_monoid() {
    auto g = group();
    auto ic = convolution_span(g);
    auto v = make_bibrane(ic.source, ic.target, read_state(in.load("left", o.left)));
    auto w = make_bibrane(ic.source, ic.target, read_state(in.load("right", o.right)));
    auto prod = bibrane_monoid_product(ic, v, w, o.weighted);
    json out = json::parse(write_state(prod.value));
    if (o.render_float) return json{{"state", out}, {"float", float_array(prod.value)}};
    return out;
  }

  json bibrane_catalg() {
    auto g = group();
    auto alg = category_algebra(category_from_groupoid(*delooping(g)));
    if (o.left.empty() && o.right.empty()) return json{{"dimension", alg.dimension()}};
    auto prod = alg.multiply(read_state(in.load("left", o.left)),
                             read_state(in.load("right", o.right)));
    json out = json::parse(write_state(prod));
    if (o.render_float) return json{{"state", out}, {"float", float_array(prod)}};
    return out;
  }

  json dw_statesum() {
    auto m = read_triangulation(in.load("manifold", o.manifold));
    auto g = group();
    auto z = dw_state_sum(m, g, alpha(g), o.workers);
    json out{{"value", json::parse(write_cyclotomic_value(z))}};
    if (o.render_float) out["float"] = float_pair(z);
    return out;
  }

  json dw_homs() {
    if (o.presentation.empty() == o.manifold.empty())
      throw ValidationError("dw homs wants exactly one of --presentation or --manifold");
    auto p = o.presentation.empty()
                 ? complex_presentation(read_triangulation(in.load("manifold", o.manifold)))
                 : read_presentation(in.load("presentation", o.presentation));
    return json{{"count", count_homs(p, group()).str()}};
  }

  json do_propagate() {
    auto conn = read_connection(in.load("graph", o.graph));
    auto psi = read_state(in.load("state", o.state));
    auto out = propagate(conn, psi, o.steps);
    json arr = json::parse(write_state(out));
    if (o.render_float) return json{{"state", arr}, {"float", float_array(out)}};
    return arr;
  }

  GroupoidPtr pick_groupoid() {
    if (!o.groupoid.empty()) return read_groupoid(in.load("groupoid", o.groupoid));
    auto g = group();
    if (o.model == "bg" || o.model.empty()) return delooping(g);
    if (o.model == "eg") return universal_bundle_total(g);
    if (o.model == "loop") return loop_groupoid(g);
    throw ValidationError("--model must be one of bg, eg, loop");
  }

  json groupoid_card() {
    auto x = pick_groupoid();
    auto card = groupoid_cardinality(*x);
    json out{{"cardinality", format_rational(card)}};
    if (o.render_float) out["float"] = card.convert_to<double>();
    return out;
  }

  json groupoid_loop() { return json::parse(write_groupoid(*loop_groupoid(group()))); }

  json groupoid_hom() {
    auto mg = mapping_groupoid(read_groupoid(in.load("shape", o.shape)),
                               read_groupoid(in.load("target", o.target)),
                               parse_int(o.cap, "--cap"));
    auto comp = connected_components(*mg.hom);
    std::size_t classes = 0;
    for (auto c : comp) classes = std::max(classes, c + 1);
    return json{{"functors", mg.functors.size()},
                {"components", classes},
                {"cardinality", format_rational(groupoid_cardinality(*mg.hom))}};
  }
};

int fail(const char* kind, int code, const std::exception& e) {
  std::cerr << json{{"error", json{{"kind", kind}, {"message", e.what()}}}}.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  Options& o = cli.o;
  std::function<json()> run;

  CLI::App app{"exact finite gauge theory toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.set_help_all_flag("--help-all", "expand all subcommand help");
  app.add_flag("--float", o.render_float, "also render numeric results as floats");
  app.add_option("--manifest", o.manifest, "write a run manifest to this path");

  auto sub = [&](CLI::App* parent, const char* name, const char* help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto pick = [&run](CLI::App* s, json (Cli::*fn)(), Cli* self) {
    s->callback([&run, fn, self] { run = [fn, self] { return (self->*fn)(); }; });
  };

  auto* cocycle = sub(&app, "cocycle", "group 3-cocycles");
  cocycle->require_subcommand(1);
  auto* cyc = sub(cocycle, "cyclic", "built-in cocycle on Z/n, value p*a*floor((b+c)/n)/n");
  cyc->add_option("--n", o.n, "cyclic group order")->required();
  cyc->add_option("--p", o.p, "cocycle parameter");
  pick(cyc, &Cli::cocycle_cyclic, &cli);
  auto* chk = sub(cocycle, "check", "test the cocycle identity");
  chk->add_option("--cochain", o.cochain, "cochain file, - for stdin");
  pick(chk, &Cli::cocycle_check, &cli);
  auto* slv = sub(cocycle, "solve", "enumerate cocycle classes over (1/M)Z/Z");
  slv->add_option("--group", o.group, "group file")->required();
  slv->add_option("--degree", o.degree, "cochain degree");
  slv->add_option("--modulus", o.modulus, "denominator bound M, default |G|^2");
  pick(slv, &Cli::cocycle_solve, &cli);

  auto* hml = sub(&app, "homology", "invariant factors of H_n(G)");
  hml->add_option("--group", o.group, "group file")->required();
  hml->add_option("--degree", o.degree, "homology degree");
  pick(hml, &Cli::homology, &cli);

  auto* tgr = sub(&app, "transgress", "push a 3-cocycle to the loop groupoid");
  tgr->add_option("--cochain", o.cochain, "cochain file, - for stdin");
  pick(tgr, &Cli::do_transgress, &cli);

  auto* dbl = sub(&app, "double", "twisted loop-groupoid algebra");
  dbl->require_subcommand(1);
  auto add_dbl = [&](const char* name, const char* help, json (Cli::*fn)()) {
    auto* s = sub(dbl, name, help);
    s->add_option("--group", o.group, "group file")->required();
    s->add_option("--twist", o.twist, "twist file or 'zero'");
    return pick(s, fn, &cli), s;
  };
  add_dbl("build", "construct the algebra and report its shape", &Cli::double_build);
  add_dbl("center", "dimension of the center", &Cli::double_center);
  auto* rpc = add_dbl("rep-check", "test the twisted representation law", &Cli::double_rep_check);
  rpc->add_option("--rep", o.rep, "representation file")->required();
  auto* dfu = sub(dbl, "fuse", "tensor two untwisted representations");
  dfu->add_option("--left", o.left, "representation file")->required();
  dfu->add_option("--right", o.right, "representation file")->required();
  pick(dfu, &Cli::double_fuse, &cli);

  auto* bnd = sub(&app, "bundle", "principal bundles and gerbes");
  bnd->require_subcommand(1);
  auto* bpr = sub(bnd, "principal", "total space of the classified bundle");
  bpr->add_option("--cocycle", o.cocycle, "bundle cocycle file")->required();
  pick(bpr, &Cli::bundle_principal, &cli);
  auto* bsc = sub(bnd, "sections", "dimension of the section space");
  bsc->add_option("--cocycle", o.cocycle, "bundle cocycle file")->required();
  bsc->add_option("--rep", o.rep, "matrix rep file, or trivial|regular")->required();
  pick(bsc, &Cli::bundle_sections, &cli);
  auto* btc = sub(bnd, "twisted-check", "gerbe-twisted transition consistency");
  btc->add_option("--cover", o.cover, "cover file with gerbe phases")->required();
  btc->add_option("--bundle", o.bundle, "twisted bundle file")->required();
  pick(btc, &Cli::bundle_twisted_check, &cli);

  auto* bib = sub(&app, "bibrane", "correspondences and their fusion");
  bib->require_subcommand(1);
  auto* bfu = sub(bib, "fuse", "compose two bibranes over the middle foot");
  bfu->add_option("--left", o.left, "bibrane file")->required();
  bfu->add_option("--right", o.right, "bibrane file")->required();
  pick(bfu, &Cli::bibrane_do_fuse, &cli);
  auto* bmn = sub(bib, "monoid", "convolution product on the group span");
  bmn->add_option("--group", o.group, "group file")->required();
  bmn->add_option("--left", o.left, "state file")->required();
  bmn->add_option("--right", o.right, "state file")->required();
  bmn->add_flag("--weighted", o.weighted, "divide each term by |Aut| of the pair");
  pick(bmn, &Cli::bibrane_monoid, &cli);
  auto* bca = sub(bib, "catalg", "category algebra of BG");
  bca->add_option("--group", o.group, "group file")->required();
  bca->add_option("--left", o.left, "state file");
  bca->add_option("--right", o.right, "state file");
  pick(bca, &Cli::bibrane_catalg, &cli);

  auto* dw = sub(&app, "dw", "state sums on closed 3-complexes");
  dw->require_subcommand(1);
  auto* dws = sub(dw, "statesum", "normalized weighted count of flat colorings");
  dws->add_option("--manifold", o.manifold, "triangulation file")->required();
  dws->add_option("--group", o.group, "group file")->required();
  dws->add_option("--alpha", o.alpha, "3-cocycle file or 'zero'");
  dws->add_option("--workers", o.workers, "parallel search workers");
  pick(dws, &Cli::dw_statesum, &cli);
  auto* dwh = sub(dw, "homs", "count homomorphisms pi_1 -> G");
  dwh->add_option("--group", o.group, "group file")->required();
  dwh->add_option("--presentation", o.presentation, "presentation file");
  dwh->add_option("--manifold", o.manifold, "triangulation file");
  pick(dwh, &Cli::dw_homs, &cli);

  auto* prp = sub(&app, "propagate", "push a state along a graph connection");
  prp->add_option("--graph", o.graph, "connection file")->required();
  prp->add_option("--state", o.state, "state file, - for stdin");
  prp->add_option("--steps", o.steps, "number of propagation steps");
  pick(prp, &Cli::do_propagate, &cli);

  auto* gpd = sub(&app, "groupoid", "groupoid constructions and invariants");
  gpd->require_subcommand(1);
  auto* gca = sub(gpd, "card", "groupoid cardinality");
  gca->add_option("--groupoid", o.groupoid, "groupoid file");
  gca->add_option("--group", o.group, "group file for a built-in model");
  gca->add_option("--model", o.model, "bg (default), eg, or loop");
  pick(gca, &Cli::groupoid_card, &cli);
  auto* glo = sub(gpd, "loop", "loop groupoid of a group");
  glo->add_option("--group", o.group, "group file")->required();
  pick(glo, &Cli::groupoid_loop, &cli);
  auto* gho = sub(gpd, "hom", "functor groupoid shape -> target");
  gho->add_option("--shape", o.shape, "groupoid file")->required();
  gho->add_option("--target", o.target, "groupoid file")->required();
  gho->add_option("--cap", o.cap, "candidate budget");
  pick(gho, &Cli::groupoid_hom, &cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", json{{"kind", "usage"}, {"message", e.what()}}}}.dump(2)
              << "\n";
    return 2;
  }

  try {
    json result = run();
    const std::string payload = result.dump(2) + "\n";
    std::cout << payload;
    if (!o.manifest.empty()) {
      std::vector<std::string> args(argv + 1, argv + argc);
      json conventions{{"composite_order", "diagrammatic"},
                       {"normalization", "per-vertex 1/|G|"}};
      conventions["modulus"] =
          cli.modulus_used.empty() ? json(nullptr) : json(cli.modulus_used);
      json manifest{{"command", args},
                    {"conventions", conventions},
                    {"inputs", cli.in.digests},
                    {"outputs", json{{"stdout", json{{"sha256", sha256_hex(payload)}}}}},
                    {"version", kVersion}};
      std::ofstream out(o.manifest, std::ios::binary);
      if (!out) throw ValidationError("cannot write manifest '" + o.manifest + "'");
      out << manifest.dump(2) << "\n";
    }
    return 0;
  } catch (const ValidationError& e) {
    return fail("validation", 2, e);
  } catch (const SizeGuardError& e) {
    return fail("size-guard", 3, e);
  } catch (const PreconditionError& e) {
    return fail("precondition", 4, e);
  }
}
