// neretin: command-line front end. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 ok, 2 validation/parse, 3 resource limit, 1 anything else.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "cli_io.hpp"
#include "neretin/afp.hpp"
#include "neretin/burger_mozes.hpp"
#include "neretin/hecke.hpp"
#include "neretin/hnn.hpp"
#include "neretin/orbit.hpp"
#include "neretin/random_element.hpp"
#include "selftest.hpp"

using namespace neretin;
using cli::json;
using cli::rational_json;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

TreeShape shape_of(int d, int k) {
  require(d >= 2 && k >= 1, ErrorKind::validation, "tree shape needs d >= 2 and k >= 1");
  return TreeShape(d, k);
}

json coset_json(const Coset& c) { return json{{"rep", c.rep.to_string()}, {"level", c.level}}; }

// element ------------------------------------------------------------------

struct ElementArgs {
  std::string action;
  int d = 2, k = 2;
  std::string a, b, cls = "N";
  std::size_t level = 0;
};

void run_element(const ElementArgs& o) {
  auto shape = shape_of(o.d, o.k);
  auto g = parse_element(o.a, shape);
  json out{{"shape", shape.to_string()}, {"input", o.a}};
  if (o.action == "compose") {
    require(!o.b.empty(), ErrorKind::validation, "compose needs --b");
    auto h = parse_element(o.b, shape);
    out["result"] = (g * h).to_string();
  } else if (o.action == "invert") {
    out["result"] = g.inverse().to_string();
  } else if (o.action == "canonical") {
    out["result"] = g.to_string();
    out["depth"] = g.depth();
  } else {
    out["class"] = o.cls;
    out["level"] = o.level;
    out["member"] = is_member(g, parse_element_class(o.cls), o.level);
  }
  emit(out);
}

// fourier ------------------------------------------------------------------

struct FourierArgs {
  std::string action;
  int d = 2, k = 2;
  std::string measure, coset, conjugators = "level2-sym";
  std::size_t level = 2, to = 0;
  std::uint64_t seed = 1;
  bool average = false;
};

std::vector<Element> named_conjugators(const std::string& name, const TreeShape& shape) {
  std::vector<Element> out;
  if (name == "level2-sym") {
    auto verts = level_vertices(shape, 2);
    std::vector<std::size_t> idx(verts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    require(idx.size() <= 6, ErrorKind::resource_limit, "level2-sym needs at most 6 level-2 vertices");
    do {
      std::vector<Address> imgs;
      for (auto i : idx) imgs.push_back(verts[i]);
      out.push_back(Element::level_permutation(shape, 2, imgs));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
  }
  // DSL strings separated by ';'
  std::size_t start = 0;
  while (start <= name.size()) {
    auto end = name.find(';', start);
    if (end == std::string::npos) end = name.size();
    auto part = name.substr(start, end - start);
    if (part.find_first_not_of(" ") != std::string::npos) out.push_back(parse_element(part, shape));
    start = end + 1;
  }
  return out;
}

BruhatMeasure measure_arg(const FourierArgs& o, const TreeShape& shape) {
  if (!o.measure.empty()) return cli::measure_from_json(cli::read_json_arg(o.measure), shape);
  Rng rng(o.seed);
  BruhatMeasure f(shape);
  f.add_atom(random_element(shape, ElementClass::N, 1, rng), 1);
  f.add_density({random_element(shape, ElementClass::O_level, 1, rng, o.level), o.level}, Rational(-1, 2));
  return f;
}

void run_fourier(const FourierArgs& o) {
  auto shape = shape_of(o.d, o.k);
  auto f = measure_arg(o, shape);
  Coset c{o.coset.empty() ? Element::identity(shape) : parse_element(o.coset, shape), o.level};
  json out{{"shape", shape.to_string()}, {"coset", coset_json(c)}};
  if (o.action == "coeff") {
    out["measure"] = cli::measure_json(f);
    out["phi"] = rational_json(fourier_coefficient(f, c));
  } else if (o.action == "check-partition") {
    std::size_t m = o.to == 0 ? o.level + 1 : o.to;
    require(m > o.level, ErrorKind::validation, "--to must exceed --level");
    out["measure"] = cli::measure_json(f);
    Rational whole = fourier_coefficient(f, c), sum = 0;
    auto parts = partition_coset(c, m);
    for (const auto& p : parts) sum += fourier_coefficient(f, p);
    out["to"] = m;
    out["parts"] = parts.size();
    out["phi"] = rational_json(whole);
    out["sum"] = rational_json(sum);
    out["holds"] = whole == sum;
  } else {
    auto conj = named_conjugators(o.conjugators, shape);
    if (o.average) {
      BruhatMeasure avg(shape);
      for (const auto& h : conj) avg += convolve(convolve(BruhatMeasure::atom(h), f), BruhatMeasure::atom(h.inverse()));
      f = avg;
    }
    out["measure"] = cli::measure_json(f);
    auto rep = hilbert_inequality_check(f, conj, c);
    out["conjugators"] = conj.size();
    out["distinct"] = rep.distinct;
    out["phi"] = rational_json(rep.phi);
    out["lhs"] = rational_json(rep.lhs);
    out["rhs"] = rational_json(rep.rhs);
    out["holds"] = rep.holds;
  }
  emit(out);
}

// star / orbit ---------------------------------------------------------------

struct StarArgs {
  int d = 2, k = 2;
  std::string element = "{0->00, 10->01, 11->1}", format = "json";
  std::size_t from = 2, to = 6;
  bool certificate = false;
};

void run_star(const StarArgs& o) {
  auto shape = shape_of(o.d, o.k);
  auto g = parse_element(o.element, shape);
  auto rows = star_table(g, o.from, o.to);
  if (o.format == "csv") {
    std::cout << "n,lower_bound,mu_sq_num,mu_sq_den,product_num,product_den,product_float\n";
    for (const auto& r : rows) {
      std::cout << r.n << "," << r.lower_bound.get_str() << "," << r.mu_squared.get_num().get_str() << ","
                << r.mu_squared.get_den().get_str() << "," << r.product.get_num().get_str() << ","
                << r.product.get_den().get_str() << "," << cli::approx(r.product) << "\n";
    }
    return;
  }
  json out{{"shape", shape.to_string()}, {"element", g.to_string()}, {"n0", find_displaced_ball(g).n0}};
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"lower_bound", r.lower_bound.get_str()},
                   {"mu_squared", rational_json(r.mu_squared)},
                   {"product", rational_json(r.product)},
                   {"product_approx", cli::approx(r.product)}});
  }
  out["rows"] = arr;
  if (o.certificate) {
    auto cert = growth_certificate(g);
    json ex = json::array();
    for (auto [n, up] : cert.exact) ex.push_back({{"n", n}, {"ratio_above_one", up}});
    out["growth"] = {{"n1", cert.n1}, {"tail_level", cert.tail_level}, {"exponent", cert.exponent}, {"exact", ex}};
  }
  emit(out);
}

struct OrbitArgs {
  int d = 2, k = 2;
  std::string element = "{0->00, 10->01, 11->1}", gens = "default";
  std::size_t level = 3, budget = 16;
};

void run_orbit(const OrbitArgs& o) {
  auto shape = shape_of(o.d, o.k);
  auto g = parse_element(o.element, shape);
  std::vector<Element> gens;
  if (o.gens == "default") gens = default_orbit_generators(shape, o.level);
  else if (o.gens == "depth1") gens = level_generators(shape, 2, 3);
  else fail(ErrorKind::validation, "unknown generator set '" + o.gens + "' (expected default, depth1)");
  auto cert = orbit_lower_bound_bfs({g, o.level}, gens, o.budget);
  json w = json::array();
  for (std::size_t i = 0; i < cert.count; ++i) {
    w.push_back({{"conjugator", cert.conjugators[i].to_string()}, {"coset", coset_json(cert.witnesses[i])}});
  }
  emit(json{{"shape", shape.to_string()},
            {"base", coset_json(cert.base)},
            {"generators", gens.size()},
            {"budget", o.budget},
            {"count", cert.count},
            {"exhausted", cert.exhausted},
            {"verified", verify_certificate(cert)},
            {"witnesses", w}});
}

// nf / witness -----------------------------------------------------------------

struct GroupArgs {
  std::string kind, instance, word, x1, xm1;
  long p = 2, q = 3;
  std::size_t m = 1, nmax = 10;
  int a1 = -1, a2 = -1, b = -1;
  bool strict = false;
};

template <class Base>
json hnn_nf(const Base& base, const std::string& word) {
  auto w = hnn_parse(base, word);
  auto r = britton_reduce(base, w);
  return json{{"input", hnn_to_string(base, w)},
              {"reduced", hnn_to_string(base, r)},
              {"sigma", r.sigma()},
              {"tau", r.tau()},
              {"is_reduced", hnn_is_reduced(base, r)}};
}

template <class Base>
json hnn_wit(const Base& base, const GroupArgs& o, const std::string& dx1, const std::string& dxm1) {
  auto letter = [&](const std::string& tok) {
    auto x = base.parse(tok);
    if (!x) fail(ErrorKind::parse, "unknown base element '" + tok + "'");
    return *x;
  };
  auto g = hnn_parse(base, o.word);
  auto wit = hnn_witness(base, g, o.m, letter(o.x1.empty() ? dx1 : o.x1), letter(o.xm1.empty() ? dxm1 : o.xm1), o.nmax);
  json out{{"g", hnn_to_string(base, britton_reduce(base, g))},
           {"m", o.m},
           {"case", wit.case_id},
           {"x", hnn_to_string(base, wit.x)},
           {"tau_x", wit.x.tau()},
           {"taus", wit.taus}};
  if (wit.case_id == 1) out["escape_level"] = wit.s;
  bool increasing = true;
  for (std::size_t N = 1; N < wit.taus.size(); ++N) increasing = increasing && wit.taus[N] > wit.taus[N - 1];
  out["strictly_increasing"] = increasing;
  return out;
}

std::string finite_label(const FiniteHnnBase& b, const char* cycles) {
  return "g" + std::to_string(b.group().index_of(Perm::from_cycles(cycles, 4)));
}

AfpInstance afp_instance(const std::string& name) {
  if (name == "s3c2") return AfpInstance::s3_c2();
  if (name == "c6c4") return AfpInstance::c6_c4();
  fail(ErrorKind::validation, "unknown amalgam '" + name + "' (expected s3c2, c6c4)");
}

void run_group(const GroupArgs& o, bool witness) {
  if (o.kind == "hnn") {
    json out;
    if (o.instance.empty() || o.instance == "bs") {
      BaumslagSolitarBase bs(o.p, o.q);
      out = witness ? hnn_wit(bs, o, "a", "a") : hnn_nf(bs, o.word);
      out["instance"] = "BS(" + std::to_string(o.p) + "," + std::to_string(o.q) + ")";
    } else if (o.instance == "c4" || o.instance == "klein") {
      auto b = o.instance == "c4" ? FiniteHnnBase::cyclic4() : FiniteHnnBase::klein();
      if (witness) {
        if (o.instance == "c4") out = hnn_wit(b, o, finite_label(b, "(0 1 2 3)"), finite_label(b, "(0 1 2 3)"));
        else out = hnn_wit(b, o, finite_label(b, "(0 2)(1 3)"), finite_label(b, "(0 1)(2 3)"));
      } else {
        out = hnn_nf(b, o.word);
      }
      out["instance"] = o.instance;
    } else {
      fail(ErrorKind::validation, "unknown HNN instance '" + o.instance + "' (expected bs, c4, klein)");
    }
    emit(out);
    return;
  }
  auto G = afp_instance(o.instance.empty() ? "s3c2" : o.instance);
  auto w = afp_parse(G, o.word);
  auto nf = afp_normal_form(G, w);
  json out{{"instance", G.name()}, {"normal_form", afp_to_string(G, nf)}, {"length", nf.length()}};
  if (witness) {
    const auto& A = G.factor(0);
    const auto& B = G.factor(1);
    int a1, a2, b;
    if (G.name() == "C6*C2C4") {
      a1 = A.index_of(Perm::from_cycles("(0 1 2 3 4 5)", 6));
      a2 = A.mul(a1, a1);
      b = B.index_of(Perm::from_cycles("(0 1 2 3)", 4));
    } else {
      a1 = A.index_of(Perm::from_cycles("(0 2)", 3));
      a2 = A.index_of(Perm::from_cycles("(1 2)", 3));
      b = B.index_of(Perm::from_cycles("(0 2)", 3));
    }
    if (o.a1 >= 0) a1 = o.a1;
    if (o.a2 >= 0) a2 = o.a2;
    if (o.b >= 0) b = o.b;
    require(a1 < static_cast<int>(A.size()) && a2 < static_cast<int>(A.size()) && b < static_cast<int>(B.size()),
            ErrorKind::validation, "element index out of range");
    auto wit = afp_witness(G, w, a1, a2, b, o.nmax, o.strict);
    out["case"] = wit.case_name;
    out["a_choice"] = wit.choice;
    out["x"] = afp_to_string(G, afp_normal_form(G, wit.x));
    out["lengths"] = wit.lengths;
    out["normalizer_hypothesis"] = wit.normalizer_hypothesis;
    bool increasing = true;
    for (std::size_t N = 1; N < wit.lengths.size(); ++N) increasing = increasing && wit.lengths[N] > wit.lengths[N - 1];
    out["strictly_increasing"] = increasing;
  }
  emit(out);
}

// bm-check / hecke -------------------------------------------------------------

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> r;
  for (int x : v) r.push_back(x + 1);
  return r;
}

void run_bm(std::size_t degree, const std::string& gens) {
  auto F = PermGroup::parse(gens, degree);
  auto r = bm_check(F);
  auto f1 = F.point_stabilizer(0);
  json stab = json::array();
  for (const auto& g : f1.elements()) stab.push_back(g.to_cycles(1));
  emit(json{{"degree", degree},
            {"order", F.order()},
            {"transitive", r.transitive},
            {"stabilizer", stab},
            {"stabilizer_order", r.stabilizer_order},
            {"fixed_points", one_based(r.fixed_points)},
            {"fp_at_least_3", r.fp_at_least_3},
            {"discrete", r.discrete},
            {"normalizer_quotient_order", r.normalizer_quotient_order},
            {"hypothesis_met", r.hypothesis_met}});
}

void run_hecke(const std::string& group, const std::string& subgroup, std::size_t degree) {
  std::optional<HeckePreset> preset;
  FiniteGroup Q;
  FiniteGroup::Subset k;
  if (group.find('(') == std::string::npos) {
    preset = hecke_preset(group);
    Q = preset->Q;
    k = preset->k;
  } else {
    require(degree >= 1, ErrorKind::validation, "--degree is required with generator input");
    Q = FiniteGroup(PermGroup::parse(group, degree));
  }
  if (!subgroup.empty()) {
    std::size_t deg = Q.perm(0).degree();
    std::vector<int> gens;
    for (const auto& p : PermGroup::parse(subgroup, deg).generators()) gens.push_back(Q.index_of(p));
    k = Q.generate(gens);
  }
  require(!k.empty(), ErrorKind::validation, "--subgroup is required with generator input");
  HeckeAlgebra H(Q, k);
  json basis = json::array();
  for (std::size_t i = 0; i < H.dimension(); ++i) basis.push_back({{"rep", Q.label(H.representative(i))}, {"size", H.coset(i).size()}});
  json tensor = json::array();
  for (std::size_t i = 0; i < H.dimension(); ++i)
    for (std::size_t j = 0; j < H.dimension(); ++j)
      for (std::size_t l = 0; l < H.dimension(); ++l)
        if (auto c = H.structure_constant(i, j, l)) tensor.push_back({i + 1, j + 1, l + 1, c});
  auto n = Q.normalizer(k);
  json comm{{"trivial", corner_commutant_dimension(H, {0})},
            {"subgroup", corner_commutant_dimension(H, k)},
            {"normalizer", corner_commutant_dimension(H, n)}};
  emit(json{{"group_order", Q.size()},
            {"subgroup_order", k.size()},
            {"normalizer_order", n.size()},
            {"basis", basis},
            {"tensor", tensor},
            {"associative", H.associative()},
            {"unital", H.unital()},
            {"mass_identity", H.mass_identity()},
            {"commutant_dimension", comm},
            {"note", "finite double-coset algebra; factoriality concerns the infinite limit and is not decided here"}});
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::validation:
    case ErrorKind::parse: return 2;
    case ErrorKind::resource_limit: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for Neretin groups, HNN extensions, amalgams and Hecke algebras"};
  app.require_subcommand(1);

  ElementArgs el;
  auto* sc_el = app.add_subcommand("element", "compose, invert, canonicalize or test membership of elements");
  sc_el->add_option("action", el.action)->required()->check(CLI::IsMember({"compose", "invert", "canonical", "member"}));
  sc_el->add_option("--d", el.d);
  sc_el->add_option("--k", el.k);
  sc_el->add_option("--a,--element", el.a)->required();
  sc_el->add_option("--b", el.b);
  sc_el->add_option("--class", el.cls, "N, O, K, K_n or O_n");
  sc_el->add_option("--level", el.level);

  FourierArgs fo;
  auto* sc_fo = app.add_subcommand("fourier", "Fourier coefficients of finitary measures");
  sc_fo->add_option("action", fo.action)->required()->check(CLI::IsMember({"coeff", "check-partition", "check-hilbert"}));
  sc_fo->add_option("--d", fo.d);
  sc_fo->add_option("--k", fo.k);
  sc_fo->add_option("--measure", fo.measure, "measure JSON, or @file");
  sc_fo->add_option("--coset", fo.coset, "coset representative (default: identity)");
  sc_fo->add_option("--level", fo.level);
  sc_fo->add_option("--to", fo.to);
  sc_fo->add_option("--conjugators", fo.conjugators, "level2-sym or ';'-separated elements");
  sc_fo->add_flag("--average", fo.average, "average the measure over the conjugators first");
  sc_fo->add_option("--seed", fo.seed);

  StarArgs st;
  auto* sc_st = app.add_subcommand("star", "witness bounds times squared Haar measures");
  sc_st->add_option("--d", st.d);
  sc_st->add_option("--k", st.k);
  sc_st->add_option("--element", st.element);
  sc_st->add_option("--from", st.from);
  sc_st->add_option("--to", st.to);
  sc_st->add_option("--format", st.format)->check(CLI::IsMember({"json", "csv"}));
  sc_st->add_flag("--certificate", st.certificate, "add the growth certificate");

  OrbitArgs ob;
  auto* sc_ob = app.add_subcommand("orbit", "certified lower bound for a conjugation orbit of cosets");
  sc_ob->add_option("--d", ob.d);
  sc_ob->add_option("--k", ob.k);
  sc_ob->add_option("--element", ob.element);
  sc_ob->add_option("--level", ob.level);
  sc_ob->add_option("--budget", ob.budget);
  sc_ob->add_option("--gens", ob.gens, "default or depth1");

  GroupArgs nf, wi;
  auto add_group = [](CLI::App* sc, GroupArgs& g) {
    sc->add_option("kind", g.kind)->required()->check(CLI::IsMember({"hnn", "afp"}));
    sc->add_option("--instance", g.instance, "bs, c4, klein (hnn); s3c2, c6c4 (afp)");
    sc->add_option("--word", g.word)->required();
    sc->add_option("--p", g.p);
    sc->add_option("--q", g.q);
  };
  auto* sc_nf = app.add_subcommand("nf", "normal forms in HNN extensions and amalgams");
  add_group(sc_nf, nf);
  auto* sc_wi = app.add_subcommand("witness", "conjugators with pairwise distinct conjugate cosets");
  add_group(sc_wi, wi);
  sc_wi->add_option("--m", wi.m);
  sc_wi->add_option("--nmax", wi.nmax);
  sc_wi->add_option("--x1", wi.x1);
  sc_wi->add_option("--xm1", wi.xm1);
  sc_wi->add_option("--a1", wi.a1);
  sc_wi->add_option("--a2", wi.a2);
  sc_wi->add_option("--b", wi.b);
  sc_wi->add_flag("--strict", wi.strict, "require a_1, a_2, b to normalize K");

  std::size_t bm_degree = 0;
  std::string bm_gens;
  auto* sc_bm = app.add_subcommand("bm-check", "Burger-Mozes hypothesis check for F <= S_d");
  sc_bm->add_option("--degree", bm_degree)->required();
  sc_bm->add_option("--gens", bm_gens)->required();

  std::string hk_group, hk_sub;
  std::size_t hk_degree = 0;
  auto* sc_hk = app.add_subcommand("hecke", "double-coset algebra of a finite pair");
  sc_hk->add_option("--group", hk_group, "s3, aut-tree-2, s4, or generators")->required();
  sc_hk->add_option("--subgroup", hk_sub);
  sc_hk->add_option("--degree", hk_degree);

  std::uint64_t self_seed = 7;
  auto* sc_self = app.add_subcommand("selftest", "run the invariant suite");
  sc_self->add_option("--seed", self_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sc_el->parsed()) run_element(el);
    else if (sc_fo->parsed()) run_fourier(fo);
    else if (sc_st->parsed()) run_star(st);
    else if (sc_ob->parsed()) run_orbit(ob);
    else if (sc_nf->parsed()) run_group(nf, false);
    else if (sc_wi->parsed()) run_group(wi, true);
    else if (sc_bm->parsed()) run_bm(bm_degree, bm_gens);
    else if (sc_hk->parsed()) run_hecke(hk_group, hk_sub, hk_degree);
    else if (sc_self->parsed()) return cli::run_selftest(self_seed, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
