// atomkit: command-line front end. One JSON document on stdout per run,
// diagnostics on stderr. Exit 0 on success or pass, 1 on a fail verdict,
// 2 on usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "atomkit/atoms.hpp"
#include "atomkit/audit.hpp"
#include "atomkit/errors.hpp"
#include "atomkit/json_io.hpp"
#include "atomkit/presheaf.hpp"

using namespace atomkit;
using nlohmann::json;

namespace {

struct Options {
  std::string site = "finsetinj";
  std::size_t depth = 3;
  std::size_t bound = 2;
  std::string variant = "derived";
  std::string out;
  std::string condition = "all";
  std::string object_key;
  std::string element;
  std::size_t max_size = 3;
  std::vector<std::string> files;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void need_files(const Options& o, std::size_t n, const std::string& usage) {
  if (o.files.size() != n) throw ValidationError("expected " + std::to_string(n) + " input file(s): " + usage);
}

Backend backend(const Options& o) { return backend_from_string(o.site); }

Morphism morphism_file(const Options& o, std::size_t k) {
  return json_io::decode_morphism(read_json(o.files.at(k)), backend(o));
}

FormalAtom atom_file(const Options& o, std::size_t k) { return json_io::decode_atom(read_json(o.files.at(k)), backend(o)); }

json atom_summary(const FormalAtom& a) {
  return {{"atom", json_io::encode(a)}, {"group_order", a.group.order()}, {"group", group_name(a)}, {"key", a.base.key()}};
}

json square_json(const PullbackSquare& sq) {
  return {{"apex", json_io::encode(sq.apex)},
          {"to_first", json_io::encode(sq.to_left)},
          {"to_second", json_io::encode(sq.to_right)}};
}

int verdict_code(const CheckVerdict& v) { return v.status == Status::fail ? 1 : 0; }

// --- tree -------------------------------------------------------------------

int run_tree(const std::string& cmd, const Options& o, json& out) {
  auto tree_file = [&](std::size_t k) { return json_io::decode_object(read_json(o.files.at(k)), Backend::itree).tree(); };
  auto emb_file = [&](std::size_t k) {
    return json_io::decode_morphism(read_json(o.files.at(k)), Backend::itree).embedding();
  };
  if (cmd == "validate") {
    need_files(o, 1, "tree validate TREE");
    const auto t = tree_file(0);
    out = {{"valid", true}, {"tree", json_io::encode(ObjectRef(t))}, {"key", t.key()}};
  } else if (cmd == "stats") {
    need_files(o, 1, "tree stats TREE");
    const auto s = itree::tree_stats(tree_file(0));
    out = {{"branch_count", s.branch_count}, {"f_count", s.f_count}, {"rank", s.rank.components}};
  } else if (cmd == "embeddings") {
    need_files(o, 2, "tree embeddings X Y");
    const auto es = itree::enumerate_embeddings(tree_file(0), tree_file(1));
    json list = json::array();
    for (const auto& e : es) list.push_back(json_io::encode(Morphism(e)));
    out = {{"count", es.size()}, {"embeddings", list}};
  } else if (cmd == "amalgamate") {
    need_files(o, 2, "tree amalgamate X_TO_A X_TO_B");
    const auto am = itree::tree_amalgamate(emb_file(0), emb_file(1));
    out = {{"apex", json_io::encode(ObjectRef(am.apex))},
           {"from_first", json_io::encode(Morphism(am.from_first))},
           {"from_second", json_io::encode(Morphism(am.from_second))}};
  } else if (cmd == "pullback") {
    need_files(o, 2, "tree pullback F G");
    out = square_json(site::pullback(emb_file(0), emb_file(1)));
  } else if (cmd == "regmono") {
    need_files(o, 1, "tree regmono EMBEDDING");
    const auto e = emb_file(0);
    const auto w = itree::regular_mono_witness(e);
    const auto eq = itree::equalizer(w.first, w.second);
    out = {{"target", json_io::encode(ObjectRef(w.target))},
           {"first", json_io::encode(Morphism(w.first))},
           {"second", json_io::encode(Morphism(w.second))},
           {"equalizer", json_io::encode(Morphism(eq))},
           {"equalizer_is_image", itree::same_image(eq, e)}};
  } else if (cmd == "c2prime") {
    need_files(o, 4, "tree c2prime X_IN Y_IN U V");
    const auto x = emb_file(0), y = emb_file(1), u = emb_file(2), v = emb_file(3);
    const auto w = itree::c2prime_witness(x, y, u, v);
    const bool ok = itree::compose(x, u) == itree::compose(x, w) && itree::compose(y, w) == itree::compose(y, v);
    out = {{"w", json_io::encode(Morphism(w))}, {"chain_verified", ok}};
    return ok ? 0 : 1;
  } else {
    throw ValidationError("unknown tree command '" + cmd + "'");
  }
  return 0;
}

// --- atoms ------------------------------------------------------------------

int run_atoms(const std::string& cmd, const Options& o, json& out) {
  const QuantifierRule rule = quantifier_rule_from_string(o.variant);
  if (cmd == "make") {
    need_files(o, 1, "atoms make ATOM");
    out = atom_summary(atom_file(o, 0));
  } else if (cmd == "hom") {
    need_files(o, 2, "atoms hom SOURCE TARGET");
    const auto maps = atom_hom(atom_file(o, 0), atom_file(o, 1), rule);
    json reps = json::array();
    for (const auto& m : maps) reps.push_back(json_io::encode(m.rep));
    out = {{"count", maps.size()}, {"variant", to_string(rule)}, {"representatives", reps}};
  } else if (cmd == "compose") {
    need_files(o, 5, "atoms compose A B C F_REP G_REP");
    const auto a = atom_file(o, 0), b = atom_file(o, 1), c = atom_file(o, 2);
    const auto f = make_atom_map(a, b, morphism_file(o, 3), rule);
    const auto g = make_atom_map(b, c, morphism_file(o, 4), rule);
    out = {{"representative", json_io::encode(atom_compose(f, g, rule).rep)}};
  } else if (cmd == "iso") {
    need_files(o, 2, "atoms iso A B");
    const auto v = atom_iso_formal(atom_file(o, 0), atom_file(o, 1), rule);
    out = v.to_json();
    return verdict_code(v);
  } else if (cmd == "quotient") {
    need_files(o, 2, "atoms quotient ATOM EXTRA_GENERATORS");
    const json extra = read_json(o.files[1]);
    if (!extra.is_array()) throw ValidationError("extra generators: expected a JSON array of arrows");
    std::vector<Morphism> gens;
    for (const json& m : extra) gens.push_back(json_io::decode_morphism(m, backend(o)));
    const auto q = quotient(atom_file(o, 0), gens);
    out = {{"source", atom_summary(q.source)},
           {"target", atom_summary(q.target)},
           {"representative", json_io::encode(q.rep)}};
  } else {
    throw ValidationError("unknown atoms command '" + cmd + "'");
  }
  return 0;
}

// --- coeq -------------------------------------------------------------------

int run_coeq(const Options& o, json& out) {
  need_files(o, 2, "coeq ALPHA BETA");
  const auto tr = coequalize_representables(morphism_file(o, 0), morphism_file(o, 1));
  json steps = json::array();
  for (const auto& sq : tr.steps) steps.push_back(square_json(sq));
  out = {{"steps", steps},
         {"step_count", tr.steps.size()},
         {"terminal_object", json_io::encode(tr.terminal_object)},
         {"terminal_automorphism", json_io::encode(tr.terminal_automorphism)},
         {"result", atom_summary(tr.result)},
         {"to_source", json_io::encode(tr.to_source)}};
  return 0;
}

// --- presheaf ---------------------------------------------------------------

std::pair<ObjectRef, std::size_t> locate_element(const PresheafFragment& F, const Options& o) {
  if (o.object_key.empty() || o.element.empty()) throw ValidationError("--object and --element are required");
  for (std::size_t i = 0; i < F.objects().size(); ++i)
    if (F.objects()[i].key() == o.object_key) return {F.objects()[i], F.element_index(i, o.element)};
  throw ValidationError("no listed object with key '" + o.object_key + "'");
}

int run_presheaf(const std::string& cmd, const Options& o, json& out) {
  auto fragment = [&]() { return json_io::decode_fragment(read_json(o.files.at(0)), backend(o)); };
  if (cmd == "builtin") {
    need_files(o, 1, "presheaf builtin unordered|ordered");
    if (backend(o) != Backend::finsetinj) throw BackendError("built-in fragments live on finsetinj");
    if (o.files[0] == "unordered") out = json_io::encode(unordered_pairs(o.max_size));
    else if (o.files[0] == "ordered") out = json_io::encode(ordered_pairs(o.max_size));
    else throw ValidationError("unknown built-in fragment '" + o.files[0] + "'");
  } else if (cmd == "support") {
    need_files(o, 1, "presheaf support FRAGMENT --object KEY --element NAME");
    const auto F = fragment();
    const auto [x, p] = locate_element(F, o);
    const auto s = support(F, x, p);
    const std::size_t si = F.require_index(s.inclusion.dom());
    out = {{"support", json_io::encode(s.inclusion.dom())},
           {"inclusion", json_io::encode(s.inclusion)},
           {"element", F.elements(si)[s.element]},
           {"whole", site::is_iso(s.inclusion)}};
  } else if (cmd == "stabilizer") {
    need_files(o, 1, "presheaf stabilizer FRAGMENT --object KEY --element NAME");
    const auto F = fragment();
    const auto [x, p] = locate_element(F, o);
    out = json_io::encode(stabilizer(F, x, p));
  } else if (cmd == "decompose") {
    need_files(o, 1, "presheaf decompose FRAGMENT");
    const auto F = fragment();
    const auto d = decompose(F);
    json multiset = json::array();
    json comps = json::array();
    for (const auto& c : d.components) {
      multiset.push_back({c.atom.base.key(), group_name(c.atom)});
      json members = json::array();
      for (const auto& [yi, q] : c.members) members.push_back({F.objects()[yi].key(), F.elements(yi)[q]});
      const std::size_t xi = F.require_index(c.atom.base);
      comps.push_back({{"atom", json_io::encode(c.atom)},
                       {"group_order", c.atom.group.order()},
                       {"generator", F.elements(xi)[c.generator]},
                       {"members", members}});
    }
    out = {{"multiset", multiset}, {"components", comps}, {"reconstruction_ok", d.reconstruction_ok}};
    return d.reconstruction_ok ? 0 : 1;
  } else if (cmd == "sheafcheck") {
    need_files(o, 2, "presheaf sheafcheck ATOM COVER");
    const auto v = sheaf_check_quotient(atom_file(o, 0), morphism_file(o, 1), o.depth);
    out = v.to_json();
    return verdict_code(v);
  } else if (cmd == "selfint") {
    need_files(o, 1, "presheaf selfint ARROW");
    const auto v = self_intersection_check(morphism_file(o, 0), o.depth);
    out = v.to_json();
    return verdict_code(v);
  } else if (cmd == "computek") {
    need_files(o, 1, "presheaf computek ARROW");
    const auto k = compute_K(morphism_file(o, 0), o.depth);
    json chain = json::array();
    for (const auto& j : k.chain) chain.push_back(json_io::encode(j));
    out = {{"K", json_io::encode(k.K)},
           {"j", json_io::encode(k.j)},
           {"i", json_io::encode(k.i)},
           {"G", json_io::encode(k.G)},
           {"chain", chain},
           {"verdict", k.verdict.to_json()}};
    return verdict_code(k.verdict);
  } else if (cmd == "localiso") {
    need_files(o, 3, "presheaf localiso SOURCE_ATOM TARGET_ATOM REPRESENTATIVE");
    const auto m = make_atom_map(atom_file(o, 0), atom_file(o, 1), morphism_file(o, 2),
                                 quantifier_rule_from_string(o.variant));
    const auto v = local_iso_check(m, o.depth);
    out = v.to_json();
    return verdict_code(v);
  } else {
    throw ValidationError("unknown presheaf command '" + cmd + "'");
  }
  return 0;
}

// --- audit ------------------------------------------------------------------

int run_audit(const Options& o, json& out) {
  const Backend b = backend(o);
  std::vector<AuditReport> reports;
  const std::string& c = o.condition;
  if (c != "all" && c != "c1" && c != "c2prime" && c != "c3" && c != "c4")
    throw ValidationError("--condition must be one of c1, c2prime, c3, c4, all");
  if (c == "all" || c == "c1")
    for (auto& r : audit_c1(b, o.bound)) reports.push_back(std::move(r));
  if (c == "all" || c == "c2prime") reports.push_back(audit_c2prime(b, o.bound));
  if (c == "all" || c == "c3") reports.push_back(audit_c3(b, o.bound));
  if (c == "all" || c == "c4") reports.push_back(audit_c4(b, o.bound));
  json list = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    std::cerr << r.table();
    list.push_back(r.to_json(false));
    ok = ok && r.all_pass();
  }
  out = {{"reports", list}, {"all_pass", ok}};
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomkit: atoms of atomic sites over finite sets and labeled trees"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--site", o.site, "finsetinj or itree")->check(CLI::IsMember({"finsetinj", "itree"}));
    sub->add_option("--depth", o.depth, "search depth for bounded checks");
    sub->add_option("--bound", o.bound, "object bound for audits");
    sub->add_option("--variant", o.variant, "atom-map rule: derived or paper")->check(CLI::IsMember({"derived", "paper"}));
    sub->add_option("--out", o.out, "write the JSON result to this path");
  };

  std::string cmd;
  auto* tree = app.add_subcommand("tree", "finitary trees and embeddings");
  tree->add_option("command", cmd, "validate|stats|embeddings|amalgamate|pullback|regmono|c2prime")->required();
  tree->add_option("files", o.files, "input JSON files");
  common(tree);

  auto* atoms = app.add_subcommand("atoms", "formal atoms and their maps");
  atoms->add_option("command", cmd, "make|hom|compose|iso|quotient")->required();
  atoms->add_option("files", o.files, "input JSON files");
  common(atoms);

  auto* coeq = app.add_subcommand("coeq", "coequalizer of two representable atom maps");
  coeq->add_option("files", o.files, "ALPHA BETA");
  common(coeq);

  auto* presheaf = app.add_subcommand("presheaf", "presheaf fragments and sheaf checks");
  presheaf->add_option("command", cmd, "support|stabilizer|decompose|sheafcheck|selfint|computek|localiso|builtin")
      ->required();
  presheaf->add_option("files", o.files, "input JSON files");
  presheaf->add_option("--object", o.object_key, "object key inside the fragment");
  presheaf->add_option("--element", o.element, "element name inside the fragment");
  presheaf->add_option("--max", o.max_size, "largest finite set for built-in fragments");
  common(presheaf);

  auto* audit = app.add_subcommand("audit", "bounded audit of the site conditions");
  audit->add_option("--condition", o.condition, "c1|c2prime|c3|c4|all");
  common(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  json out;
  int code = 0;
  try {
    if (tree->parsed()) {
      if (o.site == "finsetinj" && tree->count("--site")) throw BackendError("tree commands need --site itree");
      o.site = "itree";
      code = run_tree(cmd, o, out);
    } else if (atoms->parsed()) {
      code = run_atoms(cmd, o, out);
    } else if (coeq->parsed()) {
      code = run_coeq(o, out);
    } else if (presheaf->parsed()) {
      code = run_presheaf(cmd, o, out);
    } else {
      code = run_audit(o, out);
    }
  } catch (const Error& e) {
    std::cerr << "atomkit: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "atomkit: malformed input: " << e.what() << "\n";
    return 2;
  }

  const std::string text = out.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "atomkit: cannot write '" << o.out << "'\n";
      return 2;
    }
    f << text;
  }
  return code;
}
