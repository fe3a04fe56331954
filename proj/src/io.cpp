#include "ploc/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "ploc/cohomology.hpp"
#include "ploc/locext.hpp"
#include "ploc/transporter.hpp"

namespace ploc {

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

namespace {

struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<int> lines;
  std::size_t at = 0;

  explicit TokenStream(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        tokens.push_back(tok);
        lines.push_back(lineno);
      }
    }
  }
  bool done() const { return at >= tokens.size(); }
  int line() const { return done() ? (lines.empty() ? 0 : lines.back()) : lines[at]; }
  std::string next(const char* what) {
    if (done()) throw ParseError(std::string("expected ") + what + ", got end of input", line());
    return tokens[at++];
  }
  std::string peek() const { return done() ? std::string() : tokens[at]; }
  long next_int(const char* what) {
    std::string t = next(what);
    try {
      std::size_t used = 0;
      long v = std::stol(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (...) {
      throw ParseError(std::string("expected integer for ") + what + ", got '" + t + "'", line());
    }
  }
};

std::vector<int> parse_perm(const std::string& tok, int degree, int lineno) {
  std::vector<int> img;
  std::istringstream is(tok);
  std::string part;
  while (std::getline(is, part, ',')) {
    try {
      img.push_back(std::stoi(part));
    } catch (...) {
      throw ParseError("bad permutation entry '" + part + "'", lineno);
    }
  }
  if (static_cast<int>(img.size()) != degree) throw ParseError("permutation has wrong degree", lineno);
  return img;
}

PartialGroup parse_group_stream(TokenStream& ts) {
  std::string head = ts.next("group/partial");
  if (head == "group") {
    std::string kind = ts.next("permutation/table");
    if (kind == "permutation") {
      int degree = static_cast<int>(ts.next_int("degree"));
      std::vector<std::vector<int>> gens;
      while (!ts.done() && ts.peek() != "end") gens.push_back(parse_perm(ts.next("generator"), degree, ts.line()));
      if (!ts.done()) ts.next("end");
      return make_from_permutations(degree, gens);
    }
    if (kind == "table") {
      int n = static_cast<int>(ts.next_int("n"));
      std::vector<Element> table;
      for (int i = 0; i < n * n; ++i) table.push_back(static_cast<Element>(ts.next_int("table entry")));
      if (!ts.done() && ts.peek() == "end") ts.next("end");
      return make_group_like(SmallGroup::from_table(std::move(table)));
    }
    throw ParseError("unknown group kind '" + kind + "'", ts.line());
  }
  if (head == "partial") {
    std::string kind = ts.next("table");
    if (kind != "table") throw ParseError("expected 'partial table'", ts.line());
    ExplicitTableSpec spec;
    spec.size = static_cast<int>(ts.next_int("n"));
    while (!ts.done()) {
      std::string key = ts.next("unit/inv/prod/accept/maxlen/end");
      if (key == "end") break;
      if (key == "unit") {
        spec.unit = static_cast<Element>(ts.next_int("unit"));
      } else if (key == "inv") {
        spec.inv.clear();
        for (int i = 0; i < spec.size; ++i) spec.inv.push_back(static_cast<Element>(ts.next_int("inv entry")));
      } else if (key == "prod") {
        Element a = static_cast<Element>(ts.next_int("a"));
        Element b = static_cast<Element>(ts.next_int("b"));
        Element c = static_cast<Element>(ts.next_int("ab"));
        spec.prod.push_back({a, b, c});
      } else if (key == "accept") {
        long len = ts.next_int("word length");
        Word w;
        for (long i = 0; i < len; ++i) w.push_back(static_cast<Element>(ts.next_int("letter")));
        spec.accepted.push_back(std::move(w));
      } else if (key == "maxlen") {
        spec.max_len = static_cast<int>(ts.next_int("maxlen"));
      } else {
        throw ParseError("unknown key '" + key + "' in partial table", ts.line());
      }
    }
    return make_explicit_table(std::move(spec));
  }
  throw ParseError("unknown input '" + head + "'", ts.line());
}

std::optional<PartialGroup> builtin_group(const std::string& name) {
  if (name == "z2") return make_cyclic(2);
  if (name == "z3") return make_cyclic(3);
  if (name == "z4") return make_cyclic(4);
  if (name == "z5") return make_cyclic(5);
  if (name == "z6") return make_cyclic(6);
  if (name == "klein") return make_klein4();
  if (name == "s3") return make_symmetric(3);
  if (name == "s4") return make_symmetric(4);
  if (name == "a4") return make_alternating4();
  if (name == "d8") return make_dihedral8();
  if (name == "q8") return make_quaternion8();
  return std::nullopt;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

PartialGroup parse_partial_group(const std::string& ref) {
  if (auto b = builtin_group(ref)) return *b;
  std::istringstream in(slurp(ref));
  TokenStream ts(in);
  return parse_group_stream(ts);
}

Locality parse_locality(const std::string& ref) {
  auto c1 = ref.find(':');
  auto c2 = ref.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ParseError("locality reference must be <group>:<p>:<policy>", 0);
  std::string gref = ref.substr(0, c1);
  int p = 0;
  try {
    p = std::stoi(ref.substr(c1 + 1, c2 - c1 - 1));
  } catch (...) {
    throw ParseError("bad prime in locality reference", 0);
  }
  std::string pol = ref.substr(c2 + 1);
  DeltaPolicy policy;
  if (pol == "all")
    policy = DeltaPolicy::AllSubgroups;
  else if (pol == "centric")
    policy = DeltaPolicy::Centric;
  else if (pol == "centric-radical")
    policy = DeltaPolicy::CentricRadical;
  else
    throw ParseError("unknown delta policy '" + pol + "'", 0);
  PartialGroup g = parse_partial_group(gref);
  return locality_from_group(group_of(g), p, policy);
}

ParsedPair parse_pair_file(const std::string& path) {
  std::istringstream in(slurp(path));
  TokenStream ts(in);
  if (ts.next("pair") != "pair") throw ParseError("pair file must start with 'pair'", ts.line());
  ParsedPair out;
  out.fibre_ref = ts.next("fibre ref");
  out.base_ref = ts.next("base ref");
  out.fibre = parse_partial_group(out.fibre_ref);
  out.base = parse_partial_group(out.base_ref);
  out.t.assign(static_cast<std::size_t>(out.base.size()), -1);
  while (!ts.done()) {
    std::string key = ts.next("t/eta/end");
    if (key == "end") break;
    if (key == "t") {
      long g = ts.next_int("base element");
      long idx = ts.next_int("aut index");
      if (g < 0 || g >= out.base.size()) throw ParseError("t: base element out of range", ts.line());
      out.t[static_cast<std::size_t>(g)] = static_cast<int>(idx);
    } else if (key == "eta") {
      Element g = static_cast<Element>(ts.next_int("g"));
      Element h = static_cast<Element>(ts.next_int("h"));
      Element v = static_cast<Element>(ts.next_int("value"));
      out.eta.push_back({g, h, v});
    } else {
      throw ParseError("unknown key '" + key + "' in pair file", ts.line());
    }
  }
  return out;
}

// ---- command implementations -------------------------------------------------

namespace {

struct Emitter {
  std::ostream& out;
  OutputFormat fmt;
  void kv(const std::string& key, const std::string& val) {
    if (fmt == OutputFormat::Kv)
      out << key << " " << val << "\n";
    else
      out << key << ": " << val << "\n";
  }
  void kv(const std::string& key, long val) { kv(key, std::to_string(val)); }
  void kv(const std::string& key, bool val) { kv(key, std::string(val ? "yes" : "no")); }
};

void provenance(const Job& job, std::ostream& out) {
  out << "# ploc " << kToolVersion << "\n";
  out << "# verb " << job.verb << "\n";
  for (const auto& a : job.args) {
    std::string digest;
    std::ifstream f(a, std::ios::binary);
    if (f) {
      std::ostringstream os;
      os << f.rdbuf();
      digest = fnv1a_digest(os.str());
    } else {
      digest = fnv1a_digest(a);
    }
    out << "# input " << a << " fnv1a=" << digest << "\n";
  }
  out << "# flags bound=" << job.bound << " budget=" << job.budget << " aut-budget=" << job.aut_budget
      << " seed=" << job.seed << " p=" << job.prime << " action=" << job.action << "\n";
}

OuterAction action_from_flag(const std::string& flag, const PartialGroup& fibre, const PartialGroup& base) {
  if (flag == "trivial") return trivial_outer_action(fibre, base);
  if (flag == "inversion") {
    auto aut = enumerate_automorphisms(fibre);
    std::vector<Element> invmap(static_cast<std::size_t>(fibre.size()));
    for (Element x = 0; x < fibre.size(); ++x) invmap[static_cast<std::size_t>(x)] = fibre.inv(x);
    int idx = aut.index_of(invmap);
    if (idx < 0) throw ParseError("inversion is not an automorphism of the fibre", 0);
    int cls = aut.outer_class_of(idx);
    std::vector<int> eps(static_cast<std::size_t>(base.size()), cls);
    int id_class = aut.outer_class_of(aut.identity_index());
    eps[static_cast<std::size_t>(base.unit())] = id_class;
    for (Element g = 0; g < base.size(); ++g) {
      // elements of even order over the unit class keep the morphism property
      if (g == base.unit()) continue;
      // alternate classes along powers: g acts by inversion iff its image in
      // Z/2 is nontrivial; for cyclic bases this is g's parity
      eps[static_cast<std::size_t>(g)] = cls;
    }
    return make_outer_action(fibre, base, std::move(eps));
  }
  throw ParseError("unknown action '" + flag + "' (use trivial or inversion)", 0);
}

int cmd_check_axioms(const Job& job, Emitter& em) {
  PartialGroup m = parse_partial_group(job.args.at(0));
  auto rep = check_axioms(m, job.bound);
  for (const auto& l : rep.laws) {
    em.kv(std::string("axiom.") + law_name(l.law), l.pass);
    if (!l.pass) em.kv(std::string("witness.") + law_name(l.law), word_to_string(l.witness));
  }
  em.kv("all-pass", rep.all_pass());
  return rep.all_pass() ? 0 : 1;
}

int cmd_invariants(const Job& job, Emitter& em) {
  PartialGroup m = parse_partial_group(job.args.at(0));
  auto n = compute_normalizer(m, job.bound);
  auto z = compute_center(n);
  auto aut = enumerate_automorphisms(m, job.aut_budget, job.bound);
  auto seq = verify_exact_sequence(m, n, z, aut);
  em.kv("normalizer.order", seq.n_order);
  em.kv("center.order", seq.z_order);
  em.kv("aut.order", seq.aut_order);
  em.kv("inn.order", seq.inn_order);
  em.kv("out.order", seq.out_order);
  em.kv("exact-sequence", seq.ok());
  for (int i = 0; i < aut.order(); ++i) {
    std::ostringstream os;
    for (Element x = 0; x < m.size(); ++x) {
      if (x) os << ",";
      os << aut.autos[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
    }
    em.kv("aut." + std::to_string(i), os.str());
  }
  return seq.ok() ? 0 : 1;
}

TwistingPair pair_from_parsed(const ParsedPair& pp) {
  auto aut = enumerate_automorphisms(pp.fibre);
  auto norm = compute_normalizer(pp.fibre);
  std::vector<int> t(pp.t);
  for (std::size_t g = 0; g < t.size(); ++g) {
    if (t[g] < 0) t[g] = aut.identity_index();
    if (t[g] >= aut.order()) throw ParseError("aut index out of range in pair file", 0);
  }
  return make_twisting_pair(pp.fibre, pp.base, std::move(aut), std::move(norm), std::move(t), pp.eta);
}

int cmd_extend(const Job& job, Emitter& em) {
  auto pp = parse_pair_file(job.args.at(0));
  TwistingPair pair = pair_from_parsed(pp);
  auto cert = validate_twisting_pair(pair);
  em.kv("pair.valid", cert.valid);
  if (!cert.valid) {
    em.kv("pair.witness", word_to_string(cert.witness));
    em.kv("pair.detail", cert.detail);
    return 1;
  }
  auto ext = build_extension(pair);
  em.kv("extension.order", static_cast<long>(ext.size()));
  auto rep = check_theorem_A(ext, job.bound);
  em.kv("axioms.pass", rep.axioms.all_pass());
  em.kv("enumerating-injective", rep.enumerating_injective);
  em.kv("edge-formula", rep.edge_formula);
  em.kv("inversion", rep.inversion_ok);
  em.kv("theorem-A", rep.pass());
  return rep.pass() ? 0 : 1;
}

int cmd_classify(const Job& job, Emitter& em) {
  PartialGroup fibre = parse_partial_group(job.args.at(0));
  PartialGroup base = parse_partial_group(job.args.at(1));
  OuterAction act = action_from_flag(job.action, fibre, base);
  auto rep = classify_extensions(act, job.budget);
  em.kv("valid-pairs", static_cast<long>(rep.valid_pairs.size()));
  em.kv("classes", static_cast<long>(rep.classes.size()));
  em.kv("h2", rep.h2);
  em.kv("counts-match", rep.counts_match);
  return rep.counts_match ? 0 : 1;
}

int cmd_obstruction(const Job& job, Emitter& em) {
  PartialGroup fibre = parse_partial_group(job.args.at(0));
  PartialGroup base = parse_partial_group(job.args.at(1));
  OuterAction act = action_from_flag(job.action, fibre, base);
  auto ob = obstruction_class(act, job.seed, job.budget);
  em.kv("kappa.is-cocycle", ob.is_cocycle);
  em.kv("kappa.is-coboundary", ob.is_coboundary);
  std::ostringstream os;
  for (Element v : ob.kappa) os << v;
  em.kv("kappa", os.str().empty() ? "0" : os.str());
  return ob.is_cocycle ? 0 : 1;
}

int cmd_locality_from_group(const Job& job, Emitter& em) {
  Locality loc = parse_locality(job.args.at(0) + ":" + job.args.at(1) + ":" + job.args.at(2));
  em.kv("carrier", static_cast<long>(loc.pg.size()));
  em.kv("s.order", static_cast<long>(loc.s_elements.size()));
  em.kv("delta.count", static_cast<long>(loc.delta.size()));
  auto rep = verify_locality(loc, job.bound);
  em.kv("locality-axioms", rep.ok());
  return rep.ok() ? 0 : 1;
}

int cmd_fusion_report(const Job& job, Emitter& em) {
  Locality loc = parse_locality(job.args.at(0) + ":" + job.args.at(1) + ":" + job.args.at(2));
  FusionSystem f = fusion_system(loc);
  auto rep = subgroup_classifiers(f, job.aut_budget > 64 ? job.aut_budget : 64);
  for (const auto& i : rep.info) {
    std::ostringstream key;
    key << "subgroup." << i.subgroup;
    std::ostringstream val;
    val << (i.centric ? "centric " : "") << (i.radical ? "radical " : "")
        << (i.fully_normalized ? "fully-normalized " : "") << (i.fully_centralized ? "fully-centralized " : "")
        << (i.weakly_closed ? "weakly-closed " : "") << (i.strongly_closed ? "strongly-closed " : "")
        << (i.normal ? "normal " : "") << (i.central ? "central " : "");
    std::string v = val.str();
    if (!v.empty()) v.pop_back();
    em.kv(key.str(), v.empty() ? "-" : v);
  }
  em.kv("center-of-F", static_cast<long>(rep.center));
  return 0;
}

int cmd_saturation(const Job& job, Emitter& em) {
  Locality loc = parse_locality(job.args.at(0) + ":" + job.args.at(1) + ":" + job.args.at(2));
  FusionSystem f = fusion_system(loc);
  auto rep = check_saturation(f);
  em.kv("axiom-I", rep.axiom_I);
  em.kv("axiom-II", rep.axiom_II);
  em.kv("saturated", rep.saturated());
  return rep.saturated() ? 0 : 1;
}

int cmd_extend_locality(const Job& job, Emitter& em, bool goodness) {
  Locality fibre = parse_locality(job.args.at(0));
  Locality base = parse_locality(job.args.at(1));
  auto pp = parse_pair_file(job.args.at(2));
  std::vector<int> t(pp.t);
  auto raut = restricted_aut(fibre.pg, fibre.s_elements, job.aut_budget, job.bound);
  for (std::size_t g = 0; g < t.size(); ++g)
    if (t[g] < 0) t[g] = raut.aut.identity_index();
  auto ext = make_isotypical_extension(fibre, base, std::move(t), pp.eta, job.aut_budget);
  auto ind = build_sylow_and_delta(ext);
  em.kv("total.order", static_cast<long>(ext.total.size()));
  em.kv("T.order", static_cast<long>(ind.T.pg.size()));
  em.kv("S.order", static_cast<long>(ind.s_total.size()));
  em.kv("delta.count", static_cast<long>(ind.T.delta.size()));
  if (!goodness) return 0;
  auto rig = check_rigid_admissible(ext);
  em.kv("rigid", rig.rigid);
  em.kv("admissible", rig.admissible);
  auto good = check_good(ind);
  em.kv("fibre-in-T", good.fibre_in_T);
  em.kv("fibre-partial-normal", good.fibre_partial_normal);
  em.kv("delta-has-centric-radicals", good.delta_has_centric_radicals);
  em.kv("T-fusion-saturated", good.t_fusion_saturated);
  em.kv("fibre-normal-subsystem", good.fibre_normal.normal());
  em.kv("good", good.good());
  return good.good() ? 0 : 1;
}

int cmd_from_group_extension(const Job& job, Emitter& em, bool goodness) {
  PartialGroup kg = parse_partial_group(job.args.at(0));
  PartialGroup gg = parse_partial_group(job.args.at(1));
  PartialGroup qg = parse_partial_group(job.args.at(2));
  const SmallGroup& g = group_of(gg);
  const SmallGroup& k = group_of(kg);
  const SmallGroup& q = group_of(qg);

  // locate K as a normal subgroup of G with quotient Q
  Mask kernel = 0;
  bool found = false;
  for (Mask m : g.subgroups()) {
    if (mask_size(m) != k.size() || !g.is_normal_in(m, g.all_mask())) continue;
    auto sub = g.subgroup_group(m);
    if (!find_isomorphism(make_group_like(sub), make_group_like(k))) continue;
    auto quo = g.quotient(m);
    if (!find_isomorphism(make_group_like(quo), make_group_like(q))) continue;
    kernel = m;
    found = true;
    break;
  }
  if (!found) throw ParseError("no normal subgroup of G matches K with quotient Q", 0);

  auto data = group_extension_to_locality_extension(g, kernel, job.prime);
  em.kv("kernel.mask", static_cast<long>(kernel));
  em.kv("total.order", static_cast<long>(data.ext.total.size()));
  auto ind = build_sylow_and_delta(data.ext);
  em.kv("T.order", static_cast<long>(ind.T.pg.size()));
  em.kv("S.order", static_cast<long>(ind.s_total.size()));
  if (!job.out_path.empty()) {
    std::ofstream f(job.out_path);
    f << "pair " << job.args.at(0) << " " << job.args.at(1) << "\n";
    for (Element gl = 0; gl < data.ext.base.pg.size(); ++gl)
      f << "t " << gl << " " << data.ext.pair.psi_index(gl) << "\n";
    for (Element g1 = 0; g1 < data.ext.base.pg.size(); ++g1)
      for (Element g2 = 0; g2 < data.ext.base.pg.size(); ++g2)
        if (data.ext.base.pg.defined2(g1, g2))
          f << "eta " << g1 << " " << g2 << " " << data.ext.pair.eta_at(g1, g2) << "\n";
    f << "end\n";
    em.kv("pair-file", job.out_path);
  }
  if (!goodness) return 0;
  auto rig = check_rigid_admissible(data.ext);
  em.kv("rigid", rig.rigid);
  em.kv("admissible", rig.admissible);
  auto good = check_good(ind);
  em.kv("good", good.good());
  em.kv("T-fusion-saturated", good.t_fusion_saturated);
  em.kv("fibre-normal-subsystem", good.fibre_normal.normal());
  return good.good() ? 0 : 1;
}

int cmd_transporter(const Job& job, Emitter& em, bool quotient) {
  Locality loc = parse_locality(job.args.at(0) + ":" + job.args.at(1) + ":" + job.args.at(2));
  TransporterSystem t = transporter_of_locality(loc);
  em.kv("objects", static_cast<long>(t.objects().size()));
  em.kv("morphisms", static_cast<long>(t.mor_count()));
  auto rep = check_transporter_axioms(t);
  em.kv("axioms", rep.ok());
  if (!rep.ok()) em.kv("detail", rep.detail);
  if (!quotient) return rep.ok() ? 0 : 1;
  auto q = quotient_to_locality(t);
  em.kv("quotient.carrier", static_cast<long>(q.pg.size()));
  bool iso = find_isomorphism(q.pg, loc.pg).has_value();
  em.kv("roundtrip-isomorphic", iso);
  return rep.ok() && iso ? 0 : 1;
}

}  // namespace

int run(const Job& job, std::ostream& out, std::ostream& err) {
  Emitter em{out, job.format};
  try {
    provenance(job, out);
    if (job.verb == "check-axioms") return cmd_check_axioms(job, em);
    if (job.verb == "invariants") return cmd_invariants(job, em);
    if (job.verb == "extend") return cmd_extend(job, em);
    if (job.verb == "classify-extensions") return cmd_classify(job, em);
    if (job.verb == "obstruction") return cmd_obstruction(job, em);
    if (job.verb == "locality from-group") return cmd_locality_from_group(job, em);
    if (job.verb == "fusion report") return cmd_fusion_report(job, em);
    if (job.verb == "saturation") return cmd_saturation(job, em);
    if (job.verb == "extend-locality") return cmd_extend_locality(job, em, false);
    if (job.verb == "goodness") {
      if (!job.args.empty() && job.args.at(0).find(':') != std::string::npos)
        return cmd_extend_locality(job, em, true);
      return cmd_from_group_extension(job, em, true);
    }
    if (job.verb == "from-group-extension") return cmd_from_group_extension(job, em, false);
    if (job.verb == "transporter check") return cmd_transporter(job, em, false);
    if (job.verb == "transporter quotient") return cmd_transporter(job, em, true);
    err << "unknown verb '" << job.verb << "'\n";
    return 2;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ploc
