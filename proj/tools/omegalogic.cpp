// omegalogic command-line tool.
// Exit status: 0 success or check passed, 1 check failed, 2 usage or format error.

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "omegalogic/json_io.hpp"
#include "omegalogic/omegalogic.hpp"
#include "omegalogic/testing/suite.hpp"

#ifndef OMEGALOGIC_VERSION
#define OMEGALOGIC_VERSION "0.0.0"
#endif

namespace ol = omegalogic;
namespace jio = omegalogic::json_io;
using ol::Formula;
using ol::Sequent;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

// Set text: evens | odds | all | empty | 0,3,5 (finite) | PREFIX/PERIOD bit strings.
ol::UPSet parse_set_text(const std::string& s) {
  if (s == "evens") return ol::UPSet::evens();
  if (s == "odds") return ol::UPSet::odds();
  if (s == "all") return ol::UPSet::all();
  if (s == "empty") return ol::UPSet::empty();
  if (auto slash = s.find('/'); slash != std::string::npos)
    return ol::UPSet(jio::unbits(s.substr(0, slash)), jio::unbits(s.substr(slash + 1)));
  std::vector<std::uint64_t> elems;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    try {
      elems.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ol::FormatError("bad set text '" + s + "'");
    }
  return ol::UPSet::finite(elems);
}

std::vector<ol::UPSet> parse_sets(const std::vector<std::string>& texts) {
  std::vector<ol::UPSet> v;
  for (const auto& t : texts) v.push_back(parse_set_text(t));
  return v;
}

std::string describe_set(const ol::UPSet& s) { return s.describe(); }

// ---------------------------------------------------------------- shared option groups

struct OracleOpts {
  std::string file;
  std::vector<std::string> sets;
  void add(CLI::App* app) {
    app->add_option("--oracles", file, "oracle tuple JSON file");
    app->add_option("--oracle", sets, "oracle set (evens|odds|all|empty|0,2,5|PREFIX/PERIOD), repeatable");
  }
  ol::OracleTuple get() const {
    ol::OracleTuple a;
    if (!file.empty()) a = jio::oracles_from_json(jio::read_file(file));
    for (const auto& s : sets) a.sets.push_back(parse_set_text(s));
    return a;
  }
};

struct TheoryOpts {
  std::string file;
  bool base = false;
  bool true_atomic = false;
  void add(CLI::App* app) {
    app->add_option("--theory", file, "theory JSON file");
    app->add_flag("--base-arith", base, "use the built-in base arithmetic theory");
    app->add_flag("--true-atomic", true_atomic, "true closed atoms are axioms (when no theory file is given)");
  }
  ol::TheorySpec get() const {
    if (!file.empty()) return jio::theory_from_json(jio::read_file(file));
    if (base) return ol::base_arithmetic();
    return ol::TheorySpec({}, 0, true_atomic);
  }
};

struct UniverseOpts {
  std::string pool_file;
  std::vector<std::string> seeds;
  std::string code_bound = "inf";
  std::uint32_t len_bound = 2;
  std::uint64_t omega_cutoff = 3;
  std::uint32_t oracle_count = 0;
  std::size_t max_sequents = 200000;
  void add(CLI::App* app) {
    app->add_option("--pool", pool_file, "universe JSON file (seeds, bounds)");
    app->add_option("--seed-formula,--seeds", seeds, "seed formula for the pool, repeatable");
    app->add_option("--code-bound", code_bound, "largest formula code in the pool, or inf");
    app->add_option("--len-bound", len_bound, "largest sequent length");
    app->add_option("--omega-cutoff", omega_cutoff, "numeral instances 0..N used by the omega-clause");
    app->add_option("--oracle-count", oracle_count, "oracle instances of set quantifiers in the pool");
    app->add_option("--max-sequents", max_sequents, "universe size budget");
  }
  ol::UniverseSpec get() const {
    ol::UniverseSpec spec;
    if (!pool_file.empty()) spec = jio::universe_from_json(jio::read_file(pool_file));
    for (const auto& s : seeds) spec.pool.seeds.push_back(ol::parse_formula(s));
    if (pool_file.empty()) {
      spec.pool.code_bound = jio::code_bound_from_text(code_bound);
      spec.len_bound = len_bound;
      spec.pool.omega_cutoff = omega_cutoff;
      spec.pool.oracle_count = oracle_count;
      spec.max_sequents = max_sequents;
    }
    if (spec.pool.seeds.empty()) throw ol::FormatError("the universe needs --pool or at least one --seeds formula");
    return spec;
  }
};

void print_check_report(const ol::CheckReport& r) {
  std::cout << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  std::cout << "explored: " << r.explored << " nodes (depth " << r.options.depth << ", samples " << r.options.samples
            << ", seed " << r.options.seed << ", rho " << ol::to_string(r.options.rho) << ")\n";
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    std::cout << "violation: " << ol::violation_name(v.kind) << " at " << ol::to_string(v.position) << ": " << v.detail
              << "\n";
  }
}

void print_class_summary(const ol::ProvClass& cls) {
  std::cout << "universe: " << cls.universe()->size() << " sequents over " << cls.universe()->pool().size()
            << " formulas\n";
  std::cout << "members: " << cls.member_count() << ", stages: " << cls.max_stage() << ", rho: "
            << ol::to_string(cls.rho()) << "\n";
}

ol::Sequent parse_sequent_arg(const std::string& s) {
  auto t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  if (!t.empty() && t[0] == '{') return ol::parse_sequent(t);
  return Sequent{ol::parse_formula(t)};
}

// Finite tree source for linearize and derives --via P: tree JSON, or a
// synthesized proof of a true bounded sentence.
ol::OmegaTree finite_tree(const std::string& file, const std::string& formula, const ol::OracleTuple& a) {
  if (!file.empty()) {
    auto j = jio::read_file(file);
    if (j.contains("nodes")) return jio::tree_from_json(j);
    return ol::embed(jio::proof_from_json(j));
  }
  if (!formula.empty()) return ol::embed(ol::synth_delta00(parse_sequent_arg(formula), a));
  throw ol::FormatError("give a tree file or --formula");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omegalogic: Tait calculus, omega-rule provability and omega-models"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "print version, grammar version and the code tag table");

  // parse
  auto* c_parse = app.add_subcommand("parse", "parse a term, formula or sequent and print it canonically");
  std::string parse_text;
  c_parse->add_option("text", parse_text, "input text")->required();

  // godel
  auto* c_godel = app.add_subcommand("godel", "Goedel code of a term, formula or sequent, or decode a code");
  std::string godel_text;
  bool godel_decode = false;
  c_godel->add_option("text", godel_text, "input text, or a natural with --decode")->required();
  c_godel->add_flag("--decode", godel_decode, "decode the given natural");

  // negate, classify
  auto* c_negate = app.add_subcommand("negate", "De Morgan dual of a formula");
  std::string negate_text;
  c_negate->add_option("formula", negate_text)->required();
  auto* c_classify = app.add_subcommand("classify", "Sigma/Pi class of a formula");
  std::string classify_text;
  c_classify->add_option("formula", classify_text)->required();

  // eval
  auto* c_eval = app.add_subcommand("eval", "three-valued evaluation of a formula");
  std::string eval_text;
  std::uint64_t eval_cutoff = 64;
  std::vector<std::string> eval_assign;
  OracleOpts eval_or;
  c_eval->add_option("formula", eval_text)->required();
  c_eval->add_option("--cutoff", eval_cutoff, "search bound for unbounded number quantifiers");
  c_eval->add_option("--assign", eval_assign, "free variable value x=N, repeatable");
  eval_or.add(c_eval);

  // check-proof
  auto* c_cp = app.add_subcommand("check-proof", "check a finite proof (JSON)");
  std::string cp_file, cp_rho = "omega";
  TheoryOpts cp_th;
  OracleOpts cp_or;
  c_cp->add_option("proof", cp_file, "proof JSON file")->required();
  c_cp->add_option("--rho", cp_rho, "cut rank (number or omega)");
  cp_th.add(c_cp);
  cp_or.add(c_cp);

  // check-omega
  auto* c_co = app.add_subcommand("check-omega", "check a generated or stored omega-tree as a preproof");
  std::string co_gen, co_tree, co_formula, co_rho = "omega";
  std::uint32_t co_depth = 3, co_samples = 0;
  std::uint64_t co_seed = 0;
  OracleOpts co_or;
  TheoryOpts co_th;
  auto* co_gen_opt = c_co->add_option("--gen", co_gen, "generator name");
  c_co->add_option("--tree", co_tree, "tree JSON file (finite)")->excludes(co_gen_opt);
  c_co->add_option("--formula", co_formula, "formula for the synth-pi01 generator");
  c_co->add_option("--depth", co_depth, "exhaustive depth");
  c_co->add_option("--samples", co_samples, "random paths below the exhaustive depth");
  auto* co_seed_opt = c_co->add_option("--seed", co_seed, "RNG seed (required)")->required();
  (void)co_seed_opt;
  c_co->add_option("--rho", co_rho, "cut rank");
  co_or.add(c_co);
  co_th.add(c_co);

  // saturate
  auto* c_sat = app.add_subcommand("saturate", "saturated provability class over a bounded universe");
  UniverseOpts sat_u;
  TheoryOpts sat_th;
  OracleOpts sat_or;
  std::string sat_rho = "omega", sat_out;
  unsigned sat_jobs = 1;
  std::vector<std::string> sat_query;
  bool sat_cross = false;
  sat_u.add(c_sat);
  sat_th.add(c_sat);
  sat_or.add(c_sat);
  c_sat->add_option("--rho", sat_rho, "cut rank");
  c_sat->add_option("--out", sat_out, "write the class as JSON");
  c_sat->add_option("--jobs", sat_jobs, "worker threads");
  c_sat->add_option("--query", sat_query, "report membership of this sequent, repeatable");
  c_sat->add_flag("--cross-check", sat_cross, "compare with the forward worklist saturator");

  // derives
  auto* c_der = app.add_subcommand("derives", "decide a sequent via I (saturation), R (iteration) or P (tree)");
  std::string der_target, der_via, der_rho = "omega", der_order, der_gen, der_tree;
  std::uint64_t der_length = 4, der_seed = 0;
  std::uint32_t der_depth = 3, der_samples = 0;
  UniverseOpts der_u;
  TheoryOpts der_th;
  OracleOpts der_or;
  c_der->add_option("sequent", der_target, "sequent or formula")->required();
  c_der->add_option("--via", der_via, "I, R or P")->required()->check(CLI::IsMember({"I", "R", "P"}));
  c_der->add_option("--rho", der_rho, "cut rank (I, P)");
  c_der->add_option("--wellorder", der_order, "well-order JSON (R)");
  c_der->add_option("--length", der_length, "use the order 0 < 1 < ... < N-1 (R)");
  c_der->add_option("--gen", der_gen, "generator name (P)");
  c_der->add_option("--tree", der_tree, "tree JSON (P)");
  c_der->add_option("--depth", der_depth, "exhaustive depth (P)");
  c_der->add_option("--samples", der_samples, "sampled paths (P)");
  c_der->add_option("--seed", der_seed, "RNG seed (P)");
  der_u.add(c_der);
  der_th.add(c_der);
  der_or.add(c_der);

  // iterate
  auto* c_it = app.add_subcommand("iterate", "iterated provability stages along a well-order");
  std::string it_order;
  std::uint64_t it_length = 4;
  UniverseOpts it_u;
  TheoryOpts it_th;
  OracleOpts it_or;
  unsigned it_jobs = 1;
  std::vector<std::string> it_query;
  c_it->add_option("--wellorder", it_order, "well-order JSON");
  c_it->add_option("--length", it_length, "use the order 0 < 1 < ... < N-1");
  c_it->add_option("--jobs", it_jobs, "worker threads");
  c_it->add_option("--query", it_query, "report the entry stage of this formula, repeatable");
  it_u.add(c_it);
  it_th.add(c_it);
  it_or.add(c_it);

  // wellorder check
  auto* c_wo = app.add_subcommand("wellorder", "coded well-orders");
  auto* c_wo_check = c_wo->add_subcommand("check", "verify a coded relation is a well-order");
  std::string wo_file;
  c_wo_check->add_option("file", wo_file, "well-order JSON")->required();
  c_wo->require_subcommand(1);

  // linearize
  auto* c_lin = app.add_subcommand("linearize", "Kleene-Brouwer order of a finite tree");
  std::string lin_file, lin_formula, lin_out;
  OracleOpts lin_or;
  c_lin->add_option("tree", lin_file, "tree or proof JSON");
  c_lin->add_option("--formula", lin_formula, "synthesize the tree from a true bounded sentence");
  c_lin->add_option("--out", lin_out, "write the order as a well-order JSON");
  lin_or.add(c_lin);

  // model build | check-beta
  auto* c_model = app.add_subcommand("model", "omega-models over finite families of sets");
  c_model->require_subcommand(1);
  auto* c_mb = c_model->add_subcommand("build", "build a model and evaluate sentences in it");
  auto* c_mbeta = c_model->add_subcommand("check-beta", "compare Pi11 verdicts with a test pool");
  std::vector<std::string> mb_family, mb_sent, mbeta_family, mbeta_pool, mbeta_sent;
  std::uint32_t mb_rank = 0;
  std::uint64_t mb_cutoff = 16, mbeta_cutoff = 16;
  std::string mb_out;
  TheoryOpts mb_th;
  c_mb->add_option("--family", mb_family, "family member set text, repeatable")->required();
  c_mb->add_option("--rank", mb_rank, "model rank");
  c_mb->add_option("--cutoff", mb_cutoff, "number-quantifier cutoff");
  c_mb->add_option("--sentence", mb_sent, "sentence to evaluate, repeatable");
  c_mb->add_option("--out", mb_out, "write the model as JSON");
  mb_th.add(c_mb);
  c_mbeta->add_option("--family", mbeta_family, "family member set text, repeatable")->required();
  c_mbeta->add_option("--testpool", mbeta_pool, "test pool set text, repeatable")->required();
  c_mbeta->add_option("--sentence", mbeta_sent, "Pi11 sentence, or exists X. forall Y. psi")->required();
  c_mbeta->add_option("--cutoff", mbeta_cutoff, "number-quantifier cutoff");

  // soundness
  auto* c_snd = app.add_subcommand("soundness", "check singleton members of a class against a model pool");
  UniverseOpts snd_u;
  TheoryOpts snd_th;
  OracleOpts snd_or;
  std::vector<std::string> snd_models;
  std::uint32_t snd_rank_bound = 8;
  std::string snd_rho = "omega";
  bool snd_fixture = false;
  snd_u.add(c_snd);
  snd_th.add(c_snd);
  snd_or.add(c_snd);
  c_snd->add_option("--model", snd_models, "model JSON file, repeatable");
  c_snd->add_option("--rank-bound", snd_rank_bound, "only members of rank below this are checked");
  c_snd->add_option("--rho", snd_rho, "cut rank");
  c_snd->add_flag("--fixture", snd_fixture, "use the built-in evens fixture and its five models");

  // reflect check
  auto* c_ref = app.add_subcommand("reflect", "reflection and consistency instances");
  c_ref->require_subcommand(1);
  auto* c_ref_check = c_ref->add_subcommand("check", "check phi(n) instances and the empty sequent");
  std::string ref_phi, ref_rho = "omega";
  std::uint64_t ref_cutoff = 3;
  UniverseOpts ref_u;
  TheoryOpts ref_th;
  OracleOpts ref_or;
  c_ref_check->add_option("--formula", ref_phi, "formula with one free variable")->required();
  c_ref_check->add_option("--cutoff", ref_cutoff, "instances n = 0..N");
  c_ref_check->add_option("--rho", ref_rho, "cut rank");
  ref_u.add(c_ref_check);
  ref_th.add(c_ref_check);
  ref_or.add(c_ref_check);

  // synth
  auto* c_syn = app.add_subcommand("synth", "synthesize proofs of true sentences");
  c_syn->require_subcommand(1);
  auto* c_syn_d = c_syn->add_subcommand("delta00", "finite proof of a sequent with a true bounded member");
  auto* c_syn_p = c_syn->add_subcommand("pi01", "omega-proof generator for forall x. psi, checked on the spot");
  std::string sd_text, sd_out, sp_text, sp_out;
  OracleOpts sd_or, sp_or;
  std::uint32_t sp_depth = 3, sp_samples = 50;
  std::uint64_t sp_seed = 0, sp_spot = 16;
  c_syn_d->add_option("sequent", sd_text, "sequent or sentence")->required();
  c_syn_d->add_option("--out", sd_out, "write the proof as JSON");
  sd_or.add(c_syn_d);
  c_syn_p->add_option("formula", sp_text, "forall x. psi")->required();
  c_syn_p->add_option("--depth", sp_depth, "exhaustive check depth");
  c_syn_p->add_option("--samples", sp_samples, "sampled paths");
  c_syn_p->add_option("--seed", sp_seed, "RNG seed (required)")->required();
  c_syn_p->add_option("--spot-checks", sp_spot, "instances evaluated before synthesis");
  c_syn_p->add_option("--out", sp_out, "write the first levels of the tree as JSON");
  sp_or.add(c_syn_p);

  // selftest
  auto* c_self = app.add_subcommand("selftest", "run the full property suite");
  std::uint64_t st_seed = omegalogic::testing::SuiteOptions{}.seed;
  unsigned st_jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<int> st_only;
  c_self->add_option("--seed", st_seed, "RNG seed");
  c_self->add_option("--jobs", st_jobs, "worker threads");
  c_self->add_option("--only", st_only, "criterion id, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (show_version) {
      std::cout << "omegalogic " << OMEGALOGIC_VERSION << "\n";
      std::cout << "grammar version " << ol::kGrammarVersion << "\n";
      std::cout << "code tags:";
      for (const auto& [name, tag] : ol::tag_table()) std::cout << " " << name << "=" << tag;
      std::cout << "\n";
      return kPass;
    }
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return kUsage;
    }

    if (*c_parse) {
      auto text = parse_text;
      text.erase(0, text.find_first_not_of(" \t"));
      if (!text.empty() && text[0] == '{') {
        std::cout << "sequent: " << ol::print(ol::parse_sequent(text)) << "\n";
      } else {
        auto v = ol::parse(text);
        if (auto* t = std::get_if<ol::Term>(&v))
          std::cout << "term: " << ol::print(*t) << "\n";
        else
          std::cout << "formula: " << ol::print(std::get<Formula>(v)) << "\n";
      }
      return kPass;
    }

    if (*c_godel) {
      if (godel_decode) {
        auto d = ol::decode(ol::parse_natural(godel_text));
        std::visit(
            [](const auto& x) {
              using T = std::decay_t<decltype(x)>;
              const char* kind = std::is_same_v<T, ol::Term> ? "term" : std::is_same_v<T, Formula> ? "formula" : "sequent";
              std::cout << kind << ": " << ol::print(x) << "\n";
            },
            d);
        return kPass;
      }
      auto text = godel_text;
      text.erase(0, text.find_first_not_of(" \t"));
      if (!text.empty() && text[0] == '{') {
        std::cout << ol::to_string(ol::encode(ol::parse_sequent(text))) << "\n";
      } else {
        auto v = ol::parse(text);
        std::visit([](const auto& x) { std::cout << ol::to_string(ol::encode(x)) << "\n"; }, v);
      }
      return kPass;
    }

    if (*c_negate) {
      std::cout << ol::print(ol::negate(ol::parse_formula(negate_text))) << "\n";
      return kPass;
    }
    if (*c_classify) {
      std::cout << ol::to_string(ol::classify(ol::parse_formula(classify_text))) << "\n";
      return kPass;
    }

    if (*c_eval) {
      Formula f = ol::parse_formula(eval_text);
      auto a = eval_or.get();
      ol::EvalContext ctx;
      ctx.oracles = &a;
      ctx.cutoff = eval_cutoff;
      ol::NumEnv env;
      for (const auto& s : eval_assign) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ol::FormatError("--assign expects x=N");
        Formula probe = ol::parse_formula(s.substr(0, eq) + " = 0");
        env[probe.terms()[0].var_index()] = ol::parse_natural(s.substr(eq + 1));
      }
      std::cout << ol::to_string(ol::eval_formula(f, ctx, env)) << "\n";
      return kPass;
    }

    if (*c_cp) {
      auto proof = jio::proof_from_json(jio::read_file(cp_file));
      bool ok = ol::check_proof(proof, ol::parse_cut_rank(cp_rho), cp_th.get(), cp_or.get());
      std::cout << "conclusion: " << ol::print(proof.conclusion) << "\n";
      std::cout << "nodes: " << proof.node_count() << ", height: " << proof.height() << "\n";
      std::cout << "result: " << (ok ? "ACCEPTED" : "REJECTED") << "\n";
      return ok ? kPass : kFail;
    }

    if (*c_co) {
      ol::CheckOptions opt;
      opt.depth = co_depth;
      opt.samples = co_samples;
      opt.seed = co_seed;
      opt.rho = ol::parse_cut_rank(co_rho);
      std::cout << "seed: " << co_seed << "\n";
      ol::CheckReport r;
      if (!co_gen.empty()) {
        ol::GeneratorArgs args;
        if (!co_formula.empty()) args.formula = ol::parse_formula(co_formula);
        args.oracles = co_or.get();
        auto g = ol::make_generator(co_gen, args);
        std::cout << "generator: " << co_gen << ", root: " << ol::print(g.root) << "\n";
        r = ol::proof_operator_P(g.root, g.tree, g.theory, g.oracles, opt);
      } else if (!co_tree.empty()) {
        auto tree = jio::tree_from_json(jio::read_file(co_tree));
        r = ol::check_preproof(tree, co_th.get(), co_or.get(), opt);
      } else {
        throw ol::FormatError("give --gen or --tree");
      }
      print_check_report(r);
      return r.pass ? kPass : kFail;
    }

    if (*c_sat) {
      auto u = ol::make_universe(sat_u.get());
      auto theory = sat_th.get();
      auto a = sat_or.get();
      auto rho = ol::parse_cut_rank(sat_rho);
      ol::RuleTable table(u, rho, theory, a, sat_jobs);
      ol::SaturateOptions so;
      so.jobs = sat_jobs;
      ol::ProvClass tmp = ol::saturate(table, so);
      ol::ProvClass cls(u, rho);
      for (auto i : tmp.members()) cls.set(i, tmp.stage(i), *tmp.provenance(i));
      print_class_summary(cls);
      std::cout << "closed: " << (table.is_closed(cls.as_bitset()) ? "yes" : "no") << "\n";
      int status = kPass;
      if (sat_cross) {
        bool same = ol::saturate_worklist(u, rho, theory, a) == cls.as_bitset();
        std::cout << "worklist agreement: " << (same ? "yes" : "no") << "\n";
        if (!same) status = kFail;
      }
      for (const auto& q : sat_query)
        std::cout << ol::print(parse_sequent_arg(q)) << ": " << ol::to_string(cls.membership(parse_sequent_arg(q)))
                  << "\n";
      if (!sat_out.empty()) jio::write_file(sat_out, jio::to_json(cls));
      return status;
    }

    if (*c_der) {
      Sequent g = parse_sequent_arg(der_target);
      auto a = der_or.get();
      ol::Membership m = ol::Membership::Out;
      if (der_via == "I") {
        m = ol::operator_I(g, ol::make_universe(der_u.get()), ol::parse_cut_rank(der_rho), der_th.get(), a);
      } else if (der_via == "R") {
        if (g.size() != 1) throw ol::FormatError("--via R decides single formulas");
        ol::CodedWellOrder w;
        if (!der_order.empty()) {
          w = jio::wellorder_from_json(jio::read_file(der_order));
        } else {
          std::vector<std::uint64_t> seq(der_length);
          std::iota(seq.begin(), seq.end(), 0);
          w = ol::CodedWellOrder::from_sequence(seq);
        }
        ol::IterSpec is;
        is.pool = der_u.get().pool;
        m = ol::operator_R(g[0], w, is, der_th.get(), a);
      } else {
        ol::CheckOptions opt;
        opt.depth = der_depth;
        opt.samples = der_samples;
        opt.seed = der_seed;
        opt.rho = ol::parse_cut_rank(der_rho);
        std::cout << "seed: " << der_seed << "\n";
        ol::CheckReport r;
        if (!der_gen.empty()) {
          ol::GeneratorArgs args;
          args.formula = g.size() == 1 ? std::optional<Formula>(g[0]) : std::nullopt;
          args.oracles = a;
          auto gt = ol::make_generator(der_gen, args);
          r = ol::proof_operator_P(g, gt.tree, gt.theory, gt.oracles, opt);
        } else {
          r = ol::proof_operator_P(g, finite_tree(der_tree, "", a), der_th.get(), a, opt);
        }
        print_check_report(r);
        m = r.pass ? ol::Membership::In : ol::Membership::Out;
      }
      std::cout << ol::print(g) << ": " << ol::to_string(m) << "\n";
      return m == ol::Membership::In ? kPass : kFail;
    }

    if (*c_it) {
      ol::CodedWellOrder w;
      if (!it_order.empty()) {
        w = jio::wellorder_from_json(jio::read_file(it_order));
      } else {
        std::vector<std::uint64_t> seq(it_length);
        std::iota(seq.begin(), seq.end(), 0);
        w = ol::CodedWellOrder::from_sequence(seq);
      }
      ol::IterSpec is;
      is.pool = it_u.get().pool;
      is.jobs = it_jobs;
      auto theory = it_th.get();
      auto a = it_or.get();
      auto st = ol::run_iteration(w, is, theory, a);
      std::cout << "pool: " << st.pool->size() << " formulas, order length " << st.sequence.size() << "\n";
      for (auto lambda : st.sequence)
        std::cout << "stage " << lambda << ": "
                  << std::count(st.stages.at(lambda).begin(), st.stages.at(lambda).end(), 1) << " formulas\n";
      bool tr = ol::verify_tr_equation(st, theory, a);
      std::cout << "TR equation: " << (tr ? "holds" : "FAILS") << "\n";
      for (const auto& q : it_query) {
        Formula f = ol::parse_formula(q);
        auto e = ol::entry_stage(f, st);
        std::cout << ol::print(f) << ": " << ol::to_string(ol::operator_R(f, st))
                  << (e ? ", enters at position " + std::to_string(*e) : std::string()) << "\n";
      }
      return tr ? kPass : kFail;
    }

    if (*c_wo_check) {
      auto w = jio::wellorder_from_json(jio::read_file(wo_file));
      bool ok = ol::check_wellorder(w);
      std::cout << "well-order: " << (ok ? "yes" : "no") << ", domain size " << w.domain.size() << "\n";
      if (ok) {
        std::cout << "ascending:";
        for (auto x : ol::order_sequence(w)) std::cout << " " << x;
        std::cout << "\n";
      }
      return ok ? kPass : kFail;
    }

    if (*c_lin) {
      auto tree = finite_tree(lin_file, lin_formula, lin_or.get());
      auto lin = ol::linearize(tree);
      for (std::size_t i = 0; i < lin.elements.size(); ++i)
        std::cout << i << " " << ol::to_string(lin.elements[i]) << " " << ol::print(tree.node(lin.elements[i])->label)
                  << "\n";
      if (!lin_out.empty()) {
        std::vector<std::uint64_t> seq(lin.elements.size());
        std::iota(seq.begin(), seq.end(), 0);
        jio::write_file(lin_out, jio::to_json(ol::CodedWellOrder::from_sequence(seq)));
      }
      return kPass;
    }

    if (*c_mb) {
      std::vector<Formula> sent;
      for (const auto& s : mb_sent) sent.push_back(ol::oracles_to_constants(ol::parse_formula(s)));
      auto m = ol::build_model(parse_sets(mb_family), mb_rank, mb_cutoff, mb_th.get(), sent);
      std::cout << "family:";
      for (const auto& s : m.family()) std::cout << " " << describe_set(s);
      std::cout << "\nrank: " << m.rank() << ", cutoff: " << m.cutoff() << "\n";
      for (const auto& f : sent) {
        auto e = m.sat(f);
        std::cout << ol::print(f) << ": " << (e.value ? "true" : "false")
                  << (e.exactness == ol::Exactness::Exact ? " (exact)" : " (truncated)") << "\n";
      }
      std::cout << "audit: " << (m.audit() ? "ok" : "FAILED") << "\n";
      if (!mb_out.empty()) jio::write_file(mb_out, jio::to_json(m));
      return m.audit() ? kPass : kFail;
    }

    if (*c_mbeta) {
      ol::OmegaModel m(parse_sets(mbeta_family), 0, mbeta_cutoff);
      auto pool = parse_sets(mbeta_pool);
      bool ok = true;
      for (const auto& s : mbeta_sent) {
        Formula f = ol::parse_formula(s);
        if (f.kind() == ol::FormulaKind::ExistsSet) {
          auto r = ol::sigma12_witness(m, pool, f);
          std::cout << ol::print(f) << ": model " << (r.model_satisfies ? "true" : "false") << ", beta "
                    << (r.beta.beta ? "ok" : "FAILS") << ", witness "
                    << (r.witness ? "C" + std::to_string(*r.witness) : std::string("none")) << "\n";
          ok = ok && r.beta.beta;
        } else {
          auto r = ol::check_beta(m, pool, {f});
          const auto& l = r.lines[0];
          std::cout << ol::print(f) << ": model " << (l.model.value ? "true" : "false") << ", ground "
                    << ol::to_string(l.ground) << (l.contaminated ? " (contaminated)" : "")
                    << (l.agree ? "" : "  NOT BETA") << "\n";
          ok = ok && r.beta;
        }
      }
      std::cout << "beta: " << (ok ? "yes" : "no") << "\n";
      return ok ? kPass : kFail;
    }

    if (*c_snd) {
      ol::UniversePtr u;
      ol::TheorySpec theory;
      ol::OracleTuple a;
      ol::ModelPool pool;
      if (snd_fixture) {
        auto fx = omegalogic::testing::soundness_fixture();
        u = fx.universe;
        theory = fx.theory;
        a = fx.oracles;
        pool = fx.pool;
      } else {
        u = ol::make_universe(snd_u.get());
        theory = snd_th.get();
        a = snd_or.get();
        for (const auto& f : snd_models) pool.models.push_back(jio::model_from_json(jio::read_file(f)));
        if (pool.models.empty()) throw ol::FormatError("give at least one --model, or --fixture");
      }
      auto cls = ol::saturate(u, ol::parse_cut_rank(snd_rho), theory, a);
      print_class_summary(cls);
      auto r = ol::check_soundness_SPC(cls, pool, snd_rank_bound, a);
      std::cout << "checked: " << r.checked << ", quarantined: " << r.quarantined.size()
                << ", unverifiable: " << r.unverifiable.size() << "\n";
      for (const auto& [s, j] : r.violations) std::cout << "violation: " << ol::print(s) << " fails in model " << j << "\n";
      for (auto j : r.mismatched_models) std::cout << "model " << j << " does not extend the oracles\n";
      std::cout << "result: " << (r.ok() ? "SOUND" : "UNSOUND") << "\n";
      return r.ok() ? kPass : kFail;
    }

    if (*c_ref_check) {
      auto cls = ol::saturate(ol::make_universe(ref_u.get()), ol::parse_cut_rank(ref_rho), ref_th.get(), ref_or.get());
      print_class_summary(cls);
      auto r = ol::check_reflection_instances(cls, ol::parse_formula(ref_phi), ref_or.get(), ref_cutoff);
      auto list = [](const char* name, const std::vector<std::uint64_t>& v) {
        std::cout << name << ":";
        for (auto n : v) std::cout << " " << n;
        std::cout << (v.empty() ? " none" : "") << "\n";
      };
      list("rfn violations", r.rfn_violations);
      list("cons violations", r.cons_violations);
      list("unverifiable", r.unverifiable);
      list("outside universe", r.outside);
      std::cout << "empty sequent derivable: " << (r.bottom_in ? "yes" : "no") << "\n";
      if (r.bottom_in) {
        std::cout << "provenance chain:";
        for (const auto& s : r.bottom_chain) std::cout << " " << ol::print(s);
        std::cout << "\n";
      }
      std::cout << "result: " << (r.clean() ? "CLEAN" : "VIOLATED") << "\n";
      return r.clean() ? kPass : kFail;
    }

    if (*c_syn_d) {
      auto a = sd_or.get();
      auto p = ol::synth_delta00(parse_sequent_arg(sd_text), a);
      bool ok = ol::check_proof(p, ol::CutRank::omega(), ol::base_arithmetic(), a);
      std::cout << "conclusion: " << ol::print(p.conclusion) << "\n";
      std::cout << "nodes: " << p.node_count() << ", height: " << p.height() << "\n";
      std::cout << "checker: " << (ok ? "ACCEPTED" : "REJECTED") << "\n";
      if (!sd_out.empty()) jio::write_file(sd_out, jio::to_json(p));
      return ok ? kPass : kFail;
    }

    if (*c_syn_p) {
      auto a = sp_or.get();
      Formula phi = ol::parse_formula(sp_text);
      std::cout << "seed: " << sp_seed << "\n";
      ol::OmegaTree t;
      try {
        t = ol::synth_pi01(phi, a, sp_spot);
      } catch (const ol::CounterexampleFound& e) {
        std::cout << "counterexample: n = " << e.instance() << "\n";
        return kFail;
      }
      ol::CheckOptions opt;
      opt.depth = sp_depth;
      opt.samples = sp_samples;
      opt.seed = sp_seed;
      auto r = ol::proof_operator_P(Sequent{phi}, t, ol::base_arithmetic(), a, opt);
      print_check_report(r);
      if (!sp_out.empty()) {
        // the first children, embedded, as an explicit finite tree for inspection
        std::map<ol::Position, ol::NodeDescriptor> table;
        for (std::uint64_t n = 0; n < 4; ++n) {
          auto d = t.node({n});
          if (d) table[{n}] = *d;
        }
        table[{}] = *t.node({});
        jio::write_file(sp_out, jio::tree_to_json(ol::OmegaTree::from_table(table)));
      }
      return r.pass ? kPass : kFail;
    }

    if (*c_self) {
      omegalogic::testing::SuiteOptions opt;
      opt.seed = st_seed;
      opt.jobs = st_jobs;
      std::cout << "seed: " << opt.seed << ", jobs: " << opt.jobs << "\n";
      std::vector<int> ids = st_only;
      if (ids.empty())
        for (int i = 1; i <= static_cast<int>(omegalogic::testing::criteria().size()); ++i) ids.push_back(i);
      bool all = true;
      for (int id : ids) {
        if (id < 1 || id > static_cast<int>(omegalogic::testing::criteria().size()))
          throw ol::FormatError("no criterion " + std::to_string(id));
        auto r = omegalogic::testing::run_criterion(id, opt);
        std::cout << omegalogic::testing::format_line(r) << std::endl;
        all = all && r.pass;
      }
      return all ? kPass : kFail;
    }
  } catch (const ol::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ol::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kPass;
}
