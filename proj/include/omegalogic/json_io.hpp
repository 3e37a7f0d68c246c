#pragma once

// JSON forms of the file-based artifacts: theories, oracle tuples, universe
// specs, provability classes, finite proofs, explicit ω-trees, well-orders
// and models. Formulas and sequents travel as text in the surface grammar.

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixpoint.hpp"
#include "iterate.hpp"
#include "models.hpp"
#include "omegaproof.hpp"
#include "text.hpp"

namespace omegalogic::json_io {

using json = nlohmann::json;

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << "\n";
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

// ---------------------------------------------------------------- sets

inline std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}
inline std::vector<bool> unbits(const std::string& s) {
  std::vector<bool> v;
  for (char c : s) {
    if (c != '0' && c != '1') throw FormatError("bit string expected, got '" + s + "'");
    v.push_back(c == '1');
  }
  return v;
}

inline json to_json(const UPSet& s) { return json{{"prefix", bits(s.prefix())}, {"period", bits(s.period())}}; }

inline UPSet upset_from_json(const json& j) {
  if (j.is_string()) {
    auto n = j.get<std::string>();
    if (n == "evens") return UPSet::evens();
    if (n == "odds") return UPSet::odds();
    if (n == "all") return UPSet::all();
    if (n == "empty") return UPSet::empty();
    throw FormatError("unknown set name " + n);
  }
  if (j.is_array()) return UPSet::finite(j.get<std::vector<std::uint64_t>>());
  return guarded("UPSet", [&] {
    return UPSet(unbits(j.value("prefix", std::string())), unbits(j.at("period").get<std::string>()));
  });
}

inline json to_json(const OracleTuple& a) {
  json arr = json::array();
  for (const auto& s : a.sets) arr.push_back(to_json(s));
  return json{{"sets", arr}};
}

inline OracleTuple oracles_from_json(const json& j) {
  OracleTuple a;
  const json& arr = j.is_array() ? j : j.at("sets");
  for (const auto& s : arr) a.sets.push_back(upset_from_json(s));
  return a;
}

inline SetRef setref_from_text(const std::string& s) {
  if (s.size() < 2) throw FormatError("bad set reference " + s);
  VarIndex i = static_cast<VarIndex>(std::stoul(s.substr(1)));
  switch (s[0]) {
    case 'X': return SetRef::var(i);
    case 'O': return SetRef::oracle(i);
    case 'C': return SetRef::model(i);
    default: throw FormatError("bad set reference " + s);
  }
}

// ---------------------------------------------------------------- theories

inline json to_json(const TheorySpec& t) {
  json ax = json::array();
  for (const auto& s : t.axioms()) {
    json seq = json::array();
    for (const auto& f : s) seq.push_back(print(f));
    ax.push_back(seq);
  }
  return json{{"version", 1}, {"true_atomic", t.true_atomic()}, {"search_depth", t.search_depth()}, {"axioms", ax}};
}

inline TheorySpec theory_from_json(const json& j) {
  return guarded("theory", [&] {
    std::vector<Sequent> axioms;
    for (const auto& s : j.value("axioms", json::array())) {
      std::vector<Formula> fs;
      if (s.is_string())
        axioms.push_back(parse_sequent(s.get<std::string>()));
      else {
        for (const auto& f : s) fs.push_back(parse_formula(f.get<std::string>()));
        axioms.emplace_back(std::move(fs));
      }
    }
    return TheorySpec(std::move(axioms), j.value("search_depth", 2u), j.value("true_atomic", false));
  });
}

// ---------------------------------------------------------------- universes and classes

inline json to_json(const UniverseSpec& u) {
  json seeds = json::array();
  for (const auto& f : u.pool.seeds) seeds.push_back(print(f));
  json j{{"seeds", seeds},
         {"len_bound", u.len_bound},
         {"omega_cutoff", u.pool.omega_cutoff},
         {"oracle_count", u.pool.oracle_count},
         {"max_sequents", u.max_sequents}};
  j["code_bound"] = u.pool.code_bound ? json(to_string(*u.pool.code_bound)) : json("inf");
  return j;
}

inline std::optional<Natural> code_bound_from_text(const std::string& s) {
  if (s == "inf" || s == "infinity" || s.empty()) return std::nullopt;
  return parse_natural(s);
}

inline UniverseSpec universe_from_json(const json& j) {
  return guarded("universe", [&] {
    UniverseSpec u;
    for (const auto& s : j.at("seeds")) u.pool.seeds.push_back(parse_formula(s.get<std::string>()));
    u.len_bound = j.value("len_bound", 2u);
    u.pool.omega_cutoff = j.value("omega_cutoff", std::uint64_t{3});
    u.pool.oracle_count = j.value("oracle_count", 0u);
    u.max_sequents = j.value("max_sequents", std::size_t{200000});
    if (j.contains("code_bound")) {
      const auto& cb = j.at("code_bound");
      u.pool.code_bound = cb.is_string() ? code_bound_from_text(cb.get<std::string>())
                                         : std::optional<Natural>(Natural(cb.get<std::uint64_t>()));
    }
    return u;
  });
}

// ---------------------------------------------------------------- witnesses

inline json to_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NoWitness>) return json{{"kind", "none"}};
        if constexpr (std::is_same_v<T, EigenWitness>) return json{{"kind", "eigen"}, {"var", x.var}};
        if constexpr (std::is_same_v<T, TermWitness>) return json{{"kind", "term"}, {"term", print(x.term)}};
        if constexpr (std::is_same_v<T, SetWitness>) return json{{"kind", "set"}, {"set", print(x.set)}};
        if constexpr (std::is_same_v<T, CutWitness>) return json{{"kind", "cut"}, {"formula", print(x.formula)}};
        if constexpr (std::is_same_v<T, OracleWitness>) return json{{"kind", "oracle"}, {"k", x.k}, {"i", x.i}};
        if constexpr (std::is_same_v<T, EqWitness>)
          return json{{"kind", "eq"},
                      {"alpha", print(x.alpha)},
                      {"from", print(x.from)},
                      {"to", print(x.to)},
                      {"occurrences", x.occurrences}};
        if constexpr (std::is_same_v<T, AxiomWitness>) return json{{"kind", "axiom"}, {"depth", x.depth}};
        if constexpr (std::is_same_v<T, OmegaWitness>) return json{{"kind", "omega"}, {"principal", print(x.principal)}};
      },
      w);
}

inline Witness witness_from_json(const json& j) {
  return guarded("witness", [&]() -> Witness {
    if (j.is_null()) return NoWitness{};
    auto k = j.at("kind").get<std::string>();
    if (k == "none") return NoWitness{};
    if (k == "eigen") return EigenWitness{j.at("var").get<VarIndex>()};
    if (k == "term") return TermWitness{parse_term(j.at("term").get<std::string>())};
    if (k == "set") return SetWitness{setref_from_text(j.at("set").get<std::string>())};
    if (k == "cut") return CutWitness{parse_formula(j.at("formula").get<std::string>())};
    if (k == "oracle") return OracleWitness{j.at("k").get<std::uint64_t>(), j.at("i").get<std::uint32_t>()};
    if (k == "eq")
      return EqWitness{parse_formula(j.at("alpha").get<std::string>()), parse_term(j.at("from").get<std::string>()),
                       parse_term(j.at("to").get<std::string>()), j.at("occurrences").get<std::vector<std::size_t>>()};
    if (k == "axiom") return AxiomWitness{j.value("depth", 0u)};
    if (k == "omega") return OmegaWitness{parse_formula(j.at("principal").get<std::string>())};
    throw FormatError("unknown witness kind " + k);
  });
}

inline RuleTag rule_from_json(const json& j) {
  auto t = rule_from_name(j.get<std::string>());
  if (!t) throw FormatError("unknown rule " + j.get<std::string>());
  return *t;
}

// ---------------------------------------------------------------- proofs and trees

inline json to_json(const FiniteProof& p) {
  json ps = json::array();
  for (const auto& c : p.premises) ps.push_back(to_json(c));
  return json{{"rule", rule_name(p.tag)}, {"conclusion", print(p.conclusion)}, {"witness", to_json(p.witness)},
              {"premises", ps}};
}

inline FiniteProof proof_from_json(const json& j) {
  return guarded("proof", [&] {
    FiniteProof p;
    p.tag = rule_from_json(j.at("rule"));
    p.conclusion = parse_sequent(j.at("conclusion").get<std::string>());
    p.witness = witness_from_json(j.value("witness", json()));
    for (const auto& c : j.value("premises", json::array())) p.premises.push_back(proof_from_json(c));
    return p;
  });
}

inline json to_json(const NodeDescriptor& d, const Position& pos) {
  json j{{"position", pos},
         {"label", print(d.label)},
         {"rule", rule_name(d.rule)},
         {"witness", to_json(d.witness)}};
  j["arity"] = d.arity.omega ? json("omega") : json(d.arity.n);
  if (d.ordinal) j["ordinal"] = d.ordinal->str();
  return j;
}

inline json tree_to_json(const OmegaTree& t) {
  json nodes = json::array();
  for (const auto& [p, d] : t.table()) nodes.push_back(to_json(d, p));
  return json{{"nodes", nodes}};
}

inline OmegaTree tree_from_json(const json& j) {
  return guarded("omega tree", [&] {
    std::map<Position, NodeDescriptor> table;
    for (const auto& n : j.at("nodes")) {
      NodeDescriptor d;
      d.label = parse_sequent(n.at("label").get<std::string>());
      d.rule = rule_from_json(n.at("rule"));
      const auto& a = n.at("arity");
      d.arity = a.is_string() ? Arity::infinite() : Arity::finite(a.get<std::uint64_t>());
      if (n.contains("ordinal")) d.ordinal = Ordinal::parse(n.at("ordinal").get<std::string>());
      d.witness = witness_from_json(n.value("witness", json()));
      table[n.at("position").get<Position>()] = std::move(d);
    }
    return OmegaTree::from_table(std::move(table));
  });
}

// ---------------------------------------------------------------- well-orders

inline json to_json(const CodedWellOrder& w) {
  json pairs = json::array();
  for (const auto& [a, b] : w.pairs) pairs.push_back({a, b});
  return json{{"domain", w.domain}, {"pairs", pairs}};
}

inline CodedWellOrder wellorder_from_json(const json& j) {
  return guarded("well-order", [&] {
    CodedWellOrder w;
    w.domain = j.at("domain").get<std::vector<std::uint64_t>>();
    for (const auto& p : j.at("pairs")) w.pairs.insert({p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>()});
    return w;
  });
}

// ---------------------------------------------------------------- classes

inline json to_json(const ProvClass& c) {
  const auto& u = c.universe();
  json members = json::array();
  for (auto i : c.members()) {
    const auto& p = *c.provenance(i);
    json prov{{"kind", p.kind == ProvKind::Base ? "BASE" : p.kind == ProvKind::Rule ? "RULE" : "OMEGA"},
              {"rule", rule_name(p.tag)},
              {"premises", p.premises},
              {"witness", to_json(p.witness)}};
    if (p.kind == ProvKind::Omega) {
      prov["principal"] = print(*p.principal);
      prov["checked_up_to"] = p.cutoff;
    }
    members.push_back(json{{"index", i},
                           {"sequent", print(u->at(i))},
                           {"code", to_string(encode(u->at(i)))},
                           {"stage", c.stage(i)},
                           {"approximate", c.approximate(i)},
                           {"provenance", prov}});
  }
  return json{{"universe", to_json(u->spec())},
              {"universe_size", u->size()},
              {"rho", to_string(c.rho())},
              {"member_count", c.member_count()},
              {"members", members}};
}

// Rebuilds the class on a freshly enumerated universe (indices are stable
// because enumeration is deterministic).
inline ProvClass class_from_json(const json& j) {
  return guarded("class", [&] {
    auto u = make_universe(universe_from_json(j.at("universe")));
    ProvClass c(u, parse_cut_rank(j.at("rho").get<std::string>()));
    for (const auto& m : j.at("members")) {
      auto s = parse_sequent(m.at("sequent").get<std::string>());
      auto i = u->index_of(s);
      if (!i) throw FormatError("member " + print(s) + " outside the universe");
      const auto& pj = m.at("provenance");
      Provenance p;
      auto kind = pj.at("kind").get<std::string>();
      p.kind = kind == "BASE" ? ProvKind::Base : kind == "RULE" ? ProvKind::Rule : ProvKind::Omega;
      p.tag = rule_from_json(pj.at("rule"));
      p.premises = pj.at("premises").get<std::vector<std::uint32_t>>();
      p.witness = witness_from_json(pj.value("witness", json()));
      if (pj.contains("principal")) p.principal = parse_formula(pj.at("principal").get<std::string>());
      p.cutoff = pj.value("checked_up_to", std::uint64_t{0});
      c.set(*i, m.at("stage").get<std::uint32_t>(), std::move(p));
    }
    return c;
  });
}

// ---------------------------------------------------------------- models

inline json to_json(const OmegaModel& m) {
  json fam = json::array();
  for (const auto& s : m.family()) fam.push_back(to_json(s));
  json sat = json::object(), ex = json::object();
  for (const auto& [f, e] : m.entries()) {
    std::string key = to_string(encode(f));
    sat[key] = e.value;
    ex[key] = e.exactness == Exactness::Exact ? "Exact" : "Truncated";
  }
  return json{{"family", fam}, {"rank", m.rank()}, {"cutoff", m.cutoff()}, {"sat", sat}, {"exactness", ex}};
}

inline OmegaModel model_from_json(const json& j) {
  return guarded("model", [&] {
    std::vector<UPSet> fam;
    for (const auto& s : j.at("family")) fam.push_back(upset_from_json(s));
    OmegaModel m(std::move(fam), j.value("rank", 0u), j.value("cutoff", std::uint64_t{16}));
    if (j.contains("sat"))
      for (const auto& [k, v] : j.at("sat").items()) {
        SatEntry e{v.get<bool>(), Exactness::Exact};
        if (j.contains("exactness") && j.at("exactness").value(k, std::string("Exact")) == "Truncated")
          e.exactness = Exactness::Truncated;
        m.preset(decode_formula(parse_natural(k)), e);
      }
    return m;
  });
}

}  // namespace omegalogic::json_io
