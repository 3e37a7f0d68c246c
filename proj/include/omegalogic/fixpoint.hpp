#pragma once

// Bounded sequent universes and the least fixed point of
//   F(P) = {γ : □_T γ  ∨  some finitary rule instance with premises in P concludes γ
//              ∨  γ = (δ, ∀xψ) with (δ, ψ(n̄)) ∈ P for every n ≤ cutoff}.
// The primary saturator iterates F round by round; a forward worklist
// saturator built on calculus::check_rule serves as an independent cross-check.

#include <deque>
#include <random>
#include <thread>

#include "calculus.hpp"
#include "coding.hpp"

namespace omegalogic {

// ---------------------------------------------------------------- formula pool

struct PoolSpec {
  std::vector<Formula> seeds;
  std::optional<Natural> code_bound;  // nullopt: unbounded
  std::uint64_t omega_cutoff = 3;
  std::uint32_t oracle_count = 0;
  std::size_t max_formulas = 4096;
};

// Seeds closed under negation, immediate subformulas, numeral instances
// ψ(n̄) for n ≤ cutoff and oracle instances of set quantifiers, filtered by
// the code bound.
class FormulaPool {
 public:
  explicit FormulaPool(PoolSpec spec) : spec_(std::move(spec)) {
    std::deque<Formula> work(spec_.seeds.begin(), spec_.seeds.end());
    std::unordered_set<Formula> seen;
    while (!work.empty()) {
      Formula f = work.front();
      work.pop_front();
      if (seen.count(f) || !within_bound(f)) continue;
      seen.insert(f);
      if (seen.size() > spec_.max_formulas)
        throw UniverseTooLarge("formula pool exceeds " + std::to_string(spec_.max_formulas) + " formulas");
      work.push_back(negate(f));
      for (const auto& c : f.children()) work.push_back(c);
      if (f.is_number_quantifier())
        for (std::uint64_t n = 0; n <= spec_.omega_cutoff; ++n)
          work.push_back(substitute(f.body(), f.bound_var(), numeral(n)));
      if (f.is_set_quantifier())
        for (VarIndex i = 0; i < spec_.oracle_count; ++i)
          work.push_back(substitute_set(f.body(), f.bound_var(), SetRef::oracle(i)));
    }
    formulas_.assign(seen.begin(), seen.end());
    std::sort(formulas_.begin(), formulas_.end());
    for (std::size_t i = 0; i < formulas_.size(); ++i) index_.emplace(formulas_[i], i);
  }

  const PoolSpec& spec() const noexcept { return spec_; }
  const std::vector<Formula>& formulas() const noexcept { return formulas_; }
  std::size_t size() const noexcept { return formulas_.size(); }
  std::optional<std::size_t> index_of(const Formula& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Formula& f) const { return index_.count(f) > 0; }
  bool within_bound(const Formula& f) const { return !spec_.code_bound || code_at_most(f, *spec_.code_bound); }

 private:
  PoolSpec spec_;
  std::vector<Formula> formulas_;
  std::unordered_map<Formula, std::size_t> index_;
};

// ---------------------------------------------------------------- sequent universe

struct UniverseSpec {
  PoolSpec pool;
  std::uint32_t len_bound = 2;
  std::size_t max_sequents = 200000;
};

class SequentUniverse {
 public:
  explicit SequentUniverse(UniverseSpec spec) : spec_(spec), pool_(spec.pool) {
    const std::size_t n = pool_.size();
    // budget check before enumerating
    long double total = 0, choose = 1;
    for (std::uint32_t k = 0; k <= spec_.len_bound && k <= n; ++k) {
      if (k) choose = choose * static_cast<long double>(n - k + 1) / k;
      total += choose;
    }
    if (total > static_cast<long double>(spec_.max_sequents))
      throw UniverseTooLarge("universe would hold about " + std::to_string(static_cast<unsigned long long>(total)) +
                             " sequents, budget " + std::to_string(spec_.max_sequents));
    std::vector<std::size_t> pick;
    std::vector<std::pair<Natural, Sequent>> all;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      std::vector<Formula> fs;
      for (auto i : pick) fs.push_back(pool_.formulas()[i]);
      Sequent s(std::move(fs));
      all.emplace_back(encode(s), s);
      if (pick.size() == spec_.len_bound) return;
      for (std::size_t i = start; i < n; ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [c, s] : all) {
      index_.emplace(s, sequents_.size());
      sequents_.push_back(std::move(s));
    }
  }

  const UniverseSpec& spec() const noexcept { return spec_; }
  const FormulaPool& pool() const noexcept { return pool_; }
  const std::vector<Sequent>& sequents() const noexcept { return sequents_; }
  std::size_t size() const noexcept { return sequents_.size(); }
  const Sequent& at(std::size_t i) const { return sequents_.at(i); }
  std::optional<std::size_t> index_of(const Sequent& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Sequent& s) const { return index_.count(s) > 0; }
  std::uint64_t omega_cutoff() const noexcept { return spec_.pool.omega_cutoff; }

 private:
  UniverseSpec spec_;
  FormulaPool pool_;
  std::vector<Sequent> sequents_;
  std::unordered_map<Sequent, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const SequentUniverse>;

inline UniversePtr make_universe(UniverseSpec spec) { return std::make_shared<const SequentUniverse>(std::move(spec)); }

// ---------------------------------------------------------------- provenance

enum class ProvKind : std::uint8_t { Base, Rule, Omega };

struct Provenance {
  ProvKind kind = ProvKind::Base;
  RuleTag tag = RuleTag::AXIOM_T;
  std::vector<std::uint32_t> premises;  // universe indices
  Witness witness;
  std::optional<Formula> principal;  // for Omega
  std::uint64_t cutoff = 0;          // for Omega: premises cover n = 0..cutoff
};

enum class Membership : std::uint8_t { In, Out, OutsideUniverse };

inline const char* to_string(Membership m) {
  return m == Membership::In ? "In" : m == Membership::Out ? "Out" : "OutsideUniverse";
}

class ProvClass {
 public:
  ProvClass() = default;
  ProvClass(UniversePtr u, CutRank rho) : universe_(std::move(u)), rho_(rho) {
    stage_.assign(universe_->size(), 0);
    prov_.resize(universe_->size());
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  CutRank rho() const noexcept { return rho_; }
  bool contains(std::size_t i) const { return stage_.at(i) != 0; }
  Membership membership(const Sequent& s) const {
    auto i = universe_->index_of(s);
    if (!i) return Membership::OutsideUniverse;
    return contains(*i) ? Membership::In : Membership::Out;
  }
  std::uint32_t stage(std::size_t i) const { return stage_.at(i); }
  const std::optional<Provenance>& provenance(std::size_t i) const { return prov_.at(i); }
  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> m;
    for (std::size_t i = 0; i < stage_.size(); ++i)
      if (stage_[i]) m.push_back(static_cast<std::uint32_t>(i));
    return m;
  }
  std::size_t member_count() const {
    return static_cast<std::size_t>(std::count_if(stage_.begin(), stage_.end(), [](auto s) { return s != 0; }));
  }
  std::vector<char> as_bitset() const {
    std::vector<char> b(stage_.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = stage_[i] != 0;
    return b;
  }
  std::uint32_t max_stage() const {
    return stage_.empty() ? 0 : *std::max_element(stage_.begin(), stage_.end());
  }

  // Admitted through a truncated ω-clause, directly or via premises.
  bool approximate(std::size_t i) const {
    if (taint_.empty()) compute_taint();
    return taint_.at(i);
  }

  // Length of the longest provenance chain from i down to a leaf (a leaf has length 1).
  std::size_t chain_length(std::size_t i) const {
    std::size_t best = 0;
    if (prov_.at(i))
      for (auto p : prov_[i]->premises) best = std::max(best, chain_length(p));
    return best + 1;
  }

  void set(std::size_t i, std::uint32_t stage, Provenance p) {
    stage_.at(i) = stage;
    prov_.at(i) = std::move(p);
    taint_.clear();
  }
  void erase(std::size_t i) {
    stage_.at(i) = 0;
    prov_.at(i).reset();
    taint_.clear();
  }

 private:
  void compute_taint() const {
    taint_.assign(stage_.size(), 0);
    std::vector<std::uint32_t> order = members();
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return stage_[a] < stage_[b]; });
    for (auto i : order) {
      const auto& p = prov_[i];
      if (!p) continue;
      bool t = p->kind == ProvKind::Omega;
      for (auto q : p->premises) t = t || taint_[q];
      taint_[i] = t;
    }
  }

  UniversePtr universe_;
  CutRank rho_;
  std::vector<std::uint32_t> stage_;
  std::vector<std::optional<Provenance>> prov_;
  mutable std::vector<char> taint_;
};

// ---------------------------------------------------------------- backward rule table

// For every universe sequent, every rule instance concluding it whose
// premises all lie in the universe.
class RuleTable {
 public:
  RuleTable(UniversePtr u, CutRank rho, const TheorySpec& theory, const OracleTuple& oracles, unsigned jobs = 1)
      : u_(std::move(u)), rho_(rho) {
    build_pool_tables();
    table_.resize(u_->size());
    run_parallel(u_->size(), jobs, [&](std::size_t i) { table_[i] = instances_for(i, theory, oracles); });
  }

  const UniversePtr& universe() const noexcept { return u_; }
  const std::vector<Provenance>& instances(std::size_t i) const { return table_.at(i); }

  // F(Q) as a bitset
  std::vector<char> apply(const std::vector<char>& q) const {
    std::vector<char> out(u_->size(), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& inst : table_[i])
        if (satisfied(inst, q)) {
          out[i] = 1;
          break;
        }
    return out;
  }
  bool is_closed(const std::vector<char>& q) const {
    auto f = apply(q);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i] && !q[i]) return false;
    return true;
  }
  static bool satisfied(const Provenance& inst, const std::vector<char>& q) {
    for (auto p : inst.premises)
      if (!q[p]) return false;
    return true;
  }

  template <class F>
  static void run_parallel(std::size_t n, unsigned jobs, F&& f) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || n < 64) {
      for (std::size_t i = 0; i < n; ++i) f(i);
      return;
    }
    std::vector<std::thread> ts;
    for (unsigned j = 0; j < jobs; ++j)
      ts.emplace_back([&, j] {
        for (std::size_t i = j; i < n; i += jobs) f(i);
      });
    for (auto& t : ts) t.join();
  }

 private:
  struct EqSource {
    std::size_t alpha;
    std::size_t eq;
    EqWitness witness;
  };

  UniversePtr u_;
  CutRank rho_;
  std::vector<std::vector<Provenance>> table_;
  std::vector<std::vector<std::pair<std::size_t, TermInstance>>> num_inst_;  // by pool index of quantifier
  std::vector<std::vector<std::pair<std::size_t, SetInstance>>> set_inst_;
  std::vector<std::vector<EqSource>> eq_into_;                                 // by pool index of α'
  std::vector<std::vector<std::optional<std::size_t>>> numeral_inst_;           // ∀xψ -> pool index of ψ(n̄)

  void build_pool_tables() {
    const auto& pool = u_->pool();
    const auto& fs = pool.formulas();
    num_inst_.resize(fs.size());
    set_inst_.resize(fs.size());
    eq_into_.resize(fs.size());
    numeral_inst_.resize(fs.size());
    for (std::size_t q = 0; q < fs.size(); ++q) {
      const Formula& f = fs[q];
      if (f.is_number_quantifier()) {
        for (std::size_t t = 0; t < fs.size(); ++t)
          if (auto m = match_instance(f.body(), f.bound_var(), fs[t])) num_inst_[q].emplace_back(t, *m);
        if (f.kind() == FormulaKind::ForallNum)
          for (std::uint64_t n = 0; n <= u_->omega_cutoff(); ++n)
            numeral_inst_[q].push_back(pool.index_of(substitute(f.body(), f.bound_var(), numeral(n))));
      } else if (f.is_set_quantifier()) {
        for (std::size_t t = 0; t < fs.size(); ++t)
          if (auto m = match_set_instance(f.body(), f.bound_var(), fs[t])) set_inst_[q].emplace_back(t, *m);
      }
    }
    for (std::size_t a = 0; a < fs.size(); ++a) {
      if (!fs[a].is_atomic()) continue;
      for (std::size_t e = 0; e < fs.size(); ++e) {
        if (fs[e].kind() != FormulaKind::Eq) continue;
        const Term& r = fs[e].lhs();
        const Term& r2 = fs[e].rhs();
        std::size_t k = count_occurrences(fs[a], r);
        if (k == 0 || k > 6) continue;
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
          std::vector<std::size_t> occ;
          for (std::size_t b = 0; b < k; ++b)
            if (mask & (1u << b)) occ.push_back(b);
          auto a2 = replace_occurrences(fs[a], r, r2, occ);
          if (!a2) continue;
          if (auto j = pool.index_of(*a2)) eq_into_[*j].push_back({a, e, EqWitness{fs[a], r, r2, occ}});
        }
      }
    }
  }

  std::optional<std::uint32_t> idx(const Sequent& s) const {
    auto i = u_->index_of(s);
    if (!i) return std::nullopt;
    return static_cast<std::uint32_t>(*i);
  }

  std::vector<Provenance> instances_for(std::size_t gi, const TheorySpec& theory, const OracleTuple& oracles) const {
    const Sequent& g = u_->at(gi);
    const auto& pool = u_->pool();
    const auto& fs = pool.formulas();
    std::vector<Provenance> out;
    auto rule = [&](RuleTag t, std::vector<std::uint32_t> ps, Witness w = NoWitness{}) {
      Provenance p;
      p.kind = ProvKind::Rule;
      p.tag = t;
      p.premises = std::move(ps);
      p.witness = std::move(w);
      out.push_back(std::move(p));
    };

    // zero-premise clauses
    if (auto d = theory.proves_at(g, &oracles)) {
      Provenance p;
      p.kind = ProvKind::Base;
      p.tag = RuleTag::AXIOM_T;
      p.witness = AxiomWitness{*d};
      out.push_back(std::move(p));
    }
    for (const auto& f : g) {
      if (f.is_atomic() && g.contains(negate(f))) {
        rule(RuleTag::LEM, {});
        break;
      }
    }
    for (const auto& f : g) {
      if (!f.is_membership() || f.set().kind != SetKind::Oracle || f.set().index >= oracles.size()) continue;
      auto n = as_numeral(f.lhs());
      if (!n) continue;
      bool mem = oracles.sets[f.set().index].contains(*n);
      if (mem && f.kind() == FormulaKind::In) rule(RuleTag::ORACLE_IN, {}, OracleWitness{*n, f.set().index});
      if (!mem && f.kind() == FormulaKind::NotIn) rule(RuleTag::ORACLE_NOTIN, {}, OracleWitness{*n, f.set().index});
    }

    for (const auto& phi : g) {
      std::size_t pi = *pool.index_of(phi);
      for (const Sequent& ctx : {g, g.without(phi)}) {
        switch (phi.kind()) {
          case FormulaKind::And: {
            auto a = idx(ctx.with(phi.left())), b = idx(ctx.with(phi.right()));
            if (a && b) rule(RuleTag::AND, {*a, *b});
            break;
          }
          case FormulaKind::Or:
            if (auto a = idx(ctx.with(phi.left()).with(phi.right()))) rule(RuleTag::OR, {*a});
            break;
          case FormulaKind::ForallNum:
          case FormulaKind::ExistsNum: {
            bool universal = phi.kind() == FormulaKind::ForallNum;
            for (const auto& [ti, m] : num_inst_[pi]) {
              Witness w;
              if (universal) {
                VarIndex v = m.vacuous ? static_cast<VarIndex>(g.max_num_var() + 1) : 0;
                if (!m.vacuous) {
                  if (m.term.kind() != TermKind::Var || g.has_free_var(m.term.var_index())) continue;
                  v = m.term.var_index();
                }
                w = EigenWitness{v};
              } else {
                w = TermWitness{m.term};
              }
              if (auto a = idx(ctx.with(fs[ti]))) rule(universal ? RuleTag::ALL0 : RuleTag::EX0, {*a}, w);
            }
            if (universal) {
              std::vector<std::uint32_t> ps;
              bool all = true;
              for (const auto& inst : numeral_inst_[pi]) {
                std::optional<std::uint32_t> a;
                if (inst) a = idx(ctx.with(fs[*inst]));
                if (!a) {
                  all = false;
                  break;
                }
                ps.push_back(*a);
              }
              if (all) {
                Provenance p;
                p.kind = ProvKind::Omega;
                p.tag = RuleTag::OMEGA;
                p.premises = std::move(ps);
                p.principal = phi;
                p.cutoff = u_->omega_cutoff();
                p.witness = OmegaWitness{phi};
                out.push_back(std::move(p));
              }
            }
            break;
          }
          case FormulaKind::ForallSet:
          case FormulaKind::ExistsSet: {
            bool universal = phi.kind() == FormulaKind::ForallSet;
            for (const auto& [ti, m] : set_inst_[pi]) {
              Witness w;
              if (universal) {
                VarIndex v = static_cast<VarIndex>(g.max_set_var() + 1);
                if (!m.vacuous) {
                  if (m.set.kind != SetKind::Var || g.has_free_set_var(m.set.index)) continue;
                  v = m.set.index;
                }
                w = EigenWitness{v};
              } else {
                if (m.set.kind == SetKind::ModelConst) continue;
                w = SetWitness{m.set};
              }
              if (auto a = idx(ctx.with(fs[ti]))) rule(universal ? RuleTag::ALL1 : RuleTag::EX1, {*a}, w);
            }
            break;
          }
          default:
            for (const auto& src : eq_into_[pi]) {
              auto a = idx(ctx.with(fs[src.alpha])), b = idx(ctx.with(fs[src.eq]));
              if (a && b) rule(RuleTag::EQ, {*a, *b}, src.witness);
            }
            break;
        }
      }
    }

    if (g.size() < u_->spec().len_bound) {
      for (std::size_t ci = 0; ci < fs.size(); ++ci) {
        const Formula& c = fs[ci];
        if (!rho_.admits(c.rank())) continue;
        Formula nc = negate(c);
        if (nc < c) continue;  // each unordered pair once
        auto a = idx(g.with(c)), b = idx(g.with(nc));
        if (a && b && *a != gi && *b != gi) rule(RuleTag::CUT, {*a, *b}, CutWitness{c});
      }
    }
    return out;
  }
};

// ---------------------------------------------------------------- saturation

struct SaturateOptions {
  unsigned jobs = 1;
  // if set, instances and sequents are visited in a shuffled order
  std::optional<std::uint64_t> shuffle_seed;
};

inline ProvClass saturate(const RuleTable& table, const SaturateOptions& opt = {}) {
  const UniversePtr& u = table.universe();
  ProvClass cls(u, CutRank::omega());
  std::vector<std::size_t> order(u->size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(opt.shuffle_seed.value_or(0));
  if (opt.shuffle_seed) std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::size_t>> inst_order(u->size());
  for (std::size_t i = 0; i < u->size(); ++i) {
    inst_order[i].resize(table.instances(i).size());
    std::iota(inst_order[i].begin(), inst_order[i].end(), 0);
    if (opt.shuffle_seed) std::shuffle(inst_order[i].begin(), inst_order[i].end(), rng);
  }

  std::vector<char> prev(u->size(), 0);
  std::vector<std::optional<std::size_t>> chosen(u->size());
  for (std::uint32_t round = 1;; ++round) {
    std::fill(chosen.begin(), chosen.end(), std::nullopt);
    RuleTable::run_parallel(order.size(), opt.jobs, [&](std::size_t k) {
      std::size_t i = order[k];
      if (prev[i]) return;
      for (auto j : inst_order[i])
        if (RuleTable::satisfied(table.instances(i)[j], prev)) {
          chosen[i] = j;
          return;
        }
    });
    bool changed = false;
    for (std::size_t i = 0; i < u->size(); ++i) {
      if (!chosen[i]) continue;
      changed = true;
      cls.set(i, round, table.instances(i)[*chosen[i]]);
    }
    if (!changed) break;
    for (std::size_t i = 0; i < u->size(); ++i) prev[i] = cls.contains(i);
  }
  return cls;
}

inline ProvClass saturate(const UniversePtr& u, CutRank rho, const TheorySpec& theory, const OracleTuple& oracles,
                          const SaturateOptions& opt = {}) {
  RuleTable table(u, rho, theory, oracles, opt.jobs);
  ProvClass c = saturate(table, opt);
  ProvClass out(u, rho);
  for (auto i : c.members()) out.set(i, c.stage(i), *c.provenance(i));
  return out;
}

// Forward worklist saturation: each popped member proposes conclusions, which
// are admitted only after calculus::check_rule (or the ω-clause) confirms them.
// With `seed`, the result is the least closed set containing the seed.
inline std::vector<char> saturate_worklist(const UniversePtr& u, CutRank rho, const TheorySpec& theory,
                                           const OracleTuple& oracles, const std::vector<char>* seed = nullptr) {
  const auto& pool = u->pool();
  const auto& fs = pool.formulas();
  std::vector<char> in(u->size(), 0);
  std::deque<std::size_t> work;
  auto admit = [&](std::size_t i) {
    if (!in[i]) {
      in[i] = 1;
      work.push_back(i);
    }
  };
  auto member = [&](const Sequent& s) {
    auto i = u->index_of(s);
    return i && in[*i];
  };

  for (std::size_t i = 0; i < u->size(); ++i) {
    if (seed && (*seed)[i]) admit(i);
    const Sequent& g = u->at(i);
    for (RuleTag t : {RuleTag::LEM, RuleTag::ORACLE_IN, RuleTag::ORACLE_NOTIN, RuleTag::AXIOM_T})
      if (check_rule(RuleInstance{t, {}, g, NoWitness{}}, rho, theory, oracles)) {
        admit(i);
        break;
      }
  }

  // parents: pool formulas having θ as an immediate component (or instance)
  std::vector<std::vector<std::size_t>> parents(fs.size());
  for (std::size_t p = 0; p < fs.size(); ++p) {
    const Formula& f = fs[p];
    if (f.is_binary()) {
      for (const auto& c : f.children())
        if (auto ci = pool.index_of(c)) parents[*ci].push_back(p);
    } else if (f.is_number_quantifier()) {
      for (std::size_t t = 0; t < fs.size(); ++t)
        if (match_instance(f.body(), f.bound_var(), fs[t])) parents[t].push_back(p);
    } else if (f.is_set_quantifier()) {
      for (std::size_t t = 0; t < fs.size(); ++t)
        if (match_set_instance(f.body(), f.bound_var(), fs[t])) parents[t].push_back(p);
    }
  }

  auto omega_clause = [&](const Sequent& g, const Formula& phi) {
    for (const Sequent& ctx : {g, g.without(phi)}) {
      bool all = true;
      for (std::uint64_t n = 0; n <= u->omega_cutoff() && all; ++n)
        all = member(ctx.with(substitute(phi.body(), phi.bound_var(), numeral(n))));
      if (all) return true;
    }
    return false;
  };

  while (!work.empty()) {
    std::size_t di = work.front();
    work.pop_front();
    const Sequent delta = u->at(di);

    auto try_conclusion = [&](const Sequent& g, const std::function<bool(const Sequent&)>& ok) {
      auto gi = u->index_of(g);
      if (gi && !in[*gi] && ok(g)) admit(*gi);
    };

    for (const auto& theta : delta) {
      std::size_t ti = *pool.index_of(theta);
      for (std::size_t p : parents[ti]) {
        const Formula& phi = fs[p];
        std::vector<Sequent> cands{delta.with(phi), delta.without(theta).with(phi)};
        if (phi.kind() == FormulaKind::Or)
          cands.push_back(delta.without(phi.left()).without(phi.right()).with(phi));
        for (const auto& g : cands) {
          try_conclusion(g, [&](const Sequent& gg) {
            switch (phi.kind()) {
              case FormulaKind::Or: return check_rule(RuleInstance{RuleTag::OR, {delta}, gg, NoWitness{}}, rho, theory, oracles);
              case FormulaKind::And:
                for (const Sequent& ctx : {gg, gg.without(phi)}) {
                  Sequent pa = ctx.with(phi.left()), pb = ctx.with(phi.right());
                  if ((pa == delta && member(pb)) || (pb == delta && member(pa)))
                    if (check_rule(RuleInstance{RuleTag::AND, {pa, pb}, gg, NoWitness{}}, rho, theory, oracles))
                      return true;
                }
                return false;
              case FormulaKind::ForallNum:
                return check_rule(RuleInstance{RuleTag::ALL0, {delta}, gg, NoWitness{}}, rho, theory, oracles) ||
                       omega_clause(gg, phi);
              case FormulaKind::ExistsNum:
                return check_rule(RuleInstance{RuleTag::EX0, {delta}, gg, NoWitness{}}, rho, theory, oracles);
              case FormulaKind::ForallSet:
                return check_rule(RuleInstance{RuleTag::ALL1, {delta}, gg, NoWitness{}}, rho, theory, oracles);
              case FormulaKind::ExistsSet:
                return check_rule(RuleInstance{RuleTag::EX1, {delta}, gg, NoWitness{}}, rho, theory, oracles);
              default: return false;
            }
          });
        }
      }

      // cut on θ: Δ = Γ, θ and partner Γ, ∼θ
      if (rho.admits(theta.rank())) {
        Sequent g = delta.without(theta);
        Sequent partner = g.with(negate(theta));
        if (member(partner))
          try_conclusion(g, [&](const Sequent& gg) {
            return check_rule(RuleInstance{RuleTag::CUT, {delta, partner}, gg, CutWitness{theta}}, rho, theory, oracles);
          });
      }

      // equality: θ as the rewritten atom, or θ as the equation
      if (theta.is_atomic()) {
        for (const Sequent& ctx : {delta.without(theta), delta}) {
          for (const auto& e : fs) {
            if (e.kind() != FormulaKind::Eq) continue;
            std::size_t k = count_occurrences(theta, e.lhs());
            if (k == 0 || k > 6) continue;
            Sequent partner = ctx.with(e);
            if (!member(partner)) continue;
            for (unsigned mask = 1; mask < (1u << k); ++mask) {
              std::vector<std::size_t> occ;
              for (std::size_t b = 0; b < k; ++b)
                if (mask & (1u << b)) occ.push_back(b);
              auto a2 = replace_occurrences(theta, e.lhs(), e.rhs(), occ);
              if (!a2 || !pool.contains(*a2)) continue;
              EqWitness w{theta, e.lhs(), e.rhs(), occ};
              try_conclusion(ctx.with(*a2), [&](const Sequent& gg) {
                return check_rule(RuleInstance{RuleTag::EQ, {delta, partner}, gg, w}, rho, theory, oracles);
              });
            }
          }
        }
        if (theta.kind() == FormulaKind::Eq) {
          for (const Sequent& ctx : {delta.without(theta), delta}) {
            for (const auto& a : fs) {
              if (!a.is_atomic()) continue;
              std::size_t k = count_occurrences(a, theta.lhs());
              if (k == 0 || k > 6) continue;
              Sequent partner = ctx.with(a);
              if (!member(partner)) continue;
              for (unsigned mask = 1; mask < (1u << k); ++mask) {
                std::vector<std::size_t> occ;
                for (std::size_t b = 0; b < k; ++b)
                  if (mask & (1u << b)) occ.push_back(b);
                auto a2 = replace_occurrences(a, theta.lhs(), theta.rhs(), occ);
                if (!a2 || !pool.contains(*a2)) continue;
                EqWitness w{a, theta.lhs(), theta.rhs(), occ};
                try_conclusion(ctx.with(*a2), [&](const Sequent& gg) {
                  return check_rule(RuleInstance{RuleTag::EQ, {partner, delta}, gg, w}, rho, theory, oracles);
                });
              }
            }
          }
        }
      }
    }
  }
  return in;
}

// ---------------------------------------------------------------- operators on classes

inline Membership operator_I(const Sequent& g, const UniversePtr& u, CutRank rho, const TheorySpec& theory,
                             const OracleTuple& oracles) {
  if (!u->contains(g)) return Membership::OutsideUniverse;
  return saturate(u, rho, theory, oracles).membership(g);
}

struct ContainmentReport {
  bool holds = true;
  bool equal = true;
  std::vector<Sequent> counterexamples;  // in the smaller class but not the larger
  std::size_t small_size = 0, large_size = 0;
};

inline ContainmentReport compare_classes(const ProvClass& small, const ProvClass& large) {
  ContainmentReport r;
  r.small_size = small.member_count();
  r.large_size = large.member_count();
  const auto& u = small.universe();
  for (std::size_t i = 0; i < u->size(); ++i) {
    if (small.contains(i) && !large.contains(i)) {
      r.holds = false;
      r.counterexamples.push_back(u->at(i));
    }
    if (small.contains(i) != large.contains(i)) r.equal = false;
  }
  return r;
}

inline ContainmentReport compare_oracles(const UniversePtr& u, CutRank rho, const TheorySpec& theory,
                                         const OracleTuple& a, const OracleTuple& a_ext) {
  if (!a.is_prefix_of(a_ext)) throw FormatError("first oracle tuple is not a prefix of the second");
  return compare_classes(saturate(u, rho, theory, a), saturate(u, rho, theory, a_ext));
}

inline std::vector<bool> extract_set(const ProvClass& cls, const Formula& phi, std::uint64_t n_max) {
  if (phi.free_vars().size() != 1) throw FormatError("formula must have exactly one free first-order variable");
  VarIndex x = phi.free_vars()[0];
  std::vector<bool> bits;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    Sequent s{substitute(phi, x, numeral(n))};
    auto m = cls.membership(s);
    if (m == Membership::OutsideUniverse)
      throw OutsideUniverse("instance n=" + std::to_string(n) + " (" + print(s) + ") lies outside the universe");
    bits.push_back(m == Membership::In);
  }
  return bits;
}

inline std::vector<bool> extract_set(const UniversePtr& u, CutRank rho, const TheorySpec& theory,
                                     const OracleTuple& oracles, const Formula& phi, std::uint64_t n_max) {
  return extract_set(saturate(u, rho, theory, oracles), phi, n_max);
}

// Provenance audit: every member's justification is a table instance whose
// premises are members of strictly earlier stages.
inline bool verify_provenance(const ProvClass& cls, const RuleTable& table) {
  for (auto i : cls.members()) {
    const auto& p = cls.provenance(i);
    if (!p) return false;
    for (auto q : p->premises)
      if (!cls.contains(q) || cls.stage(q) >= cls.stage(i)) return false;
    bool found = false;
    for (const auto& inst : table.instances(i))
      if (inst.kind == p->kind && inst.tag == p->tag && inst.premises == p->premises) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace omegalogic
