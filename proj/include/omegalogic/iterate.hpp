#pragma once

// Iterated provability along explicit finite well-orders:
//   P_λ = Iter(below(λ)),  below(λ) = ⋃_{η <_Λ λ} P_η
//   Iter(X) = {φ : □_T φ  ∨  ∃ψ (OmegaRule(X, ψ) ∧ □_T(∼ψ, φ))}
// where OmegaRule(X, ∀xθ) holds when θ(n̄) ∈ X for every n ≤ cutoff.
// φ and ψ range over a code-bounded formula pool.

#include <set>

#include "fixpoint.hpp"

namespace omegalogic {

struct CodedWellOrder {
  std::vector<std::uint64_t> domain;
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;  // a <_Λ b

  bool lt(std::uint64_t a, std::uint64_t b) const { return pairs.count({a, b}) > 0; }
  bool in_domain(std::uint64_t a) const { return std::find(domain.begin(), domain.end(), a) != domain.end(); }

  static CodedWellOrder from_sequence(const std::vector<std::uint64_t>& ascending) {
    CodedWellOrder w;
    w.domain = ascending;
    for (std::size_t i = 0; i < ascending.size(); ++i)
      for (std::size_t j = i + 1; j < ascending.size(); ++j) w.pairs.insert({ascending[i], ascending[j]});
    return w;
  }
};

// Finite, so well-foundedness is automatic once lt is a strict total order.
inline bool check_wellorder(const CodedWellOrder& w) {
  std::set<std::uint64_t> dom(w.domain.begin(), w.domain.end());
  if (dom.size() != w.domain.size()) return false;
  for (const auto& [a, b] : w.pairs)
    if (!dom.count(a) || !dom.count(b)) return false;
  for (auto a : dom) {
    if (w.lt(a, a)) return false;
    for (auto b : dom) {
      if (a != b && w.lt(a, b) == w.lt(b, a)) return false;
      if (!w.lt(a, b)) continue;
      for (auto c : dom)
        if (w.lt(b, c) && !w.lt(a, c)) return false;
    }
  }
  return true;
}

// Domain sorted ascending by <_Λ; throws NotAWellOrder.
inline std::vector<std::uint64_t> order_sequence(const CodedWellOrder& w) {
  if (!check_wellorder(w)) throw NotAWellOrder("relation is not a strict total order on its domain");
  std::vector<std::uint64_t> s = w.domain;
  std::sort(s.begin(), s.end(), [&](auto a, auto b) { return w.lt(a, b); });
  return s;
}

struct IterSpec {
  PoolSpec pool;  // code_bound and omega_cutoff bound φ, ψ and the instances
  unsigned jobs = 1;
};

struct IPCStages {
  std::shared_ptr<const FormulaPool> pool;
  CodedWellOrder order;
  std::vector<std::uint64_t> sequence;                  // ascending
  std::map<std::uint64_t, std::vector<char>> stages;    // λ ↦ P_λ as bitset over the pool

  std::vector<char> below(std::uint64_t lambda) const {
    std::vector<char> b(pool->size(), 0);
    for (const auto& [eta, s] : stages)
      if (order.lt(eta, lambda))
        for (std::size_t i = 0; i < s.size(); ++i) b[i] = b[i] || s[i];
    return b;
  }
  bool member(std::uint64_t lambda, const Formula& f) const {
    auto i = pool->index_of(f);
    return i && stages.at(lambda)[*i];
  }
};

// Iter(X) over the pool.
inline std::vector<char> iter_step(const FormulaPool& pool, const std::vector<char>& x, const TheorySpec& theory,
                                   const OracleTuple& oracles, unsigned jobs = 1) {
  const auto& fs = pool.formulas();
  // ψ = ∀yθ whose numeral instances up to the cutoff all lie in X
  std::vector<Formula> omega_ready;
  for (const auto& psi : fs) {
    if (psi.kind() != FormulaKind::ForallNum) continue;
    bool all = true;
    for (std::uint64_t n = 0; n <= pool.spec().omega_cutoff && all; ++n) {
      auto i = pool.index_of(substitute(psi.body(), psi.bound_var(), numeral(n)));
      all = i && x[*i];
    }
    if (all) omega_ready.push_back(psi);
  }
  std::vector<char> out(fs.size(), 0);
  RuleTable::run_parallel(fs.size(), jobs, [&](std::size_t i) {
    const Formula& phi = fs[i];
    if (base_proves(theory, Sequent{phi}, &oracles)) {
      out[i] = 1;
      return;
    }
    for (const auto& psi : omega_ready)
      if (psi == phi || base_proves(theory, Sequent{negate(psi), phi}, &oracles)) {
        out[i] = 1;
        return;
      }
  });
  return out;
}

inline IPCStages run_iteration(const CodedWellOrder& w, const IterSpec& spec, const TheorySpec& theory,
                               const OracleTuple& oracles) {
  IPCStages st;
  st.sequence = order_sequence(w);
  st.order = w;
  st.pool = std::make_shared<const FormulaPool>(spec.pool);
  for (auto lambda : st.sequence) st.stages[lambda] = iter_step(*st.pool, st.below(lambda), theory, oracles, spec.jobs);
  return st;
}

// TR equation: every stored stage equals Iter of its own below-set.
inline bool verify_tr_equation(const IPCStages& st, const TheorySpec& theory, const OracleTuple& oracles) {
  for (auto lambda : st.sequence)
    if (iter_step(*st.pool, st.below(lambda), theory, oracles) != st.stages.at(lambda)) return false;
  return true;
}

inline Membership operator_R(const Formula& phi, const IPCStages& st) {
  auto i = st.pool->index_of(phi);
  if (!i) return Membership::OutsideUniverse;
  for (const auto& [lambda, s] : st.stages)
    if (s[*i]) return Membership::In;
  return Membership::Out;
}

inline Membership operator_R(const Formula& phi, const CodedWellOrder& w, const IterSpec& spec,
                             const TheorySpec& theory, const OracleTuple& oracles) {
  FormulaPool probe(spec.pool);
  if (!probe.contains(phi)) {
    order_sequence(w);  // still reject bad orders
    return Membership::OutsideUniverse;
  }
  return operator_R(phi, run_iteration(w, spec, theory, oracles));
}

// First stage (position in the ascending sequence, from 1) holding φ.
inline std::optional<std::size_t> entry_stage(const Formula& phi, const IPCStages& st) {
  auto i = st.pool->index_of(phi);
  if (!i) return std::nullopt;
  for (std::size_t k = 0; k < st.sequence.size(); ++k)
    if (st.stages.at(st.sequence[k])[*i]) return k + 1;
  return std::nullopt;
}

}  // namespace omegalogic
