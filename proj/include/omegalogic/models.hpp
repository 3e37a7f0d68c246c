#pragma once

// Coded ω-models: a finite family of UPSets interpreting C_0, C_1, … and a
// satisfaction class computed by the Tarski clauses. First-order quantifiers
// expand over n ≤ cutoff (exact when bounded by a value within the cutoff, or
// when a witness / counterexample is found); second-order ones over the family.

#include "fixpoint.hpp"

namespace omegalogic {

enum class Exactness : std::uint8_t { Exact, Truncated };

struct SatEntry {
  bool value = false;
  Exactness exactness = Exactness::Exact;
};

class OmegaModel {
 public:
  OmegaModel() = default;
  OmegaModel(std::vector<UPSet> family, std::uint32_t rank, std::uint64_t cutoff)
      : family_(std::move(family)), rank_(rank), cutoff_(cutoff), sat_(std::make_shared<Table>()) {}

  const std::vector<UPSet>& family() const noexcept { return family_; }
  std::uint32_t rank() const noexcept { return rank_; }
  std::uint64_t cutoff() const noexcept { return cutoff_; }

  // Satisfaction of a sentence (C-constants allowed), memoized.
  SatEntry sat(const Formula& f) const {
    if (!f.is_sentence()) throw FormatError("satisfaction is defined for sentences only: " + print(f));
    {
      std::lock_guard lock(sat_->mu);
      auto it = sat_->map.find(f);
      if (it != sat_->map.end()) return it->second;
    }
    SatEntry e = compute(f);
    std::lock_guard lock(sat_->mu);
    sat_->map.emplace(f, e);
    return e;
  }
  bool satisfies(const Formula& f) const { return sat(f).value; }

  std::vector<std::pair<Formula, SatEntry>> entries() const {
    std::lock_guard lock(sat_->mu);
    std::vector<std::pair<Formula, SatEntry>> v(sat_->map.begin(), sat_->map.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  // Re-derive every stored entry from its defining clause using the stored
  // entries of its components.
  bool audit() const {
    for (const auto& [f, e] : entries())
      if (clause(f, [&](const Formula& g) { return sat(g); }).value != e.value) return false;
    return true;
  }

  // Seed entries read back from a file; used by the JSON loader.
  void preset(const Formula& f, SatEntry e) {
    std::lock_guard lock(sat_->mu);
    sat_->map[f] = e;
  }

 private:
  struct Table {
    std::mutex mu;
    std::unordered_map<Formula, SatEntry> map;
  };

  std::vector<UPSet> family_;
  std::uint32_t rank_ = 0;
  std::uint64_t cutoff_ = 16;
  std::shared_ptr<Table> sat_ = std::make_shared<Table>();

  SatEntry compute(const Formula& f) const {
    return clause(f, [&](const Formula& g) { return sat(g); });
  }

  template <class Rec>
  SatEntry clause(const Formula& f, Rec&& rec) const {
    if (f.is_atomic()) {
      EvalContext ctx;
      ctx.model_consts = &family_;
      Verdict v = eval_formula(f, ctx);
      if (v.value == Truth::Unknown) throw UnresolvedSymbol("atom not decidable in the model: " + print(f));
      return {v.is_true(), Exactness::Exact};
    }
    if (f.is_binary()) {
      SatEntry a = rec(f.left()), b = rec(f.right());
      bool conj = f.kind() == FormulaKind::And;
      bool val = conj ? (a.value && b.value) : (a.value || b.value);
      // a decisive exact side settles it
      bool exact = (a.exactness == Exactness::Exact && b.exactness == Exactness::Exact) ||
                   (a.exactness == Exactness::Exact && a.value != conj) ||
                   (b.exactness == Exactness::Exact && b.value != conj);
      return {val, exact ? Exactness::Exact : Exactness::Truncated};
    }
    bool universal = f.kind() == FormulaKind::ForallNum || f.kind() == FormulaKind::ForallSet;
    std::vector<Formula> instances;
    bool complete = true;
    if (f.is_set_quantifier()) {
      for (VarIndex i = 0; i < family_.size(); ++i)
        instances.push_back(substitute_set(f.body(), f.bound_var(), SetRef::model(i)));
    } else {
      std::uint64_t n_max = cutoff_;
      complete = false;
      std::optional<Term> bound;
      bool strict = true;
      if (auto b = universal ? match_bounded_forall(f) : match_bounded_exists(f)) {
        bound = b->bound;
        strict = b->strict;
      } else if (auto le = universal ? match_not_le(f) : match_le(f)) {
        bound = le->upper;  // the witness z is at most the upper term
        strict = false;
      }
      if (bound) {
        auto bv = to_u64(eval_term(*bound, {}));
        if (bv && *bv <= cutoff_) {
          n_max = strict ? (*bv == 0 ? 0 : *bv - 1) : *bv;
          complete = true;
        }
      }
      for (std::uint64_t n = 0; n <= n_max; ++n) instances.push_back(substitute(f.body(), f.bound_var(), numeral(n)));
    }
    bool all_exact = true;
    for (const auto& g : instances) {
      SatEntry e = rec(g);
      if (e.value != universal) return {!universal, e.exactness};  // decisive instance
      all_exact = all_exact && e.exactness == Exactness::Exact;
    }
    return {universal, complete && all_exact ? Exactness::Exact : Exactness::Truncated};
  }
};

// O_i ↦ C_i
inline Formula oracles_to_constants(const Formula& f) {
  Formula g = f;
  for (VarIndex i = 0; static_cast<std::int64_t>(i) <= f.max_oracle(); ++i) g = replace_set(g, SetRef::oracle(i), SetRef::model(i));
  return g;
}

// Build a model and check it against the theory: ground axioms must not be
// exactly false; open axioms are checked on numeral instances up to the cutoff.
inline OmegaModel build_model(std::vector<UPSet> family, std::uint32_t rank, std::uint64_t cutoff,
                              const TheorySpec& theory, const std::vector<Formula>& warm = {}) {
  OmegaModel m(std::move(family), rank, cutoff);
  for (const auto& ax : theory.axioms()) {
    std::vector<VarIndex> fv = ax.free_vars();
    if (!ax.free_set_vars().empty()) continue;
    std::uint64_t inst = fv.empty() ? 1 : 1;
    for (std::size_t i = 0; i < fv.size(); ++i) inst *= (cutoff + 1);
    for (std::uint64_t code = 0; code < inst; ++code) {
      std::map<VarIndex, std::uint64_t> asg;
      std::uint64_t r = code;
      for (auto v : fv) {
        asg[v] = r % (cutoff + 1);
        r /= cutoff + 1;
      }
      bool any_true = false, all_exact = true;
      for (const auto& f : ax) {
        SatEntry e = m.sat(oracles_to_constants(substitute_numerals(f, asg)));
        any_true = any_true || e.value;
        all_exact = all_exact && e.exactness == Exactness::Exact;
      }
      if (!any_true && all_exact) throw NotAModelOfT("axiom " + print(ax) + " fails");
    }
  }
  if (theory.true_atomic()) {
    // true closed atoms hold in every ω-model; nothing to check
  }
  for (const auto& f : warm) m.sat(f);
  return m;
}

struct ModelPool {
  std::vector<OmegaModel> models;
};

enum class MVerdictKind : std::uint8_t { Holds, FailsAt, Undetermined };

struct MVerdict {
  MVerdictKind kind = MVerdictKind::Holds;
  std::size_t model = 0;  // for FailsAt
};

inline std::string to_string(const MVerdict& v) {
  switch (v.kind) {
    case MVerdictKind::Holds: return "Holds";
    case MVerdictKind::FailsAt: return "FailsAt(" + std::to_string(v.model) + ")";
    default: return "Undetermined";
  }
}

// Truth in every pool model of rank at least ρ (relative to the pool).
inline MVerdict operator_M(const Formula& phi, const ModelPool& pool, std::uint32_t rho) {
  bool truncated = false;
  for (std::size_t i = 0; i < pool.models.size(); ++i) {
    const auto& m = pool.models[i];
    if (m.rank() < rho) continue;
    SatEntry e = m.sat(phi);
    if (!e.value && e.exactness == Exactness::Exact) return {MVerdictKind::FailsAt, i};
    if (e.exactness == Exactness::Truncated || !e.value) truncated = true;
  }
  return {truncated ? MVerdictKind::Undetermined : MVerdictKind::Holds, 0};
}

// ---------------------------------------------------------------- β checks

struct BetaLine {
  Formula sentence;
  SatEntry model;
  Verdict ground;
  bool agree = true;
  bool contaminated = false;  // truncation or an Unknown ground verdict
};

struct BetaReport {
  std::vector<BetaLine> lines;
  bool beta = true;  // no clean disagreement
};

// Ground truth of ∀Xψ with X over the test pool (C-constants read in the model).
inline Verdict ground_pi11(const Formula& phi, const OmegaModel& m, const std::vector<UPSet>& testpool) {
  if (phi.kind() != FormulaKind::ForallSet) throw FormatError("expected a Pi11 sentence forall X. psi");
  EvalContext ctx;
  ctx.model_consts = &m.family();
  ctx.cutoff = m.cutoff();
  Verdict acc = Verdict::yes();
  for (const auto& s : testpool) {
    ctx.setenv = {{phi.bound_var(), s}};
    Verdict v = eval_formula(phi.body(), ctx);
    if (v.is_false()) return v;
    if (v.value == Truth::Unknown) acc = v;
  }
  return acc;
}

inline BetaReport check_beta(const OmegaModel& m, const std::vector<UPSet>& testpool,
                             const std::vector<Formula>& sentences) {
  BetaReport r;
  for (const auto& s : sentences) {
    BetaLine l{s, m.sat(s), ground_pi11(s, m, testpool)};
    l.contaminated = l.model.exactness == Exactness::Truncated || l.ground.value == Truth::Unknown;
    l.agree = l.contaminated || (l.ground.is_true() == l.model.value);
    if (!l.agree) r.beta = false;
    r.lines.push_back(std::move(l));
  }
  return r;
}

// Σ12 harness: for ∃X∀Yψ, find a family member C_i such that the model
// satisfies ∀Yψ(C_i), the β check passes on that instance, and the ground
// verdict over the test pool is True.
struct Sigma12Result {
  bool model_satisfies = false;
  std::optional<std::size_t> witness;
  BetaReport beta;
};

inline Sigma12Result sigma12_witness(const OmegaModel& m, const std::vector<UPSet>& testpool, const Formula& phi) {
  if (phi.kind() != FormulaKind::ExistsSet || phi.body().kind() != FormulaKind::ForallSet)
    throw FormatError("expected exists X. forall Y. psi");
  Sigma12Result r;
  r.model_satisfies = m.satisfies(phi);
  std::vector<Formula> inst;
  for (VarIndex i = 0; i < m.family().size(); ++i)
    inst.push_back(substitute_set(phi.body(), phi.bound_var(), SetRef::model(i)));
  r.beta = check_beta(m, testpool, inst);
  if (!r.model_satisfies || !r.beta.beta) return r;
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (m.satisfies(inst[i]) && ground_pi11(inst[i], m, testpool).is_true()) {
      r.witness = i;
      break;
    }
  return r;
}

// ---------------------------------------------------------------- soundness of a provability class

struct SoundnessReport {
  std::size_t checked = 0;
  std::vector<std::pair<Sequent, std::size_t>> violations;  // member, model index
  std::vector<Sequent> quarantined;                         // via truncated ω-clauses
  std::vector<Sequent> unverifiable;                        // truncated satisfaction
  std::vector<std::size_t> mismatched_models;               // family does not extend the oracles
  bool ok() const { return violations.empty() && mismatched_models.empty(); }
};

inline SoundnessReport check_soundness_SPC(const ProvClass& cls, const ModelPool& pool, std::uint32_t rho,
                                           const OracleTuple& oracles) {
  SoundnessReport r;
  for (std::size_t j = 0; j < pool.models.size(); ++j) {
    const auto& fam = pool.models[j].family();
    bool ok = fam.size() >= oracles.size();
    for (std::size_t i = 0; ok && i < oracles.size(); ++i) ok = fam[i] == oracles.sets[i];
    if (!ok) r.mismatched_models.push_back(j);
  }
  const auto& u = cls.universe();
  for (auto idx : cls.members()) {
    const Sequent& s = u->at(idx);
    if (s.size() != 1 || !s[0].is_sentence() || s[0].rank() >= rho) continue;
    if (cls.approximate(idx)) {
      r.quarantined.push_back(s);
      continue;
    }
    Formula f = oracles_to_constants(s[0]);
    ++r.checked;
    bool unverifiable = false;
    for (std::size_t j = 0; j < pool.models.size(); ++j) {
      SatEntry e = pool.models[j].sat(f);
      if (e.exactness == Exactness::Truncated) {
        unverifiable = true;
        continue;
      }
      if (!e.value) r.violations.emplace_back(s, j);
    }
    if (unverifiable) r.unverifiable.push_back(s);
  }
  return r;
}

// ---------------------------------------------------------------- reflection instances

struct ReflectionReport {
  std::vector<std::uint64_t> rfn_violations;   // φ(n̄) In but evaluates False
  std::vector<std::uint64_t> cons_violations;  // φ(n̄) and ∼φ(n̄) both In
  std::vector<std::uint64_t> unverifiable;     // In, evaluation Unknown
  std::vector<std::uint64_t> outside;          // instance outside the universe
  bool bottom_in = false;
  std::vector<Sequent> bottom_chain;           // longest provenance path from ⊥
  bool clean() const { return rfn_violations.empty() && cons_violations.empty() && !bottom_in; }
};

inline std::vector<Sequent> provenance_chain(const ProvClass& cls, std::size_t idx) {
  std::vector<Sequent> chain{cls.universe()->at(idx)};
  const auto& p = cls.provenance(idx);
  if (!p || p->premises.empty()) return chain;
  std::vector<Sequent> best;
  for (auto q : p->premises) {
    auto c = provenance_chain(cls, q);
    if (c.size() > best.size()) best = std::move(c);
  }
  chain.insert(chain.end(), best.begin(), best.end());
  return chain;
}

inline ReflectionReport check_reflection_instances(const ProvClass& cls, const Formula& phi, const OracleTuple& oracles,
                                                   std::uint64_t cutoff) {
  if (phi.free_vars().size() != 1) throw FormatError("formula must have exactly one free first-order variable");
  VarIndex x = phi.free_vars()[0];
  ReflectionReport r;
  for (std::uint64_t n = 0; n <= cutoff; ++n) {
    Formula inst = substitute(phi, x, numeral(n));
    auto m = cls.membership(Sequent{inst});
    auto mn = cls.membership(Sequent{negate(inst)});
    if (m == Membership::OutsideUniverse) {
      r.outside.push_back(n);
      continue;
    }
    if (m == Membership::In) {
      Verdict v = eval_formula(inst, oracles);
      if (v.is_false()) r.rfn_violations.push_back(n);
      if (v.value == Truth::Unknown) r.unverifiable.push_back(n);
      if (mn == Membership::In) r.cons_violations.push_back(n);
    }
  }
  if (auto b = cls.universe()->index_of(Sequent{}); b && cls.contains(*b)) {
    r.bottom_in = true;
    r.bottom_chain = provenance_chain(cls, *b);
  }
  return r;
}

}  // namespace omegalogic
