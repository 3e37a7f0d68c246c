#pragma once

// Labeled ω-trees with ordinal annotations, the preproof checker, the [P]
// operator, finite-proof embedding and the linearization ⊴.

#include <functional>
#include <random>

#include "calculus.hpp"
#include "ordinal.hpp"

namespace omegalogic {

using Position = std::vector<std::uint64_t>;

inline std::string to_string(const Position& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ">";
}

inline bool is_prefix(const Position& s, const Position& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

struct Arity {
  bool omega = false;
  std::uint64_t n = 0;
  static Arity finite(std::uint64_t k) { return {false, k}; }
  static Arity infinite() { return {true, 0}; }
  friend bool operator==(const Arity&, const Arity&) = default;
};

struct NodeDescriptor {
  Sequent label;
  RuleTag rule = RuleTag::LEM;
  Arity arity;
  std::optional<Ordinal> ordinal;  // absent annotations are rejected by the checker
  Witness witness;
};

class OmegaTree {
 public:
  using Generator = std::function<std::optional<NodeDescriptor>(const Position&)>;

  static OmegaTree from_table(std::map<Position, NodeDescriptor> table) {
    OmegaTree t;
    t.table_ = std::make_shared<const std::map<Position, NodeDescriptor>>(std::move(table));
    t.name_ = "explicit";
    return t;
  }
  static OmegaTree from_generator(std::string name, Generator g) {
    OmegaTree t;
    t.gen_ = std::move(g);
    t.name_ = std::move(name);
    return t;
  }

  std::optional<NodeDescriptor> node(const Position& p) const {
    if (table_) {
      auto it = table_->find(p);
      if (it == table_->end()) return std::nullopt;
      return it->second;
    }
    return gen_(p);
  }
  bool is_explicit() const noexcept { return table_ != nullptr; }
  const std::map<Position, NodeDescriptor>& table() const {
    if (!table_) throw NotSupported("tree '" + name_ + "' is generator-backed");
    return *table_;
  }
  const std::string& name() const noexcept { return name_; }

 private:
  std::shared_ptr<const std::map<Position, NodeDescriptor>> table_;
  Generator gen_;
  std::string name_;
};

enum class ViolationKind : std::uint8_t {
  RuleInvalid,
  OmegaPremiseMismatch,
  OrdinalNotDecreasing,
  MissingOrdinal,
  ArityMismatch,
  RootMismatch,
  PathTooLong
};

inline const char* violation_name(ViolationKind k) {
  static const char* names[] = {"RuleInvalid",   "OmegaPremiseMismatch", "OrdinalNotDecreasing", "MissingOrdinal",
                                "ArityMismatch", "RootMismatch",         "PathTooLong"};
  return names[static_cast<int>(k)];
}

struct Violation {
  ViolationKind kind;
  Position position;
  std::string detail;
};

struct CheckOptions {
  CutRank rho = CutRank::omega();
  std::uint32_t depth = 3;
  std::uint32_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t omega_width = 4;         // children of an ω-node examined in the exhaustive phase
  std::uint64_t sample_child_bound = 16; // sampled ω-children are drawn from [0, bound]
  std::uint64_t max_path_length = 100000;
};

struct CheckReport {
  bool pass = true;
  std::uint64_t explored = 0;
  std::optional<Violation> first_violation;
  CheckOptions options;
};

namespace detail {

class PreproofChecker {
 public:
  PreproofChecker(const OmegaTree& tree, const TheorySpec& theory, const OracleTuple& oracles, const CheckOptions& opt)
      : tree_(tree), theory_(theory), oracles_(oracles), opt_(opt) {}

  CheckReport run(const std::optional<Sequent>& expected_root) {
    report_.options = opt_;
    auto root = tree_.node({});
    if (!root) throw GeneratorPartial("tree has no root");
    if (expected_root && !(root->label == *expected_root)) {
      fail({ViolationKind::RootMismatch, {}, "root is " + print(root->label) + ", expected " + print(*expected_root)});
      return report_;
    }
    exhaustive({}, *root);
    if (!report_.pass) return report_;
    std::mt19937_64 rng(opt_.seed);
    for (std::uint32_t s = 0; s < opt_.samples && report_.pass; ++s) sample(*root, rng);
    return report_;
  }

 private:
  const OmegaTree& tree_;
  const TheorySpec& theory_;
  const OracleTuple& oracles_;
  CheckOptions opt_;
  CheckReport report_;

  void fail(Violation v) {
    if (report_.pass) {
      report_.pass = false;
      report_.first_violation = std::move(v);
    }
  }

  NodeDescriptor fetch(const Position& p) {
    std::optional<NodeDescriptor> d;
    try {
      d = tree_.node(p);
    } catch (const GeneratorPartial&) {
      throw;
    } catch (const std::exception& e) {
      throw GeneratorPartial("generator failed at " + to_string(p) + ": " + e.what());
    }
    if (!d) throw GeneratorPartial("node " + to_string(p) + " is absent although its parent requires it");
    return *d;
  }

  bool present(const Position& p) {
    try {
      return tree_.node(p).has_value();
    } catch (const std::exception&) {
      return false;
    }
  }

  // Validate the node at p against the given children; returns false on violation.
  bool check_local(const Position& p, const NodeDescriptor& d, const std::vector<std::uint64_t>& idx,
                   const std::vector<NodeDescriptor>& kids) {
    ++report_.explored;
    if (!d.ordinal) {
      fail({ViolationKind::MissingOrdinal, p, "node carries no ordinal"});
      return false;
    }
    for (std::size_t j = 0; j < kids.size(); ++j) {
      Position c = p;
      c.push_back(idx[j]);
      if (!kids[j].ordinal) {
        fail({ViolationKind::MissingOrdinal, c, "node carries no ordinal"});
        return false;
      }
      if (!(*kids[j].ordinal < *d.ordinal)) {
        fail({ViolationKind::OrdinalNotDecreasing, c,
              kids[j].ordinal->str() + " is not below parent " + d.ordinal->str()});
        return false;
      }
    }
    if (d.rule == RuleTag::OMEGA && d.arity.omega) return check_omega(p, d, idx, kids);
    if (d.arity.omega) {
      fail({ViolationKind::RuleInvalid, p, std::string(rule_name(d.rule)) + " node cannot have omega arity"});
      return false;
    }
    RuleInstance r{d.rule, {}, d.label, d.witness};
    for (const auto& k : kids) r.premises.push_back(k.label);
    if (!check_rule(r, opt_.rho, theory_, oracles_)) {
      fail({ViolationKind::RuleInvalid, p, std::string(rule_name(d.rule)) + " instance rejected for " + print(d.label)});
      return false;
    }
    return true;
  }

  bool check_omega(const Position& p, const NodeDescriptor& d, const std::vector<std::uint64_t>& idx,
                   const std::vector<NodeDescriptor>& kids) {
    std::vector<Formula> principals;
    if (auto* w = std::get_if<OmegaWitness>(&d.witness)) {
      if (d.label.contains(w->principal) && w->principal.kind() == FormulaKind::ForallNum)
        principals.push_back(w->principal);
    } else {
      for (const auto& f : d.label)
        if (f.kind() == FormulaKind::ForallNum) principals.push_back(f);
    }
    for (const auto& phi : principals) {
      for (const auto& ctx : detail::contexts_for(d.label, phi)) {
        bool all = true;
        for (std::size_t j = 0; j < kids.size() && all; ++j)
          all = kids[j].label == ctx.with(substitute(phi.body(), phi.bound_var(), numeral(idx[j])));
        if (all) return true;
      }
    }
    fail({ViolationKind::OmegaPremiseMismatch, p, "children do not match an omega-rule instance for " + print(d.label)});
    return false;
  }

  std::vector<std::uint64_t> finite_children(const Position& p, const NodeDescriptor& d, bool& ok) {
    std::vector<std::uint64_t> idx(d.arity.n);
    for (std::uint64_t i = 0; i < d.arity.n; ++i) idx[i] = i;
    Position extra = p;
    extra.push_back(d.arity.n);
    ok = !present(extra);
    if (!ok) fail({ViolationKind::ArityMismatch, extra, "child beyond declared arity " + std::to_string(d.arity.n)});
    return idx;
  }

  std::vector<NodeDescriptor> fetch_children(const Position& p, const std::vector<std::uint64_t>& idx) {
    std::vector<NodeDescriptor> kids;
    for (auto i : idx) {
      Position c = p;
      c.push_back(i);
      kids.push_back(fetch(c));
    }
    return kids;
  }

  void exhaustive(const Position& p, const NodeDescriptor& d) {
    if (!report_.pass) return;
    std::vector<std::uint64_t> idx;
    if (d.arity.omega) {
      for (std::uint64_t i = 0; i < opt_.omega_width; ++i) idx.push_back(i);
    } else {
      bool ok = true;
      idx = finite_children(p, d, ok);
      if (!ok) return;
    }
    auto kids = fetch_children(p, idx);
    if (!check_local(p, d, idx, kids)) return;
    if (p.size() + 1 > opt_.depth) return;
    for (std::size_t j = 0; j < kids.size() && report_.pass; ++j) {
      Position c = p;
      c.push_back(idx[j]);
      exhaustive(c, kids[j]);
    }
  }

  void sample(const NodeDescriptor& root, std::mt19937_64& rng) {
    Position p;
    NodeDescriptor d = root;
    while (report_.pass) {
      if (p.size() > opt_.max_path_length) {
        fail({ViolationKind::PathTooLong, p, "sampled path exceeds length cap"});
        return;
      }
      if (!d.arity.omega && d.arity.n == 0) {
        bool ok = true;
        finite_children(p, d, ok);
        if (ok) check_local(p, d, {}, {});
        return;
      }
      std::vector<std::uint64_t> idx;
      std::uint64_t pick;
      if (d.arity.omega) {
        pick = std::uniform_int_distribution<std::uint64_t>(0, opt_.sample_child_bound)(rng);
        idx = {pick};
      } else {
        bool ok = true;
        idx = finite_children(p, d, ok);
        if (!ok) return;
        pick = std::uniform_int_distribution<std::uint64_t>(0, d.arity.n - 1)(rng);
      }
      auto kids = fetch_children(p, idx);
      if (!check_local(p, d, idx, kids)) return;
      std::size_t j = d.arity.omega ? 0 : static_cast<std::size_t>(pick);
      p.push_back(idx[j]);
      d = kids[j];
    }
  }
};
}  // namespace detail

inline CheckReport check_preproof(const OmegaTree& tree, const TheorySpec& theory, const OracleTuple& oracles,
                                  const CheckOptions& opt) {
  if (opt.depth < 1) throw FormatError("depth must be at least 1");
  return detail::PreproofChecker(tree, theory, oracles, opt).run(std::nullopt);
}

// [P]γ at certificate level: the tree is a preproof with root label γ.
inline CheckReport proof_operator_P(const Sequent& gamma, const OmegaTree& tree, const TheorySpec& theory,
                                    const OracleTuple& oracles, const CheckOptions& opt) {
  if (opt.depth < 1) throw FormatError("depth must be at least 1");
  return detail::PreproofChecker(tree, theory, oracles, opt).run(gamma);
}

// Finite proof as an explicit tree, ordinal = height of each subtree.
inline OmegaTree embed(const FiniteProof& proof) {
  std::map<Position, NodeDescriptor> table;
  std::function<void(const FiniteProof&, Position)> walk = [&](const FiniteProof& p, Position pos) {
    table[pos] = NodeDescriptor{p.conclusion, p.tag, Arity::finite(p.premises.size()), Ordinal::finite(p.height()),
                                p.witness};
    for (std::size_t i = 0; i < p.premises.size(); ++i) {
      Position c = pos;
      c.push_back(i);
      walk(p.premises[i], c);
    }
  };
  walk(proof, {});
  return OmegaTree::from_table(std::move(table));
}

// ---------------------------------------------------------------- linearization

// s ⊴ t (strict): t is a proper prefix of s, or they are incomparable and s
// is smaller at the first differing index.
inline bool kb_less(const Position& s, const Position& t) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i)
    if (s[i] != t[i]) return s[i] < t[i];
  return s.size() > t.size();
}

struct LinearizedOrder {
  std::vector<Position> elements;  // ascending
  bool lt(const Position& a, const Position& b) const { return kb_less(a, b); }
  std::size_t rank_of(const Position& p) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), p, kb_less);
    if (it == elements.end() || *it != p) throw OutsideUniverse("position " + to_string(p) + " not in tree");
    return static_cast<std::size_t>(it - elements.begin());
  }
};

inline LinearizedOrder linearize(const OmegaTree& tree) {
  LinearizedOrder o;
  for (const auto& [p, d] : tree.table()) o.elements.push_back(p);
  std::sort(o.elements.begin(), o.elements.end(), kb_less);
  return o;
}

}  // namespace omegalogic
