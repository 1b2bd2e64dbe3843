#include "spa/syntax.hpp"

#include <functional>

namespace spa {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

ParseError::ParseError(std::string message, int line, int column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      detail_(std::move(message)),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Terms

Term Term::var(std::string name) {
  std::size_t h = mix(1, str_hash(name));
  VarSet fvs{name};
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, h, std::move(fvs)}));
}

Term Term::fn(std::string name, std::vector<Term> args) {
  std::size_t h = mix(2, str_hash(name));
  VarSet fvs;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    fvs.insert(a.free_vars().begin(), a.free_vars().end());
  }
  return Term(std::make_shared<const Node>(Node{Kind::Fn, std::move(name), std::move(args), h, std::move(fvs)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name()) return false;
  return a.args() == b.args();
}

// ---------------------------------------------------------------------------
// Formulas

Formula Formula::make(FormulaKind k, std::string name, std::vector<Term> args, const Formula* lhs,
                      const Formula* rhs) {
  std::size_t h = mix(static_cast<std::size_t>(k) + 17, str_hash(name));
  VarSet fvs;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    fvs.insert(a.free_vars().begin(), a.free_vars().end());
  }
  auto node = std::make_shared<Node>();
  if (lhs) {
    h = mix(h, lhs->hash());
    fvs.insert(lhs->free_vars().begin(), lhs->free_vars().end());
    node->lhs = *lhs;
  }
  if (rhs) {
    h = mix(h, rhs->hash());
    fvs.insert(rhs->free_vars().begin(), rhs->free_vars().end());
    node->rhs = *rhs;
  }
  if (k == FormulaKind::Forall || k == FormulaKind::Exists) fvs.erase(name);
  node->kind = k;
  node->name = std::move(name);
  node->args = std::move(args);
  node->hash = h;
  node->fvs = std::move(fvs);
  return Formula(std::move(node));
}

Formula Formula::falsity() {
  static const Formula f = make(FormulaKind::False, {}, {}, nullptr, nullptr);
  return f;
}
Formula Formula::truth() {
  static const Formula f = make(FormulaKind::True, {}, {}, nullptr, nullptr);
  return f;
}
Formula Formula::atom(std::string pred, std::vector<Term> args) {
  return make(FormulaKind::Atom, std::move(pred), std::move(args), nullptr, nullptr);
}
Formula Formula::equal(Term lhs, Term rhs) { return atom("=", {std::move(lhs), std::move(rhs)}); }
Formula Formula::negation(Formula p) { return make(FormulaKind::Not, {}, {}, &p, nullptr); }
Formula Formula::conj(Formula p, Formula q) { return make(FormulaKind::And, {}, {}, &p, &q); }
Formula Formula::disj(Formula p, Formula q) { return make(FormulaKind::Or, {}, {}, &p, &q); }
Formula Formula::imp(Formula p, Formula q) { return make(FormulaKind::Imp, {}, {}, &p, &q); }
Formula Formula::iff(Formula p, Formula q) { return make(FormulaKind::Iff, {}, {}, &p, &q); }
Formula Formula::forall(std::string var, Formula body) {
  return make(FormulaKind::Forall, std::move(var), {}, &body, nullptr);
}
Formula Formula::exists(std::string var, Formula body) {
  return make(FormulaKind::Exists, std::move(var), {}, &body, nullptr);
}

bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.args() != b.args()) return false;
  if (a.node_->lhs.has_value() && !(a.lhs() == b.lhs())) return false;
  if (a.node_->rhs.has_value() && !(a.rhs() == b.rhs())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Destructors

std::pair<Formula, Formula> dest_imp(const Formula& f) {
  if (!f.is(FormulaKind::Imp)) throw Error("dest_imp: not an implication: " + print_formula(f));
  return {f.lhs(), f.rhs()};
}
std::pair<Formula, Formula> dest_iff(const Formula& f) {
  if (!f.is(FormulaKind::Iff)) throw Error("dest_iff: not a bi-implication: " + print_formula(f));
  return {f.lhs(), f.rhs()};
}
std::pair<Formula, Formula> dest_and(const Formula& f) {
  if (!f.is(FormulaKind::And)) throw Error("dest_and: not a conjunction: " + print_formula(f));
  return {f.lhs(), f.rhs()};
}
std::pair<Term, Term> dest_eq(const Formula& f) {
  if (!f.is_equality()) throw Error("dest_eq: not an equation: " + print_formula(f));
  return {f.args()[0], f.args()[1]};
}
const Formula& antecedent(const Formula& f) {
  if (!f.is(FormulaKind::Imp)) throw Error("antecedent: not an implication: " + print_formula(f));
  return f.lhs();
}
const Formula& consequent(const Formula& f) {
  if (!f.is(FormulaKind::Imp)) throw Error("consequent: not an implication: " + print_formula(f));
  return f.rhs();
}

Formula conjoin(const std::vector<Formula>& fs) {
  if (fs.empty()) throw Error("conjoin: empty list");
  Formula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = Formula::conj(*it, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Variables and substitution

VarSet free_vars(const Formula& f) { return f.free_vars(); }

namespace {

void term_vars(const Term& t, VarSet& out) { out.insert(t.free_vars().begin(), t.free_vars().end()); }

void formula_vars(const Formula& f, VarSet& out) {
  for (const auto& a : f.args()) term_vars(a, out);
  if (f.is_quantifier()) {
    out.insert(f.name());
    formula_vars(f.body(), out);
  } else if (f.is(FormulaKind::Not)) {
    formula_vars(f.lhs(), out);
  } else if (f.is_binary()) {
    formula_vars(f.lhs(), out);
    formula_vars(f.rhs(), out);
  }
}

}  // namespace

VarSet all_vars(const Formula& f) {
  VarSet out;
  formula_vars(f, out);
  return out;
}

bool occurs_in(const std::string& var, const Term& t) { return t.free_vars().count(var) > 0; }

std::string variant(std::string base, const VarSet& avoid) {
  while (avoid.count(base)) base += '\'';
  return base;
}

Term subst(const Term& t, const TermSubst& s) {
  bool touched = false;
  for (const auto& v : t.free_vars()) {
    if (s.count(v)) {
      touched = true;
      break;
    }
  }
  if (!touched) return t;
  if (t.is_var()) return s.at(t.name());
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(subst(a, s));
  return Term::fn(t.name(), std::move(args));
}

Formula subst(const Formula& f, const TermSubst& s) {
  // Only entries for variables actually free in f matter.
  TermSubst live;
  for (const auto& [v, t] : s) {
    if (f.free_vars().count(v) && !(t.is_var() && t.name() == v)) live.emplace(v, t);
  }
  if (live.empty()) return f;

  switch (f.kind()) {
    case FormulaKind::False:
    case FormulaKind::True:
      return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(subst(a, live));
      return Formula::atom(f.name(), std::move(args));
    }
    case FormulaKind::Not:
      return Formula::negation(subst(f.lhs(), live));
    case FormulaKind::And:
      return Formula::conj(subst(f.lhs(), live), subst(f.rhs(), live));
    case FormulaKind::Or:
      return Formula::disj(subst(f.lhs(), live), subst(f.rhs(), live));
    case FormulaKind::Imp:
      return Formula::imp(subst(f.lhs(), live), subst(f.rhs(), live));
    case FormulaKind::Iff:
      return Formula::iff(subst(f.lhs(), live), subst(f.rhs(), live));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const std::string& x = f.name();
      // x is bound, so it is not free in f and cannot be a key of `live`.
      bool capture = false;
      VarSet image;
      for (const auto& [v, t] : live) {
        image.insert(t.free_vars().begin(), t.free_vars().end());
        if (occurs_in(x, t)) capture = true;
      }
      std::string y = x;
      TermSubst inner = live;
      if (capture) {
        VarSet avoid = image;
        avoid.insert(f.body().free_vars().begin(), f.body().free_vars().end());
        y = variant(x, avoid);
        inner.insert_or_assign(x, Term::var(y));
      }
      Formula body = subst(f.body(), inner);
      return f.is(FormulaKind::Forall) ? Formula::forall(y, body) : Formula::exists(y, body);
    }
  }
  return f;
}

Formula subst(const Formula& f, const std::string& var, const Term& t) {
  return subst(f, TermSubst{{var, t}});
}

// ---------------------------------------------------------------------------
// Signatures

namespace {

void add_symbol(std::map<std::string, std::size_t>& table, const std::string& name, std::size_t arity,
                const char* what) {
  auto [it, inserted] = table.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw ParseError(std::string(what) + " '" + name + "' used with arities " + std::to_string(it->second) +
                         " and " + std::to_string(arity),
                     1, 1);
  }
}

void add_term(Signature& sig, const Term& t) {
  if (t.is_var()) return;
  add_symbol(sig.functions, t.name(), t.args().size(), "function");
  for (const auto& a : t.args()) add_term(sig, a);
}

}  // namespace

void add_to_signature(Signature& sig, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (!f.is_equality()) add_symbol(sig.predicates, f.name(), f.args().size(), "predicate");
      for (const auto& a : f.args()) add_term(sig, a);
      break;
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      add_to_signature(sig, f.lhs());
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff:
      add_to_signature(sig, f.lhs());
      add_to_signature(sig, f.rhs());
      break;
    default:
      break;
  }
}

Signature signature_of(const Formula& f) {
  Signature sig;
  add_to_signature(sig, f);
  return sig;
}

}  // namespace spa
