#include "spa/semantics.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <set>
#include <sstream>

namespace spa {

namespace {

std::size_t table_index(int n, const std::vector<int>& args) {
  std::size_t idx = 0;
  for (int a : args) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
  return idx;
}

std::size_t table_size(int n, std::size_t arity) {
  std::size_t s = 1;
  for (std::size_t i = 0; i < arity; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

void collect_term(const Term& t, std::set<Symbol>& fns) {
  if (t.is_var()) return;
  fns.emplace(t.name(), t.args().size());
  for (const auto& a : t.args()) collect_term(a, fns);
}

void collect(const Formula& f, std::set<Symbol>& fns, std::set<Symbol>& preds) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (!f.is_equality()) preds.emplace(f.name(), f.args().size());
      for (const auto& a : f.args()) collect_term(a, fns);
      break;
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      collect(f.lhs(), fns, preds);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff:
      collect(f.lhs(), fns, preds);
      collect(f.rhs(), fns, preds);
      break;
    default:
      break;
  }
}

// Mutable valuation used during evaluation; quantifiers shadow and restore.
class Evaluator {
 public:
  Evaluator(const Interpretation& m, Valuation v) : m_(m), v_(std::move(v)) {}

  int term(const Term& t) {
    if (t.is_var()) {
      auto it = v_.find(t.name());
      return it == v_.end() ? 0 : it->second;
    }
    std::vector<int> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(term(a));
    return m_.apply(t.name(), args);
  }

  bool formula(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::False: return false;
      case FormulaKind::True: return true;
      case FormulaKind::Atom: {
        std::vector<int> args;
        args.reserve(f.args().size());
        for (const auto& a : f.args()) args.push_back(term(a));
        if (f.is_equality()) return args[0] == args[1];
        return m_.test(f.name(), args);
      }
      case FormulaKind::Not: return !formula(f.lhs());
      case FormulaKind::And: return formula(f.lhs()) && formula(f.rhs());
      case FormulaKind::Or: return formula(f.lhs()) || formula(f.rhs());
      case FormulaKind::Imp: return !formula(f.lhs()) || formula(f.rhs());
      case FormulaKind::Iff: return formula(f.lhs()) == formula(f.rhs());
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        bool universal = f.is(FormulaKind::Forall);
        auto it = v_.find(f.name());
        std::optional<int> saved;
        if (it != v_.end()) saved = it->second;
        bool result = universal;
        for (int d = 0; d < m_.domain_size; ++d) {
          v_[f.name()] = d;
          if (formula(f.body()) != universal) {
            result = !universal;
            break;
          }
        }
        if (saved) {
          v_[f.name()] = *saved;
        } else {
          v_.erase(f.name());
        }
        return result;
      }
    }
    return false;
  }

 private:
  const Interpretation& m_;
  Valuation v_;
};

// Odometer with digit 0 most significant, matching table_index.
void advance_digits_msb(std::vector<int>& digits, int base) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (++*it < base) return;
    *it = 0;
  }
}

bool advance_digits(std::vector<int>& digits, int base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

}  // namespace

int Interpretation::apply(const std::string& f, const std::vector<int>& args) const {
  auto it = functions.find({f, args.size()});
  if (it == functions.end())
    throw SemanticsError("no interpretation for function " + f + "/" + std::to_string(args.size()));
  return it->second.at(table_index(domain_size, args));
}

bool Interpretation::test(const std::string& p, const std::vector<int>& args) const {
  auto it = predicates.find({p, args.size()});
  if (it == predicates.end())
    throw SemanticsError("no interpretation for predicate " + p + "/" + std::to_string(args.size()));
  return it->second.at(table_index(domain_size, args));
}

int eval_term(const Interpretation& m, const Valuation& v, const Term& t) { return Evaluator(m, v).term(t); }

bool holds(const Interpretation& m, const Valuation& v, const Formula& f) { return Evaluator(m, v).formula(f); }

bool holds_closed(const Interpretation& m, const Formula& f) {
  std::vector<std::string> vars(f.free_vars().begin(), f.free_vars().end());
  std::vector<int> digits(vars.size(), 0);
  do {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = digits[i];
    if (!holds(m, v, f)) return false;
  } while (advance_digits(digits, m.domain_size));
  return true;
}

std::vector<Symbol> function_symbols(const Formula& f) {
  std::set<Symbol> fns, preds;
  collect(f, fns, preds);
  return {fns.begin(), fns.end()};
}

std::vector<Symbol> predicate_symbols(const Formula& f) {
  std::set<Symbol> fns, preds;
  collect(f, fns, preds);
  return {preds.begin(), preds.end()};
}

std::optional<Countermodel> find_countermodel(const Formula& f, int max_size, std::uint64_t budget) {
  auto fns = function_symbols(f);
  auto preds = predicate_symbols(f);
  std::vector<std::string> vars(f.free_vars().begin(), f.free_vars().end());

  // Check the enumeration fits in the budget before doing any work.
  long double total = 0;
  for (int n = 1; n <= max_size; ++n) {
    long double count = 1;
    for (const auto& [name, arity] : fns) {
      for (std::size_t i = 0; i < table_size(n, arity); ++i) count *= n;
    }
    for (const auto& [name, arity] : preds) {
      for (std::size_t i = 0; i < table_size(n, arity); ++i) count *= 2;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) count *= n;
    total += count;
  }
  if (total > static_cast<long double>(budget))
    throw SemanticsError("model enumeration exceeds budget (" + std::to_string(static_cast<double>(total)) +
                         " cases)");

  for (int n = 1; n <= max_size; ++n) {
    // One flat digit vector covers every table cell: function cells in base n,
    // predicate cells in base 2.
    std::vector<std::size_t> fn_sizes, pred_sizes;
    std::size_t fn_cells = 0, pred_cells = 0;
    for (const auto& s : fns) fn_cells += fn_sizes.emplace_back(table_size(n, s.second));
    for (const auto& s : preds) pred_cells += pred_sizes.emplace_back(table_size(n, s.second));
    std::vector<int> fn_digits(fn_cells, 0);
    std::vector<int> pred_digits(pred_cells, 0);
    do {
      do {
        Interpretation m;
        m.domain_size = n;
        std::size_t off = 0;
        for (std::size_t i = 0; i < fns.size(); ++i) {
          m.functions[fns[i]] = std::vector<int>(fn_digits.begin() + off, fn_digits.begin() + off + fn_sizes[i]);
          off += fn_sizes[i];
        }
        off = 0;
        for (std::size_t i = 0; i < preds.size(); ++i) {
          auto& table = m.predicates[preds[i]];
          for (std::size_t k = 0; k < pred_sizes[i]; ++k) table.push_back(pred_digits[off + k] != 0);
          off += pred_sizes[i];
        }
        std::vector<int> vals(vars.size(), 0);
        do {
          Valuation v;
          for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = vals[i];
          if (!holds(m, v, f)) return Countermodel{m, v};
        } while (advance_digits(vals, n));
      } while (advance_digits(pred_digits, 2));
    } while (advance_digits(fn_digits, n));
  }
  return std::nullopt;
}

bool valid_up_to(const Formula& f, int max_size, std::uint64_t budget) {
  return !find_countermodel(f, max_size, budget).has_value();
}

Interpretation random_interpretation(std::uint64_t seed, int size, const std::vector<Symbol>& functions,
                                     const std::vector<Symbol>& predicates) {
  if (size < 1) throw SemanticsError("domain size must be positive");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(size));
  std::uniform_int_distribution<int> elem(0, size - 1);
  std::bernoulli_distribution coin(0.5);
  Interpretation m;
  m.domain_size = size;
  std::set<Symbol> fns(functions.begin(), functions.end());
  std::set<Symbol> preds(predicates.begin(), predicates.end());
  for (const auto& s : fns) {
    auto& table = m.functions[s];
    for (std::size_t i = 0; i < table_size(size, s.second); ++i) table.push_back(elem(rng));
  }
  for (const auto& s : preds) {
    auto& table = m.predicates[s];
    for (std::size_t i = 0; i < table_size(size, s.second); ++i) table.push_back(coin(rng));
  }
  return m;
}

std::string describe(const Countermodel& cm) {
  std::ostringstream out;
  const int n = cm.model.domain_size;
  out << "domain {";
  for (int d = 0; d < n; ++d) out << (d ? ", " : "") << d;
  out << "}\n";
  auto print_args = [&](std::size_t idx, std::size_t arity) {
    std::vector<int> digits(arity);
    for (std::size_t i = arity; i-- > 0;) {
      digits[i] = static_cast<int>(idx % static_cast<std::size_t>(n));
      idx /= static_cast<std::size_t>(n);
    }
    std::string s = "(";
    for (std::size_t i = 0; i < arity; ++i) s += (i ? "," : "") + std::to_string(digits[i]);
    return s + ")";
  };
  for (const auto& [sym, table] : cm.model.functions) {
    for (std::size_t i = 0; i < table.size(); ++i)
      out << "  " << sym.first << print_args(i, sym.second) << " = " << table[i] << "\n";
  }
  for (const auto& [sym, table] : cm.model.predicates) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      out << "  " << sym.first;
      if (sym.second) out << print_args(i, sym.second);
      out << " = " << (table[i] ? "true" : "false") << "\n";
    }
  }
  for (const auto& [var, val] : cm.valuation) out << "  " << var << " := " << val << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// SharedEvaluator

struct SharedEvaluator::Builder {
  SharedEvaluator& ev;
  std::unordered_map<Formula, int, FormulaHash> ids;
  std::map<Symbol, int> fidx, pidx;

  static int position(const std::vector<std::string>& fvs, const std::string& v) {
    auto it = std::lower_bound(fvs.begin(), fvs.end(), v);
    return it != fvs.end() && *it == v ? static_cast<int>(it - fvs.begin()) : -1;
  }

  static int index_of(std::map<Symbol, int>& idx, std::vector<Symbol>& syms, Symbol s) {
    auto [it, fresh] = idx.emplace(s, static_cast<int>(syms.size()));
    if (fresh) syms.push_back(std::move(s));
    return it->second;
  }

  int term(const Term& t, const std::vector<std::string>& fvs) {
    if (t.is_var()) {
      ev.terms_.push_back({-1, position(fvs, t.name()), 0, 0});
      return static_cast<int>(ev.terms_.size()) - 1;
    }
    std::vector<int> args;
    for (const auto& a : t.args()) args.push_back(term(a, fvs));
    TermCode code{index_of(fidx, ev.functions_, {t.name(), t.args().size()}),
                  -1, static_cast<int>(ev.term_args_.size()), static_cast<int>(args.size())};
    ev.term_args_.insert(ev.term_args_.end(), args.begin(), args.end());
    ev.terms_.push_back(code);
    return static_cast<int>(ev.terms_.size()) - 1;
  }

  int node(const Formula& f) {
    if (auto it = ids.find(f); it != ids.end()) return it->second;
    std::vector<std::string> fvs(f.free_vars().begin(), f.free_vars().end());
    NodeCode code;
    code.kind = f.kind();
    code.arity = static_cast<int>(fvs.size());
    auto link = [&](int slot, const Formula& child) {
      code.child[slot] = node(child);
      for (const auto& v : child.free_vars())
        code.map[slot].push_back(f.is_quantifier() && v == f.name() ? -1 : position(fvs, v));
    };
    switch (f.kind()) {
      case FormulaKind::Atom:
        if (!f.is_equality()) code.symbol = index_of(pidx, ev.predicates_, {f.name(), f.args().size()});
        for (const auto& a : f.args()) code.terms.push_back(term(a, fvs));
        break;
      case FormulaKind::Not:
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        link(0, f.lhs());
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp:
      case FormulaKind::Iff:
        link(0, f.lhs());
        link(1, f.rhs());
        break;
      default:
        break;
    }
    ev.nodes_.push_back(std::move(code));
    int id = static_cast<int>(ev.nodes_.size()) - 1;
    ids.emplace(f, id);
    return id;
  }
};

SharedEvaluator::SharedEvaluator(const std::vector<Formula>& formulas) {
  Builder b{*this, {}, {}, {}};
  for (const auto& f : formulas) roots_.push_back(b.node(f));
}

std::vector<bool> SharedEvaluator::holds_closed(const Interpretation& m) const {
  const int d = m.domain_size;
  std::vector<const std::vector<int>*> fn(functions_.size());
  std::vector<const std::vector<bool>*> pr(predicates_.size());
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    auto it = m.functions.find(functions_[i]);
    if (it == m.functions.end())
      throw SemanticsError("no interpretation for function " + functions_[i].first);
    fn[i] = &it->second;
  }
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    auto it = m.predicates.find(predicates_[i]);
    if (it == m.predicates.end())
      throw SemanticsError("no interpretation for predicate " + predicates_[i].first);
    pr[i] = &it->second;
  }

  std::vector<int> digits;
  auto eval = [&](auto& self, int t) -> int {
    const TermCode& c = terms_[static_cast<std::size_t>(t)];
    if (c.symbol < 0) return digits[static_cast<std::size_t>(c.var)];
    std::size_t idx = 0;
    for (int k = 0; k < c.count; ++k)
      idx = idx * static_cast<std::size_t>(d) +
            static_cast<std::size_t>(self(self, term_args_[static_cast<std::size_t>(c.first + k)]));
    return (*fn[static_cast<std::size_t>(c.symbol)])[idx];
  };

  constexpr std::size_t kMaxCells = std::size_t{1} << 24;
  // All tables live in one buffer; offset[n] is where node n's table starts.
  std::vector<std::size_t> offset(nodes_.size() + 1, 0);
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const std::size_t cells = table_size(d, static_cast<std::size_t>(nodes_[n].arity));
    if (cells > kMaxCells) throw SemanticsError("too many free variables for shared evaluation");
    offset[n + 1] = offset[n] + cells;
  }
  std::vector<char> value(offset.back(), 0);
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const NodeCode& c = nodes_[n];
    const std::size_t cells = offset[n + 1] - offset[n];
    char* out = value.data() + offset[n];
    digits.assign(static_cast<std::size_t>(c.arity), 0);
    // Child cell for the current digits; `bound` is the quantified value.
    auto cell = [&](int slot, int bound) -> char {
      std::size_t idx = 0;
      for (int p : c.map[slot])
        idx = idx * static_cast<std::size_t>(d) +
              static_cast<std::size_t>(p < 0 ? bound : digits[static_cast<std::size_t>(p)]);
      return value[offset[static_cast<std::size_t>(c.child[slot])] + idx];
    };
    for (std::size_t i = 0; i < cells; ++i) {
      char r = 0;
      switch (c.kind) {
        case FormulaKind::False: r = 0; break;
        case FormulaKind::True: r = 1; break;
        case FormulaKind::Atom: {
          if (c.symbol < 0) {
            r = eval(eval, c.terms[0]) == eval(eval, c.terms[1]);
          } else {
            std::size_t idx = 0;
            for (int t : c.terms) idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(eval(eval, t));
            r = (*pr[static_cast<std::size_t>(c.symbol)])[idx];
          }
          break;
        }
        case FormulaKind::Not: r = !cell(0, 0); break;
        case FormulaKind::And: r = cell(0, 0) && cell(1, 0); break;
        case FormulaKind::Or: r = cell(0, 0) || cell(1, 0); break;
        case FormulaKind::Imp: r = !cell(0, 0) || cell(1, 0); break;
        case FormulaKind::Iff: r = cell(0, 0) == cell(1, 0); break;
        case FormulaKind::Forall:
        case FormulaKind::Exists: {
          const bool universal = c.kind == FormulaKind::Forall;
          r = universal;
          for (int b = 0; b < d; ++b) {
            if (static_cast<bool>(cell(0, b)) != universal) {
              r = !universal;
              break;
            }
          }
          break;
        }
      }
      out[i] = r;
      advance_digits_msb(digits, d);
    }
  }

  std::vector<bool> result;
  result.reserve(roots_.size());
  for (int r : roots_) {
    const auto n = static_cast<std::size_t>(r);
    result.push_back(std::all_of(value.begin() + static_cast<std::ptrdiff_t>(offset[n]),
                                 value.begin() + static_cast<std::ptrdiff_t>(offset[n + 1]),
                                 [](char v) { return v != 0; }));
  }
  return result;
}

}  // namespace spa
