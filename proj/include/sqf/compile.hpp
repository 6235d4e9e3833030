// compile.hpp -- compiling predicates to multi-track automata
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqf/dfao.hpp"
#include "sqf/predicate.hpp"
#include "sqf/track_automaton.hpp"

namespace sqf {

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CompileOptions {
  std::size_t state_ceiling = 1'000'000;
};

/// Compiles a predicate bottom-up: atoms become small automata, boolean
/// connectives become products/complements, and quantifiers become
/// projections (A x f as ~E x ~f). Every step re-minimizes, so results are
/// canonical and padding-closed.
///
/// Atoms with compound terms are normalized on the fly: each sum is folded
/// into a fresh existentially quantified variable constrained by addition
/// atoms (VTM[i+k]=@0 compiles as E t. t=i+k & VTM[t]=@0), which is sound
/// under any polarity since sums of naturals are total and functional.
class PredicateCompiler {
 public:
  PredicateCompiler(const std::map<std::string, Dfao>& sequences,
                    CompileOptions options = {})
      : options_(options) {
    for (const auto& [name, d] : sequences) {
      Dfao m = minimize(d);
      if (m.next[m.initial][0] != m.initial)
        throw CompileError("sequence " + name +
                           " is not leading-zero invariant");
      sequences_.emplace(name, std::move(m));
    }
  }

  TrackAutomaton compile(const Formula& f) {
    try {
      if (auto* s = std::get_if<SeqAtom>(&f.node)) return compile_seq(*s);
      if (auto* c = std::get_if<Compare>(&f.node)) return compile_compare(*c);
      if (auto* b = std::get_if<BoolBin>(&f.node)) {
        const Connective op = b->op == BoolOp::And ? Connective::And
                              : b->op == BoolOp::Or ? Connective::Or
                                                    : Connective::Implies;
        return product(op, compile(*b->lhs), compile(*b->rhs),
                       options_.state_ceiling);
      }
      if (auto* n = std::get_if<Not>(&f.node))
        return complement(compile(*n->child));
      const auto& q = std::get<Quantifier>(f.node);
      if (q.exists) return project_if_present(compile(*q.body), q.var);
      return complement(project_if_present(
          complement(compile(*q.body)), q.var));
    } catch (const StateLimitError& e) {
      throw CompileError(std::string(e.what()) +
                         " while compiling: " + to_string(f));
    }
  }

 private:
  struct LoweredTerm {
    std::string track;
    std::vector<TrackAutomaton> constraints;
    std::vector<std::string> fresh;
  };

  static TrackAutomaton project_if_present(TrackAutomaton a, char var) {
    const std::string name(1, var);
    if (std::find(a.tracks.begin(), a.tracks.end(), name) == a.tracks.end())
      return a;  // vacuous quantifier: every natural witnesses a true body
    return project(a, name);
  }

  std::string fresh_track() { return "$" + std::to_string(fresh_counter_++); }

  static void flatten(const Term& t, std::vector<char>& vars,
                      std::uint64_t& constant) {
    if (auto* v = std::get_if<TermVar>(&t.node)) {
      vars.push_back(v->name);
    } else if (auto* c = std::get_if<TermConst>(&t.node)) {
      if (constant > std::uint64_t(-1) - c->value)
        throw CompileError("constant term overflows");
      constant += c->value;
    } else {
      const auto& a = std::get<TermAdd>(t.node);
      flatten(*a.lhs, vars, constant);
      flatten(*a.rhs, vars, constant);
    }
  }

  LoweredTerm lower(const Term& t) {
    std::vector<char> vars;
    std::uint64_t constant = 0;
    flatten(t, vars, constant);

    LoweredTerm out;
    std::vector<std::string> addends;
    for (char v : vars) addends.emplace_back(1, v);
    if (constant != 0 || addends.empty()) {
      std::string u = fresh_track();
      out.constraints.push_back(const_automaton(u, constant));
      out.fresh.push_back(u);
      addends.push_back(std::move(u));
    }
    out.track = addends[0];
    for (std::size_t i = 1; i < addends.size(); ++i) {
      std::string sum = fresh_track();
      out.constraints.push_back(add_automaton(out.track, addends[i], sum,
                                              options_.state_ceiling));
      out.fresh.push_back(sum);
      out.track = std::move(sum);
    }
    return out;
  }

  TrackAutomaton finish_atom(TrackAutomaton base, LoweredTerm& l,
                             LoweredTerm& r) {
    for (auto& c : l.constraints)
      base = product(Connective::And, base, c, options_.state_ceiling);
    for (auto& c : r.constraints)
      base = product(Connective::And, base, c, options_.state_ceiling);
    for (auto it = r.fresh.rbegin(); it != r.fresh.rend(); ++it)
      base = project(base, *it, options_.state_ceiling);
    for (auto it = l.fresh.rbegin(); it != l.fresh.rend(); ++it)
      base = project(base, *it, options_.state_ceiling);
    return base;
  }

  TrackAutomaton compile_compare(const Compare& c) {
    LoweredTerm l = lower(*c.lhs);
    LoweredTerm r = lower(*c.rhs);
    TrackAutomaton base =
        c.op == CompareOp::Eq
            ? eq_automaton(l.track, r.track)
            : less_automaton(l.track, r.track, c.op == CompareOp::Le);
    return finish_atom(std::move(base), l, r);
  }

  TrackAutomaton compile_seq(const SeqAtom& s) {
    const auto it = sequences_.find(s.sequence);
    if (it == sequences_.end())
      throw CompileError("unknown sequence name: " + s.sequence);
    const Dfao& d = it->second;
    bool letter_known = false;
    for (Letter out : d.output) letter_known = letter_known || out == s.letter;
    if (!letter_known)
      throw CompileError("sequence " + s.sequence + " never outputs letter " +
                         std::to_string(int(s.letter)));
    LoweredTerm l = lower(*s.index);
    LoweredTerm none;
    TrackAutomaton base = seq_letter_automaton(l.track, d, s.letter);
    return finish_atom(std::move(base), l, none);
  }

  std::map<std::string, Dfao> sequences_;
  CompileOptions options_;
  int fresh_counter_ = 0;
};

inline TrackAutomaton compile_predicate(const Formula& f,
                                        const std::map<std::string, Dfao>& seqs,
                                        CompileOptions options = {}) {
  PredicateCompiler compiler(seqs, options);
  TrackAutomaton a = compiler.compile(f);
  check_padding_closed(a);
  return a;
}

inline TrackAutomaton compile_predicate(std::string_view text,
                                        const std::map<std::string, Dfao>& seqs,
                                        CompileOptions options = {}) {
  return compile_predicate(*parse_predicate(text), seqs, options);
}

}  // namespace sqf
