#pragma once

// Nondeterministic bottom-up tree automata with epsilon rules and their
// subset construction. Internal machinery for the closure constructions.

#include "msrec/recognizer.hpp"

namespace msrec {

using StateId = std::uint32_t;

class Nta {
public:
    struct Rule {
        std::vector<StateId> args;
        StateId result;
    };

    Nta(Signature sig, SortedVars vars);

    const Signature& signature() const { return sig_; }
    const SortedVars& vars() const { return vars_; }

    StateId add_state(SortId sort, bool accepting = false);
    void set_accepting(StateId q, bool accepting = true);
    void add_var_rule(VarId x, StateId q);
    void add_rule(OpId op, std::vector<StateId> args, StateId result);
    /// A term reaching `from` also reaches `to`.
    void add_epsilon(StateId from, StateId to);

    std::size_t state_count() const { return state_sort_.size(); }
    SortId state_sort(StateId q) const { return state_sort_.at(q); }
    bool is_accepting(StateId q) const { return accepting_.at(q); }
    const std::vector<StateId>& var_rules(VarId x) const { return var_rules_.at(x); }
    const std::vector<Rule>& rules(OpId op) const { return rules_.at(op); }
    const std::vector<StateId>& epsilon(StateId q) const { return epsilon_.at(q); }

    /// Reflexive-transitive epsilon closure of every state.
    std::vector<std::vector<StateId>> epsilon_closure() const;

private:
    Signature sig_;
    SortedVars vars_;
    std::vector<SortId> state_sort_;
    std::vector<bool> accepting_;
    std::vector<std::vector<StateId>> var_rules_;
    std::vector<std::vector<Rule>> rules_;
    std::vector<std::vector<StateId>> epsilon_;
};

struct DeterminizeOptions {
    std::size_t max_states = std::size_t{1} << 20;
};

/// Subset construction over reachable state sets only.
Recognizer determinize(const Nta& nta, const DeterminizeOptions& options = {});

/// NTA states that mirror a recognizer's evaluator, one per element.
struct EmbeddedRecognizer {
    std::vector<StateId> base;
    StateId state(SortId s, Element e) const { return base.at(s) + e; }
};

/// Copies the evaluator's tables into the NTA as deterministic rules. Variable
/// rules are copied only for variables with copy_var_rule[x] set (all when empty).
EmbeddedRecognizer embed_recognizer(Nta& nta, const Recognizer& r, const std::vector<bool>& copy_var_rule = {});

} // namespace msrec
