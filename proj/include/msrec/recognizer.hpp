#pragma once

// Recognizable languages as deterministic complete bottom-up evaluators: a
// finite algebra, a variable assignment and per-sort accepting sets.

#include "msrec/congruence.hpp"

namespace msrec {

/// The language at sort s is { P of sort s : evaluate(algebra, assignment, P) ∈ accepting_s }.
class Recognizer {
public:
    Recognizer(SortedVars vars, FiniteAlgebra algebra, Assignment assignment, SortedSubset accepting);

    const Signature& signature() const { return algebra_.signature(); }
    const SortedVars& vars() const { return vars_; }
    const FiniteAlgebra& algebra() const { return algebra_; }
    const Assignment& assignment() const { return assignment_; }
    const SortedSubset& accepting() const { return accepting_; }
    const std::vector<std::size_t>& state_counts() const { return algebra_.carriers(); }

    bool operator==(const Recognizer&) const = default;

private:
    SortedVars vars_;
    FiniteAlgebra algebra_;
    Assignment assignment_;
    SortedSubset accepting_;
};

/// The evaluator state reached by the term.
Element run(const Recognizer& r, const Term& t);
bool accepts(const Recognizer& r, const Term& t);

enum class BooleanOp { union_of, intersection, difference };

std::optional<BooleanOp> parse_boolean_op(std::string_view name);

/// Product construction; the accepting set follows the Boolean operation.
Recognizer combine(BooleanOp op, const Recognizer& a, const Recognizer& b);
/// Complement relative to all terms, at every sort.
Recognizer complement(const Recognizer& r);
/// Keeps the language at sort s and empties it elsewhere.
Recognizer restrict_to_sort(const Recognizer& r, SortId s);

Recognizer empty_language(const Signature& sig, const SortedVars& vars);
Recognizer universal_language(const Signature& sig, const SortedVars& vars);

/// Values reached by some term: the subalgebra generated by the assignment.
SortedSubset reachable_values(const Recognizer& r);
bool is_empty(const Recognizer& r);
/// A smallest accepted term of each sort, if any.
std::vector<std::optional<Term>> accepted_witnesses(const Recognizer& r);
bool equivalent(const Recognizer& a, const Recognizer& b);

/// Restriction to the reachable values, renumbered in canonical
/// first-reached order (variables first, then operations in declaration
/// order over tuples of already-reached values).
Recognizer trim(const Recognizer& r);
/// Reachable part quotiented by the syntactic congruence of the accepting
/// set, canonically numbered.
Recognizer minimize(const Recognizer& r);

/// Per-sort index of the syntactic congruence of the accepting set on the
/// reachable part.
std::vector<std::size_t> syntactic_indices(const Recognizer& r);

/// Singleton language of a variable, a constant or a flat term σ(x_0,…,x_{n-1}),
/// built with the small witnessing algebras of the basic-term constructions.
Recognizer recognize_basic(const Signature& sig, const SortedVars& vars, const Term& pattern);
/// Singleton language of an arbitrary term (subterm automaton plus a sink).
Recognizer recognize_term(const Signature& sig, const SortedVars& vars, const Term& term);
/// Finite language as a union of singletons.
Recognizer recognize_finite(const Signature& sig, const SortedVars& vars, std::span<const Term> terms);

/// Same evaluator; accepting at the hole sort is the preimage of the
/// accepting set at the root sort under the context's translation. Other
/// sorts accept nothing.
Recognizer inverse_translation(const Recognizer& r, const Context& ctx);

} // namespace msrec
