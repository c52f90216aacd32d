#pragma once

// Hall terms with projections and ξ-substitution, derivors between
// signatures, their composition and derived algebras.

#include "msrec/treehom.hpp"

namespace msrec {

/// A term over placeholders v_i of sort arity[i] (no variables), of rank
/// (arity, sort).
struct HallTerm {
    Term term;
    std::vector<SortId> arity;
    SortId sort = 0;

    bool operator==(const HallTerm&) const = default;
};

/// Validates a Hall term against its rank.
void check_hall_term(const Signature& sig, const HallTerm& p);

HallTerm projection(std::span<const SortId> w, std::size_t i);

/// Replaces every v_i in p by q[i]; every q[i] has rank (u, w_i).
HallTerm xi_substitute(const Signature& sig, const HallTerm& p, std::span<const HallTerm> q,
                       std::span<const SortId> u);

/// A sort map φ and, for each source operation σ: w → s, a target Hall term
/// of rank (φ*(w), φ(s)).
class Derivor {
public:
    Derivor(Signature source, Signature target, std::vector<SortId> sort_map, std::vector<Term> patterns);

    const Signature& source() const { return source_; }
    const Signature& target() const { return target_; }
    SortId map_sort(SortId s) const { return sort_map_.at(s); }
    const std::vector<SortId>& sort_map() const { return sort_map_; }
    std::vector<SortId> map_sorts(std::span<const SortId> w) const;
    const Term& pattern(OpId op) const { return patterns_.at(op); }
    const std::vector<Term>& patterns() const { return patterns_; }
    HallTerm hall_pattern(OpId op) const;
    bool is_linear() const;

    bool operator==(const Derivor&) const = default;

private:
    Signature source_;
    Signature target_;
    std::vector<SortId> sort_map_;
    std::vector<Term> patterns_;
};

Derivor identity_derivor(const Signature& sig);

/// Homomorphic extension to Hall terms: placeholders stay (re-sorted), each
/// node becomes the ξ-substitution of its pattern by the children's images.
HallTerm apply_derivor_term(const Derivor& d, const HallTerm& p);

/// e ∘ d, with d: Σ → Λ and e: Λ → Ω.
Derivor compose_derivors(const Derivor& e, const Derivor& d);

/// The source algebra on carriers s ↦ B_φ(s) whose operations are the term
/// operations of the patterns in B.
FiniteAlgebra derived_algebra_derivor(const Derivor& d, const FiniteAlgebra& b);

/// The hyperderivor with d's patterns and variable images f.
Hyperderivor derivor_to_hyperderivor(const Derivor& d, SortedVars source_vars, SortedVars target_vars,
                                     std::vector<Term> var_images);

} // namespace msrec
