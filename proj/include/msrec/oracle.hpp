#pragma once

// Brute-force reference semantics on explicit, size-bounded term sets.

#include "msrec/treehom.hpp"

#include <map>

namespace msrec {

/// Accepted terms with at most max_nodes nodes, per sort, canonically ordered.
std::vector<std::vector<Term>> enumerate_language(const Recognizer& r, std::size_t max_nodes);

using TermFamily = std::map<VarId, TermSet>;

/// Every term obtained from a member of K by choosing, for each occurrence of
/// each variable x with an entry, one member of L_x; results above max_nodes
/// are dropped.
TermSet semantic_substitution_sets(const Signature& sig, const TermSet& k, const TermFamily& family,
                                   std::size_t max_nodes);
/// Same sets, computed by the set-valued homomorphism x ↦ L_x that applies
/// each operation elementwise to sets.
TermSet semantic_substitution_homomorphic(const Signature& sig, const TermSet& k, const TermFamily& family,
                                          std::size_t max_nodes);

/// The z-iteration chain {z}, … truncated to max_nodes, run to its fixed point.
/// Only members of L at z's sort are used.
TermSet semantic_iteration_bounded(const Signature& sig, const TermSet& l, VarId z, SortId z_sort,
                                   std::size_t max_nodes);
TermSet semantic_iteration_bounded(const Recognizer& l, VarId z, std::size_t max_nodes);

struct QuotientOracle {
    TermSet terms;
    /// Largest K-member size that was tried.
    std::size_t member_bound = 0;
    /// True when the tried K-members provably reach every value any member
    /// reaches, so the answer is exact up to max_nodes.
    bool complete = false;
};

/// All U with at most max_nodes nodes such that some choice of members of K,
/// one per z-occurrence, sends U into L.
QuotientOracle semantic_quotient_bounded(const Recognizer& l, const TermSet& k, VarId z, std::size_t max_nodes);
/// K given as a recognizer; its members are tried up to member_bound nodes
/// (max_nodes when zero).
QuotientOracle semantic_quotient_bounded(const Recognizer& l, const Recognizer& k, VarId z, std::size_t max_nodes,
                                         std::size_t member_bound = 0);

/// Whether t is the image of a member of L at sort s, decided by matching the
/// patterns against the subterms of t.
bool semantic_image_member(const Hyperderivor& h, const Recognizer& l, SortId s, const Term& t);

} // namespace msrec
