#pragma once

// Substitution, z-iteration and z-quotient of recognizable languages.

#include "msrec/nta.hpp"

#include <map>

namespace msrec {

/// Replacement languages by variable. A variable without an entry keeps the
/// singleton {x}. Only the language at the variable's sort is used.
using LanguageFamily = std::map<VarId, Recognizer>;

/// All terms obtained from a member of K by replacing each occurrence of each
/// variable x, independently, by a member of L_x. Minimized.
Recognizer substitute_language(const Recognizer& k, const LanguageFamily& family,
                               const DeterminizeOptions& options = {});

/// The least language containing z and closed under replacing the
/// z-occurrences of a member of L by members. L is read at z's sort. Minimized.
Recognizer iterate_language(const Recognizer& l, VarId z, const DeterminizeOptions& options = {});

/// Terms U for which some replacement of the z-occurrences by members of K
/// (at z's sort) lands in L. Minimized.
Recognizer quotient_language(const Recognizer& l, const Recognizer& k, VarId z,
                             const DeterminizeOptions& options = {});

/// Values of L's evaluator reached by members of K at sort t.
std::vector<Element> quotient_value_set(const Recognizer& l, const Recognizer& k, SortId t);

/// Per-sort index of the meet of the syntactic congruences of the given
/// languages on the free algebra: the reachable size of the product of their
/// minimal recognizers.
std::vector<std::size_t> meet_index(std::span<const Recognizer> languages);

/// Per-sort k for the index bound k·2^k of each operator's output.
std::vector<std::size_t> substitution_bound_index(const Recognizer& k, const LanguageFamily& family);
std::vector<std::size_t> iteration_bound_index(const Recognizer& l, VarId z);
std::vector<std::size_t> quotient_bound_index(const Recognizer& l);

/// k·2^k, saturating at SIZE_MAX.
std::size_t exponential_bound(std::size_t k);

} // namespace msrec
