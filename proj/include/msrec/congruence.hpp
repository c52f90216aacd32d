#pragma once

// Sorted partitions, congruence testing, cogenerated and syntactic
// congruences via Moore-style refinement, saturation.

#include "msrec/algebra.hpp"

namespace msrec {

/// A per-sort partition given by class-id arrays. Class ids are contiguous
/// and numbered by least member, so equal partitions compare equal.
class SortedPartition {
public:
    SortedPartition() = default;
    /// Normalises the given labelling (labels may be arbitrary integers).
    explicit SortedPartition(std::vector<std::vector<std::uint32_t>> labels);

    static SortedPartition identity(std::span<const std::size_t> carriers);
    static SortedPartition total(std::span<const std::size_t> carriers);
    /// Two blocks per sort: the subset and its complement.
    static SortedPartition kernel(const SortedSubset& subset);

    std::size_t sort_count() const { return class_of_.size(); }
    std::size_t carrier(SortId s) const { return class_of_.at(s).size(); }
    std::uint32_t class_of(SortId s, Element e) const { return class_of_.at(s).at(e); }
    const std::vector<std::uint32_t>& classes(SortId s) const { return class_of_.at(s); }
    std::size_t index(SortId s) const { return counts_.at(s); }
    std::vector<std::size_t> indices() const { return counts_; }
    bool related(SortId s, Element a, Element b) const { return class_of(s, a) == class_of(s, b); }
    /// Members of each class, in increasing order; the front is the representative.
    std::vector<std::vector<Element>> blocks(SortId s) const;

    /// Every block of *this lies inside a block of coarser.
    bool refines(const SortedPartition& coarser) const;

    bool operator==(const SortedPartition&) const = default;

private:
    std::vector<std::vector<std::uint32_t>> class_of_;
    std::vector<std::size_t> counts_;
};

struct CongruenceWitness {
    OpId op;
    std::vector<Element> lhs;
    std::vector<Element> rhs;
};

struct CongruenceCheck {
    bool is_congruence = true;
    std::optional<CongruenceWitness> witness;
    explicit operator bool() const { return is_congruence; }
};

CongruenceCheck is_congruence(const FiniteAlgebra& alg, const SortedPartition& partition);

/// The coarsest congruence refining phi.
SortedPartition cogenerated_congruence(const FiniteAlgebra& alg, const SortedPartition& phi);

/// The greatest congruence saturating L.
SortedPartition syntactic_congruence(const FiniteAlgebra& alg, const SortedSubset& language);

/// Union of all classes meeting the subset.
SortedSubset saturate(const SortedPartition& phi, const SortedSubset& subset);

SortedPartition meet_partitions(const SortedPartition& a, const SortedPartition& b);

} // namespace msrec
