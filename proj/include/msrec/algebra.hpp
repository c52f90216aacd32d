#pragma once

// Finite Σ-algebras with dense operation tables, term evaluation, products,
// generated subalgebras, quotients, subset algebras and translation tables.

#include "msrec/core.hpp"

#include <functional>

namespace msrec {

using Element = std::uint32_t;
/// Values of the variables, indexed by VarId.
using Assignment = std::vector<Element>;

class SortedPartition;

/// A per-sort subset of a finite carrier.
class SortedSubset {
public:
    SortedSubset() = default;
    explicit SortedSubset(std::span<const std::size_t> carriers);
    static SortedSubset full(std::span<const std::size_t> carriers);

    std::size_t sort_count() const { return bits_.size(); }
    std::size_t carrier(SortId s) const { return bits_.at(s).size(); }
    bool contains(SortId s, Element e) const { return e < bits_.at(s).size() && bits_[s][e]; }
    void insert(SortId s, Element e);
    void erase(SortId s, Element e);
    std::size_t count(SortId s) const;
    bool empty() const;
    std::vector<Element> elements(SortId s) const;
    SortedSubset complement() const;
    bool is_subset_of(const SortedSubset& other) const;

    bool operator==(const SortedSubset&) const = default;

private:
    std::vector<std::vector<bool>> bits_;
};

/// Mixed-radix position of an argument tuple, last argument fastest.
std::size_t tuple_index(std::span<const Element> args, std::span<const std::size_t> radices);
/// Inverse of tuple_index.
void tuple_decode(std::size_t index, std::span<const std::size_t> radices, std::span<Element> out);

/// A finite Σ-algebra. Carriers are {0..n_s-1}; every table is total over its
/// argument space. Empty carriers are permitted.
class FiniteAlgebra {
public:
    FiniteAlgebra(Signature sig, std::vector<std::size_t> carriers, std::vector<std::vector<Element>> tables);

    using OpFunction = std::function<Element(OpId, std::span<const Element>)>;
    /// Fill every table by calling fn on each argument tuple.
    static FiniteAlgebra tabulate(Signature sig, std::vector<std::size_t> carriers, const OpFunction& fn);

    const Signature& signature() const { return sig_; }
    std::size_t carrier(SortId s) const { return carriers_.at(s); }
    const std::vector<std::size_t>& carriers() const { return carriers_; }
    std::size_t total_elements() const;

    const std::vector<Element>& table(OpId o) const { return tables_.at(o); }
    const std::vector<std::size_t>& radices(OpId o) const { return radices_.at(o); }
    Element apply(OpId o, std::span<const Element> args) const;

    bool operator==(const FiniteAlgebra& other) const
    {
        return sig_ == other.sig_ && carriers_ == other.carriers_ && tables_ == other.tables_;
    }

private:
    Signature sig_;
    std::vector<std::size_t> carriers_;
    std::vector<std::vector<Element>> tables_;
    std::vector<std::vector<std::size_t>> radices_;
};

/// Values for the non-variable leaves a term may carry.
struct LeafValues {
    std::span<const Element> placeholders;
    std::optional<Element> hole;
};

/// The homomorphic extension of the assignment, applied to the term.
Element evaluate(const FiniteAlgebra& alg, std::span<const Element> assignment, const Term& t,
                 const LeafValues& extra = {});

struct ProductAlgebra {
    FiniteAlgebra algebra;
    /// projections[i][s][e] is the i-th component of product element e.
    std::vector<std::vector<std::vector<Element>>> projections;
    /// radix[s][i] is the carrier size of factor i at sort s; product
    /// elements are mixed-radix tuples, first factor most significant.
    std::vector<std::vector<std::size_t>> radix;

    Element encode(SortId s, std::span<const Element> components) const;
};

ProductAlgebra product_algebra(std::span<const FiniteAlgebra> factors);

/// Least subset containing the seed and closed under every table.
SortedSubset generated_subalgebra(const FiniteAlgebra& alg, const SortedSubset& seed);

struct Subalgebra {
    FiniteAlgebra algebra;
    /// to_new[s][old] is the renumbered element, or npos when dropped.
    std::vector<std::vector<Element>> to_new;
    std::vector<std::vector<Element>> to_old;
    static constexpr Element npos = static_cast<Element>(-1);
};

/// Restriction to a closed subset, renumbering elements in increasing order.
Subalgebra restrict_algebra(const FiniteAlgebra& alg, const SortedSubset& closed);

struct QuotientAlgebra {
    FiniteAlgebra algebra;
    /// projection[s][e] is the class of e.
    std::vector<std::vector<Element>> projection;
};

/// Quotient by a congruence; throws when the partition is not one.
QuotientAlgebra quotient_algebra(const FiniteAlgebra& alg, const SortedPartition& congruence);

/// Largest carrier accepted by subset_algebra.
inline constexpr std::size_t kSubsetAlgebraMaxCarrier = 12;

/// Carrier at s is every subset of A_s, encoded as a bitmask; operations act
/// by elementwise image.
FiniteAlgebra subset_algebra(const FiniteAlgebra& alg);
inline Element singleton_mask(Element e) { return Element{1} << e; }

/// The unary table q ↦ value of the context with the hole set to q.
std::vector<Element> translation_table(const FiniteAlgebra& alg, std::span<const Element> assignment,
                                       const Context& ctx);

} // namespace msrec
