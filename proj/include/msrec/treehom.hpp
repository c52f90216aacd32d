#pragma once

// Hyperderivors: tree homomorphisms between term algebras over different
// signatures, their derived algebras, inverse images and linear direct images.

#include "msrec/nta.hpp"

namespace msrec {

/// A sort map φ, one pattern per source operation and one image per source
/// variable. The pattern of σ: w → s is a target term of sort φ(s) over the
/// target variables and placeholders v_i of sort φ(w_i).
class Hyperderivor {
public:
    Hyperderivor(Signature source, SortedVars source_vars, Signature target, SortedVars target_vars,
                 std::vector<SortId> sort_map, std::vector<Term> patterns, std::vector<Term> var_images);

    const Signature& source() const { return source_; }
    const SortedVars& source_vars() const { return source_vars_; }
    const Signature& target() const { return target_; }
    const SortedVars& target_vars() const { return target_vars_; }
    SortId map_sort(SortId s) const { return sort_map_.at(s); }
    const std::vector<SortId>& sort_map() const { return sort_map_; }
    const Term& pattern(OpId op) const { return patterns_.at(op); }
    const std::vector<Term>& patterns() const { return patterns_; }
    const Term& var_image(VarId x) const { return var_images_.at(x); }
    const std::vector<Term>& var_images() const { return var_images_; }
    /// Sorts φ(w_i) of the placeholders of op's pattern.
    std::vector<SortId> placeholder_sorts(OpId op) const;
    /// No placeholder occurs twice in a pattern.
    bool is_linear() const;

    bool operator==(const Hyperderivor&) const = default;

private:
    Signature source_;
    SortedVars source_vars_;
    Signature target_;
    SortedVars target_vars_;
    std::vector<SortId> sort_map_;
    std::vector<Term> patterns_;
    std::vector<Term> var_images_;
};

/// Names of the form v<digits> are reserved for placeholders.
bool is_placeholder_name(std::string_view name);

Term apply_treehom(const Hyperderivor& h, const Term& t);

struct DerivedAlgebra {
    FiniteAlgebra algebra;
    Assignment assignment;
};

/// The source-signature algebra on carriers s ↦ B_φ(s) whose operations
/// evaluate the patterns in B, with x ↦ value of f(x).
DerivedAlgebra derived_algebra(const Hyperderivor& h, const FiniteAlgebra& b, std::span<const Element> assignment);

/// Source terms of sort s whose image lies in L. φ(s) carries L.
Recognizer inverse_image(const Hyperderivor& h, const Recognizer& l, SortId s);

/// Images of the members of L at sort s, at sort φ(s). Linear h only. Minimized.
Recognizer direct_image(const Hyperderivor& h, const Recognizer& l, SortId s,
                        const DeterminizeOptions& options = {});

/// Plain homomorphism x ↦ g(x) into terms over the same signature.
Hyperderivor hom_to_hyperderivor(const Signature& sig, const SortedVars& source_vars, const SortedVars& target_vars,
                                 std::vector<Term> images);

/// Constants of the direct-image index bound a·2^(b·d·card(k)^e).
struct ImageBound {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t d = 0;
    std::size_t e = 0;
    std::size_t card_k = 0;

    /// count ≤ a·2^(b·d·card(k)^e), decided without overflow.
    bool admits(std::size_t count) const;
};

ImageBound direct_image_bound(const Hyperderivor& h, const Recognizer& l, SortId s);

} // namespace msrec
