#pragma once

// Signatures, sorted variable sets, terms, contexts, occurrence-indexed
// substitution and bounded term enumeration.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace msrec {

using SortId = std::uint32_t;
using OpId = std::uint32_t;
using VarId = std::uint32_t;

/// Raised on every violated invariant; the message names the violation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A term, context or pattern is ill-sorted.
class SortError : public Error {
public:
    using Error::Error;
};

bool is_valid_name(std::string_view name);

struct OpDecl {
    std::string name;
    std::vector<SortId> arity;
    SortId result = 0;

    bool operator==(const OpDecl&) const = default;
};

/// Operation declaration using sort names, for building signatures.
struct OpSpec {
    std::string name;
    std::vector<std::string> arity;
    std::string result;
};

/// A finite many-sorted signature (S, Σ). Operation names are unique: the
/// same name at two ranks is rejected.
class Signature {
public:
    Signature(std::vector<std::string> sorts, const std::vector<OpSpec>& ops);
    static Signature from_decls(std::vector<std::string> sorts, std::vector<OpDecl> ops);

    std::size_t sort_count() const { return sorts_.size(); }
    std::size_t op_count() const { return ops_.size(); }
    const std::string& sort_name(SortId s) const { return sorts_.at(s); }
    const std::vector<std::string>& sort_names() const { return sorts_; }
    const OpDecl& op(OpId o) const { return ops_.at(o); }
    const std::vector<OpDecl>& ops() const { return ops_; }

    std::optional<SortId> find_sort(std::string_view name) const;
    std::optional<OpId> find_op(std::string_view name) const;
    SortId sort_id(std::string_view name) const;
    OpId op_id(std::string_view name) const;

    std::size_t max_arity() const;

    bool operator==(const Signature& other) const
    {
        return sorts_ == other.sorts_ && ops_ == other.ops_;
    }

private:
    Signature() = default;
    void index();

    std::vector<std::string> sorts_;
    std::vector<OpDecl> ops_;
    std::unordered_map<std::string, SortId> sort_index_;
    std::unordered_map<std::string, OpId> op_index_;
};

struct VarDecl {
    std::string name;
    SortId sort = 0;

    bool operator==(const VarDecl&) const = default;
};

/// The finite S-sorted variable set X. Names are unique across sorts.
class SortedVars {
public:
    SortedVars() = default;
    SortedVars(const Signature& sig, std::vector<VarDecl> vars);
    /// Build from per-sort name lists keyed by sort name.
    static SortedVars from_names(const Signature& sig,
                                 const std::vector<std::pair<std::string, std::vector<std::string>>>& by_sort);

    std::size_t size() const { return vars_.size(); }
    const VarDecl& at(VarId v) const { return vars_.at(v); }
    const std::vector<VarDecl>& all() const { return vars_; }
    std::optional<VarId> find(std::string_view name) const;
    VarId id(std::string_view name) const;
    std::vector<VarId> of_sort(SortId s) const;

    bool operator==(const SortedVars& other) const { return vars_ == other.vars_; }

private:
    std::vector<VarDecl> vars_;
    std::unordered_map<std::string, VarId> index_;
};

enum class NodeKind : std::uint8_t { op = 0, var = 1, placeholder = 2, hole = 3 };

/// An immutable, structurally shared, well-sorted tree. Besides operation
/// nodes and variables a term may carry placeholders v<i> (used by Hall terms
/// and hyperderivor patterns) and a hole (used by contexts).
class Term {
public:
    static Term variable(VarId v, SortId sort);
    static Term placeholder(std::uint32_t index, SortId sort);
    static Term hole(SortId sort);
    /// Checked node construction: child count and child sorts must match.
    static Term apply(const Signature& sig, OpId op, std::vector<Term> children);

    NodeKind kind() const { return node_->kind; }
    /// Op id, var id or placeholder index depending on kind().
    std::uint32_t symbol() const { return node_->symbol; }
    SortId sort() const { return node_->sort; }
    const std::vector<Term>& children() const { return node_->children; }
    std::size_t size() const { return node_->size; }
    std::size_t hash() const { return node_->hash; }
    bool is_leaf() const { return node_->children.empty(); }

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    friend struct TermAccess;
    struct Node {
        NodeKind kind;
        std::uint32_t symbol;
        SortId sort;
        std::vector<Term> children;
        std::size_t size;
        std::size_t hash;
    };
    static Term make(NodeKind kind, std::uint32_t symbol, SortId sort, std::vector<Term> children);
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::set<Term>;
/// Per-sort variable sets, indexed by sort id.
using SortedVarSet = std::vector<std::set<VarId>>;

struct ParseOptions {
    /// Sorts of placeholders v0, v1, ...; placeholders are recognised only
    /// when this is non-empty.
    std::vector<SortId> placeholder_sorts;
    /// Accept a single hole written `#` or `#:sort`.
    bool allow_hole = false;
    /// Sort the whole term must have (also types a bare top-level hole).
    std::optional<SortId> expected_sort;
};

Term parse_term(std::string_view text, const Signature& sig, const SortedVars& vars,
                const ParseOptions& options = {});
std::string format_term(const Term& t, const Signature& sig, const SortedVars& vars);

/// Total re-validation of an untrusted term; returns its sort.
SortId typecheck(const Term& t, const Signature& sig, const SortedVars& vars,
                 std::span<const SortId> placeholder_sorts = {});

bool is_ground(const Term& t);
bool has_placeholders(const Term& t);
std::size_t count_hole(const Term& t);

std::size_t count_occurrences(const Term& t, VarId x);
std::size_t count_placeholder(const Term& t, std::uint32_t index);
/// Preorder list of the variable leaves of t (the occurrence order).
std::vector<VarId> variable_occurrences(const Term& t);
SortedVarSet variables_of(const Term& t, std::size_t sort_count);
std::vector<TermSet> subterms_of(const Term& t, std::size_t sort_count);

/// Occurrence-indexed replacement: entry x lists the term substituted for
/// the α-th preorder occurrence of x. Variables without an entry stay put.
using OccurrenceFamily = std::map<VarId, std::vector<Term>>;

Term substitute_occurrences(const Term& t, const OccurrenceFamily& family);
/// Uniform replacement of variables (one term per variable).
Term substitute_variables(const Term& t, const std::map<VarId, Term>& image);
/// Uniform replacement of placeholder v_i by args[i].
Term substitute_placeholders(const Term& t, std::span<const Term> args);
/// Placeholders keep their index but take the sort given in new_sorts.
Term resort_placeholders(const Term& t, std::span<const SortId> new_sorts);

/// A term with exactly one hole of sort hole_sort.
class Context {
public:
    Context(Term body);
    static Context identity(SortId sort) { return Context(Term::hole(sort)); }

    const Term& body() const { return body_; }
    SortId hole_sort() const { return hole_sort_; }
    SortId root_sort() const { return body_.sort(); }

private:
    Term body_;
    SortId hole_sort_;
};

Context parse_context(std::string_view text, const Signature& sig, const SortedVars& vars,
                      std::optional<SortId> hole_sort = std::nullopt);
Term apply_context(const Context& ctx, const Term& q);
/// outer ∘ inner: plugging q into the result equals outer(inner(q)).
Context compose_contexts(const Context& outer, const Context& inner);

/// Lazily enumerates well-sorted terms by exact size, memoised per sort.
class TermEnumerator {
public:
    TermEnumerator(const Signature& sig, const SortedVars& vars,
                   std::vector<SortId> placeholder_sorts = {});

    /// Terms of the sort with exactly `size` nodes, canonically ordered.
    const std::vector<Term>& exactly(SortId sort, std::size_t size);
    /// Terms of the sort with at most max_nodes nodes, canonically ordered.
    std::vector<Term> up_to(SortId sort, std::size_t max_nodes);

private:
    Signature sig_;
    SortedVars vars_;
    std::vector<SortId> placeholder_sorts_;
    std::map<std::pair<SortId, std::size_t>, std::vector<Term>> memo_;
};

std::vector<Term> enumerate_terms(const Signature& sig, const SortedVars& vars, SortId sort,
                                  std::size_t max_nodes);

} // namespace msrec
