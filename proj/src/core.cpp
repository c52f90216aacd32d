#include "msrec/core.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace msrec {

bool is_valid_name(std::string_view name)
{
    if (name.empty())
        return false;
    auto head = static_cast<unsigned char>(name.front());
    if (!(std::isalpha(head) || head == '_'))
        return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<std::string> sorts, const std::vector<OpSpec>& ops)
    : sorts_(std::move(sorts))
{
    if (sorts_.empty())
        throw Error("signature: the sort set must be nonempty");
    for (std::size_t i = 0; i < sorts_.size(); ++i) {
        if (!is_valid_name(sorts_[i]))
            throw Error("signature: invalid sort name '" + sorts_[i] + "'");
        if (!sort_index_.emplace(sorts_[i], static_cast<SortId>(i)).second)
            throw Error("signature: duplicate sort '" + sorts_[i] + "'");
    }
    for (const auto& spec : ops) {
        OpDecl d;
        d.name = spec.name;
        for (const auto& a : spec.arity)
            d.arity.push_back(sort_id(a));
        d.result = sort_id(spec.result);
        ops_.push_back(std::move(d));
    }
    sort_index_.clear();
    index();
}

Signature Signature::from_decls(std::vector<std::string> sorts, std::vector<OpDecl> ops)
{
    Signature sig;
    sig.sorts_ = std::move(sorts);
    sig.ops_ = std::move(ops);
    if (sig.sorts_.empty())
        throw Error("signature: the sort set must be nonempty");
    for (const auto& d : sig.ops_) {
        for (SortId a : d.arity)
            if (a >= sig.sorts_.size())
                throw Error("signature: operation '" + d.name + "' uses an undeclared sort");
        if (d.result >= sig.sorts_.size())
            throw Error("signature: operation '" + d.name + "' uses an undeclared sort");
    }
    sig.index();
    return sig;
}

void Signature::index()
{
    for (std::size_t i = 0; i < sorts_.size(); ++i) {
        if (!is_valid_name(sorts_[i]))
            throw Error("signature: invalid sort name '" + sorts_[i] + "'");
        if (!sort_index_.emplace(sorts_[i], static_cast<SortId>(i)).second)
            throw Error("signature: duplicate sort '" + sorts_[i] + "'");
    }
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (!is_valid_name(ops_[i].name))
            throw Error("signature: invalid operation name '" + ops_[i].name + "'");
        if (!op_index_.emplace(ops_[i].name, static_cast<OpId>(i)).second)
            throw Error("signature: operation name '" + ops_[i].name +
                        "' declared at two ranks (overloading is rejected)");
    }
}

std::optional<SortId> Signature::find_sort(std::string_view name) const
{
    auto it = sort_index_.find(std::string(name));
    if (it == sort_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<OpId> Signature::find_op(std::string_view name) const
{
    auto it = op_index_.find(std::string(name));
    if (it == op_index_.end())
        return std::nullopt;
    return it->second;
}

SortId Signature::sort_id(std::string_view name) const
{
    if (auto s = find_sort(name))
        return *s;
    throw Error("unknown sort '" + std::string(name) + "'");
}

OpId Signature::op_id(std::string_view name) const
{
    if (auto o = find_op(name))
        return *o;
    throw Error("unknown operation '" + std::string(name) + "'");
}

std::size_t Signature::max_arity() const
{
    std::size_t m = 0;
    for (const auto& d : ops_)
        m = std::max(m, d.arity.size());
    return m;
}

// --------------------------------------------------------------- SortedVars

SortedVars::SortedVars(const Signature& sig, std::vector<VarDecl> vars) : vars_(std::move(vars))
{
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto& v = vars_[i];
        if (!is_valid_name(v.name))
            throw Error("variables: invalid name '" + v.name + "'");
        if (v.sort >= sig.sort_count())
            throw Error("variables: '" + v.name + "' has an undeclared sort");
        if (sig.find_op(v.name))
            throw Error("variables: '" + v.name + "' clashes with an operation name");
        if (!index_.emplace(v.name, static_cast<VarId>(i)).second)
            throw Error("variables: name '" + v.name + "' is not unique across sorts");
    }
}

SortedVars SortedVars::from_names(
    const Signature& sig, const std::vector<std::pair<std::string, std::vector<std::string>>>& by_sort)
{
    std::vector<VarDecl> decls;
    for (const auto& [sort, names] : by_sort) {
        SortId s = sig.sort_id(sort);
        for (const auto& n : names)
            decls.push_back({n, s});
    }
    return SortedVars(sig, std::move(decls));
}

std::optional<VarId> SortedVars::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

VarId SortedVars::id(std::string_view name) const
{
    if (auto v = find(name))
        return *v;
    throw Error("unknown variable '" + std::string(name) + "'");
}

std::vector<VarId> SortedVars::of_sort(SortId s) const
{
    std::vector<VarId> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].sort == s)
            out.push_back(static_cast<VarId>(i));
    return out;
}

// --------------------------------------------------------------------- Term

namespace {

std::size_t mix(std::size_t h, std::size_t v)
{
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

Term Term::make(NodeKind kind, std::uint32_t symbol, SortId sort, std::vector<Term> children)
{
    std::size_t size = 1;
    std::size_t h = mix(static_cast<std::size_t>(kind), symbol);
    h = mix(h, sort);
    for (const auto& c : children) {
        size += c.size();
        h = mix(h, c.hash());
    }
    return Term(std::make_shared<const Node>(Node{kind, symbol, sort, std::move(children), size, h}));
}

Term Term::variable(VarId v, SortId sort) { return make(NodeKind::var, v, sort, {}); }
Term Term::placeholder(std::uint32_t index, SortId sort) { return make(NodeKind::placeholder, index, sort, {}); }
Term Term::hole(SortId sort) { return make(NodeKind::hole, 0, sort, {}); }

Term Term::apply(const Signature& sig, OpId op, std::vector<Term> children)
{
    if (op >= sig.op_count())
        throw Error("unknown operation id " + std::to_string(op));
    const auto& d = sig.op(op);
    if (children.size() != d.arity.size())
        throw SortError("arity mismatch: '" + d.name + "' expects " + std::to_string(d.arity.size()) +
                        " arguments, got " + std::to_string(children.size()));
    for (std::size_t i = 0; i < children.size(); ++i)
        if (children[i].sort() != d.arity[i])
            throw SortError("sort mismatch: argument " + std::to_string(i) + " of '" + d.name +
                            "' must have sort " + sig.sort_name(d.arity[i]) + ", got " +
                            sig.sort_name(children[i].sort()));
    return make(NodeKind::op, op, d.result, std::move(children));
}

bool operator==(const Term& a, const Term& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.size() != b.size())
        return false;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    if (auto c = a.kind() <=> b.kind(); c != 0)
        return c;
    if (auto c = a.symbol() <=> b.symbol(); c != 0)
        return c;
    if (auto c = a.sort() <=> b.sort(); c != 0)
        return c;
    const auto& ac = a.children();
    const auto& bc = b.children();
    for (std::size_t i = 0; i < ac.size() && i < bc.size(); ++i)
        if (auto c = ac[i] <=> bc[i]; c != 0)
            return c;
    return ac.size() <=> bc.size();
}

// ------------------------------------------------------------------ Parsing

namespace {

struct RawTerm {
    std::string name;
    bool is_hole = false;
    std::string hole_sort;
    bool has_args = false;
    std::vector<RawTerm> args;
    std::size_t pos = 0;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    RawTerm parse()
    {
        RawTerm t = term();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                         std::string(text_) + "'");
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    std::string name()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            auto u = static_cast<unsigned char>(text_[pos_]);
            if (std::isalnum(u) || u == '_')
                ++pos_;
            else
                break;
        }
        std::string n(text_.substr(start, pos_ - start));
        if (!is_valid_name(n))
            fail("expected a name");
        return n;
    }

    RawTerm term()
    {
        skip_ws();
        RawTerm t;
        t.pos = pos_;
        if (peek('#')) {
            ++pos_;
            t.is_hole = true;
            if (peek(':')) {
                ++pos_;
                t.hole_sort = name();
            }
            return t;
        }
        t.name = name();
        if (peek('(')) {
            ++pos_;
            t.has_args = true;
            if (peek(')')) {
                ++pos_;
                return t;
            }
            for (;;) {
                t.args.push_back(term());
                if (peek(',')) {
                    ++pos_;
                    continue;
                }
                if (peek(')')) {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ')'");
            }
        }
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::optional<std::uint32_t> placeholder_index(std::string_view name)
{
    if (name.size() < 2 || name[0] != 'v')
        return std::nullopt;
    std::uint32_t idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            return std::nullopt;
        idx = idx * 10 + static_cast<std::uint32_t>(name[i] - '0');
    }
    return idx;
}

class Builder {
public:
    Builder(const Signature& sig, const SortedVars& vars, const ParseOptions& opt)
        : sig_(sig), vars_(vars), opt_(opt)
    {
    }

    Term build(const RawTerm& r, std::optional<SortId> expected)
    {
        Term t = build_unchecked(r, expected);
        if (expected && t.sort() != *expected)
            throw SortError("sort mismatch: '" + describe(r) + "' has sort " + sig_.sort_name(t.sort()) +
                            ", expected " + sig_.sort_name(*expected));
        return t;
    }

    std::size_t holes() const { return holes_; }

private:
    static std::string describe(const RawTerm& r) { return r.is_hole ? std::string("#") : r.name; }

    Term build_unchecked(const RawTerm& r, std::optional<SortId> expected)
    {
        if (r.is_hole) {
            if (!opt_.allow_hole)
                throw ParseError("a hole '#' is only allowed in contexts");
            ++holes_;
            std::optional<SortId> s;
            if (!r.hole_sort.empty())
                s = sig_.sort_id(r.hole_sort);
            if (!s)
                s = expected;
            if (!s)
                throw SortError("cannot infer the sort of a top-level hole; write '#:sort'");
            return Term::hole(*s);
        }
        if (!r.has_args) {
            if (!opt_.placeholder_sorts.empty()) {
                if (auto idx = placeholder_index(r.name)) {
                    if (*idx >= opt_.placeholder_sorts.size())
                        throw SortError("placeholder '" + r.name + "' out of range (arity " +
                                        std::to_string(opt_.placeholder_sorts.size()) + ")");
                    return Term::placeholder(*idx, opt_.placeholder_sorts[*idx]);
                }
            }
            if (auto v = vars_.find(r.name))
                return Term::variable(*v, vars_.at(*v).sort);
        }
        auto op = sig_.find_op(r.name);
        if (!op)
            throw ParseError("unknown symbol '" + r.name + "'");
        const auto& d = sig_.op(*op);
        if (r.args.size() != d.arity.size())
            throw SortError("arity mismatch: '" + d.name + "' expects " + std::to_string(d.arity.size()) +
                            " arguments, got " + std::to_string(r.args.size()));
        std::vector<Term> kids;
        kids.reserve(r.args.size());
        for (std::size_t i = 0; i < r.args.size(); ++i) {
            Term k = build_unchecked(r.args[i], d.arity[i]);
            if (k.sort() != d.arity[i])
                throw SortError("sort mismatch: argument " + std::to_string(i) + " of '" + d.name +
                                "' must have sort " + sig_.sort_name(d.arity[i]) + ", got " +
                                sig_.sort_name(k.sort()));
            kids.push_back(std::move(k));
        }
        return Term::apply(sig_, *op, std::move(kids));
    }

    const Signature& sig_;
    const SortedVars& vars_;
    const ParseOptions& opt_;
    std::size_t holes_ = 0;
};

} // namespace

Term parse_term(std::string_view text, const Signature& sig, const SortedVars& vars, const ParseOptions& options)
{
    RawTerm raw = Parser(text).parse();
    Builder b(sig, vars, options);
    Term t = b.build(raw, options.expected_sort);
    if (b.holes() > 1)
        throw ParseError("a context must contain exactly one hole");
    return t;
}

namespace {

void format_into(const Term& t, const Signature& sig, const SortedVars& vars, std::string& out)
{
    switch (t.kind()) {
    case NodeKind::var:
        out += vars.at(t.symbol()).name;
        return;
    case NodeKind::placeholder:
        out += "v" + std::to_string(t.symbol());
        return;
    case NodeKind::hole:
        out += "#";
        return;
    case NodeKind::op:
        break;
    }
    out += sig.op(t.symbol()).name;
    if (t.children().empty())
        return;
    out += '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i)
            out += ", ";
        format_into(t.children()[i], sig, vars, out);
    }
    out += ')';
}

} // namespace

std::string format_term(const Term& t, const Signature& sig, const SortedVars& vars)
{
    std::string out;
    format_into(t, sig, vars, out);
    return out;
}

SortId typecheck(const Term& t, const Signature& sig, const SortedVars& vars, std::span<const SortId> placeholder_sorts)
{
    switch (t.kind()) {
    case NodeKind::var:
        if (t.symbol() >= vars.size())
            throw SortError("typecheck: unknown variable id " + std::to_string(t.symbol()));
        if (vars.at(t.symbol()).sort != t.sort())
            throw SortError("typecheck: variable '" + vars.at(t.symbol()).name + "' carries the wrong sort");
        return t.sort();
    case NodeKind::placeholder:
        if (t.symbol() >= placeholder_sorts.size())
            throw SortError("typecheck: placeholder v" + std::to_string(t.symbol()) + " is out of range");
        if (placeholder_sorts[t.symbol()] != t.sort())
            throw SortError("typecheck: placeholder v" + std::to_string(t.symbol()) + " carries the wrong sort");
        return t.sort();
    case NodeKind::hole:
        if (t.sort() >= sig.sort_count())
            throw SortError("typecheck: hole of unknown sort");
        return t.sort();
    case NodeKind::op:
        break;
    }
    if (t.symbol() >= sig.op_count())
        throw SortError("typecheck: unknown operation id " + std::to_string(t.symbol()));
    const auto& d = sig.op(t.symbol());
    if (t.children().size() != d.arity.size())
        throw SortError("typecheck: arity mismatch at '" + d.name + "'");
    for (std::size_t i = 0; i < d.arity.size(); ++i)
        if (typecheck(t.children()[i], sig, vars, placeholder_sorts) != d.arity[i])
            throw SortError("typecheck: ill-sorted argument " + std::to_string(i) + " of '" + d.name + "'");
    if (t.sort() != d.result)
        throw SortError("typecheck: '" + d.name + "' carries the wrong result sort");
    return d.result;
}

// --------------------------------------------------------------- Traversals

namespace {

template <class F>
void preorder(const Term& t, F&& f)
{
    f(t);
    for (const auto& c : t.children())
        preorder(c, f);
}

} // namespace

bool is_ground(const Term& t)
{
    bool ground = true;
    preorder(t, [&](const Term& n) {
        if (n.kind() != NodeKind::op)
            ground = false;
    });
    return ground;
}

bool has_placeholders(const Term& t)
{
    bool found = false;
    preorder(t, [&](const Term& n) {
        if (n.kind() == NodeKind::placeholder)
            found = true;
    });
    return found;
}

std::size_t count_hole(const Term& t)
{
    std::size_t n = 0;
    preorder(t, [&](const Term& x) {
        if (x.kind() == NodeKind::hole)
            ++n;
    });
    return n;
}

std::size_t count_occurrences(const Term& t, VarId x)
{
    std::size_t n = 0;
    preorder(t, [&](const Term& node) {
        if (node.kind() == NodeKind::var && node.symbol() == x)
            ++n;
    });
    return n;
}

std::size_t count_placeholder(const Term& t, std::uint32_t index)
{
    std::size_t n = 0;
    preorder(t, [&](const Term& node) {
        if (node.kind() == NodeKind::placeholder && node.symbol() == index)
            ++n;
    });
    return n;
}

std::vector<VarId> variable_occurrences(const Term& t)
{
    std::vector<VarId> out;
    preorder(t, [&](const Term& node) {
        if (node.kind() == NodeKind::var)
            out.push_back(node.symbol());
    });
    return out;
}

SortedVarSet variables_of(const Term& t, std::size_t sort_count)
{
    SortedVarSet out(sort_count);
    preorder(t, [&](const Term& node) {
        if (node.kind() == NodeKind::var)
            out.at(node.sort()).insert(node.symbol());
    });
    return out;
}

std::vector<TermSet> subterms_of(const Term& t, std::size_t sort_count)
{
    std::vector<TermSet> out(sort_count);
    preorder(t, [&](const Term& node) { out.at(node.sort()).insert(node); });
    return out;
}

// ------------------------------------------------------------ Substitutions

namespace {

// Rebuilds a term bottom-up, replacing non-operation leaves through `leaf`.
// Operation nodes are rebuilt unchecked since replacements preserve sorts.
struct Rebuilder {
    template <class Leaf>
    static Term run(const Term& t, Leaf& leaf, const auto& make_node)
    {
        if (t.is_leaf() && t.kind() != NodeKind::op)
            return leaf(t);
        if (t.children().empty())
            return t;
        std::vector<Term> kids;
        kids.reserve(t.children().size());
        bool changed = false;
        for (const auto& c : t.children()) {
            kids.push_back(run(c, leaf, make_node));
            changed = changed || !(kids.back() == c);
        }
        if (!changed)
            return t;
        return make_node(t, std::move(kids));
    }
};

} // namespace

// Terms are rebuilt through this private hook so that substitutions need not
// carry the signature around.
struct TermAccess {
    static Term with_children(const Term& proto, std::vector<Term> kids)
    {
        return Term::make(proto.kind(), proto.symbol(), proto.sort(), std::move(kids));
    }
};

namespace {

template <class Leaf>
Term map_leaves(const Term& t, Leaf leaf)
{
    return Rebuilder::run(t, leaf, [](const Term& proto, std::vector<Term> kids) {
        return TermAccess::with_children(proto, std::move(kids));
    });
}

} // namespace

Term substitute_occurrences(const Term& t, const OccurrenceFamily& family)
{
    std::map<VarId, std::size_t> next;
    for (const auto& [x, seq] : family) {
        std::size_t count = count_occurrences(t, x);
        if (seq.size() != count)
            throw Error("substitution: variable id " + std::to_string(x) + " occurs " + std::to_string(count) +
                        " times but " + std::to_string(seq.size()) + " replacements were given");
        for (const auto& q : seq)
            if (count > 0 && q.sort() != seq.front().sort())
                throw SortError("substitution: replacements for one variable must share its sort");
        next[x] = 0;
    }
    return map_leaves(t, [&](const Term& leaf) -> Term {
        if (leaf.kind() != NodeKind::var)
            return leaf;
        auto it = family.find(leaf.symbol());
        if (it == family.end())
            return leaf;
        const Term& q = it->second[next[leaf.symbol()]++];
        if (q.sort() != leaf.sort())
            throw SortError("substitution: replacement sort differs from the variable's sort");
        return q;
    });
}

Term substitute_variables(const Term& t, const std::map<VarId, Term>& image)
{
    return map_leaves(t, [&](const Term& leaf) -> Term {
        if (leaf.kind() != NodeKind::var)
            return leaf;
        auto it = image.find(leaf.symbol());
        if (it == image.end())
            return leaf;
        if (it->second.sort() != leaf.sort())
            throw SortError("substitution: replacement sort differs from the variable's sort");
        return it->second;
    });
}

Term substitute_placeholders(const Term& t, std::span<const Term> args)
{
    return map_leaves(t, [&](const Term& leaf) -> Term {
        if (leaf.kind() != NodeKind::placeholder)
            return leaf;
        if (leaf.symbol() >= args.size())
            throw SortError("placeholder v" + std::to_string(leaf.symbol()) + " has no argument");
        if (args[leaf.symbol()].sort() != leaf.sort())
            throw SortError("placeholder v" + std::to_string(leaf.symbol()) + " receives an argument of the wrong sort");
        return args[leaf.symbol()];
    });
}

Term resort_placeholders(const Term& t, std::span<const SortId> new_sorts)
{
    return map_leaves(t, [&](const Term& leaf) -> Term {
        if (leaf.kind() != NodeKind::placeholder)
            return leaf;
        if (leaf.symbol() >= new_sorts.size())
            throw SortError("placeholder v" + std::to_string(leaf.symbol()) + " is out of range");
        return Term::placeholder(leaf.symbol(), new_sorts[leaf.symbol()]);
    });
}

// ----------------------------------------------------------------- Contexts

Context::Context(Term body) : body_(std::move(body))
{
    if (count_hole(body_) != 1)
        throw Error("context: exactly one hole is required");
    std::optional<SortId> hs;
    preorder(body_, [&](const Term& n) {
        if (n.kind() == NodeKind::hole)
            hs = n.sort();
    });
    hole_sort_ = *hs;
}

Context parse_context(std::string_view text, const Signature& sig, const SortedVars& vars,
                      std::optional<SortId> hole_sort)
{
    ParseOptions opt;
    opt.allow_hole = true;
    opt.expected_sort = std::nullopt;
    RawTerm raw = Parser(text).parse();
    if (raw.is_hole && raw.hole_sort.empty() && hole_sort)
        return Context::identity(*hole_sort);
    Term t = parse_term(text, sig, vars, opt);
    Context c(std::move(t));
    if (hole_sort && c.hole_sort() != *hole_sort)
        throw SortError("context: hole has sort " + sig.sort_name(c.hole_sort()) + ", expected " +
                        sig.sort_name(*hole_sort));
    return c;
}

Term apply_context(const Context& ctx, const Term& q)
{
    if (q.sort() != ctx.hole_sort())
        throw SortError("context: plugged term has the wrong sort");
    return map_leaves(ctx.body(), [&](const Term& leaf) -> Term {
        return leaf.kind() == NodeKind::hole ? q : leaf;
    });
}

Context compose_contexts(const Context& outer, const Context& inner)
{
    if (inner.root_sort() != outer.hole_sort())
        throw SortError("context composition: inner root sort differs from the outer hole sort");
    return Context(apply_context(outer, inner.body()));
}

// -------------------------------------------------------------- Enumeration

TermEnumerator::TermEnumerator(const Signature& sig, const SortedVars& vars, std::vector<SortId> placeholder_sorts)
    : sig_(sig), vars_(vars), placeholder_sorts_(std::move(placeholder_sorts))
{
}

const std::vector<Term>& TermEnumerator::exactly(SortId sort, std::size_t size)
{
    auto key = std::make_pair(sort, size);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;

    std::vector<Term> out;
    if (size == 1) {
        for (OpId o = 0; o < sig_.op_count(); ++o)
            if (sig_.op(o).arity.empty() && sig_.op(o).result == sort)
                out.push_back(Term::apply(sig_, o, {}));
        for (VarId v : vars_.of_sort(sort))
            out.push_back(Term::variable(v, sort));
        for (std::uint32_t i = 0; i < placeholder_sorts_.size(); ++i)
            if (placeholder_sorts_[i] == sort)
                out.push_back(Term::placeholder(i, sort));
    } else if (size > 1) {
        for (OpId o = 0; o < sig_.op_count(); ++o) {
            const auto& d = sig_.op(o);
            std::size_t k = d.arity.size();
            if (d.result != sort || k == 0 || k > size - 1)
                continue;
            // Every composition of size-1 into k positive parts.
            std::vector<std::size_t> parts(k, 1);
            parts[k - 1] = size - k;
            std::function<void(std::size_t, std::size_t)> compose = [&](std::size_t i, std::size_t left) {
                if (i == k - 1) {
                    parts[i] = left;
                    std::vector<std::vector<Term>> lists;
                    for (std::size_t j = 0; j < k; ++j) {
                        lists.push_back(exactly(d.arity[j], parts[j]));
                        if (lists.back().empty())
                            return;
                    }
                    std::vector<std::size_t> idx(k, 0);
                    for (;;) {
                        std::vector<Term> kids;
                        kids.reserve(k);
                        for (std::size_t j = 0; j < k; ++j)
                            kids.push_back(lists[j][idx[j]]);
                        out.push_back(Term::apply(sig_, o, std::move(kids)));
                        std::size_t j = k;
                        while (j > 0) {
                            --j;
                            if (++idx[j] < lists[j].size())
                                break;
                            idx[j] = 0;
                            if (j == 0)
                                return;
                        }
                    }
                }
                for (std::size_t p = 1; p + (k - 1 - i) <= left; ++p) {
                    parts[i] = p;
                    compose(i + 1, left - p);
                }
            };
            compose(0, size - 1);
        }
        std::sort(out.begin(), out.end());
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

std::vector<Term> TermEnumerator::up_to(SortId sort, std::size_t max_nodes)
{
    std::vector<Term> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        const auto& layer = exactly(sort, n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<Term> enumerate_terms(const Signature& sig, const SortedVars& vars, SortId sort, std::size_t max_nodes)
{
    if (max_nodes < 1)
        throw Error("enumerate_terms: max_nodes must be at least 1");
    TermEnumerator e(sig, vars);
    return e.up_to(sort, max_nodes);
}

} // namespace msrec
