#include "msrec/treehom.hpp"

#include "msrec/closure.hpp"

#include <algorithm>

namespace msrec {

bool is_placeholder_name(std::string_view name)
{
    return name.size() >= 2 && name[0] == 'v' &&
           std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Hyperderivor::Hyperderivor(Signature source, SortedVars source_vars, Signature target, SortedVars target_vars,
                           std::vector<SortId> sort_map, std::vector<Term> patterns, std::vector<Term> var_images)
    : source_(std::move(source)), source_vars_(std::move(source_vars)), target_(std::move(target)),
      target_vars_(std::move(target_vars)), sort_map_(std::move(sort_map)), patterns_(std::move(patterns)),
      var_images_(std::move(var_images))
{
    if (sort_map_.size() != source_.sort_count())
        throw Error("hyperderivor: the sort map must cover every source sort");
    for (SortId t : sort_map_)
        if (t >= target_.sort_count())
            throw Error("hyperderivor: the sort map leaves the target sorts");
    for (const auto& y : target_vars_.all())
        if (is_placeholder_name(y.name))
            throw Error("hyperderivor: target variable name " + y.name + " is reserved for placeholders");
    if (patterns_.size() != source_.op_count())
        throw Error("hyperderivor: every source operation needs a pattern");
    for (OpId o = 0; o < source_.op_count(); ++o) {
        const auto& d = source_.op(o);
        auto ps = placeholder_sorts(o);
        SortId got = 0;
        try {
            got = typecheck(patterns_[o], target_, target_vars_, ps);
        } catch (const SortError& e) {
            throw SortError("hyperderivor: pattern of '" + d.name + "': " + e.what());
        }
        if (count_hole(patterns_[o]) != 0)
            throw SortError("hyperderivor: pattern of '" + d.name + "' contains a hole");
        if (got != sort_map_[d.result])
            throw SortError("hyperderivor: pattern of '" + d.name + "' must have sort " +
                            target_.sort_name(sort_map_[d.result]));
    }
    if (var_images_.size() != source_vars_.size())
        throw Error("hyperderivor: every source variable needs an image");
    for (VarId x = 0; x < source_vars_.size(); ++x) {
        const auto& v = source_vars_.at(x);
        SortId got = 0;
        try {
            got = typecheck(var_images_[x], target_, target_vars_);
        } catch (const SortError& e) {
            throw SortError("hyperderivor: image of '" + v.name + "': " + e.what());
        }
        if (has_placeholders(var_images_[x]) || count_hole(var_images_[x]) != 0)
            throw SortError("hyperderivor: image of '" + v.name + "' must be a plain term");
        if (got != sort_map_[v.sort])
            throw SortError("hyperderivor: image of '" + v.name + "' must have sort " +
                            target_.sort_name(sort_map_[v.sort]));
    }
}

std::vector<SortId> Hyperderivor::placeholder_sorts(OpId op) const
{
    std::vector<SortId> out;
    for (SortId w : source_.op(op).arity)
        out.push_back(sort_map_.at(w));
    return out;
}

bool Hyperderivor::is_linear() const
{
    for (OpId o = 0; o < patterns_.size(); ++o)
        for (std::uint32_t i = 0; i < source_.op(o).arity.size(); ++i)
            if (count_placeholder(patterns_[o], i) > 1)
                return false;
    return true;
}

Term apply_treehom(const Hyperderivor& h, const Term& t)
{
    switch (t.kind()) {
    case NodeKind::var:
        return h.var_image(t.symbol());
    case NodeKind::op:
        break;
    default:
        throw SortError("apply_treehom: the term must be built from operations and variables only");
    }
    std::vector<Term> images;
    images.reserve(t.children().size());
    for (const auto& c : t.children())
        images.push_back(apply_treehom(h, c));
    return substitute_placeholders(h.pattern(t.symbol()), images);
}

DerivedAlgebra derived_algebra(const Hyperderivor& h, const FiniteAlgebra& b, std::span<const Element> assignment)
{
    if (!(b.signature() == h.target()))
        throw Error("derived_algebra: the algebra is not over the hyperderivor's target signature");
    if (assignment.size() != h.target_vars().size())
        throw Error("derived_algebra: the assignment must give a value to every target variable");
    const Signature& src = h.source();
    std::vector<std::size_t> carriers(src.sort_count());
    for (SortId s = 0; s < src.sort_count(); ++s)
        carriers[s] = b.carrier(h.map_sort(s));
    auto alg = FiniteAlgebra::tabulate(src, carriers, [&](OpId o, std::span<const Element> args) {
        return evaluate(b, assignment, h.pattern(o), LeafValues{args, std::nullopt});
    });
    Assignment a(h.source_vars().size());
    for (VarId x = 0; x < a.size(); ++x)
        a[x] = evaluate(b, assignment, h.var_image(x));
    return DerivedAlgebra{std::move(alg), std::move(a)};
}

Recognizer inverse_image(const Hyperderivor& h, const Recognizer& l, SortId s)
{
    if (!(l.signature() == h.target()) || !(l.vars() == h.target_vars()))
        throw Error("inverse_image: the language is not over the hyperderivor's target");
    if (s >= h.source().sort_count())
        throw Error("inverse_image: unknown source sort");
    DerivedAlgebra d = derived_algebra(h, l.algebra(), l.assignment());
    SortedSubset accepting(d.algebra.carriers());
    for (Element e : l.accepting().elements(h.map_sort(s)))
        accepting.insert(s, e);
    return Recognizer(h.source_vars(), std::move(d.algebra), std::move(d.assignment), std::move(accepting));
}

namespace {

// Adds rules so that exactly the instances of `pattern` (placeholders v_i
// standing for the nonterminal args[i]) reach `into`.
void compile_pattern(Nta& nta, const Term& pattern, std::span<const StateId> args, StateId into)
{
    switch (pattern.kind()) {
    case NodeKind::placeholder:
        nta.add_epsilon(args[pattern.symbol()], into);
        return;
    case NodeKind::var:
        nta.add_var_rule(pattern.symbol(), into);
        return;
    case NodeKind::op:
        break;
    default:
        throw Error("direct_image: unexpected hole in a pattern");
    }
    std::vector<StateId> child_states;
    for (const auto& c : pattern.children()) {
        if (c.kind() == NodeKind::placeholder) {
            child_states.push_back(args[c.symbol()]);
            continue;
        }
        StateId fresh = nta.add_state(c.sort());
        compile_pattern(nta, c, args, fresh);
        child_states.push_back(fresh);
    }
    nta.add_rule(pattern.symbol(), std::move(child_states), into);
}

} // namespace

Recognizer direct_image(const Hyperderivor& h, const Recognizer& l, SortId s, const DeterminizeOptions& options)
{
    if (!(l.signature() == h.source()) || !(l.vars() == h.source_vars()))
        throw Error("direct_image: the language is not over the hyperderivor's source");
    if (!h.is_linear())
        throw Error("direct_image: the hyperderivor is not linear (a placeholder occurs twice in a pattern)");
    if (s >= h.source().sort_count())
        throw Error("direct_image: unknown source sort");
    Recognizer m = minimize(restrict_to_sort(l, s));
    const Signature& src = h.source();
    Nta nta(h.target(), h.target_vars());
    // Nonterminal N(r, q) derives the images of the sort-r terms with value q.
    std::vector<std::vector<StateId>> nonterminal(src.sort_count());
    for (SortId r = 0; r < src.sort_count(); ++r)
        for (Element q = 0; q < m.algebra().carrier(r); ++q)
            nonterminal[r].push_back(nta.add_state(h.map_sort(r), r == s && m.accepting().contains(r, q)));
    for (OpId o = 0; o < src.op_count(); ++o) {
        const auto& d = src.op(o);
        const auto& rad = m.algebra().radices(o);
        const auto& table = m.algebra().table(o);
        std::vector<Element> args(rad.size());
        std::vector<StateId> nts(rad.size());
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            tuple_decode(idx, rad, args);
            for (std::size_t i = 0; i < args.size(); ++i)
                nts[i] = nonterminal[d.arity[i]][args[i]];
            compile_pattern(nta, h.pattern(o), nts, nonterminal[d.result][table[idx]]);
        }
    }
    for (VarId x = 0; x < h.source_vars().size(); ++x) {
        SortId r = h.source_vars().at(x).sort;
        compile_pattern(nta, h.var_image(x), {}, nonterminal[r][m.assignment()[x]]);
    }
    return minimize(determinize(nta, options));
}

Hyperderivor hom_to_hyperderivor(const Signature& sig, const SortedVars& source_vars, const SortedVars& target_vars,
                                 std::vector<Term> images)
{
    std::vector<SortId> phi(sig.sort_count());
    for (SortId s = 0; s < phi.size(); ++s)
        phi[s] = s;
    std::vector<Term> patterns;
    for (OpId o = 0; o < sig.op_count(); ++o) {
        const auto& d = sig.op(o);
        std::vector<Term> kids;
        for (std::uint32_t i = 0; i < d.arity.size(); ++i)
            kids.push_back(Term::placeholder(i, d.arity[i]));
        patterns.push_back(Term::apply(sig, o, std::move(kids)));
    }
    return Hyperderivor(sig, source_vars, sig, target_vars, std::move(phi), std::move(patterns), std::move(images));
}

bool ImageBound::admits(std::size_t count) const
{
    // Exponents of 63 and above exceed every representable count.
    constexpr std::size_t cap = 63;
    auto mul = [](std::size_t x, std::size_t y) -> std::size_t {
        if (x == 0 || y == 0)
            return 0;
        if (x >= cap || y >= cap || x * y >= cap)
            return cap;
        return x * y;
    };
    std::size_t pow = 1;
    for (std::size_t i = 0; i < e; ++i)
        pow = mul(pow, card_k);
    std::size_t exponent = mul(mul(b, d), pow);
    if (a == 0)
        return count == 0;
    if (exponent >= cap)
        return true;
    unsigned __int128 bound = static_cast<unsigned __int128>(a) << exponent;
    return static_cast<unsigned __int128>(count) <= bound;
}

ImageBound direct_image_bound(const Hyperderivor& h, const Recognizer& l, SortId s)
{
    ImageBound out;
    const Signature& src = h.source();
    // a: the index of the meet of the syntactic congruences of the singletons
    // {f(x)}, summed over the target sorts.
    std::vector<Recognizer> singles;
    for (VarId x = 0; x < h.source_vars().size(); ++x)
        singles.push_back(recognize_term(h.target(), h.target_vars(), h.var_image(x)));
    std::vector<std::size_t> phi_index =
        singles.empty() ? trim(universal_language(h.target(), h.target_vars())).state_counts() : meet_index(singles);
    for (auto n : phi_index)
        out.a += n;
    out.b = src.op_count();
    for (OpId o = 0; o < src.op_count(); ++o) {
        for (const auto& set : subterms_of(h.pattern(o), h.target().sort_count()))
            out.d = std::max(out.d, set.size());
        out.e = std::max(out.e, src.op(o).arity.size());
    }
    auto k = minimize(restrict_to_sort(l, s));
    for (auto n : k.state_counts())
        out.card_k += n;
    return out;
}

} // namespace msrec
