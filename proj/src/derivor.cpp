#include "msrec/derivor.hpp"

namespace msrec {

void check_hall_term(const Signature& sig, const HallTerm& p)
{
    SortedVars none;
    if (typecheck(p.term, sig, none, p.arity) != p.sort)
        throw SortError("hall term: sort does not match its rank");
    if (count_hole(p.term) != 0)
        throw SortError("hall term: contains a hole");
}

HallTerm projection(std::span<const SortId> w, std::size_t i)
{
    if (i >= w.size())
        throw Error("projection: index " + std::to_string(i) + " out of range for a word of length " +
                    std::to_string(w.size()));
    return HallTerm{Term::placeholder(static_cast<std::uint32_t>(i), w[i]), {w.begin(), w.end()}, w[i]};
}

HallTerm xi_substitute(const Signature& sig, const HallTerm& p, std::span<const HallTerm> q,
                       std::span<const SortId> u)
{
    check_hall_term(sig, p);
    if (q.size() != p.arity.size())
        throw SortError("xi_substitute: expected " + std::to_string(p.arity.size()) + " arguments, got " +
                        std::to_string(q.size()));
    std::vector<Term> args;
    for (std::size_t i = 0; i < q.size(); ++i) {
        check_hall_term(sig, q[i]);
        if (!std::equal(q[i].arity.begin(), q[i].arity.end(), u.begin(), u.end()))
            throw SortError("xi_substitute: argument " + std::to_string(i) + " has the wrong arity");
        if (q[i].sort != p.arity[i])
            throw SortError("xi_substitute: argument " + std::to_string(i) + " has the wrong sort");
        args.push_back(q[i].term);
    }
    return HallTerm{substitute_placeholders(p.term, args), {u.begin(), u.end()}, p.sort};
}

Derivor::Derivor(Signature source, Signature target, std::vector<SortId> sort_map, std::vector<Term> patterns)
    : source_(std::move(source)), target_(std::move(target)), sort_map_(std::move(sort_map)),
      patterns_(std::move(patterns))
{
    if (sort_map_.size() != source_.sort_count())
        throw Error("derivor: the sort map must cover every source sort");
    for (SortId t : sort_map_)
        if (t >= target_.sort_count())
            throw Error("derivor: the sort map leaves the target sorts");
    if (patterns_.size() != source_.op_count())
        throw Error("derivor: every source operation needs a pattern");
    for (OpId o = 0; o < source_.op_count(); ++o) {
        try {
            check_hall_term(target_, hall_pattern(o));
        } catch (const SortError& e) {
            throw SortError("derivor: pattern of '" + source_.op(o).name + "': " + e.what());
        }
    }
}

std::vector<SortId> Derivor::map_sorts(std::span<const SortId> w) const
{
    std::vector<SortId> out;
    for (SortId s : w)
        out.push_back(sort_map_.at(s));
    return out;
}

HallTerm Derivor::hall_pattern(OpId op) const
{
    const auto& d = source_.op(op);
    return HallTerm{patterns_.at(op), map_sorts(d.arity), sort_map_.at(d.result)};
}

bool Derivor::is_linear() const
{
    for (OpId o = 0; o < patterns_.size(); ++o)
        for (std::uint32_t i = 0; i < source_.op(o).arity.size(); ++i)
            if (count_placeholder(patterns_[o], i) > 1)
                return false;
    return true;
}

Derivor identity_derivor(const Signature& sig)
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
    return Derivor(sig, sig, std::move(phi), std::move(patterns));
}

namespace {

Term derive_term(const Derivor& d, const Term& t, std::span<const SortId> new_sorts)
{
    switch (t.kind()) {
    case NodeKind::placeholder:
        return Term::placeholder(t.symbol(), new_sorts[t.symbol()]);
    case NodeKind::op:
        break;
    default:
        throw SortError("apply_derivor_term: Hall terms carry no variables or holes");
    }
    std::vector<Term> images;
    for (const auto& c : t.children())
        images.push_back(derive_term(d, c, new_sorts));
    return substitute_placeholders(d.pattern(t.symbol()), images);
}

} // namespace

HallTerm apply_derivor_term(const Derivor& d, const HallTerm& p)
{
    check_hall_term(d.source(), p);
    auto w = d.map_sorts(p.arity);
    return HallTerm{derive_term(d, p.term, w), w, d.map_sort(p.sort)};
}

Derivor compose_derivors(const Derivor& e, const Derivor& d)
{
    if (!(d.target() == e.source()))
        throw Error("compose_derivors: the middle signatures differ");
    std::vector<SortId> phi;
    for (SortId s : d.sort_map())
        phi.push_back(e.map_sort(s));
    std::vector<Term> patterns;
    for (OpId o = 0; o < d.source().op_count(); ++o)
        patterns.push_back(apply_derivor_term(e, d.hall_pattern(o)).term);
    return Derivor(d.source(), e.target(), std::move(phi), std::move(patterns));
}

FiniteAlgebra derived_algebra_derivor(const Derivor& d, const FiniteAlgebra& b)
{
    if (!(b.signature() == d.target()))
        throw Error("derived_algebra: the algebra is not over the derivor's target signature");
    const Signature& src = d.source();
    std::vector<std::size_t> carriers(src.sort_count());
    for (SortId s = 0; s < src.sort_count(); ++s)
        carriers[s] = b.carrier(d.map_sort(s));
    return FiniteAlgebra::tabulate(src, carriers, [&](OpId o, std::span<const Element> args) {
        return evaluate(b, {}, d.pattern(o), LeafValues{args, std::nullopt});
    });
}

Hyperderivor derivor_to_hyperderivor(const Derivor& d, SortedVars source_vars, SortedVars target_vars,
                                     std::vector<Term> var_images)
{
    return Hyperderivor(d.source(), std::move(source_vars), d.target(), std::move(target_vars), d.sort_map(),
                        d.patterns(), std::move(var_images));
}

} // namespace msrec
