#include "msrec/recognizer.hpp"

#include <map>

namespace msrec {

Recognizer::Recognizer(SortedVars vars, FiniteAlgebra algebra, Assignment assignment, SortedSubset accepting)
    : vars_(std::move(vars)), algebra_(std::move(algebra)), assignment_(std::move(assignment)),
      accepting_(std::move(accepting))
{
    const Signature& sig = algebra_.signature();
    if (assignment_.size() != vars_.size())
        throw Error("recognizer: the assignment must give a value to every variable");
    for (VarId x = 0; x < vars_.size(); ++x) {
        const auto& v = vars_.at(x);
        if (v.sort >= sig.sort_count())
            throw Error("recognizer: variable " + v.name + " has an unknown sort");
        if (assignment_[x] >= algebra_.carrier(v.sort))
            throw Error("recognizer: value of variable " + v.name + " is outside the carrier of sort " +
                        sig.sort_name(v.sort));
    }
    if (accepting_.sort_count() != sig.sort_count())
        throw Error("recognizer: accepting set has the wrong number of sorts");
    for (SortId s = 0; s < sig.sort_count(); ++s)
        if (accepting_.carrier(s) != algebra_.carrier(s))
            throw Error("recognizer: accepting set does not match the carrier of sort " + sig.sort_name(s));
}

Element run(const Recognizer& r, const Term& t)
{
    return evaluate(r.algebra(), r.assignment(), t);
}

bool accepts(const Recognizer& r, const Term& t)
{
    if (has_placeholders(t) || count_hole(t) != 0)
        throw SortError("accepts: the term must be built from operations and variables only");
    return r.accepting().contains(t.sort(), run(r, t));
}

std::optional<BooleanOp> parse_boolean_op(std::string_view name)
{
    if (name == "union")
        return BooleanOp::union_of;
    if (name == "intersection")
        return BooleanOp::intersection;
    if (name == "difference")
        return BooleanOp::difference;
    return std::nullopt;
}

namespace {

void require_compatible(const Recognizer& a, const Recognizer& b, const char* what)
{
    if (!(a.signature() == b.signature()))
        throw Error(std::string(what) + ": the recognizers have different signatures");
    if (!(a.vars() == b.vars()))
        throw Error(std::string(what) + ": the recognizers have different variable sets");
}

} // namespace

Recognizer combine(BooleanOp op, const Recognizer& a, const Recognizer& b)
{
    require_compatible(a, b, "combine");
    const Signature& sig = a.signature();
    std::vector<FiniteAlgebra> factors{a.algebra(), b.algebra()};
    ProductAlgebra prod = product_algebra(factors);
    Assignment assignment(a.vars().size());
    for (VarId x = 0; x < assignment.size(); ++x) {
        Element pair[2] = {a.assignment()[x], b.assignment()[x]};
        assignment[x] = prod.encode(a.vars().at(x).sort, pair);
    }
    SortedSubset accepting(prod.algebra.carriers());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        for (Element e = 0; e < prod.algebra.carrier(s); ++e) {
            bool in_a = a.accepting().contains(s, prod.projections[0][s][e]);
            bool in_b = b.accepting().contains(s, prod.projections[1][s][e]);
            bool in = false;
            switch (op) {
            case BooleanOp::union_of: in = in_a || in_b; break;
            case BooleanOp::intersection: in = in_a && in_b; break;
            case BooleanOp::difference: in = in_a && !in_b; break;
            }
            if (in)
                accepting.insert(s, e);
        }
    }
    return Recognizer(a.vars(), std::move(prod.algebra), std::move(assignment), std::move(accepting));
}

Recognizer complement(const Recognizer& r)
{
    return Recognizer(r.vars(), r.algebra(), r.assignment(), r.accepting().complement());
}

Recognizer restrict_to_sort(const Recognizer& r, SortId s)
{
    if (s >= r.signature().sort_count())
        throw Error("restrict_to_sort: unknown sort");
    SortedSubset accepting(r.algebra().carriers());
    for (Element e : r.accepting().elements(s))
        accepting.insert(s, e);
    return Recognizer(r.vars(), r.algebra(), r.assignment(), std::move(accepting));
}

namespace {

Recognizer trivial_language(const Signature& sig, const SortedVars& vars, bool full)
{
    std::vector<std::size_t> carriers(sig.sort_count(), 1);
    auto alg = FiniteAlgebra::tabulate(sig, carriers, [](OpId, std::span<const Element>) { return Element{0}; });
    SortedSubset accepting = full ? SortedSubset::full(carriers) : SortedSubset(carriers);
    return Recognizer(vars, std::move(alg), Assignment(vars.size(), 0), std::move(accepting));
}

SortedSubset assignment_seed(const Recognizer& r)
{
    SortedSubset seed(r.algebra().carriers());
    for (VarId x = 0; x < r.vars().size(); ++x)
        seed.insert(r.vars().at(x).sort, r.assignment()[x]);
    return seed;
}

} // namespace

Recognizer empty_language(const Signature& sig, const SortedVars& vars)
{
    return trivial_language(sig, vars, false);
}

Recognizer universal_language(const Signature& sig, const SortedVars& vars)
{
    return trivial_language(sig, vars, true);
}

SortedSubset reachable_values(const Recognizer& r)
{
    // Constants are reached by the closure itself (their argument space is
    // the empty tuple).
    return generated_subalgebra(r.algebra(), assignment_seed(r));
}

bool is_empty(const Recognizer& r)
{
    SortedSubset reach = reachable_values(r);
    for (SortId s = 0; s < r.signature().sort_count(); ++s)
        for (Element e : reach.elements(s))
            if (r.accepting().contains(s, e))
                return false;
    return true;
}

std::vector<std::optional<Term>> accepted_witnesses(const Recognizer& r)
{
    const Signature& sig = r.signature();
    const FiniteAlgebra& alg = r.algebra();
    std::vector<std::vector<std::optional<Term>>> best(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        best[s].resize(alg.carrier(s));
    auto offer = [&](SortId s, Element e, const Term& t) {
        auto& slot = best[s][e];
        if (!slot || t < *slot) {
            slot = t;
            return true;
        }
        return false;
    };
    for (VarId x = 0; x < r.vars().size(); ++x) {
        SortId s = r.vars().at(x).sort;
        offer(s, r.assignment()[x], Term::variable(x, s));
    }
    bool changed = true;
    std::vector<Element> args;
    while (changed) {
        changed = false;
        for (OpId o = 0; o < sig.op_count(); ++o) {
            const auto& d = sig.op(o);
            const auto& rad = alg.radices(o);
            const auto& table = alg.table(o);
            args.resize(rad.size());
            for (std::size_t idx = 0; idx < table.size(); ++idx) {
                tuple_decode(idx, rad, args);
                std::vector<Term> children;
                bool ok = true;
                for (std::size_t i = 0; i < args.size() && ok; ++i) {
                    const auto& w = best[d.arity[i]][args[i]];
                    if (w)
                        children.push_back(*w);
                    else
                        ok = false;
                }
                if (ok && offer(d.result, table[idx], Term::apply(sig, o, std::move(children))))
                    changed = true;
            }
        }
    }
    std::vector<std::optional<Term>> out(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (Element e : r.accepting().elements(s))
            if (best[s][e] && (!out[s] || *best[s][e] < *out[s]))
                out[s] = best[s][e];
    return out;
}

bool equivalent(const Recognizer& a, const Recognizer& b)
{
    require_compatible(a, b, "equivalent");
    return is_empty(combine(BooleanOp::difference, a, b)) && is_empty(combine(BooleanOp::difference, b, a));
}

Recognizer trim(const Recognizer& r)
{
    const Signature& sig = r.signature();
    const FiniteAlgebra& alg = r.algebra();
    std::vector<std::vector<Element>> to_new(sig.sort_count());
    std::vector<std::vector<Element>> to_old(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        to_new[s].assign(alg.carrier(s), Subalgebra::npos);
    auto reach = [&](SortId s, Element e) {
        if (to_new[s][e] != Subalgebra::npos)
            return false;
        to_new[s][e] = static_cast<Element>(to_old[s].size());
        to_old[s].push_back(e);
        return true;
    };
    for (VarId x = 0; x < r.vars().size(); ++x)
        reach(r.vars().at(x).sort, r.assignment()[x]);

    // processed[o][i] is how many values of argument i's sort op o has
    // already been applied to; only tuples with a newer component are visited.
    std::vector<std::vector<std::size_t>> processed(sig.op_count());
    std::vector<bool> visited_once(sig.op_count(), false);
    bool changed = true;
    std::vector<Element> idx;
    std::vector<Element> old;
    while (changed) {
        changed = false;
        for (OpId o = 0; o < sig.op_count(); ++o) {
            const auto& d = sig.op(o);
            std::vector<std::size_t> counts(d.arity.size());
            for (std::size_t i = 0; i < d.arity.size(); ++i)
                counts[i] = to_old[d.arity[i]].size();
            if (visited_once[o] && counts == processed[o])
                continue;
            std::size_t total = 1;
            for (auto c : counts)
                total *= c;
            idx.resize(counts.size());
            old.resize(counts.size());
            for (std::size_t t = 0; t < total; ++t) {
                tuple_decode(t, counts, idx);
                if (visited_once[o]) {
                    bool fresh = false;
                    for (std::size_t i = 0; i < idx.size() && !fresh; ++i)
                        fresh = idx[i] >= processed[o][i];
                    if (!fresh)
                        continue;
                }
                for (std::size_t i = 0; i < idx.size(); ++i)
                    old[i] = to_old[d.arity[i]][idx[i]];
                if (reach(d.result, alg.apply(o, old)))
                    changed = true;
            }
            processed[o] = std::move(counts);
            if (!visited_once[o]) {
                visited_once[o] = true;
                changed = true;
            }
        }
    }

    std::vector<std::size_t> carriers(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        carriers[s] = to_old[s].size();
    auto out = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> args) {
        const auto& d = sig.op(o);
        std::vector<Element> a(args.size());
        for (std::size_t i = 0; i < args.size(); ++i)
            a[i] = to_old[d.arity[i]][args[i]];
        return to_new[d.result][alg.apply(o, a)];
    });
    Assignment assignment(r.vars().size());
    for (VarId x = 0; x < assignment.size(); ++x)
        assignment[x] = to_new[r.vars().at(x).sort][r.assignment()[x]];
    SortedSubset accepting(carriers);
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (Element e = 0; e < carriers[s]; ++e)
            if (r.accepting().contains(s, to_old[s][e]))
                accepting.insert(s, e);
    return Recognizer(r.vars(), std::move(out), std::move(assignment), std::move(accepting));
}

Recognizer minimize(const Recognizer& r)
{
    Recognizer t = trim(r);
    SortedPartition omega = syntactic_congruence(t.algebra(), t.accepting());
    QuotientAlgebra q = quotient_algebra(t.algebra(), omega);
    Assignment assignment(t.vars().size());
    for (VarId x = 0; x < assignment.size(); ++x)
        assignment[x] = q.projection[t.vars().at(x).sort][t.assignment()[x]];
    SortedSubset accepting(q.algebra.carriers());
    for (SortId s = 0; s < t.signature().sort_count(); ++s)
        for (Element e : t.accepting().elements(s))
            accepting.insert(s, q.projection[s][e]);
    return trim(Recognizer(t.vars(), std::move(q.algebra), std::move(assignment), std::move(accepting)));
}

std::vector<std::size_t> syntactic_indices(const Recognizer& r)
{
    Recognizer t = trim(r);
    return syntactic_congruence(t.algebra(), t.accepting()).indices();
}

Recognizer recognize_basic(const Signature& sig, const SortedVars& vars, const Term& pattern)
{
    typecheck(pattern, sig, vars);
    const std::size_t S = sig.sort_count();
    const SortId target = pattern.sort();

    if (pattern.kind() == NodeKind::var) {
        // Two values per sort; 1 marks exactly the variable x itself.
        std::vector<std::size_t> carriers(S, 2);
        auto alg = FiniteAlgebra::tabulate(sig, carriers, [](OpId, std::span<const Element>) { return Element{0}; });
        Assignment a(vars.size(), 0);
        a[pattern.symbol()] = 1;
        SortedSubset accepting(carriers);
        accepting.insert(target, 1);
        return Recognizer(vars, std::move(alg), std::move(a), std::move(accepting));
    }

    const OpId sigma = pattern.symbol();
    if (pattern.children().empty()) {
        std::vector<std::size_t> carriers(S, 2);
        auto alg = FiniteAlgebra::tabulate(sig, carriers,
                                           [&](OpId o, std::span<const Element>) { return Element{o == sigma}; });
        SortedSubset accepting(carriers);
        accepting.insert(target, 1);
        return Recognizer(vars, std::move(alg), Assignment(vars.size(), 0), std::move(accepting));
    }

    for (const auto& c : pattern.children())
        if (c.kind() != NodeKind::var)
            throw Error("recognize_basic: pattern must be a variable, a constant or an operation applied to variables");

    // k_t distinct variables of each sort t occur in the pattern; φ numbers
    // them 0..k_t-1. Sort t gets k_t+1 values (k_t is the sink), the result
    // sort gets one more, k_s+1, which marks the pattern itself.
    std::vector<std::size_t> k(S, 0);
    std::map<VarId, Element> phi;
    for (const auto& c : pattern.children()) {
        auto [it, fresh] = phi.emplace(c.symbol(), static_cast<Element>(k[c.sort()]));
        if (fresh)
            ++k[c.sort()];
    }
    std::vector<std::size_t> carriers(S);
    for (SortId t = 0; t < S; ++t)
        carriers[t] = k[t] + (t == target ? 2 : 1);
    std::vector<Element> wanted;
    for (const auto& c : pattern.children())
        wanted.push_back(phi.at(c.symbol()));
    auto alg = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> args) {
        const auto& d = sig.op(o);
        if (o == sigma) {
            bool hit = std::equal(args.begin(), args.end(), wanted.begin(), wanted.end());
            return static_cast<Element>(hit ? k[target] + 1 : k[target]);
        }
        return static_cast<Element>(k[d.result]);
    });
    Assignment a(vars.size());
    for (VarId x = 0; x < vars.size(); ++x) {
        auto it = phi.find(x);
        a[x] = it != phi.end() ? it->second : static_cast<Element>(k[vars.at(x).sort]);
    }
    SortedSubset accepting(carriers);
    accepting.insert(target, static_cast<Element>(k[target] + 1));
    return Recognizer(vars, std::move(alg), std::move(a), std::move(accepting));
}

Recognizer recognize_term(const Signature& sig, const SortedVars& vars, const Term& term)
{
    typecheck(term, sig, vars);
    const std::size_t S = sig.sort_count();
    std::vector<TermSet> subt = subterms_of(term, S);
    // Value i < |Subt_s| stands for the i-th subterm; the last value is the sink.
    std::vector<std::map<Term, Element>> id(S);
    std::vector<std::vector<Term>> by_id(S);
    std::vector<std::size_t> carriers(S);
    for (SortId s = 0; s < S; ++s) {
        for (const auto& t : subt[s]) {
            id[s].emplace(t, static_cast<Element>(by_id[s].size()));
            by_id[s].push_back(t);
        }
        carriers[s] = by_id[s].size() + 1;
    }
    auto sink = [&](SortId s) { return static_cast<Element>(by_id[s].size()); };
    auto alg = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> args) {
        const auto& d = sig.op(o);
        std::vector<Term> children;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == sink(d.arity[i]))
                return sink(d.result);
            children.push_back(by_id[d.arity[i]][args[i]]);
        }
        Term t = Term::apply(sig, o, std::move(children));
        auto it = id[d.result].find(t);
        return it != id[d.result].end() ? it->second : sink(d.result);
    });
    Assignment a(vars.size());
    for (VarId x = 0; x < vars.size(); ++x) {
        SortId s = vars.at(x).sort;
        auto it = id[s].find(Term::variable(x, s));
        a[x] = it != id[s].end() ? it->second : sink(s);
    }
    SortedSubset accepting(carriers);
    accepting.insert(term.sort(), id[term.sort()].at(term));
    return trim(Recognizer(vars, std::move(alg), std::move(a), std::move(accepting)));
}

Recognizer recognize_finite(const Signature& sig, const SortedVars& vars, std::span<const Term> terms)
{
    Recognizer out = empty_language(sig, vars);
    for (const auto& t : terms)
        out = minimize(combine(BooleanOp::union_of, out, recognize_term(sig, vars, t)));
    return minimize(out);
}

Recognizer inverse_translation(const Recognizer& r, const Context& ctx)
{
    typecheck(ctx.body(), r.signature(), r.vars());
    std::vector<Element> table = translation_table(r.algebra(), r.assignment(), ctx);
    SortedSubset accepting(r.algebra().carriers());
    for (Element q = 0; q < table.size(); ++q)
        if (r.accepting().contains(ctx.root_sort(), table[q]))
            accepting.insert(ctx.hole_sort(), q);
    return Recognizer(r.vars(), r.algebra(), r.assignment(), std::move(accepting));
}

} // namespace msrec
