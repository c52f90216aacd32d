#include "msrec/closure.hpp"

#include <limits>

namespace msrec {

namespace {

void require_same(const Recognizer& a, const Recognizer& b, const char* what)
{
    if (!(a.signature() == b.signature()))
        throw Error(std::string(what) + ": the recognizers have different signatures");
    if (!(a.vars() == b.vars()))
        throw Error(std::string(what) + ": the recognizers have different variable sets");
}

} // namespace

Recognizer substitute_language(const Recognizer& k, const LanguageFamily& family, const DeterminizeOptions& options)
{
    const SortedVars& vars = k.vars();
    std::vector<bool> keep(vars.size(), true);
    for (const auto& [x, l] : family) {
        if (x >= vars.size())
            throw Error("substitute: unknown variable in the family");
        require_same(k, l, "substitute");
        keep[x] = false;
    }
    Nta nta(k.signature(), vars);
    EmbeddedRecognizer kk = embed_recognizer(nta, k, keep);
    for (SortId s = 0; s < k.signature().sort_count(); ++s)
        for (Element e : k.accepting().elements(s))
            nta.set_accepting(kk.state(s, e));
    for (const auto& [x, l] : family) {
        SortId t = vars.at(x).sort;
        EmbeddedRecognizer ll = embed_recognizer(nta, l);
        StateId target = kk.state(t, k.assignment()[x]);
        for (Element e : l.accepting().elements(t))
            nta.add_epsilon(ll.state(t, e), target);
    }
    return minimize(determinize(nta, options));
}

Recognizer iterate_language(const Recognizer& l, VarId z, const DeterminizeOptions& options)
{
    const SortedVars& vars = l.vars();
    if (z >= vars.size())
        throw Error("iterate: unknown variable");
    SortId s = vars.at(z).sort;
    Nta nta(l.signature(), vars);
    EmbeddedRecognizer ll = embed_recognizer(nta, l);
    StateId top = nta.add_state(s, true);
    nta.add_var_rule(z, top);
    for (Element e : l.accepting().elements(s))
        nta.add_epsilon(ll.state(s, e), top);
    nta.add_epsilon(top, ll.state(s, l.assignment()[z]));
    return minimize(determinize(nta, options));
}

std::vector<Element> quotient_value_set(const Recognizer& l, const Recognizer& k, SortId t)
{
    require_same(l, k, "quotient");
    // Pair each K value with the L value of the same term.
    std::vector<FiniteAlgebra> factors{k.algebra(), l.algebra()};
    ProductAlgebra prod = product_algebra(factors);
    SortedSubset seed(prod.algebra.carriers());
    for (VarId x = 0; x < k.vars().size(); ++x) {
        Element pair[2] = {k.assignment()[x], l.assignment()[x]};
        SortId s = k.vars().at(x).sort;
        seed.insert(s, prod.encode(s, pair));
    }
    SortedSubset reach = generated_subalgebra(prod.algebra, seed);
    std::vector<bool> hit(l.algebra().carrier(t), false);
    for (Element e : reach.elements(t))
        if (k.accepting().contains(t, prod.projections[0][t][e]))
            hit[prod.projections[1][t][e]] = true;
    std::vector<Element> out;
    for (Element q = 0; q < hit.size(); ++q)
        if (hit[q])
            out.push_back(q);
    return out;
}

Recognizer quotient_language(const Recognizer& l, const Recognizer& k, VarId z, const DeterminizeOptions& options)
{
    require_same(l, k, "quotient");
    const SortedVars& vars = l.vars();
    if (z >= vars.size())
        throw Error("quotient: unknown variable");
    SortId t = vars.at(z).sort;
    std::vector<Element> values = quotient_value_set(l, k, t);
    std::vector<bool> keep(vars.size(), true);
    keep[z] = false;
    Nta nta(l.signature(), vars);
    EmbeddedRecognizer ll = embed_recognizer(nta, l, keep);
    for (SortId s = 0; s < l.signature().sort_count(); ++s)
        for (Element e : l.accepting().elements(s))
            nta.set_accepting(ll.state(s, e));
    for (Element q : values)
        nta.add_var_rule(z, ll.state(t, q));
    return minimize(determinize(nta, options));
}

std::vector<std::size_t> meet_index(std::span<const Recognizer> languages)
{
    if (languages.empty())
        throw Error("meet_index: no languages given");
    Recognizer acc = minimize(languages[0]);
    for (std::size_t i = 1; i < languages.size(); ++i) {
        require_same(acc, languages[i], "meet_index");
        // The accepting set is irrelevant here; only the reachable pairs count.
        acc = trim(combine(BooleanOp::union_of, acc, minimize(languages[i])));
    }
    return trim(acc).state_counts();
}

std::vector<std::size_t> substitution_bound_index(const Recognizer& k, const LanguageFamily& family)
{
    std::vector<Recognizer> langs{k};
    const auto& vars = k.vars();
    for (VarId x = 0; x < vars.size(); ++x) {
        SortId t = vars.at(x).sort;
        auto it = family.find(x);
        if (it != family.end())
            langs.push_back(restrict_to_sort(it->second, t));
        else
            langs.push_back(recognize_basic(k.signature(), vars, Term::variable(x, t)));
    }
    return meet_index(langs);
}

std::vector<std::size_t> iteration_bound_index(const Recognizer& l, VarId z)
{
    SortId s = l.vars().at(z).sort;
    std::vector<Recognizer> langs{restrict_to_sort(l, s),
                                  recognize_basic(l.signature(), l.vars(), Term::variable(z, s))};
    return meet_index(langs);
}

std::vector<std::size_t> quotient_bound_index(const Recognizer& l)
{
    std::vector<Recognizer> langs{l};
    return meet_index(langs);
}

std::size_t exponential_bound(std::size_t k)
{
    constexpr auto max = std::numeric_limits<std::size_t>::max();
    if (k >= 58)
        return max;
    std::size_t p = std::size_t{1} << k;
    if (k != 0 && p > max / k)
        return max;
    return k * p;
}

} // namespace msrec
