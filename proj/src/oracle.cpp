#include "msrec/oracle.hpp"

#include <functional>

namespace msrec {

std::vector<std::vector<Term>> enumerate_language(const Recognizer& r, std::size_t max_nodes)
{
    const Signature& sig = r.signature();
    TermEnumerator en(sig, r.vars());
    std::vector<std::vector<Term>> out(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (auto& t : en.up_to(s, max_nodes))
            if (accepts(r, t))
                out[s].push_back(std::move(t));
    return out;
}

namespace {

TermSet bounded(const TermSet& in, std::size_t max_nodes)
{
    TermSet out;
    for (const auto& t : in)
        if (t.size() <= max_nodes)
            out.insert(t);
    return out;
}

// Members bucketed by node count, so products can skip oversized choices.
struct Sized {
    std::vector<std::vector<Term>> by_size;
    std::size_t smallest = 0;
};

Sized sized(const TermSet& in, std::size_t max_nodes)
{
    Sized out;
    out.by_size.resize(max_nodes + 1);
    for (const auto& t : in)
        if (t.size() <= max_nodes)
            out.by_size[t.size()].push_back(t);
    out.smallest = max_nodes + 1;
    for (std::size_t n = 1; n <= max_nodes; ++n)
        if (!out.by_size[n].empty()) {
            out.smallest = n;
            break;
        }
    return out;
}

// Least total size the choices from index i onwards can add.
std::vector<std::size_t> suffix_minimum(const std::vector<std::size_t>& least)
{
    std::vector<std::size_t> out(least.size() + 1, 0);
    for (std::size_t i = least.size(); i-- > 0;)
        out[i] = out[i + 1] + least[i];
    return out;
}

} // namespace

TermSet semantic_substitution_sets(const Signature&, const TermSet& k, const TermFamily& family,
                                   std::size_t max_nodes)
{
    std::map<VarId, Sized> fam;
    for (const auto& [x, l] : family)
        fam[x] = sized(l, max_nodes);
    TermSet out;
    for (const auto& p : k) {
        if (p.size() > max_nodes)
            continue;
        std::vector<VarId> occ = variable_occurrences(p);
        std::vector<const Sized*> choices;
        std::vector<std::size_t> least;
        for (VarId x : occ) {
            auto it = fam.find(x);
            choices.push_back(it == fam.end() ? nullptr : &it->second);
            least.push_back(it == fam.end() ? 0 : it->second.smallest - 1);
        }
        auto rest = suffix_minimum(least);
        // Depth-first over per-occurrence choices; each chosen member adds
        // size-1 nodes. Variables without a family entry keep every occurrence.
        std::vector<Term> picked;
        std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t size) {
            if (size + rest[i] > max_nodes)
                return;
            if (i == occ.size()) {
                OccurrenceFamily of;
                std::size_t next = 0;
                for (std::size_t j = 0; j < occ.size(); ++j)
                    if (choices[j])
                        of[occ[j]].push_back(picked[next++]);
                out.insert(substitute_occurrences(p, of));
                return;
            }
            if (!choices[i]) {
                walk(i + 1, size);
                return;
            }
            for (std::size_t n = 1; size + n - 1 + rest[i + 1] <= max_nodes; ++n)
                for (const auto& m : choices[i]->by_size[n]) {
                    picked.push_back(m);
                    walk(i + 1, size + n - 1);
                    picked.pop_back();
                }
        };
        walk(0, p.size());
    }
    return out;
}

TermSet semantic_substitution_homomorphic(const Signature& sig, const TermSet& k, const TermFamily& family,
                                          std::size_t max_nodes)
{
    TermFamily fam;
    for (const auto& [x, l] : family)
        fam[x] = bounded(l, max_nodes);
    std::function<TermSet(const Term&)> image = [&](const Term& p) -> TermSet {
        if (p.kind() == NodeKind::var) {
            auto it = fam.find(p.symbol());
            if (it != fam.end())
                return it->second;
            return TermSet{p};
        }
        // σ applied elementwise to the children's image sets.
        std::vector<Sized> kids;
        std::vector<std::size_t> least;
        for (const auto& c : p.children()) {
            kids.push_back(sized(image(c), max_nodes));
            least.push_back(kids.back().smallest);
        }
        auto rest = suffix_minimum(least);
        TermSet out;
        std::vector<Term> pick;
        std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t size) {
            if (size + rest[i] > max_nodes)
                return;
            if (i == kids.size()) {
                out.insert(Term::apply(sig, p.symbol(), pick));
                return;
            }
            for (std::size_t n = 1; size + n + rest[i + 1] <= max_nodes; ++n)
                for (const auto& m : kids[i].by_size[n]) {
                    pick.push_back(m);
                    go(i + 1, size + n);
                    pick.pop_back();
                }
        };
        go(0, 1);
        return out;
    };
    TermSet out;
    for (const auto& p : k)
        if (p.size() <= max_nodes)
            out.merge(image(p));
    return out;
}

TermSet semantic_iteration_bounded(const Signature& sig, const TermSet& l, VarId z, SortId z_sort,
                                   std::size_t max_nodes)
{
    TermSet base;
    for (const auto& t : l)
        if (t.sort() == z_sort && t.size() <= max_nodes)
            base.insert(t);
    TermSet chain{Term::variable(z, z_sort)};
    for (;;) {
        TermSet next = chain;
        next.merge(semantic_substitution_sets(sig, base, TermFamily{{z, chain}}, max_nodes));
        if (next == chain)
            return chain;
        chain = std::move(next);
    }
}

TermSet semantic_iteration_bounded(const Recognizer& l, VarId z, std::size_t max_nodes)
{
    SortId s = l.vars().at(z).sort;
    const auto members = enumerate_language(l, max_nodes)[s];
    return semantic_iteration_bounded(l.signature(), TermSet(members.begin(), members.end()), z, s, max_nodes);
}

namespace {

// One representative member per L-value, smallest first.
std::map<Element, Term> representatives(const Recognizer& l, const std::vector<Term>& members)
{
    std::map<Element, Term> out;
    for (const auto& m : members) {
        Element v = run(l, m);
        auto it = out.find(v);
        if (it == out.end() || m < it->second)
            out.insert_or_assign(v, m);
    }
    return out;
}

TermSet quotient_by_representatives(const Recognizer& l, const std::map<Element, Term>& reps, VarId z,
                                    std::size_t max_nodes)
{
    const Signature& sig = l.signature();
    TermEnumerator en(sig, l.vars());
    std::vector<Term> choices;
    for (const auto& [v, t] : reps)
        choices.push_back(t);
    TermSet out;
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        for (const auto& u : en.up_to(s, max_nodes)) {
            std::size_t n = count_occurrences(u, z);
            std::vector<Term> pick;
            bool found = false;
            std::function<void(std::size_t)> go = [&](std::size_t i) {
                if (found)
                    return;
                if (i == n) {
                    OccurrenceFamily of;
                    if (n != 0)
                        of[z] = pick;
                    found = accepts(l, substitute_occurrences(u, of));
                    return;
                }
                for (const auto& c : choices) {
                    pick.push_back(c);
                    go(i + 1);
                    pick.pop_back();
                }
            };
            go(0);
            if (found)
                out.insert(u);
        }
    }
    return out;
}

// True when the (K, L) value pairs reached by the enumerated terms are closed
// under every operation, so that larger terms reach nothing new.
bool pairs_closed(const Recognizer& k, const Recognizer& l, std::size_t bound)
{
    const Signature& sig = l.signature();
    TermEnumerator en(sig, l.vars());
    std::vector<std::set<std::pair<Element, Element>>> pairs(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (const auto& t : en.up_to(s, bound))
            pairs[s].emplace(run(k, t), run(l, t));
    std::vector<std::vector<std::pair<Element, Element>>> lists(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        lists[s].assign(pairs[s].begin(), pairs[s].end());
    for (OpId o = 0; o < sig.op_count(); ++o) {
        const auto& d = sig.op(o);
        std::vector<std::size_t> rad;
        for (SortId w : d.arity)
            rad.push_back(lists[w].size());
        std::size_t total = 1;
        for (auto r : rad)
            total *= r;
        std::vector<Element> idx(rad.size()), ka(rad.size()), la(rad.size());
        for (std::size_t t = 0; t < total; ++t) {
            tuple_decode(t, rad, idx);
            for (std::size_t i = 0; i < idx.size(); ++i) {
                ka[i] = lists[d.arity[i]][idx[i]].first;
                la[i] = lists[d.arity[i]][idx[i]].second;
            }
            if (!pairs[d.result].contains({k.algebra().apply(o, ka), l.algebra().apply(o, la)}))
                return false;
        }
    }
    return true;
}

} // namespace

QuotientOracle semantic_quotient_bounded(const Recognizer& l, const TermSet& k, VarId z, std::size_t max_nodes)
{
    SortId t = l.vars().at(z).sort;
    std::vector<Term> members;
    std::size_t biggest = 0;
    for (const auto& m : k)
        if (m.sort() == t) {
            members.push_back(m);
            biggest = std::max(biggest, m.size());
        }
    QuotientOracle out;
    out.terms = quotient_by_representatives(l, representatives(l, members), z, max_nodes);
    out.member_bound = biggest;
    out.complete = true;
    return out;
}

QuotientOracle semantic_quotient_bounded(const Recognizer& l, const Recognizer& k, VarId z, std::size_t max_nodes,
                                         std::size_t member_bound)
{
    if (member_bound == 0)
        member_bound = max_nodes;
    SortId t = l.vars().at(z).sort;
    auto members = enumerate_language(k, member_bound)[t];
    QuotientOracle out;
    out.terms = quotient_by_representatives(l, representatives(l, members), z, max_nodes);
    out.member_bound = member_bound;
    out.complete = pairs_closed(k, l, member_bound);
    return out;
}

namespace {

using Binding = std::map<std::uint32_t, Term>;

// Syntactic matching of a pattern with placeholders against a ground term.
bool match(const Term& pattern, const Term& t, Binding& binding)
{
    if (pattern.kind() == NodeKind::placeholder) {
        if (pattern.sort() != t.sort())
            return false;
        auto [it, fresh] = binding.emplace(pattern.symbol(), t);
        return fresh || it->second == t;
    }
    if (pattern.kind() != t.kind() || pattern.symbol() != t.symbol() || pattern.sort() != t.sort())
        return false;
    for (std::size_t i = 0; i < pattern.children().size(); ++i)
        if (!match(pattern.children()[i], t.children()[i], binding))
            return false;
    return true;
}

} // namespace

bool semantic_image_member(const Hyperderivor& h, const Recognizer& l, SortId s, const Term& t)
{
    const Signature& src = h.source();
    const FiniteAlgebra& alg = l.algebra();
    SortedSubset reach = reachable_values(l);
    // values[(M, r)] collects the L-values of sort-r source terms whose image is M.
    std::vector<TermSet> subt = subterms_of(t, h.target().sort_count());
    std::vector<Term> targets;
    for (const auto& set : subt)
        targets.insert(targets.end(), set.begin(), set.end());
    std::map<std::pair<Term, SortId>, std::set<Element>> values;
    auto get = [&](const Term& m, SortId r) -> const std::set<Element>& { return values[{m, r}]; };

    for (VarId x = 0; x < h.source_vars().size(); ++x)
        for (const auto& m : targets)
            if (h.var_image(x) == m)
                values[{m, h.source_vars().at(x).sort}].insert(l.assignment()[x]);

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& m : targets) {
            for (OpId o = 0; o < src.op_count(); ++o) {
                const auto& d = src.op(o);
                if (h.map_sort(d.result) != m.sort())
                    continue;
                Binding binding;
                if (!match(h.pattern(o), m, binding))
                    continue;
                // Candidate values per argument: those of the matched subterm,
                // or every reachable value when the placeholder is erased.
                std::vector<std::vector<Element>> cand(d.arity.size());
                bool empty = false;
                for (std::size_t i = 0; i < d.arity.size(); ++i) {
                    auto it = binding.find(static_cast<std::uint32_t>(i));
                    if (it != binding.end()) {
                        const auto& vs = get(it->second, d.arity[i]);
                        cand[i].assign(vs.begin(), vs.end());
                    } else {
                        cand[i] = reach.elements(d.arity[i]);
                    }
                    empty = empty || cand[i].empty();
                }
                if (empty)
                    continue;
                std::vector<std::size_t> rad;
                for (const auto& c : cand)
                    rad.push_back(c.size());
                std::size_t total = 1;
                for (auto r : rad)
                    total *= r;
                std::vector<Element> idx(rad.size()), args(rad.size());
                for (std::size_t k = 0; k < total; ++k) {
                    tuple_decode(k, rad, idx);
                    for (std::size_t i = 0; i < idx.size(); ++i)
                        args[i] = cand[i][idx[i]];
                    if (values[{m, d.result}].insert(alg.apply(o, args)).second)
                        changed = true;
                }
            }
        }
    }
    for (Element v : get(t, s))
        if (l.accepting().contains(s, v))
            return true;
    return false;
}

} // namespace msrec
