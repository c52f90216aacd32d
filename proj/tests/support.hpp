#pragma once

// Fixtures and random instance generators shared by the test suites.

#include "msrec/closure.hpp"
#include "msrec/derivor.hpp"
#include "msrec/oracle.hpp"

#include <random>

namespace msrec::testing {

inline Signature f1_signature()
{
    return Signature({"s"}, {{"c", {}, "s"}, {"g", {"s"}, "s"}, {"sigma", {"s", "s"}, "s"}});
}

inline SortedVars f1_vars(const Signature& sig)
{
    return SortedVars::from_names(sig, {{"s", {"x", "z"}}});
}

inline Signature f2_signature()
{
    return Signature({"e", "b"}, {{"zero", {}, "e"}, {"succ", {"e"}, "e"}, {"iszero", {"e"}, "b"}});
}

inline SortedVars f2_vars(const Signature& sig)
{
    return SortedVars::from_names(sig, {{"e", {"x"}}});
}

struct Fixture {
    Signature sig;
    SortedVars vars;

    Term term(std::string_view text) const { return parse_term(text, sig, vars); }
    std::string show(const Term& t) const { return format_term(t, sig, vars); }
    VarId var(std::string_view name) const { return vars.id(name); }
    SortId sort(std::string_view name) const { return sig.sort_id(name); }
};

inline Fixture f1()
{
    auto sig = f1_signature();
    auto vars = f1_vars(sig);
    return {sig, vars};
}

inline Fixture f2()
{
    auto sig = f2_signature();
    auto vars = f2_vars(sig);
    return {sig, vars};
}

/// c ↦ 0, g flips, sigma is xor, x ↦ 0, z ↦ 1; accepts {0}.
inline Recognizer r_par()
{
    auto fx = f1();
    FiniteAlgebra alg(fx.sig, {2}, {{0}, {1, 0}, {0, 1, 1, 0}});
    SortedSubset acc(alg.carriers());
    acc.insert(0, 0);
    return Recognizer(fx.vars, alg, {0, 1}, acc);
}

/// zero ↦ c, succ ↦ g(v0), iszero ↦ sigma(v0, c), x ↦ z.
inline Hyperderivor h1()
{
    auto a = f2();
    auto b = f1();
    std::vector<Term> patterns;
    for (OpId o = 0; o < a.sig.op_count(); ++o) {
        const char* text[] = {"c", "g(v0)", "sigma(v0, c)"};
        ParseOptions opt;
        for (SortId w : a.sig.op(o).arity)
            opt.placeholder_sorts.push_back(0);
        patterns.push_back(parse_term(text[o], b.sig, b.vars, opt));
    }
    return Hyperderivor(a.sig, a.vars, b.sig, b.vars, {0, 0}, patterns, {b.term("z")});
}

inline Derivor derivor_from_texts(const Signature& src, const Signature& tgt, std::vector<SortId> phi,
                                  const std::vector<std::string>& texts)
{
    std::vector<Term> patterns;
    for (OpId o = 0; o < src.op_count(); ++o) {
        ParseOptions opt;
        for (SortId w : src.op(o).arity)
            opt.placeholder_sorts.push_back(phi[w]);
        patterns.push_back(parse_term(texts[o], tgt, SortedVars{}, opt));
    }
    return Derivor(src, tgt, std::move(phi), std::move(patterns));
}

/// F2 → F1: zero ↦ c, succ ↦ g(v0), iszero ↦ sigma(v0, c).
inline Derivor d1()
{
    return derivor_from_texts(f2_signature(), f1_signature(), {0, 0}, {"c", "g(v0)", "sigma(v0, c)"});
}

/// F1 → F1: c ↦ c, g ↦ g(g(v0)), sigma ↦ sigma(v0, v1).
inline Derivor d2()
{
    return derivor_from_texts(f1_signature(), f1_signature(), {0}, {"c", "g(g(v0))", "sigma(v0, v1)"});
}

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5)
{
    return std::bernoulli_distribution(p)(rng);
}

/// One or two sorts, one to four operations of arity at most two, at most
/// two variables per sort; every sort is inhabited.
inline Fixture random_fixture(Rng& rng)
{
    switch (uniform(rng, 0, 3)) {
    case 0:
        return f1();
    case 1:
        return f2();
    default:
        break;
    }
    std::size_t nsorts = uniform(rng, 1, 2);
    std::vector<std::string> sorts;
    for (std::size_t s = 0; s < nsorts; ++s)
        sorts.push_back(s == 0 ? "s" : "t");
    std::vector<OpSpec> ops;
    std::size_t nops = uniform(rng, nsorts, 4);
    // The first operation is a constant of sort s.
    for (std::size_t o = 0; o < nops; ++o) {
        OpSpec op;
        op.name = std::string(1, static_cast<char>('a' + o));
        op.result = sorts[o == 0 ? 0 : uniform(rng, 0, nsorts - 1)];
        std::size_t arity = o == 0 ? 0 : uniform(rng, 0, 2);
        for (std::size_t i = 0; i < arity; ++i)
            op.arity.push_back(sorts[uniform(rng, 0, nsorts - 1)]);
        ops.push_back(std::move(op));
    }
    Signature sig(sorts, ops);
    std::vector<std::pair<std::string, std::vector<std::string>>> by_sort;
    const char* names[] = {"x", "z", "y", "u"};
    std::size_t next = 0;
    for (std::size_t s = 0; s < nsorts; ++s) {
        std::vector<std::string> vs;
        std::size_t n = uniform(rng, s == 0 ? 1 : 0, 2);
        for (std::size_t i = 0; i < n; ++i)
            vs.push_back(names[next++]);
        by_sort.emplace_back(sorts[s], vs);
    }
    SortedVars vars = SortedVars::from_names(sig, by_sort);
    // Sort t must be reachable: give it a variable when nothing produces it.
    if (nsorts == 2 && vars.of_sort(1).empty()) {
        bool produced = false;
        for (const auto& d : sig.ops())
            produced = produced || (d.result == 1 && std::all_of(d.arity.begin(), d.arity.end(),
                                                                  [](SortId w) { return w == 0; }));
        if (!produced) {
            by_sort[1].second.push_back(names[next++]);
            vars = SortedVars::from_names(sig, by_sort);
        }
    }
    return {sig, vars};
}

inline FiniteAlgebra random_algebra(const Signature& sig, Rng& rng, std::size_t max_carrier = 3)
{
    std::vector<std::size_t> carriers(sig.sort_count());
    for (auto& n : carriers)
        n = uniform(rng, 1, max_carrier);
    return FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element>) {
        return static_cast<Element>(uniform(rng, 0, carriers[sig.op(o).result] - 1));
    });
}

inline SortedSubset random_subset(std::span<const std::size_t> carriers, Rng& rng, double p = 0.5)
{
    SortedSubset out(carriers);
    for (SortId s = 0; s < carriers.size(); ++s)
        for (Element e = 0; e < carriers[s]; ++e)
            if (coin(rng, p))
                out.insert(s, e);
    return out;
}

inline Recognizer random_recognizer(const Fixture& fx, Rng& rng, std::size_t max_carrier = 3)
{
    FiniteAlgebra alg = random_algebra(fx.sig, rng, max_carrier);
    Assignment a(fx.vars.size());
    for (VarId x = 0; x < a.size(); ++x)
        a[x] = static_cast<Element>(uniform(rng, 0, alg.carrier(fx.vars.at(x).sort) - 1));
    SortedSubset acc = random_subset(alg.carriers(), rng);
    return Recognizer(fx.vars, std::move(alg), std::move(a), std::move(acc));
}

/// A random recognizer whose language lives at sort s only.
inline Recognizer random_recognizer_at(const Fixture& fx, SortId s, Rng& rng, std::size_t max_carrier = 3)
{
    return restrict_to_sort(random_recognizer(fx, rng, max_carrier), s);
}

inline SortedPartition random_partition(std::span<const std::size_t> carriers, Rng& rng)
{
    std::vector<std::vector<std::uint32_t>> labels;
    for (auto n : carriers) {
        std::vector<std::uint32_t> row(n);
        for (auto& l : row)
            l = static_cast<std::uint32_t>(uniform(rng, 0, n == 0 ? 0 : n - 1));
        labels.push_back(std::move(row));
    }
    return SortedPartition(std::move(labels));
}

/// A random term of the sort with at most max_nodes nodes, if one exists.
inline std::optional<Term> random_term(TermEnumerator& en, SortId s, std::size_t max_nodes, Rng& rng)
{
    std::size_t size = uniform(rng, 1, max_nodes);
    for (std::size_t k = size; k >= 1; --k) {
        const auto& terms = en.exactly(s, k);
        if (!terms.empty())
            return terms[uniform(rng, 0, terms.size() - 1)];
    }
    for (std::size_t k = size + 1; k <= max_nodes; ++k) {
        const auto& terms = en.exactly(s, k);
        if (!terms.empty())
            return terms[uniform(rng, 0, terms.size() - 1)];
    }
    return std::nullopt;
}

/// All terms of every sort up to max_nodes.
inline std::vector<Term> all_terms(TermEnumerator& en, const Signature& sig, std::size_t max_nodes)
{
    std::vector<Term> out;
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        auto ts = en.up_to(s, max_nodes);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

struct HyperderivorShape {
    /// No placeholder occurs twice in a pattern.
    bool linear = true;
    /// Every pattern contains an operation symbol.
    bool growing = false;
};

/// Random hyperderivor from src to tgt with a random sort map; nullopt when
/// the chosen sort map leaves a pattern or variable image without candidates.
inline std::optional<Hyperderivor> random_hyperderivor(const Fixture& src, const Fixture& tgt, Rng& rng,
                                                       HyperderivorShape shape)
{
    std::vector<SortId> phi(src.sig.sort_count());
    for (auto& t : phi)
        t = static_cast<SortId>(uniform(rng, 0, tgt.sig.sort_count() - 1));
    std::vector<Term> patterns;
    for (OpId o = 0; o < src.sig.op_count(); ++o) {
        const auto& d = src.sig.op(o);
        std::vector<SortId> ph;
        for (SortId w : d.arity)
            ph.push_back(phi[w]);
        TermEnumerator en(tgt.sig, tgt.vars, ph);
        std::vector<Term> candidates, keeping;
        for (const auto& t : en.up_to(phi[d.result], 4)) {
            bool ok = !shape.growing || t.kind() == NodeKind::op;
            bool all = true;
            for (std::uint32_t i = 0; i < ph.size(); ++i) {
                std::size_t n = count_placeholder(t, i);
                ok = ok && (!shape.linear || n <= 1);
                all = all && n >= 1;
            }
            if (!ok)
                continue;
            candidates.push_back(t);
            if (all)
                keeping.push_back(t);
        }
        if (candidates.empty())
            return std::nullopt;
        // Prefer patterns that keep their placeholders so images stay informative.
        const auto& pool = (!keeping.empty() && coin(rng, 0.75)) ? keeping : candidates;
        patterns.push_back(pool[uniform(rng, 0, pool.size() - 1)]);
    }
    std::vector<Term> images;
    TermEnumerator en(tgt.sig, tgt.vars);
    for (VarId x = 0; x < src.vars.size(); ++x) {
        auto ts = en.up_to(phi[src.vars.at(x).sort], 3);
        if (ts.empty())
            return std::nullopt;
        images.push_back(ts[uniform(rng, 0, ts.size() - 1)]);
    }
    return Hyperderivor(src.sig, src.vars, tgt.sig, tgt.vars, phi, patterns, images);
}

/// Retries random_hyperderivor until one exists.
inline Hyperderivor some_hyperderivor(const Fixture& src, const Fixture& tgt, Rng& rng, HyperderivorShape shape)
{
    for (int attempt = 0; attempt < 1000; ++attempt)
        if (auto h = random_hyperderivor(src, tgt, rng, shape))
            return *h;
    throw Error("some_hyperderivor: no hyperderivor between these signatures");
}

inline std::vector<SortId> random_word(const Signature& sig, Rng& rng, std::size_t max_len)
{
    std::vector<SortId> w(uniform(rng, 0, max_len));
    for (auto& s : w)
        s = static_cast<SortId>(uniform(rng, 0, sig.sort_count() - 1));
    return w;
}

/// A random Hall term of rank (w, s) with at most max_nodes nodes, if one exists.
inline std::optional<HallTerm> random_hall_term(const Signature& sig, std::span<const SortId> w, SortId s,
                                                std::size_t max_nodes, Rng& rng)
{
    TermEnumerator en(sig, SortedVars{}, std::vector<SortId>(w.begin(), w.end()));
    auto t = random_term(en, s, max_nodes, rng);
    if (!t)
        return std::nullopt;
    return HallTerm{*t, {w.begin(), w.end()}, s};
}

/// F1 or F2, chosen at random.
inline Signature random_fixture_signature(Rng& rng)
{
    return coin(rng) ? f1_signature() : f2_signature();
}

inline Derivor random_derivor(const Signature& src, const Signature& tgt, Rng& rng, std::size_t max_nodes = 4)
{
    std::vector<SortId> phi(src.sort_count());
    for (auto& t : phi)
        t = static_cast<SortId>(uniform(rng, 0, tgt.sort_count() - 1));
    std::vector<Term> patterns;
    for (OpId o = 0; o < src.op_count(); ++o) {
        const auto& d = src.op(o);
        std::vector<SortId> w;
        for (SortId a : d.arity)
            w.push_back(phi[a]);
        auto p = random_hall_term(tgt, w, phi[d.result], max_nodes, rng);
        if (!p)
            throw Error("random_derivor: no Hall term of the required rank");
        patterns.push_back(p->term);
    }
    return Derivor(src, tgt, std::move(phi), std::move(patterns));
}

} // namespace msrec::testing
