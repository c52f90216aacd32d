#include "msrec/algebra.hpp"

#include "msrec/congruence.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace msrec {

// ------------------------------------------------------------- SortedSubset

SortedSubset::SortedSubset(std::span<const std::size_t> carriers)
{
    for (auto n : carriers)
        bits_.emplace_back(n, false);
}

SortedSubset SortedSubset::full(std::span<const std::size_t> carriers)
{
    SortedSubset out(carriers);
    for (auto& b : out.bits_)
        b.assign(b.size(), true);
    return out;
}

void SortedSubset::insert(SortId s, Element e)
{
    if (e >= bits_.at(s).size())
        throw Error("subset: element " + std::to_string(e) + " is outside the carrier");
    bits_[s][e] = true;
}

void SortedSubset::erase(SortId s, Element e)
{
    if (e < bits_.at(s).size())
        bits_[s][e] = false;
}

std::size_t SortedSubset::count(SortId s) const
{
    const auto& b = bits_.at(s);
    return static_cast<std::size_t>(std::count(b.begin(), b.end(), true));
}

bool SortedSubset::empty() const
{
    for (std::size_t s = 0; s < bits_.size(); ++s)
        if (count(static_cast<SortId>(s)) != 0)
            return false;
    return true;
}

std::vector<Element> SortedSubset::elements(SortId s) const
{
    std::vector<Element> out;
    const auto& b = bits_.at(s);
    for (std::size_t e = 0; e < b.size(); ++e)
        if (b[e])
            out.push_back(static_cast<Element>(e));
    return out;
}

SortedSubset SortedSubset::complement() const
{
    SortedSubset out = *this;
    for (auto& b : out.bits_)
        b.flip();
    return out;
}

bool SortedSubset::is_subset_of(const SortedSubset& other) const
{
    if (other.bits_.size() != bits_.size())
        return false;
    for (std::size_t s = 0; s < bits_.size(); ++s) {
        if (bits_[s].size() != other.bits_[s].size())
            return false;
        for (std::size_t e = 0; e < bits_[s].size(); ++e)
            if (bits_[s][e] && !other.bits_[s][e])
                return false;
    }
    return true;
}

// ------------------------------------------------------------ Tuple indices

std::size_t tuple_index(std::span<const Element> args, std::span<const std::size_t> radices)
{
    std::size_t idx = 0;
    for (std::size_t i = 0; i < radices.size(); ++i)
        idx = idx * radices[i] + args[i];
    return idx;
}

void tuple_decode(std::size_t index, std::span<const std::size_t> radices, std::span<Element> out)
{
    for (std::size_t i = radices.size(); i > 0; --i) {
        out[i - 1] = static_cast<Element>(index % radices[i - 1]);
        index /= radices[i - 1];
    }
}

namespace {

std::size_t space_size(std::span<const std::size_t> radices)
{
    std::size_t n = 1;
    for (auto r : radices)
        n *= r;
    return n;
}

} // namespace

// ------------------------------------------------------------ FiniteAlgebra

FiniteAlgebra::FiniteAlgebra(Signature sig, std::vector<std::size_t> carriers, std::vector<std::vector<Element>> tables)
    : sig_(std::move(sig)), carriers_(std::move(carriers)), tables_(std::move(tables))
{
    if (carriers_.size() != sig_.sort_count())
        throw Error("algebra: expected one carrier size per sort");
    if (tables_.size() != sig_.op_count())
        throw Error("algebra: expected one table per operation");
    for (OpId o = 0; o < sig_.op_count(); ++o) {
        const auto& d = sig_.op(o);
        std::vector<std::size_t> r;
        for (SortId a : d.arity)
            r.push_back(carriers_[a]);
        std::size_t n = space_size(r);
        if (tables_[o].size() != n)
            throw Error("algebra: table of '" + d.name + "' has " + std::to_string(tables_[o].size()) +
                        " entries, its argument space has " + std::to_string(n));
        for (Element v : tables_[o])
            if (v >= carriers_[d.result])
                throw Error("algebra: table of '" + d.name + "' leaves the carrier of sort " +
                            sig_.sort_name(d.result));
        radices_.push_back(std::move(r));
    }
}

FiniteAlgebra FiniteAlgebra::tabulate(Signature sig, std::vector<std::size_t> carriers, const OpFunction& fn)
{
    std::vector<std::vector<Element>> tables;
    for (OpId o = 0; o < sig.op_count(); ++o) {
        const auto& d = sig.op(o);
        std::vector<std::size_t> r;
        for (SortId a : d.arity)
            r.push_back(carriers.at(a));
        std::size_t n = space_size(r);
        std::vector<Element> args(r.size());
        std::vector<Element> table(n);
        for (std::size_t i = 0; i < n; ++i) {
            tuple_decode(i, r, args);
            table[i] = fn(o, args);
        }
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(std::move(sig), std::move(carriers), std::move(tables));
}

std::size_t FiniteAlgebra::total_elements() const
{
    return std::accumulate(carriers_.begin(), carriers_.end(), std::size_t{0});
}

Element FiniteAlgebra::apply(OpId o, std::span<const Element> args) const
{
    const auto& r = radices_.at(o);
    if (args.size() != r.size())
        throw Error("algebra: wrong number of arguments for '" + sig_.op(o).name + "'");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (args[i] >= r[i])
            throw Error("algebra: argument " + std::to_string(i) + " of '" + sig_.op(o).name +
                        "' is outside its carrier");
    return tables_[o][tuple_index(args, r)];
}

// --------------------------------------------------------------- Evaluation

Element evaluate(const FiniteAlgebra& alg, std::span<const Element> assignment, const Term& t, const LeafValues& extra)
{
    switch (t.kind()) {
    case NodeKind::var:
        if (t.symbol() >= assignment.size())
            throw Error("evaluate: variable id " + std::to_string(t.symbol()) + " is unassigned");
        if (assignment[t.symbol()] >= alg.carrier(t.sort()))
            throw Error("evaluate: assigned value lies outside the carrier");
        return assignment[t.symbol()];
    case NodeKind::placeholder:
        if (t.symbol() >= extra.placeholders.size())
            throw Error("evaluate: placeholder v" + std::to_string(t.symbol()) + " has no value");
        return extra.placeholders[t.symbol()];
    case NodeKind::hole:
        if (!extra.hole)
            throw Error("evaluate: the hole has no value");
        return *extra.hole;
    case NodeKind::op:
        break;
    }
    if (t.symbol() >= alg.signature().op_count())
        throw SortError("evaluate: term uses an operation outside the algebra's signature");
    const auto& kids = t.children();
    if (kids.empty())
        return alg.apply(t.symbol(), {});
    std::vector<Element> args;
    args.reserve(kids.size());
    for (const auto& k : kids)
        args.push_back(evaluate(alg, assignment, k, extra));
    return alg.apply(t.symbol(), args);
}

// ------------------------------------------------------------------ Product

Element ProductAlgebra::encode(SortId s, std::span<const Element> components) const
{
    return static_cast<Element>(tuple_index(components, radix.at(s)));
}

ProductAlgebra product_algebra(std::span<const FiniteAlgebra> factors)
{
    if (factors.empty())
        throw Error("product: at least one factor is required");
    const Signature& sig = factors.front().signature();
    for (const auto& f : factors)
        if (!(f.signature() == sig))
            throw Error("product: factors have different signatures");

    std::size_t k = factors.size();
    std::vector<std::size_t> carriers(sig.sort_count());
    std::vector<std::vector<std::vector<Element>>> projections(k, std::vector<std::vector<Element>>(sig.sort_count()));
    std::vector<std::vector<std::size_t>> radix(sig.sort_count(), std::vector<std::size_t>(k));
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        std::size_t n = 1;
        for (std::size_t i = 0; i < k; ++i) {
            radix[s][i] = factors[i].carrier(s);
            n *= radix[s][i];
        }
        carriers[s] = n;
        std::vector<Element> comp(k);
        for (std::size_t e = 0; e < n; ++e) {
            tuple_decode(e, radix[s], comp);
            for (std::size_t i = 0; i < k; ++i)
                projections[i][s].push_back(comp[i]);
        }
    }
    auto algebra = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> args) {
        const auto& d = sig.op(o);
        std::vector<Element> comp_args(args.size());
        std::vector<Element> res(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < args.size(); ++j)
                comp_args[j] = projections[i][d.arity[j]][args[j]];
            res[i] = factors[i].apply(o, comp_args);
        }
        return static_cast<Element>(tuple_index(res, radix[d.result]));
    });
    return ProductAlgebra{std::move(algebra), std::move(projections), std::move(radix)};
}

// ------------------------------------------------------ Generated subalgebra

SortedSubset generated_subalgebra(const FiniteAlgebra& alg, const SortedSubset& seed)
{
    const Signature& sig = alg.signature();
    if (seed.sort_count() != sig.sort_count())
        throw Error("generated_subalgebra: seed has the wrong number of sorts");
    for (SortId s = 0; s < sig.sort_count(); ++s)
        if (seed.carrier(s) != alg.carrier(s))
            throw Error("generated_subalgebra: seed does not match the carriers");
    SortedSubset out = seed;
    bool changed = true;
    std::vector<Element> args;
    while (changed) {
        changed = false;
        for (OpId o = 0; o < sig.op_count(); ++o) {
            const auto& d = sig.op(o);
            const auto& r = alg.radices(o);
            const auto& table = alg.table(o);
            args.resize(r.size());
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (out.contains(d.result, table[i]))
                    continue;
                tuple_decode(i, r, args);
                bool inside = true;
                for (std::size_t j = 0; j < args.size() && inside; ++j)
                    inside = out.contains(d.arity[j], args[j]);
                if (inside) {
                    out.insert(d.result, table[i]);
                    changed = true;
                }
            }
        }
    }
    return out;
}

Subalgebra restrict_algebra(const FiniteAlgebra& alg, const SortedSubset& closed)
{
    const Signature& sig = alg.signature();
    if (!(generated_subalgebra(alg, closed) == closed))
        throw Error("restrict_algebra: the subset is not closed under the operations");
    Subalgebra out{alg, {}, {}};
    std::vector<std::size_t> carriers(sig.sort_count());
    out.to_new.resize(sig.sort_count());
    out.to_old.resize(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        out.to_new[s].assign(alg.carrier(s), Subalgebra::npos);
        for (Element e : closed.elements(s)) {
            out.to_new[s][e] = static_cast<Element>(out.to_old[s].size());
            out.to_old[s].push_back(e);
        }
        carriers[s] = out.to_old[s].size();
    }
    out.algebra = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> args) {
        const auto& d = sig.op(o);
        std::vector<Element> old(args.size());
        for (std::size_t j = 0; j < args.size(); ++j)
            old[j] = out.to_old[d.arity[j]][args[j]];
        return out.to_new[d.result][alg.apply(o, old)];
    });
    return out;
}

// ----------------------------------------------------------------- Quotient

QuotientAlgebra quotient_algebra(const FiniteAlgebra& alg, const SortedPartition& congruence)
{
    const Signature& sig = alg.signature();
    if (congruence.sort_count() != sig.sort_count())
        throw Error("quotient: partition has the wrong number of sorts");
    for (SortId s = 0; s < sig.sort_count(); ++s)
        if (congruence.carrier(s) != alg.carrier(s))
            throw Error("quotient: partition does not match the carriers");
    if (auto check = is_congruence(alg, congruence); !check)
        throw Error("quotient: the partition is not a congruence (violated by '" +
                    sig.op(check.witness->op).name + "')");
    QuotientAlgebra out{alg, {}};
    std::vector<std::size_t> carriers(sig.sort_count());
    std::vector<std::vector<Element>> rep(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        carriers[s] = congruence.index(s);
        for (const auto& block : congruence.blocks(s))
            rep[s].push_back(block.front());
        out.projection.emplace_back(congruence.classes(s).begin(), congruence.classes(s).end());
    }
    out.algebra = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> args) {
        const auto& d = sig.op(o);
        std::vector<Element> reps(args.size());
        for (std::size_t j = 0; j < args.size(); ++j)
            reps[j] = rep[d.arity[j]][args[j]];
        return congruence.class_of(d.result, alg.apply(o, reps));
    });
    return out;
}

// ------------------------------------------------------------ Subset algebra

FiniteAlgebra subset_algebra(const FiniteAlgebra& alg)
{
    const Signature& sig = alg.signature();
    std::vector<std::size_t> carriers(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        if (alg.carrier(s) > kSubsetAlgebraMaxCarrier)
            throw Error("subset_algebra: carrier of sort " + sig.sort_name(s) + " exceeds the size guard of " +
                        std::to_string(kSubsetAlgebraMaxCarrier));
        carriers[s] = std::size_t{1} << alg.carrier(s);
    }
    constexpr std::size_t kMaxTable = std::size_t{1} << 24;
    std::vector<std::vector<Element>> tables;
    for (OpId o = 0; o < sig.op_count(); ++o) {
        const auto& d = sig.op(o);
        std::vector<std::size_t> r;
        std::size_t n = 1;
        for (SortId a : d.arity) {
            r.push_back(carriers[a]);
            n *= carriers[a];
            if (n > kMaxTable)
                throw Error("subset_algebra: table of '" + d.name + "' exceeds the size guard");
        }
        std::vector<Element> table(n);
        std::vector<Element> masks(r.size());
        std::vector<Element> base(r.size());
        // Entries are filled in increasing index order; splitting one argument
        // mask into its low bit and the rest yields two smaller indices.
        for (std::size_t i = 0; i < n; ++i) {
            tuple_decode(i, r, masks);
            std::optional<std::size_t> split;
            bool empty = false;
            for (std::size_t j = 0; j < masks.size(); ++j) {
                if (masks[j] == 0)
                    empty = true;
                else if (!split && (masks[j] & (masks[j] - 1)) != 0)
                    split = j;
            }
            if (empty) {
                table[i] = 0;
                continue;
            }
            if (!split) {
                for (std::size_t j = 0; j < masks.size(); ++j)
                    base[j] = static_cast<Element>(std::countr_zero(masks[j]));
                table[i] = singleton_mask(alg.apply(o, base));
                continue;
            }
            std::size_t j = *split;
            Element m = masks[j];
            Element low = m & (~m + 1);
            masks[j] = low;
            Element a = table[tuple_index(masks, r)];
            masks[j] = m & ~low;
            Element b = table[tuple_index(masks, r)];
            table[i] = a | b;
        }
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(sig, std::move(carriers), std::move(tables));
}

// ------------------------------------------------------ Translation tables

std::vector<Element> translation_table(const FiniteAlgebra& alg, std::span<const Element> assignment, const Context& ctx)
{
    std::vector<Element> out;
    for (Element q = 0; q < alg.carrier(ctx.hole_sort()); ++q)
        out.push_back(evaluate(alg, assignment, ctx.body(), LeafValues{{}, q}));
    return out;
}

} // namespace msrec
