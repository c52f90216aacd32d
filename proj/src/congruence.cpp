#include "msrec/congruence.hpp"

#include <map>

namespace msrec {

SortedPartition::SortedPartition(std::vector<std::vector<std::uint32_t>> labels)
{
    for (auto& row : labels) {
        std::map<std::uint32_t, std::uint32_t> renum;
        for (auto& l : row) {
            auto [it, fresh] = renum.emplace(l, static_cast<std::uint32_t>(renum.size()));
            l = it->second;
        }
        counts_.push_back(renum.size());
    }
    class_of_ = std::move(labels);
}

SortedPartition SortedPartition::identity(std::span<const std::size_t> carriers)
{
    std::vector<std::vector<std::uint32_t>> labels;
    for (auto n : carriers) {
        std::vector<std::uint32_t> row(n);
        for (std::size_t e = 0; e < n; ++e)
            row[e] = static_cast<std::uint32_t>(e);
        labels.push_back(std::move(row));
    }
    return SortedPartition(std::move(labels));
}

SortedPartition SortedPartition::total(std::span<const std::size_t> carriers)
{
    std::vector<std::vector<std::uint32_t>> labels;
    for (auto n : carriers)
        labels.emplace_back(n, 0);
    return SortedPartition(std::move(labels));
}

SortedPartition SortedPartition::kernel(const SortedSubset& subset)
{
    std::vector<std::vector<std::uint32_t>> labels;
    for (SortId s = 0; s < subset.sort_count(); ++s) {
        std::vector<std::uint32_t> row(subset.carrier(s));
        for (std::size_t e = 0; e < row.size(); ++e)
            row[e] = subset.contains(s, static_cast<Element>(e)) ? 1 : 0;
        labels.push_back(std::move(row));
    }
    return SortedPartition(std::move(labels));
}

std::vector<std::vector<Element>> SortedPartition::blocks(SortId s) const
{
    std::vector<std::vector<Element>> out(index(s));
    const auto& row = class_of_.at(s);
    for (std::size_t e = 0; e < row.size(); ++e)
        out[row[e]].push_back(static_cast<Element>(e));
    return out;
}

bool SortedPartition::refines(const SortedPartition& coarser) const
{
    if (coarser.sort_count() != sort_count())
        throw Error("partition: sort count mismatch");
    for (SortId s = 0; s < sort_count(); ++s) {
        if (coarser.carrier(s) != carrier(s))
            throw Error("partition: carrier mismatch");
        std::vector<std::int64_t> image(index(s), -1);
        for (std::size_t e = 0; e < carrier(s); ++e) {
            auto& slot = image[class_of_[s][e]];
            auto target = static_cast<std::int64_t>(coarser.class_of(s, static_cast<Element>(e)));
            if (slot == -1)
                slot = target;
            else if (slot != target)
                return false;
        }
    }
    return true;
}

namespace {

void check_dimensions(const FiniteAlgebra& alg, const SortedPartition& p)
{
    if (p.sort_count() != alg.signature().sort_count())
        throw Error("congruence: partition has the wrong number of sorts");
    for (SortId s = 0; s < p.sort_count(); ++s)
        if (p.carrier(s) != alg.carrier(s))
            throw Error("congruence: partition does not match the carrier of sort " + alg.signature().sort_name(s));
}

} // namespace

CongruenceCheck is_congruence(const FiniteAlgebra& alg, const SortedPartition& partition)
{
    check_dimensions(alg, partition);
    const Signature& sig = alg.signature();
    // Closure under elementary translations: changing one argument within its
    // class must keep the result within its class.
    for (OpId o = 0; o < sig.op_count(); ++o) {
        const auto& d = sig.op(o);
        const auto& r = alg.radices(o);
        const auto& table = alg.table(o);
        std::vector<Element> args(r.size());
        std::vector<Element> other(r.size());
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            tuple_decode(idx, r, args);
            for (std::size_t i = 0; i < args.size(); ++i) {
                for (Element q = 0; q < r[i]; ++q) {
                    if (q == args[i] || !partition.related(d.arity[i], q, args[i]))
                        continue;
                    other = args;
                    other[i] = q;
                    Element lhs = table[idx];
                    Element rhs = table[tuple_index(other, r)];
                    if (!partition.related(d.result, lhs, rhs))
                        return CongruenceCheck{false, CongruenceWitness{o, args, other}};
                }
            }
        }
    }
    return {};
}

SortedPartition cogenerated_congruence(const FiniteAlgebra& alg, const SortedPartition& phi)
{
    check_dimensions(alg, phi);
    const Signature& sig = alg.signature();
    SortedPartition current = phi;
    // Moore-style refinement. Each element's key records its current class and,
    // for every operation, argument position and co-argument tuple, the class
    // of the result. Blocks split until keys agree within every block.
    for (;;) {
        std::vector<std::vector<std::vector<std::uint32_t>>> keys(sig.sort_count());
        for (SortId s = 0; s < sig.sort_count(); ++s) {
            keys[s].resize(alg.carrier(s));
            for (Element e = 0; e < alg.carrier(s); ++e)
                keys[s][e].push_back(current.class_of(s, e));
        }
        for (OpId o = 0; o < sig.op_count(); ++o) {
            const auto& d = sig.op(o);
            const auto& r = alg.radices(o);
            const auto& table = alg.table(o);
            std::vector<Element> args(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                for (std::size_t idx = 0; idx < table.size(); ++idx) {
                    tuple_decode(idx, r, args);
                    keys[d.arity[i]][args[i]].push_back(current.class_of(d.result, table[idx]));
                }
            }
        }
        std::vector<std::vector<std::uint32_t>> labels(sig.sort_count());
        for (SortId s = 0; s < sig.sort_count(); ++s) {
            std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
            for (const auto& k : keys[s]) {
                auto [it, fresh] = ids.emplace(k, static_cast<std::uint32_t>(ids.size()));
                labels[s].push_back(it->second);
            }
        }
        SortedPartition next(std::move(labels));
        if (next.indices() == current.indices())
            return next;
        current = std::move(next);
    }
}

SortedPartition syntactic_congruence(const FiniteAlgebra& alg, const SortedSubset& language)
{
    return cogenerated_congruence(alg, SortedPartition::kernel(language));
}

SortedSubset saturate(const SortedPartition& phi, const SortedSubset& subset)
{
    if (phi.sort_count() != subset.sort_count())
        throw Error("saturate: dimension mismatch");
    SortedSubset out = subset;
    for (SortId s = 0; s < phi.sort_count(); ++s) {
        if (phi.carrier(s) != subset.carrier(s))
            throw Error("saturate: dimension mismatch");
        std::vector<bool> hit(phi.index(s), false);
        for (Element e : subset.elements(s))
            hit[phi.class_of(s, e)] = true;
        for (Element e = 0; e < phi.carrier(s); ++e)
            if (hit[phi.class_of(s, e)])
                out.insert(s, e);
    }
    return out;
}

SortedPartition meet_partitions(const SortedPartition& a, const SortedPartition& b)
{
    if (a.sort_count() != b.sort_count())
        throw Error("meet: dimension mismatch");
    std::vector<std::vector<std::uint32_t>> labels(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
        if (a.carrier(s) != b.carrier(s))
            throw Error("meet: dimension mismatch");
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
        for (Element e = 0; e < a.carrier(s); ++e) {
            auto [it, fresh] = ids.emplace(std::make_pair(a.class_of(s, e), b.class_of(s, e)),
                                           static_cast<std::uint32_t>(ids.size()));
            labels[s].push_back(it->second);
        }
    }
    return SortedPartition(std::move(labels));
}

} // namespace msrec
