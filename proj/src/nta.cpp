#include "msrec/nta.hpp"

#include <algorithm>
#include <map>

namespace msrec {

Nta::Nta(Signature sig, SortedVars vars)
    : sig_(std::move(sig)), vars_(std::move(vars)), var_rules_(vars_.size()), rules_(sig_.op_count())
{
}

StateId Nta::add_state(SortId sort, bool accepting)
{
    if (sort >= sig_.sort_count())
        throw Error("nta: unknown sort");
    state_sort_.push_back(sort);
    accepting_.push_back(accepting);
    epsilon_.emplace_back();
    return static_cast<StateId>(state_sort_.size() - 1);
}

void Nta::set_accepting(StateId q, bool accepting)
{
    accepting_.at(q) = accepting;
}

void Nta::add_var_rule(VarId x, StateId q)
{
    if (vars_.at(x).sort != state_sort(q))
        throw SortError("nta: variable rule crosses sorts");
    var_rules_[x].push_back(q);
}

void Nta::add_rule(OpId op, std::vector<StateId> args, StateId result)
{
    const auto& d = sig_.op(op);
    if (args.size() != d.arity.size())
        throw SortError("nta: rule for '" + d.name + "' has the wrong number of arguments");
    for (std::size_t i = 0; i < args.size(); ++i)
        if (state_sort(args[i]) != d.arity[i])
            throw SortError("nta: rule for '" + d.name + "' has an ill-sorted argument state");
    if (state_sort(result) != d.result)
        throw SortError("nta: rule for '" + d.name + "' has an ill-sorted result state");
    rules_[op].push_back(Rule{std::move(args), result});
}

void Nta::add_epsilon(StateId from, StateId to)
{
    if (state_sort(from) != state_sort(to))
        throw SortError("nta: epsilon rule crosses sorts");
    epsilon_[from].push_back(to);
}

std::vector<std::vector<StateId>> Nta::epsilon_closure() const
{
    std::vector<std::vector<StateId>> out(state_count());
    std::vector<bool> seen(state_count());
    for (StateId q = 0; q < state_count(); ++q) {
        std::fill(seen.begin(), seen.end(), false);
        std::vector<StateId> stack{q};
        seen[q] = true;
        while (!stack.empty()) {
            StateId p = stack.back();
            stack.pop_back();
            out[q].push_back(p);
            for (StateId r : epsilon_[p])
                if (!seen[r]) {
                    seen[r] = true;
                    stack.push_back(r);
                }
        }
        std::sort(out[q].begin(), out[q].end());
    }
    return out;
}

namespace {

class SubsetBuilder {
public:
    SubsetBuilder(const Nta& nta, const DeterminizeOptions& options)
        : nta_(nta), options_(options), closure_(nta.epsilon_closure()), sets_(nta.signature().sort_count()),
          members_(nta.signature().sort_count()), ids_(nta.signature().sort_count())
    {
    }

    std::vector<StateId> close(const std::vector<StateId>& seeds) const
    {
        std::vector<bool> in(nta_.state_count(), false);
        for (StateId q : seeds)
            for (StateId p : closure_[q])
                in[p] = true;
        std::vector<StateId> out;
        for (StateId q = 0; q < in.size(); ++q)
            if (in[q])
                out.push_back(q);
        return out;
    }

    // Returns the id and whether the set is new.
    std::pair<Element, bool> intern(SortId s, std::vector<StateId> set)
    {
        auto it = ids_[s].find(set);
        if (it != ids_[s].end())
            return {it->second, false};
        if (++total_ > options_.max_states)
            throw Error("determinize: state-space guard exceeded (" + std::to_string(options_.max_states) +
                        " subset states)");
        auto id = static_cast<Element>(sets_[s].size());
        std::vector<bool> bits(nta_.state_count(), false);
        for (StateId q : set)
            bits[q] = true;
        members_[s].push_back(std::move(bits));
        ids_[s].emplace(set, id);
        sets_[s].push_back(std::move(set));
        return {id, true};
    }

    std::vector<StateId> step(OpId o, std::span<const Element> args) const
    {
        const auto& d = nta_.signature().op(o);
        std::vector<StateId> hits;
        for (const auto& rule : nta_.rules(o)) {
            bool ok = true;
            for (std::size_t i = 0; i < args.size() && ok; ++i)
                ok = members_[d.arity[i]][args[i]][rule.args[i]];
            if (ok)
                hits.push_back(rule.result);
        }
        return close(hits);
    }

    Element lookup(SortId s, const std::vector<StateId>& set) const { return ids_[s].at(set); }
    std::size_t count(SortId s) const { return sets_[s].size(); }
    const std::vector<StateId>& set(SortId s, Element e) const { return sets_[s][e]; }

private:
    const Nta& nta_;
    DeterminizeOptions options_;
    std::vector<std::vector<StateId>> closure_;
    std::vector<std::vector<std::vector<StateId>>> sets_;
    std::vector<std::vector<std::vector<bool>>> members_;
    std::vector<std::map<std::vector<StateId>, Element>> ids_;
    std::size_t total_ = 0;
};

} // namespace

Recognizer determinize(const Nta& nta, const DeterminizeOptions& options)
{
    const Signature& sig = nta.signature();
    const SortedVars& vars = nta.vars();
    SubsetBuilder b(nta, options);

    Assignment assignment(vars.size());
    for (VarId x = 0; x < vars.size(); ++x)
        assignment[x] = b.intern(vars.at(x).sort, b.close(nta.var_rules(x))).first;

    // Semi-naive saturation: an operation is re-applied only to tuples with
    // at least one component discovered since its previous visit.
    std::vector<std::vector<std::size_t>> processed(sig.op_count());
    std::vector<bool> visited(sig.op_count(), false);
    bool changed = true;
    std::vector<Element> args;
    while (changed) {
        changed = false;
        for (OpId o = 0; o < sig.op_count(); ++o) {
            const auto& d = sig.op(o);
            std::vector<std::size_t> counts(d.arity.size());
            for (std::size_t i = 0; i < counts.size(); ++i)
                counts[i] = b.count(d.arity[i]);
            if (visited[o] && counts == processed[o])
                continue;
            std::size_t total = 1;
            for (auto c : counts)
                total *= c;
            args.resize(counts.size());
            for (std::size_t t = 0; t < total; ++t) {
                tuple_decode(t, counts, args);
                if (visited[o]) {
                    bool fresh = false;
                    for (std::size_t i = 0; i < args.size() && !fresh; ++i)
                        fresh = args[i] >= processed[o][i];
                    if (!fresh)
                        continue;
                }
                if (b.intern(d.result, b.step(o, args)).second)
                    changed = true;
            }
            processed[o] = std::move(counts);
            if (!visited[o]) {
                visited[o] = true;
                changed = true;
            }
        }
    }

    std::vector<std::size_t> carriers(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s)
        carriers[s] = b.count(s);
    auto alg = FiniteAlgebra::tabulate(sig, carriers, [&](OpId o, std::span<const Element> a) {
        return b.lookup(sig.op(o).result, b.step(o, a));
    });
    SortedSubset accepting(carriers);
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (Element e = 0; e < carriers[s]; ++e)
            for (StateId q : b.set(s, e))
                if (nta.is_accepting(q)) {
                    accepting.insert(s, e);
                    break;
                }
    return Recognizer(vars, std::move(alg), std::move(assignment), std::move(accepting));
}

EmbeddedRecognizer embed_recognizer(Nta& nta, const Recognizer& r, const std::vector<bool>& copy_var_rule)
{
    const Signature& sig = nta.signature();
    if (!(r.signature() == sig) || !(r.vars() == nta.vars()))
        throw Error("nta: recognizer does not match the automaton's signature and variables");
    EmbeddedRecognizer out;
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        out.base.push_back(static_cast<StateId>(nta.state_count()));
        for (Element e = 0; e < r.algebra().carrier(s); ++e)
            nta.add_state(s, false);
    }
    for (VarId x = 0; x < r.vars().size(); ++x)
        if (copy_var_rule.empty() || copy_var_rule.at(x))
            nta.add_var_rule(x, out.state(r.vars().at(x).sort, r.assignment()[x]));
    std::vector<Element> args;
    for (OpId o = 0; o < sig.op_count(); ++o) {
        const auto& d = sig.op(o);
        const auto& rad = r.algebra().radices(o);
        const auto& table = r.algebra().table(o);
        args.resize(rad.size());
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            tuple_decode(idx, rad, args);
            std::vector<StateId> st(args.size());
            for (std::size_t i = 0; i < args.size(); ++i)
                st[i] = out.state(d.arity[i], args[i]);
            nta.add_rule(o, std::move(st), out.state(d.result, table[idx]));
        }
    }
    return out;
}

} // namespace msrec
