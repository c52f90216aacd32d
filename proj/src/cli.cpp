#include "msrec/cli.hpp"

#include "msrec/closure.hpp"
#include "msrec/io.hpp"
#include "msrec/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace msrec::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Undecided : Error {
    using Error::Error;
};

struct Settings {
    bool json = false;
    std::size_t oracle = 0;
    std::string output;
};

class Runner {
public:
    Runner(const Settings& settings, std::ostream& out, std::ostream& err) : s_(settings), out_(out), err_(err) {}

    void emit_recognizer(const Recognizer& r) const { emit_document(io::write_recognizer(r)); }

    void emit_document(const Json& doc) const
    {
        std::string text = io::dump(doc);
        if (s_.output.empty())
            out_ << text;
        else
            io::write_file(s_.output, text);
    }

    void emit_value(const std::string& key, const Json& value, const std::string& text) const
    {
        if (s_.json)
            out_ << Json{{key, value}}.dump() << "\n";
        else
            out_ << text << "\n";
    }

    // Compares the constructed recognizer with the expected membership on
    // every term up to the oracle bound.
    void check(const Recognizer& r, const std::function<bool(const Term&)>& expected) const
    {
        if (s_.oracle == 0)
            return;
        const Signature& sig = r.signature();
        TermEnumerator en(sig, r.vars());
        std::size_t checked = 0;
        for (SortId s = 0; s < sig.sort_count(); ++s) {
            for (const auto& t : en.up_to(s, s_.oracle)) {
                ++checked;
                bool got = accepts(r, t);
                if (got != expected(t))
                    throw Error("oracle mismatch on " + format_term(t, sig, r.vars()) + ": construction says " +
                                (got ? "member" : "non-member"));
            }
        }
        err_ << "oracle: agree on " << checked << " terms up to " << s_.oracle << " nodes\n";
    }

    std::size_t oracle() const { return s_.oracle; }
    std::ostream& out() const { return out_; }
    std::ostream& err() const { return err_; }
    bool json() const { return s_.json; }

private:
    const Settings& s_;
    std::ostream& out_;
    std::ostream& err_;
};

std::string bool_text(bool b)
{
    return b ? "true" : "false";
}

SortId sort_named(const Signature& sig, const std::string& name)
{
    auto s = sig.find_sort(name);
    if (!s)
        throw Error("unknown sort '" + name + "'");
    return *s;
}

VarId var_named(const SortedVars& vars, const std::string& name)
{
    auto x = vars.find(name);
    if (!x)
        throw Error("unknown variable '" + name + "'");
    return *x;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to)
{
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
    return s;
}

std::string read_text(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw Error("cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int golden(const std::string& dir, std::ostream& out, std::ostream& err);

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Recognizable many-sorted tree languages", "msrec"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings settings;
    app.add_flag("--json", settings.json, "Machine-readable output");
    app.add_option("--oracle", settings.oracle, "Check the result against brute force on all terms up to N nodes");
    app.add_option("-o,--output", settings.output, "Write the resulting file here instead of stdout");

    std::string rec_a, rec_b, term_text, kind, var_name, by_path, by_terms, ctx_text, sort_name, arity_text, dir;
    std::size_t max_nodes = 0;
    std::vector<std::string> with;

    auto* member = app.add_subcommand("member", "Decide membership of a term");
    member->add_option("recognizer", rec_a)->required();
    member->add_option("term", term_text)->required();

    auto* enumerate = app.add_subcommand("enumerate", "List accepted terms up to a size");
    enumerate->add_option("recognizer", rec_a)->required();
    enumerate->add_option("--max-nodes", max_nodes)->required();

    auto* minimize_cmd = app.add_subcommand("minimize", "Minimal recognizer of the same language");
    minimize_cmd->add_option("recognizer", rec_a)->required();

    auto* combine_cmd = app.add_subcommand("combine", "Union, intersection or difference");
    combine_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"union", "intersection", "difference"}));
    combine_cmd->add_option("first", rec_a)->required();
    combine_cmd->add_option("second", rec_b)->required();

    auto* substitute_cmd = app.add_subcommand("substitute", "Occurrence-wise substitution of languages");
    substitute_cmd->add_option("recognizer", rec_a)->required();
    substitute_cmd->add_option("--with", with, "x=file, one per substituted variable");

    auto* iterate_cmd = app.add_subcommand("iterate", "z-iteration of a language");
    iterate_cmd->add_option("recognizer", rec_a)->required();
    iterate_cmd->add_option("--var", var_name)->required();

    auto* quotient_cmd = app.add_subcommand("quotient", "z-quotient of a language by another");
    quotient_cmd->add_option("recognizer", rec_a)->required();
    auto* by_opt = quotient_cmd->add_option("--by", by_path, "Recognizer of K");
    quotient_cmd->add_option("--by-terms", by_terms, "K as terms separated by ';'")->excludes(by_opt);
    quotient_cmd->add_option("--var", var_name)->required();

    auto* invtrans_cmd = app.add_subcommand("invtrans", "Inverse image under a translation");
    invtrans_cmd->add_option("recognizer", rec_a)->required();
    invtrans_cmd->add_option("--context", ctx_text, "Context with one hole written #")->required();

    auto* treehom_cmd = app.add_subcommand("treehom", "Tree homomorphisms given by hyperderivors");
    treehom_cmd->require_subcommand(1);
    treehom_cmd->fallthrough();
    auto* th_apply = treehom_cmd->add_subcommand("apply", "Image of a term");
    th_apply->add_option("hyperderivor", rec_b)->required();
    th_apply->add_option("term", term_text)->required();
    auto* th_inverse = treehom_cmd->add_subcommand("inverse", "Inverse image of a language");
    th_inverse->add_option("hyperderivor", rec_b)->required();
    th_inverse->add_option("recognizer", rec_a)->required();
    th_inverse->add_option("--sort", sort_name, "Source sort")->required();
    auto* th_image = treehom_cmd->add_subcommand("image", "Direct image of a language (linear only)");
    th_image->add_option("hyperderivor", rec_b)->required();
    th_image->add_option("recognizer", rec_a)->required();
    th_image->add_option("--sort", sort_name, "Source sort")->required();

    auto* derivor_cmd = app.add_subcommand("derivor", "Derivors between signatures");
    derivor_cmd->require_subcommand(1);
    derivor_cmd->fallthrough();
    auto* dv_apply = derivor_cmd->add_subcommand("apply", "Image of a Hall term");
    dv_apply->add_option("derivor", rec_b)->required();
    dv_apply->add_option("term", term_text)->required();
    dv_apply->add_option("--arity", arity_text, "Placeholder sorts, comma separated");
    auto* dv_compose = derivor_cmd->add_subcommand("compose", "Apply the first derivor, then the second");
    dv_compose->add_option("first", rec_a)->required();
    dv_compose->add_option("second", rec_b)->required();
    auto* dv_derive = derivor_cmd->add_subcommand("derive", "Derived algebra of a target algebra");
    dv_derive->add_option("derivor", rec_b)->required();
    dv_derive->add_option("algebra", rec_a)->required();
    auto* dv_tohyp = derivor_cmd->add_subcommand("tohyp", "Hyperderivor from a derivor and variable images");
    dv_tohyp->add_option("derivor", rec_b)->required();
    dv_tohyp->add_option("bindings", rec_a, "File with source_vars, target_vars, var_images")->required();

    auto* equal_cmd = app.add_subcommand("equal", "Decide language equality");
    equal_cmd->add_option("first", rec_a)->required();
    equal_cmd->add_option("second", rec_b)->required();

    auto* empty_cmd = app.add_subcommand("empty", "Decide emptiness");
    empty_cmd->add_option("recognizer", rec_a)->required();

    auto* syncong_cmd = app.add_subcommand("syncong", "Per-sort indices of the syntactic congruence");
    syncong_cmd->add_option("recognizer", rec_a)->required();

    auto* golden_cmd = app.add_subcommand("golden", "Re-run golden cases and compare outputs");
    golden_cmd->add_option("directory", dir)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    Runner run(settings, out, err);
    try {
        if (member->parsed()) {
            Recognizer r = io::load_recognizer(rec_a);
            Term t = parse_term(term_text, r.signature(), r.vars());
            run.emit_value("member", accepts(r, t), bool_text(accepts(r, t)));
        } else if (enumerate->parsed()) {
            Recognizer r = io::load_recognizer(rec_a);
            auto langs = enumerate_language(r, max_nodes);
            Json doc = Json::object();
            for (SortId s = 0; s < r.signature().sort_count(); ++s) {
                Json list = Json::array();
                for (const auto& t : langs[s]) {
                    std::string text = format_term(t, r.signature(), r.vars());
                    list.push_back(text);
                    if (!run.json())
                        out << r.signature().sort_name(s) << "\t" << text << "\n";
                }
                doc[r.signature().sort_name(s)] = list;
            }
            if (run.json())
                out << io::dump(doc);
        } else if (minimize_cmd->parsed()) {
            run.emit_recognizer(minimize(io::load_recognizer(rec_a)));
        } else if (combine_cmd->parsed()) {
            Recognizer a = io::load_recognizer(rec_a);
            Recognizer b = io::load_recognizer(rec_b);
            auto op = *parse_boolean_op(kind);
            Recognizer r = minimize(combine(op, a, b));
            run.check(r, [&](const Term& t) {
                bool x = accepts(a, t), y = accepts(b, t);
                return op == BooleanOp::union_of ? x || y : op == BooleanOp::intersection ? x && y : x && !y;
            });
            run.emit_recognizer(r);
        } else if (substitute_cmd->parsed()) {
            Recognizer k = io::load_recognizer(rec_a);
            LanguageFamily family;
            for (const auto& w : with) {
                auto eq = w.find('=');
                if (eq == std::string::npos)
                    throw Error("--with expects x=file, got '" + w + "'");
                VarId x = var_named(k.vars(), w.substr(0, eq));
                if (family.contains(x))
                    throw Error("--with gives variable " + w.substr(0, eq) + " twice");
                family.emplace(x, io::load_recognizer(w.substr(eq + 1)));
            }
            Recognizer r = substitute_language(k, family);
            if (run.oracle() != 0) {
                std::size_t n = run.oracle();
                auto ks = enumerate_language(k, n);
                TermSet kset;
                for (auto& v : ks)
                    kset.insert(v.begin(), v.end());
                TermFamily fam;
                for (const auto& [x, l] : family) {
                    auto ls = enumerate_language(l, n)[k.vars().at(x).sort];
                    fam[x] = TermSet(ls.begin(), ls.end());
                }
                TermSet expected = semantic_substitution_sets(k.signature(), kset, fam, n);
                run.check(r, [&](const Term& t) { return expected.contains(t); });
            }
            run.emit_recognizer(r);
        } else if (iterate_cmd->parsed()) {
            Recognizer l = io::load_recognizer(rec_a);
            VarId z = var_named(l.vars(), var_name);
            Recognizer r = iterate_language(l, z);
            if (run.oracle() != 0) {
                TermSet expected = semantic_iteration_bounded(l, z, run.oracle());
                run.check(r, [&](const Term& t) { return expected.contains(t); });
            }
            run.emit_recognizer(r);
        } else if (quotient_cmd->parsed()) {
            Recognizer l = io::load_recognizer(rec_a);
            VarId z = var_named(l.vars(), var_name);
            std::optional<Recognizer> k;
            TermSet kterms;
            if (!by_path.empty()) {
                k = io::load_recognizer(by_path);
            } else if (!by_terms.empty()) {
                std::vector<Term> terms;
                for (const auto& text : split(by_terms, ';')) {
                    ParseOptions opt;
                    opt.expected_sort = l.vars().at(z).sort;
                    terms.push_back(parse_term(text, l.signature(), l.vars(), opt));
                }
                kterms.insert(terms.begin(), terms.end());
                k = recognize_finite(l.signature(), l.vars(), terms);
            } else {
                throw Error("quotient needs --by or --by-terms");
            }
            Recognizer r = quotient_language(l, *k, z);
            if (run.oracle() != 0) {
                QuotientOracle q = by_path.empty() ? semantic_quotient_bounded(l, kterms, z, run.oracle())
                                                   : semantic_quotient_bounded(l, *k, z, run.oracle());
                if (!q.complete)
                    throw Undecided("oracle: undecided, members of K up to " + std::to_string(q.member_bound) +
                                    " nodes do not cover every reachable value");
                run.check(r, [&](const Term& t) { return q.terms.contains(t); });
            }
            run.emit_recognizer(r);
        } else if (invtrans_cmd->parsed()) {
            Recognizer l = io::load_recognizer(rec_a);
            Context ctx = parse_context(ctx_text, l.signature(), l.vars());
            Recognizer r = minimize(inverse_translation(l, ctx));
            run.check(r, [&](const Term& t) {
                return t.sort() == ctx.hole_sort() && accepts(l, apply_context(ctx, t));
            });
            run.emit_recognizer(r);
        } else if (th_apply->parsed()) {
            Hyperderivor h = io::load_hyperderivor(rec_b);
            Term t = parse_term(term_text, h.source(), h.source_vars());
            std::string text = format_term(apply_treehom(h, t), h.target(), h.target_vars());
            run.emit_value("term", text, text);
        } else if (th_inverse->parsed()) {
            Hyperderivor h = io::load_hyperderivor(rec_b);
            Recognizer l = io::load_recognizer(rec_a);
            SortId s = sort_named(h.source(), sort_name);
            Recognizer r = minimize(inverse_image(h, l, s));
            run.check(r, [&](const Term& t) { return t.sort() == s && accepts(l, apply_treehom(h, t)); });
            run.emit_recognizer(r);
        } else if (th_image->parsed()) {
            Hyperderivor h = io::load_hyperderivor(rec_b);
            Recognizer l = io::load_recognizer(rec_a);
            SortId s = sort_named(h.source(), sort_name);
            Recognizer r = direct_image(h, l, s);
            run.check(r, [&](const Term& t) {
                return t.sort() == h.map_sort(s) && semantic_image_member(h, l, s, t);
            });
            run.emit_recognizer(r);
        } else if (dv_apply->parsed()) {
            Derivor d = io::load_derivor(rec_b);
            std::vector<SortId> arity;
            for (const auto& name : split(arity_text, ','))
                arity.push_back(sort_named(d.source(), name));
            ParseOptions opt;
            opt.placeholder_sorts = arity;
            Term body = parse_term(term_text, d.source(), SortedVars{}, opt);
            SortId sort = body.sort();
            HallTerm q = apply_derivor_term(d, HallTerm{std::move(body), std::move(arity), sort});
            std::string text = format_term(q.term, d.target(), SortedVars{});
            if (run.json()) {
                Json arity = Json::array();
                for (SortId w : q.arity)
                    arity.push_back(d.target().sort_name(w));
                out << Json{{"term", text}, {"arity", arity}, {"sort", d.target().sort_name(q.sort)}}.dump() << "\n";
            } else {
                out << text << "\n";
            }
        } else if (dv_compose->parsed()) {
            Derivor first = io::load_derivor(rec_a);
            Derivor second = io::load_derivor(rec_b);
            run.emit_document(io::write_derivor(compose_derivors(second, first)));
        } else if (dv_derive->parsed()) {
            Derivor d = io::load_derivor(rec_b);
            fs::path p(rec_a);
            io::AlgebraBundle b = io::read_algebra(io::load_document(p), p.parent_path());
            FiniteAlgebra a = derived_algebra_derivor(d, b.algebra);
            run.emit_document(io::write_algebra(a, SortedVars{}, nullptr));
        } else if (dv_tohyp->parsed()) {
            Derivor d = io::load_derivor(rec_b);
            fs::path p(rec_a);
            Json doc = io::load_document(p);
            auto vars_of = [&](const Signature& sig, const char* key) {
                std::vector<std::pair<std::string, std::vector<std::string>>> by_sort;
                if (doc.contains(key))
                    for (const auto& [k, v] : doc[key].items())
                        by_sort.emplace_back(k, v.get<std::vector<std::string>>());
                return SortedVars::from_names(sig, by_sort);
            };
            SortedVars xs = vars_of(d.source(), "source_vars");
            SortedVars ys = vars_of(d.target(), "target_vars");
            std::vector<Term> images;
            for (VarId x = 0; x < xs.size(); ++x) {
                const auto& v = xs.at(x);
                if (!doc.contains("var_images") || !doc["var_images"].contains(v.name))
                    throw Error("var_images: no image for variable " + v.name);
                ParseOptions opt;
                opt.expected_sort = d.map_sort(v.sort);
                images.push_back(parse_term(doc["var_images"][v.name].get<std::string>(), d.target(), ys, opt));
            }
            run.emit_document(io::write_hyperderivor(derivor_to_hyperderivor(d, xs, ys, std::move(images))));
        } else if (equal_cmd->parsed()) {
            bool eq = equivalent(io::load_recognizer(rec_a), io::load_recognizer(rec_b));
            run.emit_value("equal", eq, bool_text(eq));
        } else if (empty_cmd->parsed()) {
            Recognizer r = io::load_recognizer(rec_a);
            bool e = is_empty(r);
            if (run.json()) {
                Json doc{{"empty", e}};
                Json wit = Json::object();
                auto ws = accepted_witnesses(r);
                for (SortId s = 0; s < r.signature().sort_count(); ++s)
                    if (ws[s])
                        wit[r.signature().sort_name(s)] = format_term(*ws[s], r.signature(), r.vars());
                doc["witnesses"] = wit;
                out << doc.dump() << "\n";
            } else {
                out << bool_text(e) << "\n";
            }
        } else if (syncong_cmd->parsed()) {
            Recognizer r = io::load_recognizer(rec_a);
            auto idx = syntactic_indices(r);
            const Signature& sig = r.signature();
            if (run.json()) {
                Json ind = Json::object();
                for (SortId s = 0; s < sig.sort_count(); ++s)
                    ind[sig.sort_name(s)] = idx[s];
                Json doc = Json::object();
                doc["indices"] = ind;
                doc["classes"] = io::write_partition(sig, syntactic_congruence(r.algebra(), r.accepting()));
                out << io::dump(doc);
            } else {
                for (SortId s = 0; s < sig.sort_count(); ++s)
                    out << sig.sort_name(s) << " " << idx[s] << "\n";
            }
        } else if (golden_cmd->parsed()) {
            return golden(dir, out, err);
        }
    } catch (const Undecided& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

namespace {

int golden(const std::string& dir, std::ostream& out, std::ostream& err)
{
    fs::path root(dir);
    if (!fs::is_directory(root)) {
        err << "error: golden directory " << dir << " does not exist\n";
        return 1;
    }
    std::vector<fs::path> cases;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.path().extension() == ".case")
            cases.push_back(entry.path());
    std::sort(cases.begin(), cases.end());
    if (cases.empty()) {
        err << "error: no .case files in " << dir << "\n";
        return 1;
    }
    fs::path tmp = fs::temp_directory_path() / ("msrec-golden-" + std::to_string(std::hash<std::string>{}(
                                                                      fs::absolute(root).string())));
    fs::create_directories(tmp);
    std::size_t failed = 0;
    for (const auto& c : cases) {
        std::string name = c.stem().string();
        try {
            Json doc = io::load_document(c);
            auto expand = [&](const std::string& s) {
                return replace_all(replace_all(s, "{dir}", root.string()), "{tmp}", tmp.string());
            };
            std::vector<std::string> args;
            for (const auto& a : doc.at("args"))
                args.push_back(expand(a.get<std::string>()));
            int want_exit = doc.contains("exit") ? doc["exit"].get<int>() : 0;
            std::ostringstream got_out, got_err;
            int code = run(args, got_out, got_err);
            std::string problem;
            if (code != want_exit)
                problem = "exit " + std::to_string(code) + ", expected " + std::to_string(want_exit) +
                          (got_err.str().empty() ? "" : " (" + got_err.str().substr(0, got_err.str().find('\n')) + ")");
            if (problem.empty() && doc.contains("stdout")) {
                std::string want = read_text(root / doc["stdout"].get<std::string>());
                if (want != got_out.str())
                    problem = "stdout differs from " + doc["stdout"].get<std::string>();
            }
            if (problem.empty() && doc.contains("files")) {
                for (const auto& [produced, expected] : doc["files"].items()) {
                    std::string want = read_text(root / expected.get<std::string>());
                    if (want != read_text(expand(produced))) {
                        problem = expand(produced) + " differs from " + expected.get<std::string>();
                        break;
                    }
                }
            }
            if (problem.empty()) {
                out << "PASS " << name << "\n";
            } else {
                ++failed;
                out << "FAIL " << name << ": " << problem << "\n";
            }
        } catch (const std::exception& e) {
            ++failed;
            out << "FAIL " << name << ": " << e.what() << "\n";
        }
    }
    out << (cases.size() - failed) << "/" << cases.size() << " golden cases passed\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

} // namespace msrec::cli
