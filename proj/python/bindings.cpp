#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msrec/cli.hpp"
#include "msrec/closure.hpp"
#include "msrec/io.hpp"
#include "msrec/oracle.hpp"

#include <sstream>

namespace py = pybind11;
using namespace msrec;

namespace {

Recognizer load_text(const std::string& text, const std::string& base)
{
    return io::read_recognizer(io::parse_document(text), base);
}

std::string to_json(const Recognizer& r)
{
    return io::dump(io::write_recognizer(r));
}

Term parse(const Recognizer& r, const std::string& text)
{
    return parse_term(text, r.signature(), r.vars());
}

VarId var_id(const Recognizer& r, const std::string& name)
{
    return r.vars().id(name);
}

std::map<std::string, std::size_t> per_sort(const Signature& sig, const std::vector<std::size_t>& v)
{
    std::map<std::string, std::size_t> out;
    for (SortId s = 0; s < sig.sort_count(); ++s)
        out[sig.sort_name(s)] = v[s];
    return out;
}

std::map<std::string, std::vector<std::string>> enumerate(const Recognizer& r, std::size_t max_nodes)
{
    std::map<std::string, std::vector<std::string>> out;
    auto lists = enumerate_language(r, max_nodes);
    for (SortId s = 0; s < lists.size(); ++s) {
        auto& row = out[r.signature().sort_name(s)];
        for (const auto& t : lists[s])
            row.push_back(format_term(t, r.signature(), r.vars()));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_msrec, m)
{
    m.doc() = "Many-sorted recognizable tree languages";

    py::register_exception<Error>(m, "MsrecError", PyExc_ValueError);

    py::class_<Recognizer>(m, "Recognizer")
        .def_property_readonly("sorts", [](const Recognizer& r) { return r.signature().sort_names(); })
        .def_property_readonly("state_counts",
                               [](const Recognizer& r) { return per_sort(r.signature(), r.state_counts()); })
        .def("accepts", [](const Recognizer& r, const std::string& t) { return accepts(r, parse(r, t)); },
             py::arg("term"))
        .def("run", [](const Recognizer& r, const std::string& t) { return run(r, parse(r, t)); }, py::arg("term"))
        .def("is_empty", [](const Recognizer& r) { return is_empty(r); })
        .def("enumerate", &enumerate, py::arg("max_nodes"))
        .def("syntactic_indices",
             [](const Recognizer& r) { return per_sort(r.signature(), syntactic_indices(r)); })
        .def("to_json", &to_json)
        .def("__eq__", [](const Recognizer& a, const Recognizer& b) { return a == b; })
        .def("__repr__", [](const Recognizer& r) {
            std::ostringstream os;
            os << "<Recognizer";
            for (SortId s = 0; s < r.signature().sort_count(); ++s)
                os << ' ' << r.signature().sort_name(s) << ':' << r.state_counts()[s];
            os << '>';
            return os.str();
        });

    m.def("load", [](const std::string& path) { return io::load_recognizer(path); }, py::arg("path"),
          "Read a recognizer file (YAML or JSON).");
    m.def("loads", &load_text, py::arg("text"), py::arg("base") = ".",
          "Read a recognizer from a string; signature paths resolve against base.");
    m.def("minimize", &minimize, py::arg("r"));
    m.def("trim", &trim, py::arg("r"));
    m.def("complement", &complement, py::arg("r"));
    m.def("restrict_to_sort",
          [](const Recognizer& r, const std::string& sort) { return restrict_to_sort(r, r.signature().sort_id(sort)); },
          py::arg("r"), py::arg("sort"));
    m.def(
        "combine",
        [](const std::string& kind, const Recognizer& a, const Recognizer& b) {
            auto op = parse_boolean_op(kind);
            if (!op)
                throw Error("unknown combination '" + kind + "'");
            return combine(*op, a, b);
        },
        py::arg("kind"), py::arg("a"), py::arg("b"));
    m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"));
    m.def(
        "substitute",
        [](const Recognizer& k, const std::map<std::string, Recognizer>& with) {
            LanguageFamily family;
            for (const auto& [name, l] : with)
                family.emplace(var_id(k, name), l);
            return substitute_language(k, family);
        },
        py::arg("k"), py::arg("family"));
    m.def(
        "iterate", [](const Recognizer& l, const std::string& z) { return iterate_language(l, var_id(l, z)); },
        py::arg("l"), py::arg("var"));
    m.def(
        "quotient",
        [](const Recognizer& l, const Recognizer& k, const std::string& z) {
            return quotient_language(l, k, var_id(l, z));
        },
        py::arg("l"), py::arg("k"), py::arg("var"));
    m.def(
        "inverse_translation",
        [](const Recognizer& r, const std::string& ctx) {
            return inverse_translation(r, parse_context(ctx, r.signature(), r.vars()));
        },
        py::arg("r"), py::arg("context"));
    m.def(
        "recognize_terms",
        [](const Recognizer& like, const std::vector<std::string>& texts) {
            std::vector<Term> terms;
            for (const auto& t : texts)
                terms.push_back(parse(like, t));
            return recognize_finite(like.signature(), like.vars(), terms);
        },
        py::arg("like"), py::arg("terms"), "The finite language over the signature of `like`.");

    py::class_<Hyperderivor>(m, "Hyperderivor")
        .def_property_readonly("is_linear", &Hyperderivor::is_linear)
        .def("apply",
             [](const Hyperderivor& h, const std::string& t) {
                 return format_term(apply_treehom(h, parse_term(t, h.source(), h.source_vars())), h.target(),
                                    h.target_vars());
             },
             py::arg("term"))
        .def("inverse_image",
             [](const Hyperderivor& h, const Recognizer& l, const std::string& sort) {
                 return inverse_image(h, l, h.source().sort_id(sort));
             },
             py::arg("l"), py::arg("sort"))
        .def("direct_image",
             [](const Hyperderivor& h, const Recognizer& l, const std::string& sort) {
                 return direct_image(h, l, h.source().sort_id(sort));
             },
             py::arg("l"), py::arg("sort"));

    m.def("load_hyperderivor", [](const std::string& path) { return io::load_hyperderivor(path); },
          py::arg("path"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run one msrec command line; returns (exit status, stdout, stderr).");
}
