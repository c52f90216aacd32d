#include "msrec/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace msrec::io {

namespace {

Json from_yaml(const YAML::Node& n)
{
    switch (n.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null:
        return nullptr;
    case YAML::NodeType::Scalar: {
        const std::string& s = n.Scalar();
        if (n.Tag() == "!")
            return s;
        if (s == "true")
            return true;
        if (s == "false")
            return false;
        std::int64_t v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && end == s.data() + s.size() && !s.empty())
            return v;
        return s;
    }
    case YAML::NodeType::Sequence: {
        Json out = Json::array();
        for (const auto& item : n)
            out.push_back(from_yaml(item));
        return out;
    }
    case YAML::NodeType::Map: {
        Json out = Json::object();
        for (const auto& kv : n) {
            std::string key = kv.first.as<std::string>();
            if (out.contains(key))
                throw ParseError("duplicate key '" + key + "'");
            out[key] = from_yaml(kv.second);
        }
        return out;
    }
    }
    return nullptr;
}

const Json& require(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object())
        throw ParseError(where + ": expected a mapping");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(where + ": missing key '" + key + "'");
    return *it;
}

void allow_keys(const Json& obj, std::initializer_list<std::string_view> keys, const std::string& where)
{
    if (!obj.is_object())
        throw ParseError(where + ": expected a mapping");
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (auto allowed : keys)
            ok = ok || k == allowed;
        if (!ok)
            throw ParseError(where + ": unknown key '" + k + "'");
    }
}

std::string as_string(const Json& v, const std::string& where)
{
    if (!v.is_string())
        throw ParseError(where + ": expected a string");
    return v.get<std::string>();
}

std::uint64_t as_uint(const Json& v, const std::string& where)
{
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ParseError(where + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

const Json& as_array(const Json& v, const std::string& where)
{
    if (!v.is_array())
        throw ParseError(where + ": expected a list");
    return v;
}

const Json& as_object(const Json& v, const std::string& where)
{
    if (!v.is_object())
        throw ParseError(where + ": expected a mapping");
    return v;
}

std::vector<std::string> string_list(const Json& v, const std::string& where)
{
    std::vector<std::string> out;
    for (const auto& item : as_array(v, where))
        out.push_back(as_string(item, where));
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& rel)
{
    std::filesystem::path p(rel);
    return p.is_absolute() ? p : base / p;
}

std::vector<SortId> read_sort_map(const Json& node, const Signature& src, const Signature& tgt)
{
    const auto& m = as_object(node, "sort_map");
    std::vector<SortId> out(src.sort_count());
    for (SortId s = 0; s < src.sort_count(); ++s) {
        const auto& name = src.sort_name(s);
        auto it = m.find(name);
        if (it == m.end())
            throw ParseError("sort_map: no image for sort " + name);
        auto t = tgt.find_sort(as_string(*it, "sort_map"));
        if (!t)
            throw ParseError("sort_map: unknown target sort " + it->get<std::string>());
        out[s] = *t;
    }
    for (const auto& [k, v] : m.items())
        if (!src.find_sort(k))
            throw ParseError("sort_map: unknown source sort " + k);
    return out;
}

Json write_sort_map(const Signature& src, const Signature& tgt, const std::vector<SortId>& phi)
{
    Json m = Json::object();
    for (SortId s = 0; s < src.sort_count(); ++s)
        m[src.sort_name(s)] = tgt.sort_name(phi[s]);
    return m;
}

std::vector<Term> read_patterns(const Json& node, const Signature& src, const Signature& tgt,
                                const SortedVars& tgt_vars, const std::vector<SortId>& phi)
{
    const auto& m = as_object(node, "patterns");
    std::vector<Term> out;
    for (OpId o = 0; o < src.op_count(); ++o) {
        const auto& d = src.op(o);
        auto it = m.find(d.name);
        if (it == m.end())
            throw ParseError("patterns: no pattern for operation " + d.name);
        ParseOptions opt;
        for (SortId w : d.arity)
            opt.placeholder_sorts.push_back(phi[w]);
        opt.expected_sort = phi[d.result];
        try {
            out.push_back(parse_term(as_string(*it, "patterns"), tgt, tgt_vars, opt));
        } catch (const Error& e) {
            throw ParseError("patterns: '" + d.name + "': " + e.what());
        }
    }
    for (const auto& [k, v] : m.items())
        if (!src.find_op(k))
            throw ParseError("patterns: unknown source operation " + k);
    return out;
}

} // namespace

Json parse_document(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!root.IsMap())
        throw ParseError("document must be a mapping");
    return from_yaml(root);
}

Json load_document(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_document(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string dump(const Json& doc)
{
    if (!doc.is_object() || doc.empty())
        return doc.dump() + "\n";
    std::string out = "{\n";
    bool first = true;
    for (const auto& [k, v] : doc.items()) {
        if (!first)
            out += ",\n";
        first = false;
        out += "  " + Json(k).dump() + ": " + v.dump();
    }
    out += "\n}\n";
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << text;
}

SignatureBundle read_signature(const Json& node, const std::filesystem::path& base)
{
    if (node.is_string()) {
        auto path = resolve(base, node.get<std::string>());
        Json doc = load_document(path);
        return read_signature(doc, path.parent_path());
    }
    allow_keys(node, {"sorts", "ops", "vars"}, "signature");
    auto sorts = string_list(require(node, "sorts", "signature"), "signature.sorts");
    std::vector<OpSpec> ops;
    for (const auto& op : as_array(require(node, "ops", "signature"), "signature.ops")) {
        allow_keys(op, {"name", "arity", "result"}, "signature.ops");
        OpSpec spec;
        spec.name = as_string(require(op, "name", "signature.ops"), "signature.ops.name");
        if (op.contains("arity"))
            spec.arity = string_list(op["arity"], "signature.ops.arity");
        spec.result = as_string(require(op, "result", "signature.ops"), "signature.ops.result");
        ops.push_back(std::move(spec));
    }
    Signature sig(std::move(sorts), ops);
    std::vector<std::pair<std::string, std::vector<std::string>>> by_sort;
    if (node.contains("vars") && !node["vars"].is_null())
        for (const auto& [k, v] : as_object(node["vars"], "signature.vars").items())
            by_sort.emplace_back(k, v.is_null() ? std::vector<std::string>{} : string_list(v, "signature.vars"));
    SortedVars vars = SortedVars::from_names(sig, by_sort);
    return SignatureBundle{std::move(sig), std::move(vars)};
}

Json write_signature(const Signature& sig, const SortedVars& vars)
{
    Json ops = Json::array();
    for (const auto& d : sig.ops()) {
        Json arity = Json::array();
        for (SortId w : d.arity)
            arity.push_back(sig.sort_name(w));
        ops.push_back(Json{{"name", d.name}, {"arity", arity}, {"result", sig.sort_name(d.result)}});
    }
    Json by_sort = Json::object();
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        Json names = Json::array();
        for (VarId x : vars.of_sort(s))
            names.push_back(vars.at(x).name);
        by_sort[sig.sort_name(s)] = names;
    }
    return Json{{"sorts", sig.sort_names()}, {"ops", ops}, {"vars", by_sort}};
}

namespace {

SignatureBundle signature_of(const Json& doc, const std::filesystem::path& base)
{
    if (doc.contains("signature"))
        return read_signature(doc["signature"], base);
    Json inline_sig = Json::object();
    for (const char* k : {"sorts", "ops", "vars"})
        if (doc.contains(k))
            inline_sig[k] = doc[k];
    return read_signature(inline_sig, base);
}

} // namespace

AlgebraBundle read_algebra(const Json& doc, const std::filesystem::path& base)
{
    SignatureBundle sb = signature_of(doc, base);
    const Signature& sig = sb.sig;
    const auto& car = as_object(require(doc, "carriers", "algebra"), "carriers");
    std::vector<std::size_t> carriers(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        auto it = car.find(sig.sort_name(s));
        if (it == car.end())
            throw ParseError("carriers: no size for sort " + sig.sort_name(s));
        carriers[s] = as_uint(*it, "carriers");
    }
    for (const auto& [k, v] : car.items())
        if (!sig.find_sort(k))
            throw ParseError("carriers: unknown sort " + k);
    const auto& tab = as_object(require(doc, "tables", "algebra"), "tables");
    std::vector<std::vector<Element>> tables(sig.op_count());
    for (OpId o = 0; o < sig.op_count(); ++o) {
        auto it = tab.find(sig.op(o).name);
        if (it == tab.end())
            throw ParseError("tables: no table for operation " + sig.op(o).name);
        for (const auto& v : as_array(*it, "tables"))
            tables[o].push_back(static_cast<Element>(as_uint(v, "tables." + sig.op(o).name)));
    }
    for (const auto& [k, v] : tab.items())
        if (!sig.find_op(k))
            throw ParseError("tables: unknown operation " + k);
    FiniteAlgebra alg(sig, std::move(carriers), std::move(tables));
    std::optional<Assignment> assignment;
    if (doc.contains("assignment") || sb.vars.size() == 0) {
        Assignment a(sb.vars.size());
        Json as = doc.contains("assignment") ? doc["assignment"] : Json::object();
        if (as.is_null())
            as = Json::object();
        as_object(as, "assignment");
        for (VarId x = 0; x < sb.vars.size(); ++x) {
            auto it = as.find(sb.vars.at(x).name);
            if (it == as.end())
                throw ParseError("assignment: no value for variable " + sb.vars.at(x).name);
            a[x] = static_cast<Element>(as_uint(*it, "assignment"));
        }
        for (const auto& [k, v] : as.items())
            if (!sb.vars.find(k))
                throw ParseError("assignment: unknown variable " + k);
        assignment = std::move(a);
    }
    return AlgebraBundle{std::move(sb), std::move(alg), std::move(assignment)};
}

Json write_algebra(const FiniteAlgebra& alg, const SortedVars& vars, const Assignment* assignment)
{
    const Signature& sig = alg.signature();
    Json doc = Json::object();
    doc["signature"] = write_signature(sig, vars);
    Json car = Json::object();
    for (SortId s = 0; s < sig.sort_count(); ++s)
        car[sig.sort_name(s)] = alg.carrier(s);
    doc["carriers"] = car;
    Json tab = Json::object();
    for (OpId o = 0; o < sig.op_count(); ++o)
        tab[sig.op(o).name] = alg.table(o);
    doc["tables"] = tab;
    if (assignment) {
        Json as = Json::object();
        for (VarId x = 0; x < vars.size(); ++x)
            as[vars.at(x).name] = (*assignment)[x];
        doc["assignment"] = as;
    }
    return doc;
}

Recognizer read_recognizer(const Json& doc, const std::filesystem::path& base)
{
    allow_keys(doc, {"signature", "sorts", "ops", "vars", "carriers", "tables", "assignment", "accepting"},
               "recognizer");
    AlgebraBundle ab = read_algebra(doc, base);
    if (!ab.assignment)
        throw ParseError("recognizer: missing key 'assignment'");
    const Signature& sig = ab.signature.sig;
    SortedSubset accepting(ab.algebra.carriers());
    const auto& acc = as_object(require(doc, "accepting", "recognizer"), "accepting");
    for (const auto& [k, v] : acc.items()) {
        auto s = sig.find_sort(k);
        if (!s)
            throw ParseError("accepting: unknown sort " + k);
        if (v.is_null())
            continue;
        for (const auto& e : as_array(v, "accepting")) {
            auto q = as_uint(e, "accepting");
            if (q >= ab.algebra.carrier(*s))
                throw Error("accepting: element " + std::to_string(q) + " is outside the carrier of sort " + k);
            accepting.insert(*s, static_cast<Element>(q));
        }
    }
    return Recognizer(std::move(ab.signature.vars), std::move(ab.algebra), std::move(*ab.assignment),
                      std::move(accepting));
}

Json write_recognizer(const Recognizer& r)
{
    Json doc = write_algebra(r.algebra(), r.vars(), &r.assignment());
    const Signature& sig = r.signature();
    Json acc = Json::object();
    for (SortId s = 0; s < sig.sort_count(); ++s)
        acc[sig.sort_name(s)] = r.accepting().elements(s);
    doc["accepting"] = acc;
    return doc;
}

Recognizer load_recognizer(const std::filesystem::path& path)
{
    Json doc = load_document(path);
    try {
        return read_recognizer(doc, path.parent_path());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

Hyperderivor read_hyperderivor(const Json& doc, const std::filesystem::path& base)
{
    allow_keys(doc, {"source", "target", "sort_map", "patterns", "var_images"}, "hyperderivor");
    SignatureBundle src = read_signature(require(doc, "source", "hyperderivor"), base);
    SignatureBundle tgt = read_signature(require(doc, "target", "hyperderivor"), base);
    auto phi = read_sort_map(require(doc, "sort_map", "hyperderivor"), src.sig, tgt.sig);
    auto patterns = read_patterns(require(doc, "patterns", "hyperderivor"), src.sig, tgt.sig, tgt.vars, phi);
    std::vector<Term> images;
    Json vi = doc.contains("var_images") ? doc["var_images"] : Json::object();
    if (vi.is_null())
        vi = Json::object();
    as_object(vi, "var_images");
    for (VarId x = 0; x < src.vars.size(); ++x) {
        const auto& v = src.vars.at(x);
        auto it = vi.find(v.name);
        if (it == vi.end())
            throw ParseError("var_images: no image for variable " + v.name);
        ParseOptions opt;
        opt.expected_sort = phi[v.sort];
        images.push_back(parse_term(as_string(*it, "var_images"), tgt.sig, tgt.vars, opt));
    }
    for (const auto& [k, v] : vi.items())
        if (!src.vars.find(k))
            throw ParseError("var_images: unknown variable " + k);
    return Hyperderivor(std::move(src.sig), std::move(src.vars), std::move(tgt.sig), std::move(tgt.vars),
                        std::move(phi), std::move(patterns), std::move(images));
}

Json write_hyperderivor(const Hyperderivor& h)
{
    Json doc = Json::object();
    doc["source"] = write_signature(h.source(), h.source_vars());
    doc["target"] = write_signature(h.target(), h.target_vars());
    doc["sort_map"] = write_sort_map(h.source(), h.target(), h.sort_map());
    Json pats = Json::object();
    for (OpId o = 0; o < h.source().op_count(); ++o)
        pats[h.source().op(o).name] = format_term(h.pattern(o), h.target(), h.target_vars());
    doc["patterns"] = pats;
    Json vi = Json::object();
    for (VarId x = 0; x < h.source_vars().size(); ++x)
        vi[h.source_vars().at(x).name] = format_term(h.var_image(x), h.target(), h.target_vars());
    doc["var_images"] = vi;
    return doc;
}

Hyperderivor load_hyperderivor(const std::filesystem::path& path)
{
    Json doc = load_document(path);
    try {
        return read_hyperderivor(doc, path.parent_path());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

Derivor read_derivor(const Json& doc, const std::filesystem::path& base)
{
    allow_keys(doc, {"source", "target", "sort_map", "patterns"}, "derivor");
    SignatureBundle src = read_signature(require(doc, "source", "derivor"), base);
    SignatureBundle tgt = read_signature(require(doc, "target", "derivor"), base);
    auto phi = read_sort_map(require(doc, "sort_map", "derivor"), src.sig, tgt.sig);
    auto patterns = read_patterns(require(doc, "patterns", "derivor"), src.sig, tgt.sig, SortedVars{}, phi);
    return Derivor(std::move(src.sig), std::move(tgt.sig), std::move(phi), std::move(patterns));
}

Json write_derivor(const Derivor& d)
{
    Json doc = Json::object();
    doc["source"] = write_signature(d.source(), SortedVars{});
    doc["target"] = write_signature(d.target(), SortedVars{});
    doc["sort_map"] = write_sort_map(d.source(), d.target(), d.sort_map());
    Json pats = Json::object();
    for (OpId o = 0; o < d.source().op_count(); ++o)
        pats[d.source().op(o).name] = format_term(d.pattern(o), d.target(), SortedVars{});
    doc["patterns"] = pats;
    return doc;
}

Derivor load_derivor(const std::filesystem::path& path)
{
    Json doc = load_document(path);
    try {
        return read_derivor(doc, path.parent_path());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

Json write_partition(const Signature& sig, const SortedPartition& p)
{
    Json out = Json::object();
    for (SortId s = 0; s < sig.sort_count(); ++s)
        out[sig.sort_name(s)] = p.classes(s);
    return out;
}

} // namespace msrec::io
