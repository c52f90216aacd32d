#pragma once

// Reading and writing signature, recognizer, hyperderivor and derivor files.
// Input may be YAML or JSON; output is deterministic JSON (which is also YAML).

#include "msrec/derivor.hpp"

#include <filesystem>
#include <nlohmann/json.hpp>

namespace msrec::io {

using Json = nlohmann::ordered_json;

Json parse_document(std::string_view text);
Json load_document(const std::filesystem::path& path);

/// One top-level key per line, each value compact; trailing newline.
std::string dump(const Json& doc);
void write_file(const std::filesystem::path& path, const std::string& text);

struct SignatureBundle {
    Signature sig;
    SortedVars vars;
};

/// `{sorts, ops, vars}` or a path (relative to base) to a file holding one.
SignatureBundle read_signature(const Json& node, const std::filesystem::path& base);
Json write_signature(const Signature& sig, const SortedVars& vars);

Recognizer read_recognizer(const Json& doc, const std::filesystem::path& base);
Json write_recognizer(const Recognizer& r);
Recognizer load_recognizer(const std::filesystem::path& path);

/// An algebra file: signature, carriers, tables and an optional assignment.
struct AlgebraBundle {
    SignatureBundle signature;
    FiniteAlgebra algebra;
    std::optional<Assignment> assignment;
};

AlgebraBundle read_algebra(const Json& doc, const std::filesystem::path& base);
Json write_algebra(const FiniteAlgebra& alg, const SortedVars& vars, const Assignment* assignment);

Hyperderivor read_hyperderivor(const Json& doc, const std::filesystem::path& base);
Json write_hyperderivor(const Hyperderivor& h);
Hyperderivor load_hyperderivor(const std::filesystem::path& path);

Derivor read_derivor(const Json& doc, const std::filesystem::path& base);
Json write_derivor(const Derivor& d);
Derivor load_derivor(const std::filesystem::path& path);

/// Per sort, the class-id array.
Json write_partition(const Signature& sig, const SortedPartition& p);

} // namespace msrec::io
