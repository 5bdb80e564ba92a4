#pragma once

#include "modelkit/fincat.hpp"
#include "modelkit/graphcat.hpp"
#include "modelkit/modelstruct.hpp"
#include "modelkit/semisimp.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

// Text serialization for the object kinds the command line loads. Writers
// emit the canonical form whose FNV hash identifies the object; parsers
// report the offending line on failure.

namespace modelkit::formats {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
};

// Objects, morphisms (id, src, tgt, name), the identity row, and the full
// composition triple list.
std::string write_category(const fincat::FinCategory& c);
fincat::FinCategory parse_category(const std::string& text);

// Vertex count, then the sorted edge list one pair per line; a loop on v is
// written (v v).
std::string write_graph(const graphcat::Graph& g);
graphcat::Graph parse_graph(const std::string& text);

// Truncation, then per level the element count followed by one face tuple
// per element (levels above 0 only).
std::string write_sss(const semisimp::SemiSimplicialSet& x);
semisimp::SemiSimplicialSet parse_sss(const std::string& text);

// Sorted member ids bound to the category file's content hash so stale
// classes are rejected.
std::string write_class(const lifting::MorphismClass& cls, std::uint64_t category_hash);
lifting::MorphismClass parse_class(const std::string& text, const fincat::FinCategory& c,
                                   std::uint64_t category_hash);

// Category hash, provenance (constructor and cut labels), and the three
// sorted member lists.
std::string write_structure(const modelstruct::ModelStructureSpec& m,
                            std::uint64_t category_hash);
modelstruct::ModelStructureSpec parse_structure(const std::string& text,
                                                const fincat::FinCategory& c,
                                                std::uint64_t category_hash);

// The hash a class or structure file must carry to reference this category.
std::uint64_t category_content_hash(const fincat::FinCategory& c);

// The category hash a class or structure file claims, without full parsing;
// lets a loader find the category before validating members against it.
std::uint64_t referenced_category_hash(const std::string& text);

std::string provenance_name(modelstruct::Provenance p);
modelstruct::Provenance provenance_from_name(const std::string& name);

}  // namespace modelkit::formats
