#pragma once

#include "modelkit/fincat.hpp"
#include "modelkit/graphcat.hpp"
#include "modelkit/lifting.hpp"
#include "modelkit/modelstruct.hpp"
#include "modelkit/semisimp.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

// Loaded object registry plus the command dispatcher behind the modelkit
// tool. Reports are plain data so the text and structured exports derive
// from the same content and stay byte-deterministic.

namespace modelkit::workspace {

struct LoadedCategory {
    fincat::FinCategory cat;
    std::uint64_t hash = 0;
};

struct LoadedGraph {
    graphcat::Graph graph;
    std::uint64_t hash = 0;
};

struct LoadedSss {
    semisimp::SemiSimplicialSet sss;
    std::uint64_t hash = 0;
};

struct LoadedClass {
    lifting::MorphismClass cls;
    std::string category;  // resolved registry or corpus name
    std::uint64_t hash = 0;
};

struct LoadedStructure {
    modelstruct::ModelStructureSpec spec;
    std::string category;
    std::uint64_t hash = 0;
};

struct Workspace {
    std::map<std::string, LoadedCategory> categories;
    std::map<std::string, LoadedGraph> graphs;
    std::map<std::string, LoadedSss> sss;
    std::map<std::string, LoadedClass> classes;
    std::map<std::string, LoadedStructure> structures;
};

// Dispatch is by file extension: .cat, .graph, .sss, .class, .structure.
// The registry name is the file stem. Class and structure files resolve
// after everything else so their category references can be checked; the
// reference may also be a built-in corpus category.
Workspace load_workspace(const std::vector<std::string>& paths);

// A parsed invocation: the verb plus flag values in the order given.
struct Command {
    std::string verb;
    std::map<std::string, std::vector<std::string>> opt;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // name, content hash
    bool passed = true;
    std::vector<std::string> lines;
};

bool operator==(const Report& a, const Report& b);

// Unknown objects, flags, or malformed flag values throw
// std::invalid_argument; every successful run is deterministic.
Report run_command(const Workspace& ws, const Command& cmd);

enum class ReportFormat { Text, Structured };

std::string export_report(const Report& r, ReportFormat format);

// Inverse of the structured export.
Report parse_report(const std::string& structured);

}  // namespace modelkit::workspace
