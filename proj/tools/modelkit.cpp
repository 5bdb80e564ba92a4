#include "modelkit/workspace.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct VerbSpec {
    const char* verb;
    const char* help;
    std::vector<const char*> flags;
};

const std::vector<VerbSpec>& verbs() {
    static const std::vector<VerbSpec> table = {
        {"validate", "check a category, graph, or semi-simplicial set",
         {"category", "graph", "sss"}},
        {"classify", "morphism flags and optional structure membership",
         {"category", "morphism", "structure"}},
        {"limit", "finite limits in a category, or a product of two graphs",
         {"category", "discrete", "cospan", "span", "graph"}},
        {"colimit", "finite colimits in a category, or a coproduct of two graphs",
         {"category", "discrete", "cospan", "span", "graph"}},
        {"reflect", "preorder reflection of a category", {"category"}},
        {"cut-build", "build the model structure a cut induces",
         {"category", "structure"}},
        {"verify", "run the model structure axioms", {"category", "structure"}},
        {"properness", "left/right properness with replayable witnesses",
         {"category", "structure", "side"}},
        {"hom", "hom search between two graphs or two objects",
         {"category", "from", "to", "graph"}},
        {"core", "compute a graph core with its minimality certificate",
         {"graph", "seed"}},
        {"factor", "factor a graph map through the core structure classes",
         {"graph", "map", "mode", "bound"}},
        {"bauslaugh", "endomorphism rigidity profile of a graph", {"graph"}},
        {"sss-validate", "check a semi-simplicial set", {"sss"}},
        {"sss-classify", "dimension cut flags of a map", {"sss", "map", "cut", "variant"}},
        {"sss-reflect", "factor a map through its dimension reflection", {"sss", "map"}},
        {"sss-limit", "levelwise limit of up to four objects", {"sss", "truncation"}},
        {"sss-colimit", "levelwise colimit of up to four objects", {"sss", "truncation"}},
        {"sss-hom", "map search between two semi-simplicial sets", {"sss"}},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite model category toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::vector<std::string> loads;
    std::string format = "text";
    app.add_option("--load", loads,
                   "workspace file (.cat, .graph, .sss, .class, .structure); repeatable")
        ->type_size(1);
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "structured"}));

    std::map<std::string, std::map<std::string, std::vector<std::string>>> collected;
    for (const auto& spec : verbs()) {
        auto* sub = app.add_subcommand(spec.verb, spec.help);
        for (const auto* flag : spec.flags)
            sub->add_option("--" + std::string(flag), collected[spec.verb][flag])
                ->type_size(1);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    modelkit::workspace::Command cmd;
    cmd.verb = app.get_subcommands().front()->get_name();
    for (auto& [flag, values] : collected[cmd.verb])
        if (!values.empty()) cmd.opt[flag] = values;

    try {
        const auto ws = modelkit::workspace::load_workspace(loads);
        const auto report = modelkit::workspace::run_command(ws, cmd);
        std::cout << modelkit::workspace::export_report(
            report, format == "text" ? modelkit::workspace::ReportFormat::Text
                                     : modelkit::workspace::ReportFormat::Structured);
        return report.passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
