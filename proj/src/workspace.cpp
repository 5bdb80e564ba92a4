#include "modelkit/workspace.hpp"

#include "modelkit/base.hpp"
#include "modelkit/corpus.hpp"
#include "modelkit/formats.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace modelkit::workspace {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string yesno(bool v) { return v ? "yes" : "no"; }

std::string tristate(const std::optional<bool>& v) {
    return v.has_value() ? yesno(*v) : "unknown";
}

std::string join_ints(const std::vector<int>& v, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + " must be an integer, got '" + tok + "'");
    }
}

graphcat::GraphHom parse_graph_map(const std::string& s) {
    graphcat::GraphHom h;
    if (s.empty()) return h;
    for (const auto& tok : split_on(s, ','))
        h.map.push_back(parse_int(tok, "graph map entry"));
    return h;
}

std::string graph_map_string(const graphcat::GraphHom& h) { return join_ints(h.map, ","); }

semisimp::SssMap parse_sss_map(const std::string& s) {
    semisimp::SssMap f;
    for (const auto& seg : split_on(s, ';')) {
        f.level.emplace_back();
        if (seg.empty()) continue;
        for (const auto& tok : split_on(seg, ','))
            f.level.back().push_back(parse_int(tok, "map entry"));
    }
    return f;
}

std::string sss_map_string(const semisimp::SssMap& f) {
    std::string out;
    for (std::size_t k = 0; k < f.level.size(); ++k) {
        if (k) out += ";";
        out += join_ints(f.level[k], ",");
    }
    return out;
}

void append_block(Report& r, const std::string& header, const std::string& body) {
    r.lines.push_back(header);
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) r.lines.push_back("  " + line);
}

// ---- loading ----

void register_name(std::set<std::string>& taken, const std::string& name,
                   const std::string& path) {
    if (!taken.insert(name).second)
        throw std::runtime_error(path + ": duplicate object name '" + name + "'");
}

}  // namespace

Workspace load_workspace(const std::vector<std::string>& paths) {
    Workspace ws;
    std::set<std::string> taken;
    std::vector<std::pair<std::string, std::string>> deferred;  // path, text
    for (const auto& path : paths) {
        const std::string text = read_file(path);
        const std::filesystem::path p(path);
        const std::string ext = p.extension().string();
        const std::string name = p.stem().string();
        try {
            if (ext == ".cat") {
                fincat::FinCategory c = formats::parse_category(text);
                const auto rep = fincat::validate_category(c);
                if (!rep.ok())
                    throw std::runtime_error("category fails validation with " +
                                             std::to_string(rep.violations.size()) +
                                             " violation(s)");
                register_name(taken, name, path);
                ws.categories[name] = {std::move(c), fnv1a64(text)};
            } else if (ext == ".graph") {
                graphcat::Graph g = formats::parse_graph(text);
                register_name(taken, name, path);
                ws.graphs[name] = {std::move(g), fnv1a64(text)};
            } else if (ext == ".sss") {
                semisimp::SemiSimplicialSet x = formats::parse_sss(text);
                register_name(taken, name, path);
                ws.sss[name] = {std::move(x), fnv1a64(text)};
            } else if (ext == ".class" || ext == ".structure") {
                deferred.emplace_back(path, text);
            } else {
                throw std::runtime_error(
                    "unknown file kind '" + ext +
                    "' (expected .cat, .graph, .sss, .class, or .structure)");
            }
        } catch (const formats::ParseError& e) {
            throw std::runtime_error(path + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(path + ": " + e.what());
        }
    }
    for (const auto& [path, text] : deferred) {
        try {
            const std::uint64_t want = formats::referenced_category_hash(text);
            std::string cat_name;
            const fincat::FinCategory* cat = nullptr;
            for (const auto& [name, loaded] : ws.categories)
                if (loaded.hash == want) {
                    cat_name = name;
                    cat = &loaded.cat;
                }
            fincat::FinCategory from_corpus;
            if (!cat)
                for (const auto& name : corpus::category_names()) {
                    auto c = corpus::category_by_name(name);
                    if (c && formats::category_content_hash(*c) == want) {
                        from_corpus = std::move(*c);
                        cat_name = name;
                        cat = &from_corpus;
                        break;
                    }
                }
            if (!cat)
                throw std::runtime_error("references a category that is not loaded");
            const std::filesystem::path p(path);
            const std::string name = p.stem().string();
            register_name(taken, name, path);
            if (p.extension() == ".class") {
                ws.classes[name] = {formats::parse_class(text, *cat, want), cat_name,
                                    fnv1a64(text)};
            } else {
                ws.structures[name] = {formats::parse_structure(text, *cat, want), cat_name,
                                       fnv1a64(text)};
            }
        } catch (const formats::ParseError& e) {
            throw std::runtime_error(path + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(path + ": " + e.what());
        }
    }
    return ws;
}

// ---- command dispatch ----

namespace {

struct Ctx {
    const Workspace& ws;
    const Command& cmd;
    Report& report;

    void input(const std::string& name, std::uint64_t hash) {
        const auto entry = std::make_pair(name, hex64(hash));
        if (std::find(report.inputs.begin(), report.inputs.end(), entry) ==
            report.inputs.end())
            report.inputs.push_back(entry);
    }

    const std::vector<std::string>& all(const std::string& key) const {
        static const std::vector<std::string> none;
        const auto it = cmd.opt.find(key);
        return it == cmd.opt.end() ? none : it->second;
    }

    bool has(const std::string& key) const { return cmd.opt.count(key) > 0; }

    std::string one(const std::string& key) const {
        const auto& v = all(key);
        if (v.size() != 1)
            throw std::invalid_argument("--" + key + " must be given exactly once");
        return v.front();
    }

    std::optional<std::string> maybe(const std::string& key) const {
        const auto& v = all(key);
        if (v.empty()) return std::nullopt;
        if (v.size() > 1) throw std::invalid_argument("--" + key + " given more than once");
        return v.front();
    }

    fincat::FinCategory category(const std::string& name) {
        const auto it = ws.categories.find(name);
        if (it != ws.categories.end()) {
            input(name, it->second.hash);
            return it->second.cat;
        }
        auto c = corpus::category_by_name(name);
        if (!c) throw std::invalid_argument("unknown category: " + name);
        input(name, formats::category_content_hash(*c));
        return std::move(*c);
    }

    graphcat::Graph graph(const std::string& name) {
        const auto it = ws.graphs.find(name);
        if (it != ws.graphs.end()) {
            input(name, it->second.hash);
            return it->second.graph;
        }
        graphcat::Graph g = graphcat::graph_by_name(name);
        input(name, fnv1a64(formats::write_graph(g)));
        return g;
    }

    semisimp::SemiSimplicialSet sss(const std::string& token) {
        const auto it = ws.sss.find(token);
        if (it != ws.sss.end()) {
            input(token, it->second.hash);
            return it->second.sss;
        }
        const auto parts = split_on(token, ':');
        if (parts.size() == 2) {
            const int trunc = parse_int(parts[1], "truncation");
            semisimp::SemiSimplicialSet x;
            if (parts[0] == "empty") {
                x = semisimp::empty_sss(trunc);
            } else if (parts[0] == "triangle") {
                x = semisimp::triangle_boundary(trunc);
            } else if (parts[0].size() > 1 && parts[0][0] == 'D') {
                x = semisimp::standard_D(parse_int(parts[0].substr(1), "dimension"), trunc);
            } else {
                throw std::invalid_argument("unknown semi-simplicial set: " + token);
            }
            input(token, fnv1a64(formats::write_sss(x)));
            return x;
        }
        throw std::invalid_argument("unknown semi-simplicial set: " + token);
    }
};

fincat::MorId find_morphism(const fincat::FinCategory& c, const std::string& tok) {
    for (fincat::MorId f = 0; f < c.n_morphisms(); ++f)
        if (c.morphism_name(f) == tok) return f;
    try {
        const int f = parse_int(tok, "morphism");
        if (f >= 0 && f < c.n_morphisms()) return f;
    } catch (const std::invalid_argument&) {
    }
    throw std::invalid_argument("unknown morphism: " + tok);
}

fincat::ObjId find_object(const fincat::FinCategory& c, const std::string& tok) {
    for (fincat::ObjId x = 0; x < c.n_objects; ++x)
        if (c.object_name(x) == tok) return x;
    try {
        const int x = parse_int(tok, "object");
        if (x >= 0 && x < c.n_objects) return x;
    } catch (const std::invalid_argument&) {
    }
    throw std::invalid_argument("unknown object: " + tok);
}

std::vector<std::string> canonical_upper(const std::string& name) {
    if (name == "SQ") return {"B", "*"};
    if (name == "E" || name == "E'" || name == "LAT4" || name == "LAT5") return {"*"};
    throw std::invalid_argument("no canonical cut for category " + name +
                                "; use --category with <variant>:cut<N>");
}

struct StructureRef {
    std::string category_name;
    fincat::FinCategory cat;
    modelstruct::ModelStructureSpec spec;
    std::string description;
};

StructureRef resolve_structure(Ctx& ctx) {
    const std::string token = ctx.one("structure");
    const auto loaded = ctx.ws.structures.find(token);
    if (loaded != ctx.ws.structures.end()) {
        StructureRef ref;
        ref.category_name = loaded->second.category;
        ref.cat = ctx.category(ref.category_name);
        ref.spec = loaded->second.spec;
        ref.description = token;
        ctx.input(token, loaded->second.hash);
        return ref;
    }
    const auto sep = token.find(':');
    if (sep == std::string::npos)
        throw std::invalid_argument("structure must be <variant>:<cut> or a loaded name, got '" +
                                    token + "'");
    const std::string vtok = token.substr(0, sep);
    const std::string ctok = token.substr(sep + 1);
    const bool dbl = vtok == "double" || vtok == "dF";
    std::optional<modelstruct::Variant> variant;
    if (vtok == "balanced" || vtok == "bF") variant = modelstruct::Variant::Balanced;
    if (vtok == "right" || vtok == "rF") variant = modelstruct::Variant::Right;
    if (vtok == "left" || vtok == "lF") variant = modelstruct::Variant::Left;
    if (!variant && !dbl)
        throw std::invalid_argument("unknown structure variant: " + vtok);

    StructureRef ref;
    ref.description = token;
    if (ctok.rfind("dcut", 0) == 0) {
        if (!dbl)
            throw std::invalid_argument("dcut<N> requires the double variant");
        ref.category_name = ctx.one("category");
        ref.cat = ctx.category(ref.category_name);
        const auto cuts = modelstruct::all_double_cuts(ref.cat);
        const int idx = parse_int(ctok.substr(4), "double cut index");
        if (idx < 0 || idx >= static_cast<int>(cuts.size()))
            throw std::invalid_argument("double cut index out of range; category has " +
                                        std::to_string(cuts.size()) + " double cuts");
        ref.spec = modelstruct::build_double_cut_structure(ref.cat, cuts[idx]);
        return ref;
    }
    if (dbl) throw std::invalid_argument("the double variant takes dcut<N>");
    modelstruct::Cut cut;
    if (ctok.rfind("cut", 0) == 0) {
        ref.category_name = ctx.one("category");
        ref.cat = ctx.category(ref.category_name);
        const auto cuts = modelstruct::all_cuts(ref.cat);
        const int idx = parse_int(ctok.substr(3), "cut index");
        if (idx < 0 || idx >= static_cast<int>(cuts.size()))
            throw std::invalid_argument("cut index out of range; category has " +
                                        std::to_string(cuts.size()) + " cuts");
        cut = cuts[idx];
    } else {
        if (const auto given = ctx.maybe("category"); given && *given != ctok)
            throw std::invalid_argument("--category disagrees with the structure shorthand");
        ref.category_name = ctok;
        ref.cat = ctx.category(ctok);
        cut = modelstruct::cut_from_upper_names(ref.cat, canonical_upper(ctok));
    }
    ref.spec = modelstruct::build_cut_structure(ref.cat, cut, *variant);
    return ref;
}

void wfs_lines(Report& r, const std::string& label, const lifting::WfsReport& w) {
    r.lines.push_back(label + ": " + (w.ok() ? "ok" : "FAIL"));
    if (!w.lifting_ok && w.failing_square) {
        const auto& sq = *w.failing_square;
        r.lines.push_back("  failing square: f=" + std::to_string(sq.f) +
                          " g=" + std::to_string(sq.g) + " top=" + std::to_string(sq.top) +
                          " bottom=" + std::to_string(sq.bottom));
    }
    if (!w.factorization_ok && w.unfactorable)
        r.lines.push_back("  unfactorable morphism: " + std::to_string(*w.unfactorable));
    if (!w.retract_closed_ok && w.retract_witness) {
        const auto& rw = *w.retract_witness;
        r.lines.push_back("  retract escape: inner=" + std::to_string(rw.inner) +
                          " outer=" + std::to_string(rw.outer) + " i=" + std::to_string(rw.i) +
                          " j=" + std::to_string(rw.j) + " r=" + std::to_string(rw.r) +
                          " s=" + std::to_string(rw.s));
    }
}

void properness_lines(Report& r, const fincat::FinCategory& c, const std::string& side,
                      const modelstruct::PropernessReport& rep) {
    r.lines.push_back(side + ": " + (rep.proper ? "PASS" : "FAIL"));
    if (rep.witness) {
        const auto& w = *rep.witness;
        r.lines.push_back(side + " witness we_leg: " + std::to_string(w.we_leg) + " (" +
                          c.morphism_name(w.we_leg) + ")");
        r.lines.push_back(side + " witness other_leg: " + std::to_string(w.other_leg) + " (" +
                          c.morphism_name(w.other_leg) + ")");
        r.lines.push_back(side + " witness apex: " + std::to_string(w.square.apex) + " (" +
                          c.object_name(w.square.apex) + ")");
        std::vector<int> legs(w.square.leg.begin(), w.square.leg.end());
        r.lines.push_back(side + " witness square legs: " + join_ints(legs));
        r.lines.push_back(side + " witness comparison: " + std::to_string(w.comparison) +
                          " (" + c.morphism_name(w.comparison) + ")");
    }
    if (!rep.missing.empty())
        r.lines.push_back(side + " spans without base change: " +
                          std::to_string(rep.missing.size()));
}

void sss_validate_lines(Report& r, const semisimp::SemiSimplicialSet& x) {
    r.lines.push_back("kind: semi-simplicial set");
    r.lines.push_back("truncation: " + std::to_string(x.truncation));
    r.lines.push_back("counts: " + join_ints(x.count));
    const auto d = semisimp::dimension(x);
    r.lines.push_back("dimension: " + std::to_string(d.value));
    r.lines.push_back("at ceiling: " + yesno(d.at_ceiling));
    const auto rep = semisimp::validate_sss(x);
    r.lines.push_back("valid: " + yesno(rep.ok));
    for (const auto& v : rep.violations) r.lines.push_back("violation: " + v);
    r.passed = rep.ok;
}

semisimp::DimCutVariant sss_variant(const std::string& tok) {
    if (tok == "balanced") return semisimp::DimCutVariant::Balanced;
    if (tok == "right") return semisimp::DimCutVariant::Right;
    if (tok == "left") return semisimp::DimCutVariant::Left;
    throw std::invalid_argument("unknown variant: " + tok + " (balanced, right, left)");
}

// Per-verb flag whitelist; anything else is rejected up front.
const std::map<std::string, std::set<std::string>>& verb_flags() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"validate", {"category", "graph", "sss"}},
        {"classify", {"category", "morphism", "structure"}},
        {"limit", {"category", "discrete", "cospan", "span", "graph"}},
        {"colimit", {"category", "discrete", "cospan", "span", "graph"}},
        {"reflect", {"category"}},
        {"cut-build", {"category", "structure"}},
        {"verify", {"category", "structure"}},
        {"properness", {"category", "structure", "side"}},
        {"hom", {"category", "from", "to", "graph"}},
        {"core", {"graph", "seed"}},
        {"factor", {"graph", "map", "mode", "bound"}},
        {"bauslaugh", {"graph"}},
        {"sss-validate", {"sss"}},
        {"sss-classify", {"sss", "map", "cut", "variant"}},
        {"sss-reflect", {"sss", "map"}},
        {"sss-limit", {"sss", "truncation"}},
        {"sss-colimit", {"sss", "truncation"}},
        {"sss-hom", {"sss"}},
    };
    return table;
}

void run_validate(Ctx& ctx) {
    Report& r = ctx.report;
    const int picks = ctx.has("category") + ctx.has("graph") + ctx.has("sss");
    if (picks != 1)
        throw std::invalid_argument("validate takes exactly one of --category, --graph, --sss");
    if (ctx.has("category")) {
        const auto c = ctx.category(ctx.one("category"));
        const auto rep = fincat::validate_category(c);
        r.lines.push_back("kind: category");
        r.lines.push_back("objects: " + std::to_string(c.n_objects));
        r.lines.push_back("morphisms: " + std::to_string(c.n_morphisms()));
        r.lines.push_back("valid: " + yesno(rep.ok()));
        if (!rep.ok())
            r.lines.push_back("violations: " + std::to_string(rep.violations.size()));
        r.passed = rep.ok();
    } else if (ctx.has("graph")) {
        const auto g = ctx.graph(ctx.one("graph"));
        r.lines.push_back("kind: graph");
        r.lines.push_back("vertices: " + std::to_string(g.n));
        r.lines.push_back("edges: " + std::to_string(g.edge_count()));
        r.lines.push_back("valid: yes");
    } else {
        sss_validate_lines(r, ctx.sss(ctx.one("sss")));
    }
}

void run_classify(Ctx& ctx) {
    Report& r = ctx.report;
    fincat::FinCategory c;
    std::optional<StructureRef> ref;
    if (ctx.has("structure")) {
        ref = resolve_structure(ctx);
        c = ref->cat;
    } else {
        c = ctx.category(ctx.one("category"));
    }
    const fincat::MorId f = find_morphism(c, ctx.one("morphism"));
    const auto flags = fincat::classify_morphism(c, f);
    r.lines.push_back("morphism: " + std::to_string(f) + " (" + c.morphism_name(f) + ")");
    r.lines.push_back("source: " + c.object_name(c.src(f)));
    r.lines.push_back("target: " + c.object_name(c.tgt(f)));
    r.lines.push_back("mono: " + yesno(flags.mono));
    r.lines.push_back("epi: " + yesno(flags.epi));
    r.lines.push_back("iso: " + yesno(flags.iso));
    r.lines.push_back("retraction: " + yesno(flags.retraction));
    r.lines.push_back("section: " + yesno(flags.section));
    if (ref) {
        r.lines.push_back("structure: " + ref->description);
        r.lines.push_back("we: " + yesno(ref->spec.we.contains(f)));
        r.lines.push_back("cof: " + yesno(ref->spec.cof.contains(f)));
        r.lines.push_back("fib: " + yesno(ref->spec.fib.contains(f)));
    }
}

void run_limit(Ctx& ctx, bool colimit) {
    Report& r = ctx.report;
    if (ctx.has("graph")) {
        const auto& names = ctx.all("graph");
        if (names.size() != 2)
            throw std::invalid_argument("graph (co)limits take exactly two --graph flags");
        const auto a = ctx.graph(names[0]);
        const auto b = ctx.graph(names[1]);
        if (colimit) {
            const auto sum = graphcat::coproduct(a, b);
            append_block(r, "coproduct:", formats::write_graph(sum.sum));
            r.lines.push_back("left leg: " + graph_map_string(sum.into_left));
            r.lines.push_back("right leg: " + graph_map_string(sum.into_right));
        } else {
            const auto prod = graphcat::product(a, b);
            append_block(r, "product:", formats::write_graph(prod.prod));
            r.lines.push_back("left leg: " + graph_map_string(prod.onto_left));
            r.lines.push_back("right leg: " + graph_map_string(prod.onto_right));
        }
        return;
    }
    const auto c = ctx.category(ctx.one("category"));
    fincat::Diagram d;
    const int picks = ctx.has("discrete") + ctx.has("cospan") + ctx.has("span");
    if (picks != 1)
        throw std::invalid_argument(
            "category (co)limits take exactly one of --discrete, --cospan, --span");
    if (ctx.has("discrete")) {
        const auto toks = split_on(ctx.one("discrete"), ',');
        if (toks.size() != 2)
            throw std::invalid_argument("--discrete takes two objects, e.g. A,B");
        d = fincat::discrete_pair_diagram(find_object(c, toks[0]), find_object(c, toks[1]));
    } else if (ctx.has("cospan")) {
        const auto toks = split_on(ctx.one("cospan"), ',');
        if (toks.size() != 2)
            throw std::invalid_argument("--cospan takes two morphisms, e.g. f,g");
        d = fincat::cospan_diagram(c, find_morphism(c, toks[0]), find_morphism(c, toks[1]));
    } else {
        const auto toks = split_on(ctx.one("span"), ',');
        if (toks.size() != 2)
            throw std::invalid_argument("--span takes two morphisms, e.g. f,g");
        d = fincat::span_diagram(c, find_morphism(c, toks[0]), find_morphism(c, toks[1]));
    }
    const auto cone = colimit ? fincat::colimit(c, d) : fincat::limit(c, d);
    r.lines.push_back("exists: " + yesno(cone.has_value()));
    if (cone) {
        r.lines.push_back("apex: " + std::to_string(cone->apex) + " (" +
                          c.object_name(cone->apex) + ")");
        std::vector<int> legs(cone->leg.begin(), cone->leg.end());
        r.lines.push_back("legs: " + join_ints(legs));
    }
}

void run_reflect(Ctx& ctx) {
    Report& r = ctx.report;
    const auto c = ctx.category(ctx.one("category"));
    const auto pr = fincat::preorder_reflection(c);
    r.lines.push_back("objects: " + std::to_string(c.n_objects));
    r.lines.push_back("already preorder: " + yesno(fincat::is_preorder(c)));
    r.lines.push_back("classes: " + std::to_string(pr.preorder.n_objects));
    for (int k = 0; k < pr.preorder.n_objects; ++k) {
        std::string members;
        for (int x = 0; x < c.n_objects; ++x)
            if (pr.cls[x] == k) members += (members.empty() ? "" : " ") + c.object_name(x);
        r.lines.push_back("class " + std::to_string(k) + ": " + members);
    }
}

void run_cut_build(Ctx& ctx) {
    Report& r = ctx.report;
    const auto ref = resolve_structure(ctx);
    r.lines.push_back("category: " + ref.category_name);
    r.lines.push_back("structure: " + ref.description);
    r.lines.push_back("provenance: " + formats::provenance_name(ref.spec.provenance));
    r.lines.push_back("labels: " + join_ints(ref.spec.labels));
    r.lines.push_back("we: " + join_ints(ref.spec.we.ids()));
    r.lines.push_back("cof: " + join_ints(ref.spec.cof.ids()));
    r.lines.push_back("fib: " + join_ints(ref.spec.fib.ids()));
}

void run_verify(Ctx& ctx) {
    Report& r = ctx.report;
    const auto ref = resolve_structure(ctx);
    const auto rep = modelstruct::verify_model_structure(ref.cat, ref.spec);
    r.lines.push_back("category: " + ref.category_name);
    r.lines.push_back("structure: " + ref.description);
    r.lines.push_back(std::string("identities: ") + (rep.identities_ok ? "ok" : "FAIL"));
    wfs_lines(r, "wfs cof against trivial fib", rep.wfs_cof_afib);
    wfs_lines(r, "wfs trivial cof against fib", rep.wfs_acof_fib);
    r.lines.push_back(std::string("two of three: ") + (rep.two_of_three_ok ? "ok" : "FAIL"));
    if (rep.two_of_three_witness)
        r.lines.push_back("  two of three witness: f=" +
                          std::to_string(rep.two_of_three_witness->first) +
                          " g=" + std::to_string(rep.two_of_three_witness->second));
    r.lines.push_back(std::string("we retract closed: ") +
                      (rep.we_retract_closed ? "ok" : "FAIL"));
    r.lines.push_back(std::string("verdict: ") + (rep.ok() ? "PASS" : "FAIL"));
    r.passed = rep.ok();
}

void run_properness(Ctx& ctx) {
    Report& r = ctx.report;
    const auto ref = resolve_structure(ctx);
    const std::string side = ctx.maybe("side").value_or("both");
    if (side != "left" && side != "right" && side != "both")
        throw std::invalid_argument("--side must be left, right, or both");
    r.lines.push_back("category: " + ref.category_name);
    r.lines.push_back("structure: " + ref.description);
    if (side != "right") {
        const auto rep = modelstruct::check_properness(ref.cat, ref.spec,
                                                       lifting::Side::Left);
        properness_lines(r, ref.cat, "left", rep);
        r.passed = r.passed && rep.proper;
    }
    if (side != "left") {
        const auto rep = modelstruct::check_properness(ref.cat, ref.spec,
                                                       lifting::Side::Right);
        properness_lines(r, ref.cat, "right", rep);
        r.passed = r.passed && rep.proper;
    }
}

void run_hom(Ctx& ctx) {
    Report& r = ctx.report;
    if (ctx.has("graph")) {
        const auto& names = ctx.all("graph");
        if (names.size() != 2)
            throw std::invalid_argument("graph hom search takes exactly two --graph flags");
        const auto a = ctx.graph(names[0]);
        const auto b = ctx.graph(names[1]);
        const auto h = graphcat::find_hom(a, b);
        r.lines.push_back("exists: " + yesno(h.has_value()));
        if (h) r.lines.push_back("map: " + graph_map_string(*h));
        r.lines.push_back("count: " + std::to_string(graphcat::count_homs(a, b)));
        return;
    }
    const auto c = ctx.category(ctx.one("category"));
    const auto x = find_object(c, ctx.one("from"));
    const auto y = find_object(c, ctx.one("to"));
    const auto ids = c.hom(x, y);
    r.lines.push_back("count: " + std::to_string(ids.size()));
    std::vector<int> v(ids.begin(), ids.end());
    r.lines.push_back("ids: " + join_ints(v));
}

void run_core(Ctx& ctx) {
    Report& r = ctx.report;
    const auto g = ctx.graph(ctx.one("graph"));
    const auto seed = ctx.maybe("seed");
    const auto res = seed ? graphcat::core_seeded(g, parse_int(*seed, "seed"))
                          : graphcat::core(g);
    r.lines.push_back("graph vertices: " + std::to_string(g.n));
    r.lines.push_back("core vertices: " + std::to_string(res.core.n));
    r.lines.push_back("core vertex ids: " + join_ints(res.core_vertices));
    r.lines.push_back("retraction: " + graph_map_string(res.retraction));
    const bool certified = graphcat::no_proper_retraction(res.core);
    r.lines.push_back("certified minimal: " + yesno(certified));
    append_block(r, "core:", formats::write_graph(res.core));
    std::string match = "none";
    for (const auto& name : graphcat::graph_names())
        if (graphcat::is_isomorphic(res.core, graphcat::graph_by_name(name))) {
            match = name;
            break;
        }
    r.lines.push_back("matches: " + match);
    r.passed = certified;
}

void run_factor(Ctx& ctx) {
    Report& r = ctx.report;
    const auto& names = ctx.all("graph");
    if (names.size() != 2)
        throw std::invalid_argument("factor takes exactly two --graph flags");
    const auto a = ctx.graph(names[0]);
    const auto b = ctx.graph(names[1]);
    const std::string mode = ctx.one("mode");
    if (mode != "cof-afib" && mode != "acof-fib")
        throw std::invalid_argument("--mode must be cof-afib or acof-fib");
    const int bound = ctx.maybe("bound") ? parse_int(*ctx.maybe("bound"), "bound") : 2;
    graphcat::GraphHom f;
    if (const auto given = ctx.maybe("map")) {
        f = parse_graph_map(*given);
    } else {
        const auto found = graphcat::find_hom(a, b);
        if (!found)
            throw std::invalid_argument("no homomorphism from " + names[0] + " to " +
                                        names[1] + "; give --map");
        f = *found;
    }
    const auto fac = mode == "cof-afib" ? graphcat::factor_cof_afib(a, b, f)
                                        : graphcat::factor_acof_fib(a, b, f);
    const bool matches = graphcat::compose(fac.right, fac.left).map == f.map;
    const auto left = graphcat::classify_core_morphism(a, fac.mid, fac.left, bound);
    const auto right = graphcat::classify_core_morphism(fac.mid, b, fac.right, bound);
    const bool left_ok = mode == "cof-afib" ? left.cof : left.acyclic_cof;
    const bool right_ok = mode == "cof-afib" ? (right.we && right.acyclic_fib)
                                             : right.fib_status.passed();
    r.lines.push_back("mode: " + mode);
    r.lines.push_back("map: " + graph_map_string(f));
    r.lines.push_back("mid vertices: " + std::to_string(fac.mid.n));
    r.lines.push_back("left map: " + graph_map_string(fac.left));
    r.lines.push_back("right map: " + graph_map_string(fac.right));
    r.lines.push_back("composite matches: " + yesno(matches));
    r.lines.push_back("left in class: " + yesno(left_ok));
    r.lines.push_back("right in class: " + yesno(right_ok));
    r.lines.push_back("fibration probe bound: " + std::to_string(bound));
    r.passed = matches && left_ok && right_ok;
}

void run_bauslaugh(Ctx& ctx) {
    Report& r = ctx.report;
    const auto g = ctx.graph(ctx.one("graph"));
    const auto p = graphcat::bauslaugh_profile(g);
    r.lines.push_back("all surjective: " + yesno(p.all_surjective));
    r.lines.push_back("no proper retraction: " + yesno(p.no_proper_retraction));
    r.lines.push_back("all automorphisms: " + yesno(p.all_automorphisms));
    r.lines.push_back("all injective: " + yesno(p.all_injective));
    r.lines.push_back("nonadjacency rigid: " + yesno(p.nonadjacency_rigid));
    const bool agree = p.all_surjective == p.no_proper_retraction &&
                       p.all_surjective == p.all_automorphisms &&
                       p.all_surjective == p.all_injective &&
                       p.all_surjective == p.nonadjacency_rigid;
    r.lines.push_back("all agree: " + yesno(agree));
}

std::pair<semisimp::SemiSimplicialSet, semisimp::SemiSimplicialSet> sss_pair(Ctx& ctx) {
    const auto& names = ctx.all("sss");
    if (names.size() != 2)
        throw std::invalid_argument("this command takes exactly two --sss flags");
    return {ctx.sss(names[0]), ctx.sss(names[1])};
}

semisimp::SssMap sss_map_or_first(Ctx& ctx, const semisimp::SemiSimplicialSet& x,
                                  const semisimp::SemiSimplicialSet& y) {
    if (const auto given = ctx.maybe("map")) return parse_sss_map(*given);
    const auto all = semisimp::all_sss_maps(x, y);
    if (all.empty())
        throw std::invalid_argument("no map between the given objects; give --map");
    return all.front();
}

void run_sss_classify(Ctx& ctx) {
    Report& r = ctx.report;
    const auto [x, y] = sss_pair(ctx);
    const auto f = sss_map_or_first(ctx, x, y);
    const int cut = parse_int(ctx.one("cut"), "cut");
    const auto variant = sss_variant(ctx.one("variant"));
    const auto flags = semisimp::classify_dim_cut(x, y, f, cut, variant);
    r.lines.push_back("map: " + sss_map_string(f));
    r.lines.push_back("cut: " + std::to_string(cut));
    r.lines.push_back("variant: " + ctx.one("variant"));
    r.lines.push_back("we: " + yesno(flags.we));
    r.lines.push_back("cof: " + tristate(flags.cof));
    r.lines.push_back("fib: " + tristate(flags.fib));
    r.lines.push_back("ceiling ambiguous: " + yesno(flags.ceiling_ambiguous));
}

void run_sss_reflect(Ctx& ctx) {
    Report& r = ctx.report;
    const auto [x, y] = sss_pair(ctx);
    const auto f = sss_map_or_first(ctx, x, y);
    const auto fac = semisimp::adjoint_factorize(x, y, f);
    const bool matches = semisimp::compose(fac.onto_target, fac.into_mid) == f;
    r.lines.push_back("map: " + sss_map_string(f));
    r.lines.push_back("source dimension: " + std::to_string(semisimp::dimension(x).value));
    r.lines.push_back("mid counts: " + join_ints(fac.mid.count));
    r.lines.push_back("reflection identity: " + yesno(fac.reflection_identity));
    r.lines.push_back("composite matches: " + yesno(matches));
    r.passed = fac.reflection_identity && matches;
}

void run_sss_limit(Ctx& ctx, bool colimit) {
    Report& r = ctx.report;
    semisimp::SssDiagram d;
    for (const auto& name : ctx.all("sss")) d.node.push_back(ctx.sss(name));
    if (const auto trunc = ctx.maybe("truncation"))
        d.truncation = parse_int(*trunc, "truncation");
    const auto cone = colimit ? semisimp::sss_colimit(d) : semisimp::sss_limit(d);
    r.lines.push_back("apex counts: " + join_ints(cone.apex.count));
    r.lines.push_back("apex dimension: " +
                      std::to_string(semisimp::dimension(cone.apex).value));
    for (std::size_t i = 0; i < cone.leg.size(); ++i)
        r.lines.push_back("leg " + std::to_string(i) + ": " + sss_map_string(cone.leg[i]));
}

void run_sss_hom(Ctx& ctx) {
    Report& r = ctx.report;
    const auto [x, y] = sss_pair(ctx);
    const auto all = semisimp::all_sss_maps(x, y);
    r.lines.push_back("exists: " + yesno(!all.empty()));
    r.lines.push_back("count: " + std::to_string(all.size()));
    if (!all.empty()) r.lines.push_back("first map: " + sss_map_string(all.front()));
}

}  // namespace

bool operator==(const Report& a, const Report& b) {
    return a.command == b.command && a.inputs == b.inputs && a.passed == b.passed &&
           a.lines == b.lines;
}

Report run_command(const Workspace& ws, const Command& cmd) {
    const auto& table = verb_flags();
    const auto verb = table.find(cmd.verb);
    if (verb == table.end()) throw std::invalid_argument("unknown command: " + cmd.verb);
    for (const auto& [key, values] : cmd.opt) {
        if (!verb->second.count(key))
            throw std::invalid_argument("unknown flag --" + key + " for " + cmd.verb);
        if (values.empty())
            throw std::invalid_argument("--" + key + " needs a value");
    }

    Report report;
    report.command = cmd.verb;
    for (const auto& [key, values] : cmd.opt)
        for (const auto& v : values) report.command += " --" + key + " " + v;

    Ctx ctx{ws, cmd, report};
    if (cmd.verb == "validate") run_validate(ctx);
    else if (cmd.verb == "classify") run_classify(ctx);
    else if (cmd.verb == "limit") run_limit(ctx, false);
    else if (cmd.verb == "colimit") run_limit(ctx, true);
    else if (cmd.verb == "reflect") run_reflect(ctx);
    else if (cmd.verb == "cut-build") run_cut_build(ctx);
    else if (cmd.verb == "verify") run_verify(ctx);
    else if (cmd.verb == "properness") run_properness(ctx);
    else if (cmd.verb == "hom") run_hom(ctx);
    else if (cmd.verb == "core") run_core(ctx);
    else if (cmd.verb == "factor") run_factor(ctx);
    else if (cmd.verb == "bauslaugh") run_bauslaugh(ctx);
    else if (cmd.verb == "sss-validate") sss_validate_lines(report, ctx.sss(ctx.one("sss")));
    else if (cmd.verb == "sss-classify") run_sss_classify(ctx);
    else if (cmd.verb == "sss-reflect") run_sss_reflect(ctx);
    else if (cmd.verb == "sss-limit") run_sss_limit(ctx, false);
    else if (cmd.verb == "sss-colimit") run_sss_limit(ctx, true);
    else if (cmd.verb == "sss-hom") run_sss_hom(ctx);
    return report;
}

std::string export_report(const Report& r, ReportFormat format) {
    if (format == ReportFormat::Text) {
        std::ostringstream out;
        out << "command: " << r.command << "\n";
        for (const auto& [name, hash] : r.inputs) out << "input: " << name << " " << hash << "\n";
        out << "status: " << (r.passed ? "PASS" : "FAIL") << "\n";
        for (const auto& line : r.lines) out << line << "\n";
        return out.str();
    }
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, hash] : r.inputs)
        j["inputs"].push_back({{"name", name}, {"hash", hash}});
    j["status"] = r.passed ? "PASS" : "FAIL";
    j["lines"] = r.lines;
    return j.dump(2) + "\n";
}

Report parse_report(const std::string& structured) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(structured);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("report parse: ") + e.what());
    }
    Report r;
    r.command = j.at("command").get<std::string>();
    for (const auto& entry : j.at("inputs"))
        r.inputs.emplace_back(entry.at("name").get<std::string>(),
                              entry.at("hash").get<std::string>());
    const std::string status = j.at("status").get<std::string>();
    if (status != "PASS" && status != "FAIL")
        throw std::invalid_argument("report parse: status must be PASS or FAIL");
    r.passed = status == "PASS";
    for (const auto& line : j.at("lines")) r.lines.push_back(line.get<std::string>());
    return r;
}

}  // namespace modelkit::workspace
