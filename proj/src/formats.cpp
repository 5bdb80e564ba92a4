#include "modelkit/formats.hpp"

#include "modelkit/base.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace modelkit::formats {

namespace {

// Line cursor that skips blanks and remembers positions for error reports.
struct Reader {
    std::vector<std::string> lines;
    int pos = 0;

    explicit Reader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }

    bool blank(const std::string& s) const {
        return s.find_first_not_of(" \t\r") == std::string::npos;
    }

    // 1-based line number of the line about to be read.
    int here() const {
        int p = pos;
        while (p < static_cast<int>(lines.size()) && blank(lines[p])) ++p;
        return p + 1;
    }

    std::string next(const std::string& expected) {
        while (pos < static_cast<int>(lines.size()) && blank(lines[pos])) ++pos;
        if (pos == static_cast<int>(lines.size()))
            throw ParseError(pos + 1, "unexpected end of file, expected " + expected);
        return lines[pos++];
    }

    void done() {
        while (pos < static_cast<int>(lines.size()) && blank(lines[pos])) ++pos;
        if (pos != static_cast<int>(lines.size()))
            throw ParseError(pos + 1, "trailing content after the document");
    }
};

int to_int(const std::string& tok, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, what + " must be an integer, got '" + tok + "'");
    }
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

void expect_keyword(Reader& r, const std::string& word) {
    const int line = r.here();
    const auto toks = split(r.next("'" + word + "'"));
    if (toks.size() != 1 || toks[0] != word)
        throw ParseError(line, "expected '" + word + "'");
}

// "<keyword> <count>" header line.
int counted_header(Reader& r, const std::string& word) {
    const int line = r.here();
    const auto toks = split(r.next("'" + word + " <count>'"));
    if (toks.size() != 2 || toks[0] != word)
        throw ParseError(line, "expected '" + word + " <count>'");
    const int n = to_int(toks[1], line, word + " count");
    if (n < 0) throw ParseError(line, word + " count must be nonnegative");
    return n;
}

std::uint64_t hash_header(Reader& r) {
    const int line = r.here();
    const auto toks = split(r.next("'category <hash>'"));
    if (toks.size() != 2 || toks[0] != "category")
        throw ParseError(line, "expected 'category <hash>'");
    try {
        std::size_t used = 0;
        const std::uint64_t h = std::stoull(toks[1], &used, 16);
        if (used != toks[1].size()) throw std::invalid_argument(toks[1]);
        return h;
    } catch (const std::exception&) {
        throw ParseError(line, "category hash must be hexadecimal, got '" + toks[1] + "'");
    }
}

std::vector<int> ascending_ids(Reader& r, const std::string& word, int limit) {
    const int n = counted_header(r, word);
    std::vector<int> ids;
    ids.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int line = r.here();
        const int v = to_int(r.next("a morphism id"), line, "morphism id");
        if (v < 0 || v >= limit)
            throw ParseError(line, "morphism id " + std::to_string(v) + " is out of range");
        if (!ids.empty() && ids.back() >= v)
            throw ParseError(line, "morphism ids must be strictly ascending");
        ids.push_back(v);
    }
    return ids;
}

void write_ids(std::ostringstream& out, const std::string& word,
               const lifting::MorphismClass& cls) {
    const auto ids = cls.ids();
    out << word << " " << ids.size() << "\n";
    for (int v : ids) out << v << "\n";
}

}  // namespace

std::string write_category(const fincat::FinCategory& c) {
    std::ostringstream out;
    out << "category\n";
    out << "objects " << c.n_objects << "\n";
    for (int x = 0; x < c.n_objects; ++x) out << c.object_name(x) << "\n";
    out << "morphisms " << c.n_morphisms() << "\n";
    for (fincat::MorId f = 0; f < c.n_morphisms(); ++f)
        out << f << " " << c.src(f) << " " << c.tgt(f) << " " << c.morphism_name(f) << "\n";
    out << "identities";
    for (int x = 0; x < c.n_objects; ++x) out << " " << c.identity[x];
    out << "\n";
    int pairs = 0;
    for (fincat::MorId g = 0; g < c.n_morphisms(); ++g)
        for (fincat::MorId f = 0; f < c.n_morphisms(); ++f)
            if (c.composable(g, f)) ++pairs;
    out << "compose " << pairs << "\n";
    for (fincat::MorId g = 0; g < c.n_morphisms(); ++g)
        for (fincat::MorId f = 0; f < c.n_morphisms(); ++f)
            if (c.composable(g, f)) out << g << " " << f << " " << c.compose(g, f) << "\n";
    return out.str();
}

fincat::FinCategory parse_category(const std::string& text) {
    Reader r(text);
    expect_keyword(r, "category");
    fincat::FinCategory c;
    c.n_objects = counted_header(r, "objects");
    for (int x = 0; x < c.n_objects; ++x) {
        const int line = r.here();
        std::string name = r.next("an object name");
        while (!name.empty() && (name.back() == '\r' || name.back() == ' ')) name.pop_back();
        if (name.empty()) throw ParseError(line, "object name must not be empty");
        c.object_names.push_back(name);
    }
    const int m = counted_header(r, "morphisms");
    for (int f = 0; f < m; ++f) {
        const int line = r.here();
        const auto toks = split(r.next("'<id> <src> <tgt> <name>'"));
        if (toks.size() < 4)
            throw ParseError(line, "expected '<id> <src> <tgt> <name>'");
        if (to_int(toks[0], line, "morphism id") != f)
            throw ParseError(line, "morphism ids must appear in order; expected " +
                                       std::to_string(f));
        fincat::Morphism mor;
        mor.src = to_int(toks[1], line, "source");
        mor.tgt = to_int(toks[2], line, "target");
        if (mor.src < 0 || mor.src >= c.n_objects || mor.tgt < 0 || mor.tgt >= c.n_objects)
            throw ParseError(line, "morphism endpoints are out of range");
        c.mor.push_back(mor);
        std::string name = toks[3];
        for (std::size_t i = 4; i < toks.size(); ++i) name += " " + toks[i];
        c.morphism_names.push_back(name);
    }
    {
        const int line = r.here();
        const auto toks = split(r.next("'identities <id...>'"));
        if (toks.empty() || toks[0] != "identities" ||
            static_cast<int>(toks.size()) != c.n_objects + 1)
            throw ParseError(line, "expected 'identities' with one id per object");
        for (int x = 0; x < c.n_objects; ++x) {
            const int f = to_int(toks[x + 1], line, "identity id");
            if (f < 0 || f >= m || c.mor[f].src != x || c.mor[f].tgt != x)
                throw ParseError(line, "identity of object " + std::to_string(x) +
                                           " must be an endomorphism of it");
            c.identity.push_back(f);
        }
    }
    const int pairs = counted_header(r, "compose");
    c.compose_table.assign(m, std::vector<fincat::MorId>(m, fincat::kNone));
    for (int i = 0; i < pairs; ++i) {
        const int line = r.here();
        const auto toks = split(r.next("'<g> <f> <gf>'"));
        if (toks.size() != 3) throw ParseError(line, "expected '<g> <f> <gf>'");
        const int g = to_int(toks[0], line, "outer morphism");
        const int f = to_int(toks[1], line, "inner morphism");
        const int gf = to_int(toks[2], line, "composite");
        if (g < 0 || g >= m || f < 0 || f >= m || gf < 0 || gf >= m)
            throw ParseError(line, "compose triple references a morphism out of range");
        if (c.mor[f].tgt != c.mor[g].src)
            throw ParseError(line, "compose triple pairs non-composable morphisms");
        if (c.compose_table[g][f] != fincat::kNone)
            throw ParseError(line, "duplicate compose triple");
        c.compose_table[g][f] = gf;
    }
    r.done();
    return c;
}

std::string write_graph(const graphcat::Graph& g) {
    std::ostringstream out;
    out << g.n << "\n";
    for (const auto& [u, v] : g.edges) out << "(" << u << " " << v << ")\n";
    return out.str();
}

graphcat::Graph parse_graph(const std::string& text) {
    Reader r(text);
    const int nline = r.here();
    const auto head = split(r.next("the vertex count"));
    if (head.size() != 1) throw ParseError(nline, "expected the vertex count alone");
    const int n = to_int(head[0], nline, "vertex count");
    if (n < 0 || n > 64) throw ParseError(nline, "vertex count must be between 0 and 64");
    std::vector<std::pair<int, int>> edges;
    while (true) {
        const int line = r.here();
        if (line > static_cast<int>(r.lines.size())) break;
        auto toks = split(r.next("an edge"));
        if (toks.size() != 2 || toks.front().front() != '(' || toks.back().back() != ')')
            throw ParseError(line, "expected an edge of the form (u v)");
        toks.front().erase(0, 1);
        toks.back().pop_back();
        const int u = to_int(toks[0], line, "edge endpoint");
        const int v = to_int(toks[1], line, "edge endpoint");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(line, "edge endpoint is out of range");
        edges.emplace_back(u, v);
    }
    return graphcat::Graph::make(n, edges);
}

std::string write_sss(const semisimp::SemiSimplicialSet& x) {
    std::ostringstream out;
    out << x.truncation << "\n";
    for (int k = 0; k <= x.truncation; ++k) {
        out << x.count[k] << "\n";
        if (k == 0) continue;
        for (int s = 0; s < x.count[k]; ++s) {
            for (int i = 0; i <= k; ++i) out << (i ? " " : "") << x.face[k][s][i];
            out << "\n";
        }
    }
    return out.str();
}

semisimp::SemiSimplicialSet parse_sss(const std::string& text) {
    Reader r(text);
    const int nline = r.here();
    const auto head = split(r.next("the truncation"));
    if (head.size() != 1) throw ParseError(nline, "expected the truncation alone");
    const int trunc = to_int(head[0], nline, "truncation");
    if (trunc < 0) throw ParseError(nline, "truncation must be nonnegative");
    semisimp::SemiSimplicialSet x;
    x.truncation = trunc;
    x.count.assign(trunc + 1, 0);
    x.face.resize(trunc + 1);
    std::vector<std::vector<int>> simplex_line(trunc + 1);
    for (int k = 0; k <= trunc; ++k) {
        const int cline = r.here();
        const auto ctoks = split(r.next("the level " + std::to_string(k) + " count"));
        if (ctoks.size() != 1)
            throw ParseError(cline, "expected the level " + std::to_string(k) + " count");
        x.count[k] = to_int(ctoks[0], cline, "simplex count");
        if (x.count[k] < 0) throw ParseError(cline, "simplex count must be nonnegative");
        x.face[k].resize(x.count[k]);
        simplex_line[k].resize(x.count[k], cline);
        if (k == 0) continue;
        for (int s = 0; s < x.count[k]; ++s) {
            const int line = r.here();
            simplex_line[k][s] = line;
            const auto toks = split(r.next("a face tuple"));
            if (static_cast<int>(toks.size()) != k + 1)
                throw ParseError(line, "face tuple must list " + std::to_string(k + 1) +
                                           " faces");
            for (const auto& tok : toks) {
                const int f = to_int(tok, line, "face");
                if (f < 0 || f >= x.count[k - 1])
                    throw ParseError(line, "face points outside level " +
                                               std::to_string(k - 1));
                x.face[k][s].push_back(f);
            }
        }
    }
    r.done();
    for (int k = 2; k <= trunc; ++k)
        for (int s = 0; s < x.count[k]; ++s)
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    if (x.face[k - 1][x.face[k][s][j]][i] !=
                        x.face[k - 1][x.face[k][s][i]][j - 1])
                        throw ParseError(simplex_line[k][s],
                                         "face identities fail on this simplex");
    return x;
}

std::string write_class(const lifting::MorphismClass& cls, std::uint64_t category_hash) {
    std::ostringstream out;
    out << "class\n";
    out << "category " << hex64(category_hash) << "\n";
    write_ids(out, "members", cls);
    return out.str();
}

lifting::MorphismClass parse_class(const std::string& text, const fincat::FinCategory& c,
                                   std::uint64_t category_hash) {
    Reader r(text);
    expect_keyword(r, "class");
    const int hline = r.here();
    if (hash_header(r) != category_hash)
        throw ParseError(hline, "class was serialized against a different category");
    const auto ids = ascending_ids(r, "members", c.n_morphisms());
    r.done();
    return lifting::MorphismClass::of(c, ids);
}

std::string provenance_name(modelstruct::Provenance p) {
    switch (p) {
        case modelstruct::Provenance::Manual: return "manual";
        case modelstruct::Provenance::DoubleCut: return "double-cut";
        case modelstruct::Provenance::BalancedCut: return "balanced-cut";
        case modelstruct::Provenance::RightCut: return "right-cut";
        case modelstruct::Provenance::LeftCut: return "left-cut";
        case modelstruct::Provenance::AdjointSection: return "adjoint-section";
    }
    return "manual";
}

modelstruct::Provenance provenance_from_name(const std::string& name) {
    if (name == "manual") return modelstruct::Provenance::Manual;
    if (name == "double-cut") return modelstruct::Provenance::DoubleCut;
    if (name == "balanced-cut") return modelstruct::Provenance::BalancedCut;
    if (name == "right-cut") return modelstruct::Provenance::RightCut;
    if (name == "left-cut") return modelstruct::Provenance::LeftCut;
    if (name == "adjoint-section") return modelstruct::Provenance::AdjointSection;
    throw std::invalid_argument("unknown provenance: " + name);
}

std::string write_structure(const modelstruct::ModelStructureSpec& m,
                            std::uint64_t category_hash) {
    std::ostringstream out;
    out << "structure\n";
    out << "category " << hex64(category_hash) << "\n";
    out << "provenance " << provenance_name(m.provenance);
    for (int v : m.labels) out << " " << v;
    out << "\n";
    write_ids(out, "we", m.we);
    write_ids(out, "cof", m.cof);
    write_ids(out, "fib", m.fib);
    return out.str();
}

modelstruct::ModelStructureSpec parse_structure(const std::string& text,
                                                const fincat::FinCategory& c,
                                                std::uint64_t category_hash) {
    Reader r(text);
    expect_keyword(r, "structure");
    const int hline = r.here();
    if (hash_header(r) != category_hash)
        throw ParseError(hline, "structure was serialized against a different category");
    const int pline = r.here();
    const auto ptoks = split(r.next("'provenance <name> [labels]'"));
    if (ptoks.size() < 2 || ptoks[0] != "provenance")
        throw ParseError(pline, "expected 'provenance <name> [labels]'");
    modelstruct::ModelStructureSpec m;
    try {
        m.provenance = provenance_from_name(ptoks[1]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(pline, e.what());
    }
    for (std::size_t i = 2; i < ptoks.size(); ++i)
        m.labels.push_back(to_int(ptoks[i], pline, "cut label"));
    m.we = lifting::MorphismClass::of(c, ascending_ids(r, "we", c.n_morphisms()));
    m.cof = lifting::MorphismClass::of(c, ascending_ids(r, "cof", c.n_morphisms()));
    m.fib = lifting::MorphismClass::of(c, ascending_ids(r, "fib", c.n_morphisms()));
    r.done();
    return m;
}

std::uint64_t category_content_hash(const fincat::FinCategory& c) {
    return fnv1a64(write_category(c));
}

std::uint64_t referenced_category_hash(const std::string& text) {
    Reader r(text);
    const int line = r.here();
    const auto toks = split(r.next("'class' or 'structure'"));
    if (toks.size() != 1 || (toks[0] != "class" && toks[0] != "structure"))
        throw ParseError(line, "expected 'class' or 'structure'");
    return hash_header(r);
}

}  // namespace modelkit::formats
