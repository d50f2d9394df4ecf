#include "acceptance.hpp"
#include "serialize.hpp"

#include "circa/oracle.hpp"
#include "circa/split.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>

using namespace circa;
using io::json;

namespace {

enum class Format { Text, Dot, JsonLines };

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw Usage("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

Graph load_graph(const std::string& path) {
    std::istringstream in(slurp(path));
    return read_graph(in);
}

std::function<std::string(int)> namer(const Graph& g) {
    return [&g](int v) { return g.name(v); };
}

std::function<int(const std::string&)> ids(const Graph& g) {
    auto table = std::make_shared<std::map<std::string, int>>();
    for (int v = 0; v < g.n; ++v) (*table)[g.name(v)] = v;
    return [table](const std::string& s) {
        auto it = table->find(s);
        if (it == table->end()) fail(Errc::Malformed, "unknown vertex '" + s + "'");
        return it->second;
    };
}

Bits full(int n) {
    Bits b(n);
    b.set();
    return b;
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

void need_text_or_json(Format f, const char* cmd) {
    if (f == Format::Dot) throw Usage(std::string(cmd) + ": dot output is only available for mdtree and tnm");
}

std::string chord_string(const ChordWord& w, const Graph& g) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + g.name(w[i]);
    return out;
}

std::string slot_string(const std::vector<std::pair<int, int>>& pi) {
    std::string out;
    for (size_t i = 0; i < pi.size(); ++i) out += (i ? " " : "") + ("K" + std::to_string(pi[i].first) + "^" + std::to_string(pi[i].second));
    return out;
}

void print_slot_order(const SlotOrder& so, const Graph& g) {
    for (size_t c = 0; c < so.classes.size(); ++c) {
        const Metaedge& me = so.classes[c];
        Word a, b;
        for (int v : me.verts) a.push_back(me.letter(v, 0)), b.push_back(me.letter(v, 1));
        std::cout << "K" << c << ": " << word_string(a, namer(g)) << " | " << word_string(b, namer(g)) << '\n';
    }
    for (int m = 0; m < 2; ++m) std::cout << "pi" << m << ": " << slot_string(so.pi[m]) << '\n';
}

/// Slots of a T_NM module whose pattern holds a node, for both slot orders.
void print_patterns(const TNMTree& t, int module, const Graph& g) {
    const TModule& mod = t.modules[module];
    for (int m = 0; m < 2; ++m) {
        const SlotPatterns& sp = mod.pat[m];
        for (size_t k = 0; k < sp.slot.size(); ++k) {
            const Pattern& p = sp.slot[k];
            if (p.nodes.empty()) continue;
            std::cout << "  pi" << m << " K" << k / 2 << "." << k % 2 << ":";
            for (size_t i = 0; i < p.parts.size(); ++i) {
                std::cout << " [" << word_string(p.parts[i], namer(g)) << "]";
                if (i < p.nodes.size()) std::cout << ' ' << t.node_name(p.nodes[i]);
            }
            std::cout << '\n';
        }
        for (size_t k = 0; k < sp.gap.size(); ++k)
            if (sp.gap[k] >= 0) std::cout << "  pi" << m << " gap " << k << ": " << t.node_name(sp.gap[k]) << '\n';
    }
}

// ---------------------------------------------------------------------------------------------

int cmd_matrix(Format f, const std::string& path) {
    need_text_or_json(f, "matrix");
    Graph g = load_graph(path);
    Structure s = build_matrix(g);
    if (f == Format::JsonLines)
        emit(io::to_json(s, g));
    else
        print_matrix(std::cout, g, s);
    return 0;
}

int cmd_normalize(Format f, const std::string& path, bool word) {
    need_text_or_json(f, "normalize");
    std::istringstream in(slurp(path));
    std::vector<std::string> names;
    ArcModel psi = read_arc_model(in, &names);
    Graph g = arc_graph(psi);
    g.labels = names;
    Structure s = build_matrix(g);
    ArcModel norm = normalize(psi, s.m);
    if (f == Format::JsonLines) {
        json j = io::to_json(norm, namer(g));
        j["type"] = "arcs";
        emit(j);
        if (word) emit({{"type", "word"}, {"word", io::to_json(straighten(norm, s), namer(g))}});
    } else {
        write_arc_model(std::cout, norm, namer(g));
        if (word) std::cout << word_string(straighten(norm, s), namer(g)) << '\n';
    }
    return 0;
}

int cmd_chord(Format f, const std::string& path, bool all) {
    need_text_or_json(f, "chord");
    Graph g = load_graph(path);
    std::vector<ChordWord> models = all ? all_chord_models(g) : std::vector<ChordWord>{chord_model(g)};
    for (const ChordWord& w : models) {
        if (f == Format::JsonLines) {
            json toks = json::array();
            for (int v : w) toks.push_back(g.name(v));
            emit({{"type", "chord"}, {"word", toks}});
        } else {
            std::cout << chord_string(w, g) << '\n';
        }
    }
    return 0;
}

int cmd_mdtree(Format f, const std::string& path, bool overlap) {
    Graph g = load_graph(path);
    Graph target = g;
    if (overlap) {
        target = build_matrix(g).ov;
        target.labels = g.labels;
    }
    MDTree t = md_tree(target, full(target.n));
    if (f == Format::JsonLines)
        emit(io::to_json(t, target));
    else if (f == Format::Dot)
        write_md_dot(std::cout, t, target);
    else
        write_md_text(std::cout, t, target);
    return 0;
}

int cmd_slots(Format f, const std::string& path) {
    need_text_or_json(f, "slots");
    Graph g = load_graph(path);
    Structure s = build_matrix(g);
    MDTree md = md_tree(s.ov, full(s.n));
    switch (md.root().kind) {
    case ModKind::Prime: {
        SlotOrder so = slot_order(s, full(s.n));
        if (f == Format::JsonLines)
            emit(io::to_json(so, g));
        else
            print_slot_order(so, g);
        return 0;
    }
    case ModKind::Parallel: {
        TNMTree t = build_tnm(s);
        for (size_t a = 0; a < t.modules.size(); ++a) {
            const TModule& mod = t.modules[a];
            if (f == Format::JsonLines) {
                json j = io::to_json(mod.so, g);
                j["module"] = a;
                emit(j);
                continue;
            }
            std::cout << "module " << a << " (" << kind_name(mod.kind) << "):\n";
            print_slot_order(mod.so, g);
        }
        return 0;
    }
    default: throw Usage("slots: the overlap graph has a " + std::string(kind_name(md.root().kind)) + " root; slot orders need a prime or disconnected overlap graph");
    }
}

int cmd_tnm(Format f, const std::string& path) {
    Graph g = load_graph(path);
    Structure s = build_matrix(g);
    TNMTree t = build_tnm(s);
    if (f == Format::JsonLines) {
        emit(io::to_json(t, g));
    } else if (f == Format::Dot) {
        std::cout << tnm_dot(t, g);
    } else {
        for (size_t a = 0; a < t.modules.size(); ++a) {
            std::cout << "module " << a << " " << kind_name(t.modules[a].kind) << " {";
            bool first = true;
            for (int v : to_list(t.modules[a].set)) std::cout << (first ? "" : ",") << g.name(v), first = false;
            std::cout << "} nodes:";
            for (int nd : t.modules[a].nodes) std::cout << ' ' << t.node_name(nd);
            std::cout << '\n';
            print_slot_order(t.modules[a].so, g);
            print_patterns(t, static_cast<int>(a), g);
        }
    }
    return 0;
}

int cmd_iso(Format f, const std::string& p1, const std::string& p2, bool witness, bool oracle_check, bool paranoid) {
    need_text_or_json(f, "iso");
    Graph g = load_graph(p1), h = load_graph(p2);
    IsoResult r = isomorphic(g, h, {paranoid, 9});
    if (oracle_check && brute_iso(g, h).has_value() != r.isomorphic) fail(Errc::Internal, "verdict disagrees with the brute-force oracle");
    if (f == Format::JsonLines) {
        json j = io::to_json(r, g, h);
        if (!witness) j.erase("witness");
        if (oracle_check) j["oracle_agrees"] = true;
        emit(j);
    } else {
        std::cout << (r.isomorphic ? "isomorphic" : "not isomorphic") << " (" << r.reason << ")\n";
        if (witness && r.isomorphic)
            for (int v = 0; v < g.n; ++v) std::cout << g.name(v) << " -> " << h.name(r.witness[v]) << '\n';
        if (oracle_check) std::cout << "brute-force oracle agrees\n";
    }
    return r.isomorphic ? 0 : 1;
}

int cmd_oracle_enum(Format f, const std::string& path, int bound) {
    need_text_or_json(f, "oracle enum");
    Graph g = load_graph(path);
    Structure s = build_matrix(g);
    for (const Word& w : enumerate_conformal(s, full(s.n), bound)) {
        if (f == Format::JsonLines)
            emit({{"type", "model"}, {"word", io::to_json(w, namer(g))}});
        else
            std::cout << word_string(w, namer(g)) << '\n';
    }
    return 0;
}

int cmd_oracle_iso(Format f, const std::string& p1, const std::string& p2) {
    need_text_or_json(f, "oracle iso");
    Graph g = load_graph(p1), h = load_graph(p2);
    auto m = brute_iso(g, h);
    if (f == Format::JsonLines) {
        json j = {{"type", "iso"}, {"isomorphic", m.has_value()}, {"reason", "brute force"}};
        if (m) {
            json w = json::object();
            for (int v = 0; v < g.n; ++v) w[g.name(v)] = h.name((*m)[v]);
            j["witness"] = w;
        }
        emit(j);
    } else {
        std::cout << (m ? "isomorphic" : "not isomorphic") << " (brute force)\n";
        if (m)
            for (int v = 0; v < g.n; ++v) std::cout << g.name(v) << " -> " << h.name((*m)[v]) << '\n';
    }
    return m ? 0 : 1;
}

int cmd_oracle_gen(Format f, uint64_t seed, int n, double span, bool keep, bool graph) {
    need_text_or_json(f, "oracle gen");
    Instance inst = random_circular_arc({seed, n, span, !keep});
    auto name = [](int v) { return std::to_string(v); };
    if (f == Format::JsonLines) {
        json j = graph ? io::to_json(inst.graph) : io::to_json(inst.model, name);
        j["type"] = graph ? "graph" : "arcs";
        emit(j);
    } else if (graph) {
        write_graph(std::cout, inst.graph);
    } else {
        write_arc_model(std::cout, inst.model, name);
    }
    return 0;
}

int cmd_selftest(Format f, int max_n) {
    need_text_or_json(f, "selftest");
    acceptance::Options opt;
    opt.max_n = max_n;
    opt.on_result = [f](const acceptance::CriterionResult& r) {
        if (f == Format::JsonLines)
            emit({{"type", "criterion"}, {"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        else
            std::cout << acceptance::format(r) << std::endl;
    };
    auto results = acceptance::run(opt);
    bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circa: normalized models and isomorphism of circular-arc graphs"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "dot", "json-lines"}));

    std::string a, b;
    bool word = false, all = false, overlap = false, witness = false, oracle_check = false, paranoid = false, keep = false, graph = false;
    int bound = 9, max_n = 10, n = 8;
    uint64_t seed = 1;
    double span = 0.5;

    auto* matrix = app.add_subcommand("matrix", "Intersection matrix and side sets of a graph");
    matrix->add_option("graph", a, "Graph file or -")->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "Normalize an arc model");
    normalize_cmd->add_option("arcs", a, "Arc model file or -")->required();
    normalize_cmd->add_flag("--word", word, "Also print the straightened conformal model");

    auto* chord = app.add_subcommand("chord", "Chord model of a circle graph");
    chord->add_option("graph", a, "Graph file or -")->required();
    chord->add_flag("--all", all, "Every chord model up to rotation");

    auto* mdtree = app.add_subcommand("mdtree", "Modular decomposition tree");
    mdtree->add_option("graph", a, "Graph file or -")->required();
    mdtree->add_flag("--overlap", overlap, "Decompose the overlap graph instead of the graph");

    auto* slots = app.add_subcommand("slots", "Consistent decomposition and slot orders");
    slots->add_option("graph", a, "Graph file or -")->required();

    auto* tnm = app.add_subcommand("tnm", "T_NM tree of a graph with a disconnected overlap graph");
    tnm->add_option("graph", a, "Graph file or -")->required();

    auto* iso = app.add_subcommand("iso", "Decide isomorphism of two circular-arc graphs (exit 0 yes, 1 no, 2 error)");
    iso->add_option("g1", a, "First graph file or -")->required();
    iso->add_option("g2", b, "Second graph file or -")->required();
    iso->add_flag("--witness", witness, "Print the vertex map");
    iso->add_flag("--oracle-check", oracle_check, "Cross-check the verdict against brute force");
    iso->add_flag("--paranoid", paranoid, "Try every pin and root and require equal verdicts");

    auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
    oracle->require_subcommand(1);
    auto* oenum = oracle->add_subcommand("enum", "Every conformal model by exhaustive search");
    oenum->add_option("graph", a, "Graph file or -")->required();
    oenum->add_option("--bound", bound, "Largest vertex count allowed");
    auto* oiso = oracle->add_subcommand("iso", "Brute-force isomorphism (exit 0 yes, 1 no)");
    oiso->add_option("g1", a, "First graph file or -")->required();
    oiso->add_option("g2", b, "Second graph file or -")->required();
    auto* ogen = oracle->add_subcommand("gen", "Random circular-arc model");
    ogen->add_option("--seed", seed, "Random seed");
    ogen->add_option("--max-n", n, "Number of arcs drawn")->check(CLI::Range(0, 100000));
    ogen->add_option("--max-span", span, "Largest arc length as a fraction of the circle")->check(CLI::Range(0.0, 1.0));
    ogen->add_flag("--keep-twins", keep, "Keep twins and universal vertices");
    ogen->add_flag("--graph", graph, "Print the graph instead of the model");

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--max-n", max_n, "Cap on random instance sizes")->check(CLI::Range(5, 10));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    Format f = format == "dot" ? Format::Dot : format == "json-lines" ? Format::JsonLines : Format::Text;
    try {
        if (*matrix) return cmd_matrix(f, a);
        if (*normalize_cmd) return cmd_normalize(f, a, word);
        if (*chord) return cmd_chord(f, a, all);
        if (*mdtree) return cmd_mdtree(f, a, overlap);
        if (*slots) return cmd_slots(f, a);
        if (*tnm) return cmd_tnm(f, a);
        if (*iso) return cmd_iso(f, a, b, witness, oracle_check, paranoid);
        if (*oenum) return cmd_oracle_enum(f, a, bound);
        if (*oiso) return cmd_oracle_iso(f, a, b);
        if (*ogen) return cmd_oracle_gen(f, seed, n, span, keep, graph);
        if (*selftest) return cmd_selftest(f, max_n);
    } catch (const Error& e) {
        std::cerr << "circa: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "circa: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
