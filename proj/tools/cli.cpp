#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

namespace dvrhom::cli {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

bool is_unsigned(const std::string& s) {
    return !s.empty() && s.size() <= 9 && s.find_first_not_of("0123456789") == std::string::npos;
}

json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Digraph parse_edgelist(std::string_view source) {
    std::istringstream stream{std::string(source)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!n) {
            if (tokens.size() != 1 || !is_unsigned(tokens[0])) {
                throw InputError(where + "expected the vertex count, got '" + line + "'");
            }
            n = std::stoul(tokens[0]);
            continue;
        }
        if (tokens.size() != 2 || !is_unsigned(tokens[0]) || !is_unsigned(tokens[1])) {
            throw InputError(where + "expected 'u v', got '" + line + "'");
        }
        const auto u = std::stoul(tokens[0]), v = std::stoul(tokens[1]);
        if (u >= *n || v >= *n) {
            throw InputError(where + "edge (" + tokens[0] + "," + tokens[1] + ") is out of range for " +
                             std::to_string(*n) + " vertices");
        }
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!n) throw InputError("edgelist is empty: missing the vertex count");
    return Digraph::from_edge_list(*n, edges);
}

Digraph digraph_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("vertices")) throw InputError("digraph document needs a 'vertices' field");
    const auto& vs = doc.at("vertices");
    std::vector<std::string> labels;
    std::size_t n = 0;
    if (vs.is_number_unsigned()) {
        n = vs.get<std::size_t>();
    } else if (vs.is_array()) {
        for (const auto& v : vs) {
            if (v.is_string()) {
                labels.push_back(v.get<std::string>());
            } else if (v.is_number_integer()) {
                labels.push_back(std::to_string(v.get<long long>()));
            } else {
                throw InputError("vertex labels must be strings or integers");
            }
        }
        n = labels.size();
    } else {
        throw InputError("'vertices' must be a count or an array of labels");
    }
    std::map<std::string, Vertex> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!by_label.emplace(labels[i], static_cast<Vertex>(i)).second) {
            throw InputError("duplicate vertex label '" + labels[i] + "'");
        }
    }
    auto endpoint = [&](const json& e, std::size_t index) -> Vertex {
        if (e.is_string()) {
            auto it = by_label.find(e.get<std::string>());
            if (it == by_label.end()) throw InputError("edge " + std::to_string(index) + ": unknown vertex label '" + e.get<std::string>() + "'");
            return it->second;
        }
        if (e.is_number_unsigned()) {
            const auto v = e.get<std::uint64_t>();
            if (v >= n) throw InputError("edge " + std::to_string(index) + ": vertex " + std::to_string(v) + " out of range");
            return static_cast<Vertex>(v);
        }
        throw InputError("edge " + std::to_string(index) + ": endpoints must be labels or non-negative indices");
    };
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        const auto& es = doc.at("edges");
        if (!es.is_array()) throw InputError("'edges' must be an array");
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (!es[i].is_array() || es[i].size() != 2) throw InputError("edge " + std::to_string(i) + " must be a pair");
            edges.emplace_back(endpoint(es[i][0], i), endpoint(es[i][1], i));
        }
    }
    return Digraph::from_edge_list(n, edges, std::move(labels));
}

}  // namespace

SimplicialComplex parse_complex(const json& doc) {
    if (!doc.is_object() || !doc.contains("simplices") || !doc.at("simplices").is_array()) {
        throw InputError("complex document needs a 'simplices' array");
    }
    std::vector<Simplex> simplices;
    std::size_t index = 0;
    for (const auto& s : doc.at("simplices")) {
        auto ids = [&](const char* key) {
            std::vector<Vertex> out;
            if (!s.contains(key)) return out;
            for (const auto& v : s.at(key)) {
                if (!v.is_number_unsigned()) {
                    throw InputError("simplex " + std::to_string(index) + ": '" + key + "' must hold vertex indices");
                }
                out.push_back(v.get<Vertex>());
            }
            return out;
        };
        auto verts = ids("verts");
        if (verts.empty()) throw InputError("simplex " + std::to_string(index) + " has no vertices");
        simplices.push_back({VertexSet(std::move(verts)), ids("witness")});
        ++index;
    }
    return SimplicialComplex::from_simplices(std::move(simplices), false);
}

Digraph parse_digraph(std::string_view source, InputFormat format) {
    auto input = parse_input(source, format);
    if (auto* g = std::get_if<Digraph>(&input)) return std::move(*g);
    throw InputError("expected a digraph document, got a simplicial complex");
}

Input parse_input(std::string_view source, InputFormat format) {
    if (format == InputFormat::automatic) {
        const auto text = trim(source);
        format = !text.empty() && text.front() == '{' ? InputFormat::json : InputFormat::edgelist;
    }
    if (format == InputFormat::edgelist) return parse_edgelist(source);
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed json: ") + e.what());
    }
    try {
        if (doc.is_object() && doc.contains("simplices")) return parse_complex(doc);
        return digraph_from_json(doc);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

json digraph_to_json(const Digraph& g) {
    json vertices = json::array();
    for (Vertex v = 0; v < g.size(); ++v) vertices.push_back(g.label(v));
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
    return {{"vertices", vertices}, {"edges", edges}};
}

json complex_to_json(const SimplicialComplex& k) {
    json simplices = json::array();
    k.for_each([&](const Simplex& s) { simplices.push_back({{"verts", s.vertices.members()}, {"witness", s.witness}}); });
    return {{"schema", kSchema}, {"f_vector", f_vector(k)}, {"simplices", simplices}, {"truncated", k.truncated()}};
}

json homology_to_json(const Homology& h) {
    json groups = json::array();
    for (std::size_t n = 0; n < h.groups.size(); ++n) {
        json torsion = json::array();
        for (const auto& t : h.groups[n].torsion) torsion.push_back(integer_json(t));
        groups.push_back({{"dim", n}, {"betti", h.groups[n].betti}, {"torsion", torsion}});
    }
    return {{"schema", kSchema}, {"groups", groups}, {"reduced", h.reduced}, {"truncated", h.truncated}};
}

std::string input_digest(const Input& input) {
    json canonical;
    if (const auto* g = std::get_if<Digraph>(&input)) {
        canonical = {{"n", g->size()}, {"edges", g->edges()}};
    } else {
        json simplices = json::array();
        std::get<SimplicialComplex>(input).for_each([&](const Simplex& s) { simplices.push_back(s.vertices.members()); });
        canonical = {{"simplices", simplices}};
    }
    const std::string text = canonical.dump();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

namespace {

struct Options {
    std::string in_path;
    std::string out_path;
    std::string format = "auto";

    std::string gen_kind;
    std::size_t n = 0;
    std::size_t m = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::string which = "left";
    std::string points;

    std::string coeff = "z";
    bool reduced = false;
    std::optional<std::size_t> max_dim;
    std::string subset;
    std::string basepoint;
    std::size_t samples = 1000;
    std::string delta = "1/100";
    std::string mode = "interior";
};

InputFormat to_format(const std::string& s) {
    if (s == "json") return InputFormat::json;
    if (s == "edgelist") return InputFormat::edgelist;
    return InputFormat::automatic;
}

const Digraph& require_digraph(const Input& input, const std::string& command) {
    if (const auto* g = std::get_if<Digraph>(&input)) return *g;
    throw PreconditionError("'" + command + "' needs a digraph, not an abstract complex");
}

Vertex resolve_vertex(const Input& input, const std::string& token) {
    const auto t = trim(token);
    if (const auto* g = std::get_if<Digraph>(&input)) {
        for (Vertex v = 0; v < g->size(); ++v) {
            if (g->has_labels() && g->label(v) == t) return v;
        }
        if (is_unsigned(t) && std::stoul(t) < g->size()) return static_cast<Vertex>(std::stoul(t));
        throw InputError("unknown vertex label '" + t + "'");
    }
    const auto& k = std::get<SimplicialComplex>(input);
    if (is_unsigned(t) && k.contains(VertexSet{static_cast<Vertex>(std::stoul(t))})) return static_cast<Vertex>(std::stoul(t));
    throw InputError("unknown vertex '" + t + "'");
}

VertexSet resolve_subset(const Input& input, const std::string& list) {
    std::vector<Vertex> vs;
    std::stringstream stream(list);
    for (std::string token; std::getline(stream, token, ',');) {
        if (!trim(token).empty()) vs.push_back(resolve_vertex(input, token));
    }
    if (vs.empty()) throw InputError("--subset must name at least one vertex");
    return VertexSet(std::move(vs));
}

SimplicialComplex cap_complex(const SimplicialComplex& k, std::optional<std::size_t> max_dim) {
    if (!max_dim || static_cast<std::ptrdiff_t>(*max_dim) >= k.dimension()) return k;
    std::vector<Simplex> kept;
    k.for_each([&](const Simplex& s) {
        if (s.dimension() <= *max_dim) kept.push_back(s);
    });
    auto capped = SimplicialComplex::from_simplices(std::move(kept), false);
    return capped;
}

/// The complex of the input together with its pair subcomplex, if any.
SimplicialComplex complex_of(const Input& input, std::optional<std::size_t> max_dim) {
    if (const auto* g = std::get_if<Digraph>(&input)) return build_complex(*g, max_dim);
    return cap_complex(std::get<SimplicialComplex>(input), max_dim);
}

bool truncated_of(const Input& input, const SimplicialComplex& k, std::optional<std::size_t> max_dim) {
    if (std::holds_alternative<Digraph>(input)) return k.truncated();
    const auto& full = std::get<SimplicialComplex>(input);
    return full.truncated() || (max_dim && static_cast<std::ptrdiff_t>(*max_dim) < full.dimension());
}

SimplicialComplex subcomplex_of(const Input& input, const SimplicialComplex& k, const VertexSet& a) {
    if (const auto* g = std::get_if<Digraph>(&input)) return induced_complex(*g, a);
    return full_subcomplex(k, a);
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class q(s, 10);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational '" + s + "'");
    }
}

SampleMode parse_mode(const std::string& s) {
    if (s == "interior") return SampleMode::interior;
    if (s == "barycenter") return SampleMode::barycenter;
    if (s == "boundary") return SampleMode::boundary;
    if (s == "mixed") return SampleMode::mixed;
    throw InputError("unknown sampling mode '" + s + "'");
}

json point_json(const RealizationPoint& p) {
    json coords = json::array();
    for (const auto& t : p.coords) coords.push_back(t.get_str());
    return {{"carrier", p.carrier}, {"coords", coords}};
}

json les_json(const LesReport& r) {
    json nodes = json::array();
    for (const auto& n : r.nodes) {
        nodes.push_back({{"group", n.label},
                         {"degree", n.degree},
                         {"dimension", n.dimension},
                         {"incoming_rank", n.incoming_rank},
                         {"kernel_dimension", n.kernel_dimension()},
                         {"composite_zero", n.composite_zero},
                         {"exact", n.exact()}});
    }
    return {{"field", r.field}, {"nodes", nodes}, {"exact", r.exact()}};
}

json group_json(const HomologyGroup& h) {
    json torsion = json::array();
    for (const auto& t : h.torsion) torsion.push_back(integer_json(t));
    return {{"betti", h.betti}, {"torsion", torsion}};
}

std::string read_all(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json generate(const Options& o, json& report) {
    Digraph g;
    if (o.gen_kind == "circulant") {
        g = circulant(o.n, o.m);
    } else if (o.gen_kind == "digital") {
        std::vector<LatticePoint> pts;
        if (o.points.empty() || o.points == "sphere") {
            pts = digital_sphere_points();
        } else {
            std::stringstream stream(o.points);
            for (std::string point; std::getline(stream, point, ';');) {
                LatticePoint lp;
                std::stringstream coords(point);
                for (std::string c; std::getline(coords, c, ',');) {
                    try {
                        lp.push_back(std::stoll(trim(c)));
                    } catch (const std::exception&) {
                        throw InputError("malformed lattice coordinate '" + c + "'");
                    }
                }
                pts.push_back(std::move(lp));
            }
            if (pts.empty()) throw InputError("--points names no lattice points");
        }
        g = digital_image(pts);
    } else if (o.gen_kind == "figure") {
        static const std::map<std::string, Figure> figures{
            {"left", Figure::left}, {"middle", Figure::middle}, {"right", Figure::right}};
        g = figure_digraph(figures.at(o.which));
    } else {
        g = random_digraph(o.n, o.p, o.seed);
        report["seed"] = o.seed;
    }
    return digraph_to_json(g);
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Homology and weak-equivalence tooling for finite digraphs as closure spaces", "dvrhom"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--in", o.in_path, "Read input from a file instead of standard input");
    app.add_option("--out", o.out_path, "Write the report to a file instead of standard output");
    app.add_option("--format", o.format, "Input format")->check(CLI::IsMember({"auto", "json", "edgelist"}));

    auto* gen = app.add_subcommand("gen", "Emit a generated digraph as json");
    gen->require_subcommand(1);
    auto* gen_circ = gen->add_subcommand("circulant", "(Z_n, c_m)");
    gen_circ->add_option("--n", o.n)->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    gen_circ->add_option("--m", o.m)->required();
    auto* gen_digital = gen->add_subcommand("digital", "Digital image with max-norm adjacency");
    gen_digital->add_option("--points", o.points, "'x,y,z;...' or 'sphere' (default)");
    auto* gen_fig = gen->add_subcommand("figure", "Four-vertex fixture digraphs");
    gen_fig->add_option("--which", o.which)->check(CLI::IsMember({"left", "middle", "right"}));
    auto* gen_rand = gen->add_subcommand("random", "Seeded random digraph");
    gen_rand->add_option("--n", o.n)->required()->check(CLI::Range(std::size_t{0}, std::size_t{1} << 16));
    gen_rand->add_option("--p", o.p)->required()->check(CLI::Range(0.0, 1.0));
    gen_rand->add_option("--seed", o.seed);
    for (auto* sub : {gen_circ, gen_digital, gen_fig, gen_rand}) {
        sub->callback([&o, sub] { o.gen_kind = sub->get_name(); });
    }

    auto* complex_cmd = app.add_subcommand("complex", "Directed Vietoris-Rips complex");
    complex_cmd->add_option("--max-dim", o.max_dim);
    auto* homology_cmd = app.add_subcommand("homology", "Homology of the complex");
    homology_cmd->add_option("--coeff", o.coeff, "z, q or zp:<p>");
    homology_cmd->add_flag("--reduced", o.reduced);
    homology_cmd->add_option("--max-dim", o.max_dim);
    auto* pair_cmd = app.add_subcommand("pair", "Relative homology of (X, A)");
    pair_cmd->add_option("--subset", o.subset, "Comma-separated vertices of A")->required();
    auto* les_cmd = app.add_subcommand("les-check", "Exactness of the long exact sequence of (X, A)");
    les_cmd->add_option("--subset", o.subset, "Comma-separated vertices of A")->required();
    les_cmd->add_option("--coeff", o.coeff, "q or zp:<p>");
    auto* pi1_cmd = app.add_subcommand("pi1", "Edge-path group presentation");
    pi1_cmd->add_option("--basepoint", o.basepoint);
    auto* certify_cmd = app.add_subcommand("fx-certify", "Combinatorial continuity certificate for f_X");
    auto* sample_cmd = app.add_subcommand("fx-sample", "Sampled continuity check for f_X");
    sample_cmd->add_option("--samples", o.samples);
    sample_cmd->add_option("--delta", o.delta, "Rational l1 radius, e.g. 1/1000");
    sample_cmd->add_option("--seed", o.seed);
    sample_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"interior", "barycenter", "boundary", "mixed"}));

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "dvrhom: " << e.what() << "\n" << app.help();
        return 2;
    }

    const auto* command = app.get_subcommands().front();
    json report;
    report["schema"] = kSchema;
    report["tool_version"] = kToolVersion;
    std::string echo = command->get_name();
    if (command == gen) echo += " " + o.gen_kind;
    report["command"] = echo;

    int code = 0;
    try {
        if (command == gen) {
            report.update(generate(o, report));
        } else {
            std::string text;
            if (o.in_path.empty()) {
                text = read_all(in);
            } else {
                std::ifstream file(o.in_path);
                if (!file) throw InputError("cannot open input file '" + o.in_path + "'");
                text = read_all(file);
            }
            const Input input = parse_input(text, to_format(o.format));
            report["input_digest"] = input_digest(input);

            if (command == complex_cmd) {
                const auto k = complex_of(input, o.max_dim);
                report.update(complex_to_json(k));
                report["truncated"] = truncated_of(input, k, o.max_dim);
            } else if (command == homology_cmd) {
                const auto k = complex_of(input, o.max_dim);
                Homology h;
                h.reduced = o.reduced;
                h.truncated = truncated_of(input, k, o.max_dim);
                if (o.coeff == "z") {
                    h.groups = homology_integer(k).groups;
                } else {
                    for (auto b : homology_field(k, parse_coefficients(o.coeff))) h.groups.push_back({b, {}});
                }
                if (o.reduced && !h.groups.empty()) h.groups[0].betti -= 1;
                report.update(homology_to_json(h));
                report["coeff"] = o.coeff;
            } else if (command == pair_cmd) {
                const auto k = complex_of(input, std::nullopt);
                const auto a = resolve_subset(input, o.subset);
                report.update(homology_to_json(relative_homology(k, subcomplex_of(input, k, a))));
                report["subset"] = a.members();
            } else if (command == les_cmd) {
                if (o.coeff == "z") throw InputError("les-check needs field coefficients: q or zp:<p>");
                const auto k = complex_of(input, std::nullopt);
                const auto a = resolve_subset(input, o.subset);
                report.update(les_json(les_exactness_check(k, subcomplex_of(input, k, a), parse_coefficients(o.coeff))));
                report["subset"] = a.members();
            } else if (command == pi1_cmd) {
                const auto k = complex_of(input, 2);
                const Vertex base = o.basepoint.empty() ? k.vertex_set().members().front() : resolve_vertex(input, o.basepoint);
                const auto p = pi1_presentation(k, base);
                json relators = json::array();
                for (const auto& r : p.relators) relators.push_back(p.format_word(r));
                const auto ab = abelianization(p);
                const auto h = homology_integer(k);
                const HomologyGroup h1 = h.groups.size() > 1 ? h.groups[1] : HomologyGroup{};
                report["basepoint"] = base;
                report["generators"] = p.generators;
                report["relators"] = relators;
                report["abelianization"] = group_json(ab);
                report["h1"] = group_json(h1);
                report["consistent"] = ab == h1;
            } else if (command == certify_cmd) {
                const auto& g = require_digraph(input, command->get_name());
                const auto k = build_complex(g);
                const auto c = continuity_certificate(k, g);
                report["passed"] = c.passed();
                report["triples_checked"] = c.triples_checked;
                if (c.failure) {
                    report["counterexample"] = {{"simplex", c.failure->simplex.members()},
                                                {"face", c.failure->face.members()},
                                                {"tie", c.failure->tie.members()},
                                                {"image", c.failure->image},
                                                {"violator", c.failure->violator}};
                }
            } else if (command == sample_cmd) {
                const auto& g = require_digraph(input, command->get_name());
                const auto k = build_complex(g);
                SamplingOptions so{o.samples, parse_rational(o.delta), o.seed, parse_mode(o.mode)};
                const auto r = sampled_continuity_check(k, g, so);
                json failures = json::array();
                for (const auto& f : r.failures) {
                    failures.push_back({{"index", f.index},
                                        {"point", point_json(f.point)},
                                        {"perturbed", point_json(f.perturbed)},
                                        {"image", f.image},
                                        {"perturbed_image", f.perturbed_image},
                                        {"vanishing_delta", f.vanishing_delta ? json(f.vanishing_delta->get_str()) : json()}});
                }
                report["seed"] = o.seed;
                report["delta"] = so.delta.get_str();
                report["mode"] = o.mode;
                report["samples"] = r.samples;
                report["skipped"] = r.skipped;
                report["failure_count"] = r.failures.size();
                report["failures"] = failures;
            }
        }
    } catch (const Error& e) {
        report["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        code = 1;
    }

    const std::string text = report.dump(2) + "\n";
    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out_path);
        if (!file) {
            err << "dvrhom: cannot open output file '" << o.out_path << "'\n";
            return 1;
        }
        file << text;
    }
    if (code != 0) err << "dvrhom: " << report["error"]["message"].get<std::string>() << "\n";
    return code;
}

}  // namespace dvrhom::cli
