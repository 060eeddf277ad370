// cq_main.cpp
// Command-line entry point. Exit codes: 0 ok, 2 parse error, 3 cap hit /
// indeterminate, 4 structural check failure, 5 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cq/errors.hpp"
#include "cq/mutation.hpp"
#include "cq/quiver.hpp"
#include "cq/relations.hpp"
#include "cq/tilted.hpp"
#include "cq/triangulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitCheckFailed = 4;
constexpr int kExitInvalid = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cq::parse_error("cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{';
    }
    return false;
}

cq::Quiver load_quiver(const std::string& path) {
    std::string text = read_file(path);
    return looks_like_json(text) ? cq::quiver_from_json_text(text)
                                 : cq::parse_quiver(text);
}

cq::AlgebraPresentation load_presentation(const std::string& path) {
    std::string text = read_file(path);
    return looks_like_json(text) ? cq::presentation_from_json_text(text)
                                 : cq::parse_presentation(text);
}

cq::QuiverFormat parse_format(const std::string& name) {
    if (name == "text") return cq::QuiverFormat::text;
    if (name == "json") return cq::QuiverFormat::json;
    if (name == "dot") return cq::QuiverFormat::dot;
    throw cq::invalid_input("unknown format '" + name + "' (expected text|json|dot)");
}

// Vertex reference: label first, then a raw 0-based id.
int resolve_vertex(const cq::Quiver& q, const std::string& ref) {
    int v = q.vertex_by_label(ref);
    if (v >= 0) return v;
    try {
        size_t pos = 0;
        int id = std::stoi(ref, &pos);
        if (pos == ref.size() && id >= 0 && id < q.num_vertices()) return id;
    } catch (...) {
    }
    throw cq::invalid_input("no vertex labeled '" + ref + "' (and not a valid id)");
}

void print_diag(const std::string& msg) {
    const char* color = std::getenv("CQ_COLOR");
    bool use_color = color && (std::string(color) == "1" || std::string(color) == "always");
    if (use_color)
        std::cerr << "\033[31merror:\033[0m " << msg << "\n";
    else
        std::cerr << "error: " << msg << "\n";
}

// Catalan numbers by the additive recurrence; used by oracle-a so the count
// check does not depend on the enumeration being correct.
long long catalan(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
}

struct Args {
    std::string file;
    std::string format = "json";
    std::string at;
    long long max_members = 100000;
    long long max_entry = 12;
    long long max_states = 100000;
    int nilpotency_cap = 24;
    bool count_only = false;
    bool check = false;
    bool canonical = false;
    std::string dot_out;
    int ngon = 0;
    bool census = false;
    bool check_flips = false;
    std::string dir;
};

int cmd_mutate(const Args& a) {
    cq::Quiver q = load_quiver(a.file);
    cq::Quiver r = cq::mutate(q, resolve_vertex(q, a.at));
    std::cout << cq::serialize_quiver(r, parse_format(a.format));
    return kExitOk;
}

int cmd_class(const Args& a) {
    cq::Quiver q = load_quiver(a.file);
    cq::MutationClassOptions opts;
    opts.max_members = a.max_members;
    opts.max_entry = a.max_entry;
    cq::MutationClass c = cq::mutation_class(q, opts);
    if (a.count_only) {
        std::cout << c.members.size() << "\n";
        return c.truncated ? kExitIndeterminate : kExitOk;
    }
    json j;
    j["count"] = c.members.size();
    j["truncated"] = c.truncated;
    if (c.truncated) j["truncation_reason"] = c.truncation_reason;
    j["members"] = json::array();
    for (size_t i = 0; i < c.members.size(); ++i) {
        json m;
        m["quiver"] = json::parse(cq::serialize_quiver(c.members[i], cq::QuiverFormat::json));
        m["witness"] = c.witnesses[i];
        j["members"].push_back(std::move(m));
    }
    std::cout << j.dump(2) << "\n";
    return c.truncated ? kExitIndeterminate : kExitOk;
}

int cmd_type(const Args& a) {
    cq::Quiver q = load_quiver(a.file);
    auto t = cq::dynkin_type_of(q, a.max_members);
    std::cout << (t ? t->to_string() : "none") << "\n";
    return kExitOk;
}

int cmd_dpa(const Args& a) {
    cq::Quiver q = load_quiver(a.file);
    bool ok = cq::is_double_path_avoiding(q, a.max_states);
    json j;
    j["double_path_avoiding"] = ok;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_relations(const Args& a) {
    cq::Quiver q = load_quiver(a.file);
    cq::AlgebraPresentation p = cq::synthesize_relations(q);
    cq::nilpotency_bound(p, a.nilpotency_cap);
    std::cout << cq::serialize_presentation(p, parse_format(a.format));
    return kExitOk;
}

int cmd_from_tilted(const Args& a) {
    cq::AlgebraPresentation p = load_presentation(a.file);
    cq::ClusterTiltOutput o = cq::cluster_tilt(p, a.nilpotency_cap);

    if (!a.dot_out.empty()) {
        std::ofstream out(a.dot_out, std::ios::binary);
        if (!out) throw cq::invalid_input("cannot write '" + a.dot_out + "'");
        out << cq::serialize_cluster_tilt(o, cq::QuiverFormat::dot);
    }

    int rc = kExitOk;
    json checks;
    if (a.check) {
        cq::StructureReport rep = cq::check_structure(o);
        checks = json::array();
        for (const auto& c : rep.checks) {
            json cj;
            cj["name"] = c.name;
            cj["passed"] = c.passed;
            if (!c.passed) cj["detail"] = c.detail;
            checks.push_back(std::move(cj));
        }
        if (!rep.ok()) rc = kExitCheckFailed;
    }

    cq::QuiverFormat fmt = parse_format(a.format);
    if (a.canonical) {
        std::cout << cq::serialize_cluster_tilt_canonical(o);
    } else if (fmt == cq::QuiverFormat::json) {
        json j = json::parse(cq::serialize_cluster_tilt(o, fmt));
        if (a.check) j["checks"] = checks;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << cq::serialize_cluster_tilt(o, fmt);
        if (a.check)
            for (const auto& c : checks)
                std::cout << "# check " << (c["passed"].get<bool>() ? "pass" : "FAIL")
                          << ": " << c["name"].get<std::string>() << "\n";
    }
    return rc;
}

int cmd_oracle_a(const Args& a) {
    if (a.ngon < 4) throw cq::invalid_input("--ngon must be at least 4");
    int m = a.ngon;
    auto tris = cq::enumerate_triangulations(m);

    json j;
    j["ngon"] = m;
    j["diagonals"] = cq::diagonals_of(m).size();
    j["triangulations"] = tris.size();
    j["catalan"] = catalan(m - 2);
    bool ok = static_cast<long long>(tris.size()) == catalan(m - 2);

    if (a.census) {
        std::set<std::string> keys;
        for (const auto& t : tris) keys.insert(cq::canonical_key(cq::quiver_of(t)));
        cq::Quiver linear;
        for (int i = 0; i < m - 3; ++i) linear.add_vertex();
        for (int i = 0; i + 1 < m - 3; ++i)
            linear.add_arrow("a" + std::to_string(i), i, i + 1);
        std::set<std::string> class_keys;
        for (const auto& member : cq::mutation_class(linear).members)
            class_keys.insert(cq::canonical_key(member));
        j["distinct_quivers"] = keys.size();
        j["mutation_class_size"] = class_keys.size();
        j["census_matches_mutation_class"] = (keys == class_keys);
        ok = ok && keys == class_keys;
    }

    if (a.check_flips) {
        long long checked = 0, failed = 0;
        for (const auto& t : tris) {
            cq::Quiver qt = cq::quiver_of(t);
            for (size_t di = 0; di < t.diagonals.size(); ++di) {
                cq::Quiver flipped = cq::quiver_of(cq::flip(t, t.diagonals[di]));
                cq::Quiver mutated = cq::mutate(qt, static_cast<int>(di));
                ++checked;
                if (cq::canonical_key(flipped) != cq::canonical_key(mutated)) ++failed;
            }
        }
        j["flips_checked"] = checked;
        j["flips_failed"] = failed;
        ok = ok && failed == 0;
    }

    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_corpus(const Args& a) {
    if (!fs::is_directory(a.dir))
        throw cq::parse_error("corpus directory '" + a.dir + "' does not exist");

    std::vector<fs::path> cases;
    for (const auto& entry : fs::directory_iterator(a.dir))
        if (entry.path().extension() == ".tilted") cases.push_back(entry.path());
    std::sort(cases.begin(), cases.end());
    if (cases.empty())
        throw cq::parse_error("corpus directory '" + a.dir + "' has no .tilted cases");

    int passed = 0, failed = 0;
    for (const auto& path : cases) {
        std::string name = path.stem().string();
        std::string verdict;
        try {
            cq::AlgebraPresentation p = load_presentation(path.string());
            cq::ClusterTiltOutput o = cq::cluster_tilt(p, a.nilpotency_cap);
            cq::StructureReport rep = cq::check_structure(o);
            if (!rep.ok()) {
                for (const auto& c : rep.checks)
                    if (!c.passed) verdict = "structure check failed: " + c.name;
            } else {
                fs::path expected_path = path;
                expected_path.replace_extension(".expected.json");
                if (fs::exists(expected_path)) {
                    std::string expected = read_file(expected_path.string());
                    std::string actual = cq::serialize_cluster_tilt_canonical(o);
                    if (expected != actual)
                        verdict = "output differs from " + expected_path.filename().string();
                } else {
                    verdict = "missing " + expected_path.filename().string();
                }
            }
        } catch (const std::exception& e) {
            verdict = std::string("error: ") + e.what();
        }
        if (verdict.empty()) {
            ++passed;
            std::cout << name << ": PASS\n";
        } else {
            ++failed;
            std::cout << name << ": FAIL (" << verdict << ")\n";
        }
    }
    std::cout << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster-tilted algebras of Dynkin type: mutation, relation "
                 "synthesis, and the tilted-to-cluster-tilted construction"};
    app.require_subcommand(1);
    Args a;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", a.format, "output format: text|json|dot")
            ->default_val("json");
    };

    CLI::App* mutate = app.add_subcommand("mutate", "mutate a quiver at a vertex");
    mutate->add_option("file", a.file, "quiver file (text or json)")->required();
    mutate->add_option("--at", a.at, "vertex label (or 0-based id)")->required();
    add_format(mutate);

    CLI::App* cls = app.add_subcommand("class", "enumerate the mutation class");
    cls->add_option("file", a.file, "quiver file")->required();
    cls->add_option("--max-members", a.max_members, "member cap")->default_val(100000);
    cls->add_option("--max-entry", a.max_entry, "exchange-entry cap")->default_val(12);
    cls->add_flag("--count-only", a.count_only, "print only the member count");

    CLI::App* type = app.add_subcommand("type", "detect the Dynkin type of the cluster");
    type->add_option("file", a.file, "quiver file")->required();

    CLI::App* dpa = app.add_subcommand(
        "dpa", "check double-path avoidance (mutation/deletion closure)");
    dpa->add_option("file", a.file, "quiver file")->required();
    dpa->add_option("--max-states", a.max_states, "state cap")->default_val(100000);

    CLI::App* rels = app.add_subcommand(
        "relations", "synthesize the relations of a cluster-tilted quiver");
    rels->add_option("file", a.file, "quiver file")->required();
    rels->add_option("--nilpotency-cap", a.nilpotency_cap, "cap for the nilpotency bound")
        ->default_val(24);
    add_format(rels);

    CLI::App* ft = app.add_subcommand(
        "from-tilted", "build the cluster-tilted presentation from a tilted one");
    ft->add_option("file", a.file, "presentation file (text or json)")->required();
    ft->add_option("--dot", a.dot_out, "also write a DOT rendering to this path");
    ft->add_flag("--check", a.check, "run structural checks (exit 4 on failure)");
    ft->add_flag("--canonical", a.canonical,
                 "emit the canonically relabeled JSON used for golden comparisons");
    ft->add_option("--nilpotency-cap", a.nilpotency_cap)->default_val(24);
    add_format(ft);

    CLI::App* oracle = app.add_subcommand(
        "oracle-a", "polygon-triangulation oracle for type A");
    oracle->add_option("--ngon", a.ngon, "polygon size")->required();
    oracle->add_flag("--census", a.census,
                     "compare triangulation quivers with the mutation class");
    oracle->add_flag("--check-flips", a.check_flips,
                     "verify flip/mutation commutation for every flip");

    CLI::App* corpus = app.add_subcommand("corpus", "run the tilted corpus");
    corpus->add_option("dir", a.dir, "directory of .tilted cases")->required();
    corpus->add_option("--nilpotency-cap", a.nilpotency_cap)->default_val(24);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(mutate)) return cmd_mutate(a);
        if (app.got_subcommand(cls)) return cmd_class(a);
        if (app.got_subcommand(type)) return cmd_type(a);
        if (app.got_subcommand(dpa)) return cmd_dpa(a);
        if (app.got_subcommand(rels)) return cmd_relations(a);
        if (app.got_subcommand(ft)) return cmd_from_tilted(a);
        if (app.got_subcommand(oracle)) return cmd_oracle_a(a);
        if (app.got_subcommand(corpus)) return cmd_corpus(a);
    } catch (const cq::parse_error& e) {
        print_diag(e.what());
        return kExitParse;
    } catch (const cq::indeterminate_error& e) {
        print_diag(e.what());
        return kExitIndeterminate;
    } catch (const cq::invalid_input& e) {
        print_diag(e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        print_diag(e.what());
        return kExitInvalid;
    }
    return kExitOk;
}
