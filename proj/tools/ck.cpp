// ck: command-line front end for the library.

#include "CLI11.hpp"
#include "json.hpp"

#include "ck/alexander.hpp"
#include "ck/errors.hpp"
#include "ck/groups.hpp"
#include "ck/ledger.hpp"
#include "ck/localization.hpp"
#include "ck/nilpotent.hpp"
#include "ck/series.hpp"
#include "ck/signatures.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ck;
using json = nlohmann::ordered_json;

namespace {

const char* kGroupGrammar = R"(Presentation files (.grp), one statement per line, '#' starts a comment:
  group NAME
  gens g1 g2 ...
  rel WORD            or  rel WORD = WORD
  mark meridian WORD  |  mark longitude WORD
  epi TARGET : g1 -> WORD, g2 -> WORD, ...    (gamma from the current group)
  map NAME : SRC -> TGT : g1 -> WORD, ...
WORD: letters separated by spaces, powers g^-2, brackets [u,v] = u^-1 v^-1 u v,
parentheses, and 1 for the identity.
)";

const char* kSystemGrammar = R"(Equation systems (.txt), statements separated by newlines or ';':
  var x1 x2 ...
  eq x1 = WORD        (over the generators of the group and the variables)
)";

const char* kPiPerfectGrammar = R"(Pi-perfect candidates (.txt), statements separated by newlines or ';':
  gen m1 = WORD       (a normal generator, over the group)
  rw m1 = EXPR        (product of [m_j, B] or [B, m_j], optionally ^-1, with group
                       words in between that cancel overall; B is over the group)
)";

const char* kSeifertGrammar = R"(Seifert files (.json): {"name": "trefoil", "matrix": [[-1, 1], [0, -1]]}
with V - V^T unimodular. Entries may be integers or decimal strings.
)";

const char* kLedgerGrammar = R"(Ledger files (.json):
  {"presentation": "heis.grp", "group": "FxZ", "base": "K", "depth": 0,
   "base_is_j": false, "eta_bounds_disk": false,
   "members": [{"label": "K1", "eta": "[x,y] t^-1",
                "pattern": {"name": "trefoil", "matrix": [[-1,1],[0,-1]]}}]}
The presentation path is relative to the ledger file; "group" must carry an epi.
)";

struct Options {
    std::string tol = "1e-6";
    int cls = 3;
    int budget = 10000;
    std::string format = "text";
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw DomainError(path + ": " + e.what());
    }
}

PresentationDocument load_doc(const std::string& path) {
    auto text = read_file(path);
    return with_path(path, [&] { return parse_document(text); });
}

SeifertMatrix load_seifert(const std::string& path) {
    auto text = read_file(path);
    return with_path(path, [&] { return seifert_from_json(text); });
}

const GroupPresentation& pick(const PresentationDocument& doc, const std::string& name) {
    if (doc.groups.empty()) throw DomainError("no group declared");
    return name.empty() ? doc.groups.front() : doc.group(name);
}

EpiOverG epi_of(const PresentationDocument& doc, const std::string& name) {
    const auto& g = pick(doc, name);
    if (!doc.has_epi(g.name)) throw DomainError("group " + g.name + " has no 'epi' line");
    return doc.epi(g.name);
}

MorphismOverG morphism_of(const PresentationDocument& doc, const std::string& name) {
    auto it = doc.maps.find(name);
    if (it == doc.maps.end()) throw DomainError("no map named '" + name + "'");
    const auto& m = it->second;
    return {m.images, epi_of(doc, m.source), epi_of(doc, m.target)};
}

std::string interval(const Rational& lo, const Rational& hi) { return "[" + lo.str() + ", " + hi.str() + "]"; }

json real_json(const CertifiedReal& r) {
    json j;
    j["lo"] = r.lo.str();
    j["hi"] = r.hi.str();
    j["symbolic"] = r.symbolic;
    return j;
}

json group_json(const GroupPresentation& p) {
    json j;
    j["name"] = p.name;
    j["generators"] = p.generators;
    j["relators"] = json::array();
    for (const auto& r : p.relators) j["relators"].push_back(p.word_str(r));
    json marked = json::object();
    for (const auto& [role, w] : p.marked) marked[role] = p.word_str(w);
    j["marked"] = marked;
    return j;
}

json epi_json(const EpiOverG& g) {
    json j;
    j["target"] = g.target.name;
    json im = json::object();
    for (int i = 0; i < g.source.rank(); ++i)
        im[g.source.generators[i]] = g.target.word_str(g.images[static_cast<std::size_t>(i)]);
    j["images"] = im;
    return j;
}

std::string epi_text(const EpiOverG& g) {
    std::string s = "epi " + g.target.name + " :";
    for (int i = 0; i < g.source.rank(); ++i)
        s += std::string(i ? "," : "") + " " + g.source.generators[i] + " -> " +
             g.target.word_str(g.images[static_cast<std::size_t>(i)]);
    return s + "\n";
}

std::string abelian_str(const AbelianInvariants& a) {
    std::string s;
    if (a.rank > 0) s = a.rank == 1 ? "Z" : "Z^" + std::to_string(a.rank);
    for (const auto& d : a.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + d.str());
    return s.empty() ? "0" : s;
}

json membership_json(const SeriesMembership& m) {
    json j;
    j["depth"] = m.depth;
    j["status"] = to_string(m.status);
    j["certificate"] = m.certificate;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ck: knot concordance calculator over group presentations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");
    Options opt;
    std::function<std::string()> action;

    auto common = [&](CLI::App* c) {
        c->add_option("--tol", opt.tol, "Tolerance for certified reals (rational, > 0)")
            ->check([](const std::string& s) -> std::string {
                try {
                    return parse_rational(s) > 0 ? "" : "tolerance must be positive";
                } catch (const std::exception& e) {
                    return e.what();
                }
            });
        c->add_option("--class", opt.cls, "Nilpotency class (1..5)")->check(CLI::Range(1, 5));
        c->add_option("--budget", opt.budget, "Search budget in nodes")->check(CLI::NonNegativeNumber);
        c->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"json", "text", "csv", "svg"}));
        c->add_option("--out", opt.out, "Write output to PATH instead of stdout");
    };
    auto config = [&] {
        Config cfg;
        cfg.search_budget = opt.budget;
        cfg.verify_class = opt.cls;
        return cfg;
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, const char* grammar) {
        auto* c = parent->add_subcommand(name, desc);
        common(c);
        if (grammar) c->footer(grammar);
        return c;
    };
    auto want_json = [&] { return opt.format == "json"; };
    auto dump = [](const json& j) { return j.dump(2) + "\n"; };

    // ---- group
    auto* group = app.add_subcommand("group", "Presentations, quotients and amalgams")->require_subcommand(1);
    std::string file, gname, f1, f2, kname, jname, word, system_file, cand_file, map_name, pattern_file,
        pattern_group, s_value;
    bool swapped = false, collapse_flag = false, h2 = false;
    int depth = 0, imax = 0;

    auto* gparse = leaf(group, "parse", "Check a presentation file and echo it", kGroupGrammar);
    gparse->add_option("file", file, "Presentation file")->required();
    gparse->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            for (const auto& g : doc.groups) g.validate();
            if (want_json()) {
                json j;
                j["groups"] = json::array();
                for (const auto& g : doc.groups) {
                    auto gj = group_json(g);
                    if (doc.has_epi(g.name)) gj["epi"] = epi_json(doc.epi(g.name));
                    j["groups"].push_back(gj);
                }
                j["maps"] = json::array();
                for (const auto& [n, m] : doc.maps) j["maps"].push_back({{"name", n}, {"source", m.source}, {"target", m.target}});
                return dump(j);
            }
            std::string s;
            for (const auto& g : doc.groups) {
                s += to_text(g);
                if (doc.has_epi(g.name)) s += epi_text(doc.epi(g.name));
                s += "\n";
            }
            for (const auto& [n, m] : doc.maps) s += "map " + n + " : " + m.source + " -> " + m.target + "\n";
            return s;
        };
    });

    auto* gab = leaf(group, "abelianize", "Abelianization from the Smith form", kGroupGrammar);
    gab->add_option("file", file, "Input file")->required();
    gab->add_option("--group", gname, "Group name (default: first)");
    gab->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            const auto& g = pick(doc, gname);
            auto a = abelianization(g);
            if (want_json()) {
                json j;
                j["group"] = g.name;
                j["rank"] = a.rank;
                j["torsion"] = json::array();
                for (const auto& d : a.torsion) j["torsion"].push_back(d.str());
                return dump(j);
            }
            return g.name + "_ab = " + abelian_str(a) + "\n";
        };
    });

    auto* gnq = leaf(group, "nq", "Lower central sections of the class-c nilpotent quotient", kGroupGrammar);
    gnq->add_option("file", file, "Input file")->required();
    gnq->add_option("--group", gname, "Group name (default: first)");
    gnq->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            const auto& g = pick(doc, gname);
            NilpotentQuotient nq(g, opt.cls);
            auto secs = nq.lower_central_sections();
            if (want_json()) {
                json j;
                j["group"] = g.name;
                j["class"] = opt.cls;
                j["hirsch_length"] = nq.hirsch_length();
                j["sections"] = json::array();
                for (const auto& s : secs) {
                    json t = json::array();
                    for (const auto& d : s.torsion) t.push_back(d.str());
                    j["sections"].push_back({{"weight", s.weight}, {"rank", s.rank}, {"torsion", t}});
                }
                return dump(j);
            }
            std::string out = g.name + " / gamma_" + std::to_string(opt.cls + 1) + ", Hirsch length " +
                              std::to_string(nq.hirsch_length()) + "\n";
            for (const auto& s : secs)
                out += "  gamma_" + std::to_string(s.weight) + " / gamma_" + std::to_string(s.weight + 1) + " = " +
                       abelian_str({s.rank, s.torsion}) + "\n";
            return out;
        };
    });

    auto emit_pushout = [&](const PushoutResult& r, const std::vector<std::string>& extra) {
        if (want_json()) {
            json j = group_json(r.group);
            j["gamma"] = epi_json(r.gamma);
            j["notes"] = r.notes;
            for (const auto& e : extra) j["notes"].push_back(e);
            return dump(j);
        }
        std::string s = to_text(r.group) + epi_text(r.gamma);
        for (const auto& n : r.notes) s += "# " + n + "\n";
        for (const auto& n : extra) s += "# " + n + "\n";
        return s;
    };

    auto* gpo = leaf(group, "pushout", "Amalgamated product A *_C B of two maps out of C", kGroupGrammar);
    gpo->add_option("file", file, "Input file")->required();
    gpo->add_option("--f1", f1, "Map C -> A")->required();
    gpo->add_option("--f2", f2, "Map C -> B")->required();
    gpo->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto m1 = morphism_of(doc, f1), m2 = morphism_of(doc, f2);
            for (const auto* m : {&m1, &m2}) {
                auto v = verify_morphism(*m, config());
                if (v.status == Truth::False) throw DomainError("map is not a morphism over G: " + v.certificate);
            }
            return emit_pushout(pushout(m1, m2, "P"), {});
        };
    });

    auto* gjs = leaf(group, "jsurgery", "pi_1 of E_K glued to -E_J", kGroupGrammar);
    gjs->add_option("file", file, "Input file")->required();
    gjs->add_option("--knot", kname, "Exterior of K (marked, with epi)")->required();
    gjs->add_option("--j", jname, "Exterior of J (marked, with epi)")->required();
    gjs->add_flag("--swapped", swapped, "Glue mu_K to mu_J instead of mu_J^-1");
    gjs->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto gk = epi_of(doc, kname), gj = epi_of(doc, jname);
            auto r = j_surgery_group(gk.source, gj.source, gk, gj, swapped);
            return emit_pushout(r.pushout, {});
        };
    });

    // ---- alex
    auto* alex = app.add_subcommand("alex", "Fox calculus and Alexander modules")->require_subcommand(1);
    auto* afox = leaf(alex, "fox", "Fox Jacobian pushed into Q[t^+-1] along the epi", kGroupGrammar);
    afox->add_option("file", file, "Input file")->required();
    afox->add_option("--group", gname, "Group with an epi line (default: first)");
    afox->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto g = epi_of(doc, gname);
            auto m = fox_jacobian(g.source, g);
            json rows = json::array();
            std::string s;
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index k = 0; k < m.cols(); ++k) {
                    row.push_back(m(i, k).str());
                    s += (k ? " | " : "") + m(i, k).str();
                }
                rows.push_back(row);
                s += "\n";
            }
            if (want_json()) return dump({{"group", g.source.name}, {"columns", g.source.generators}, {"rows", rows}});
            return s;
        };
    });

    auto* asnf = leaf(alex, "snf", "Alexander module from the Laurent Smith form", kGroupGrammar);
    asnf->add_option("file", file, "Input file")->required();
    asnf->add_option("--group", gname, "Group with an epi line (default: first)");
    asnf->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto g = epi_of(doc, gname);
            auto d = laurent_snf(fox_jacobian(g.source, g));
            if (want_json()) {
                json t = json::array();
                for (const auto& p : d.torsion) t.push_back(p.str());
                return dump({{"group", g.source.name}, {"free_rank", d.free_rank}, {"torsion", t}});
            }
            return g.source.name + ": " + d.str() + "\n";
        };
    });

    auto* apoly = leaf(alex, "poly", "Alexander polynomial from a presentation or a Seifert matrix", nullptr);
    std::string poly_footer = std::string(kGroupGrammar) + "\n" + kSeifertGrammar;
    apoly->footer(poly_footer);
    apoly->add_option("file", file, ".grp or .json")->required();
    apoly->add_option("--group", gname, "Group with an epi line (default: first)");
    apoly->callback([&] {
        action = [&] {
            LaurentQ p;
            std::string src;
            if (std::filesystem::path(file).extension() == ".json") {
                auto v = load_seifert(file);
                p = alexander_poly_from_seifert(v);
                src = v.name;
            } else {
                auto doc = load_doc(file);
                auto g = epi_of(doc, gname);
                p = alexander_poly_from_presentation(g.source, g);
                src = g.source.name;
            }
            if (want_json()) return dump({{"source", src}, {"alexander", p.str()}});
            return "Delta(" + src + ") = " + p.str() + "\n";
        };
    });

    // ---- series
    auto* series = app.add_subcommand("series", "Kernel and rational derived series membership")->require_subcommand(1);
    auto* smem = leaf(series, "member", "Is WORD in the n-th rational derived subgroup of ker(gamma)?", kGroupGrammar);
    smem->add_option("file", file, "Input file")->required();
    smem->add_option("--group", gname, "Group with an epi line (default: first)");
    smem->add_option("--word", word, "Element, bracket structure kept as evidence")->required();
    smem->add_option("--depth", depth, "n >= 0 (0 is ker gamma)")->check(CLI::NonNegativeNumber);
    smem->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto g = epi_of(doc, gname);
            auto e = parse_word_expr(word, g.source.generators);
            auto m = rational_series_membership(g, e, depth, config());
            if (want_json()) {
                auto j = membership_json(m);
                j["element"] = e->str(g.source.generators);
                return dump(j);
            }
            return e->str(g.source.generators) + " at depth " + std::to_string(depth) + ": " + to_string(m.status) +
                   "\n  " + m.certificate + "\n";
        };
    });

    auto* sptfa = leaf(series, "ptfa", "PTFA certificate for a group from its lower central chain", kGroupGrammar);
    sptfa->add_option("file", file, "Input file")->required();
    sptfa->add_option("--group", gname, "Group with an epi line (default: first)");
    sptfa->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            const auto& g = pick(doc, gname);
            auto r = ptfa_report(lower_central_certificate(g), config());
            if (want_json()) return dump({{"group", g.name}, {"ptfa", to_string(r.status)}, {"sections", r.sections}});
            std::string s = g.name + " PTFA: " + to_string(r.status) + "\n";
            for (const auto& sec : r.sections) s += "  " + sec + "\n";
            return s;
        };
    });

    // ---- loc
    auto* loc = app.add_subcommand("loc", "Equation systems, Pi-perfect subgroups, Omega")->require_subcommand(1);
    auto load_system = [&](const EpiOverG& g) {
        auto text = read_file(system_file);
        return with_path(system_file, [&] { return parse_system(text, g); });
    };
    auto load_candidate = [&](const EpiOverG& g) {
        auto text = read_file(cand_file);
        return with_path(cand_file, [&] { return parse_pi_perfect(text, g); });
    };
    const std::string sys_footer = std::string(kGroupGrammar) + "\n" + kSystemGrammar;
    const std::string pp_footer = std::string(kGroupGrammar) + "\n" + kPiPerfectGrammar;

    auto* lval = leaf(loc, "validate", "Check the kernel condition of every equation", nullptr);
    lval->footer(sys_footer);
    lval->add_option("file", file, "Input file")->required();
    lval->add_option("--group", gname, "Group with an epi line (default: first)");
    lval->add_option("--system", system_file, "Equation system file")->required();
    lval->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto sys = load_system(epi_of(doc, gname));
            auto cfg = config();
            json eqs = json::array();
            std::string s;
            Truth all = Truth::True;
            for (int i = 0; i < sys.size(); ++i) {
                auto d = kernel_decomposition(sys.right_sides[static_cast<std::size_t>(i)], sys.ambient, sys.size(), cfg);
                all = all && d.status;
                eqs.push_back({{"variable", sys.variables[static_cast<std::size_t>(i)]},
                               {"kernel", to_string(d.status)},
                               {"factors", d.factors.size()},
                               {"note", d.note}});
                s += sys.variables[static_cast<std::size_t>(i)] + ": " + to_string(d.status) +
                     (d.note.empty() ? "" : " (" + d.note + ")") + "\n";
            }
            if (want_json()) return dump({{"system", sys.str()}, {"valid", to_string(all)}, {"equations", eqs}});
            return s + "valid: " + to_string(all) + "\n";
        };
    });

    auto* lsolve = leaf(loc, "solve", "Unique solution in the class-c quotient by fixed-point iteration", nullptr);
    lsolve->footer(sys_footer);
    lsolve->add_option("file", file, "Input file")->required();
    lsolve->add_option("--group", gname, "Group with an epi line (default: first)");
    lsolve->add_option("--system", system_file, "Equation system file")->required();
    lsolve->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto sys = load_system(epi_of(doc, gname));
            auto sol = solve_nilpotent(sys, opt.cls, std::nullopt, config());
            const auto& names = sys.ambient.source.generators;
            if (want_json()) {
                json v = json::object();
                for (int i = 0; i < sys.size(); ++i)
                    v[sys.variables[static_cast<std::size_t>(i)]] = sol.values[static_cast<std::size_t>(i)].str(names);
                return dump({{"class", opt.cls}, {"iterations", sol.iterations}, {"solution", v}, {"trace", sol.trace}});
            }
            std::string s;
            for (int i = 0; i < sys.size(); ++i)
                s += sys.variables[static_cast<std::size_t>(i)] + " = " +
                     sol.values[static_cast<std::size_t>(i)].str(names) + "\n";
            s += "stable after " + std::to_string(sol.iterations) + " iterations in class " + std::to_string(opt.cls) +
                 "\n";
            for (const auto& t : sol.trace) s += "  " + t + "\n";
            return s;
        };
    });

    auto* lpp = leaf(loc, "pp-check", "Is the normal closure of the candidate Pi-perfect?", nullptr);
    lpp->footer(pp_footer);
    lpp->add_option("file", file, "Input file")->required();
    lpp->add_option("--group", gname, "Group with an epi line (default: first)");
    lpp->add_option("--candidate", cand_file, "Candidate file")->required();
    lpp->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto in = load_candidate(epi_of(doc, gname));
            auto v = pi_perfect_check(in.candidate, opt.cls, in.rewriting, config());
            if (want_json())
                return dump({{"status", to_string(v.status)}, {"refuted_at_class", v.refuted_at_class},
                             {"witness", v.witness}});
            std::string s = to_string(v.status);
            if (v.status == PiPerfectStatus::Refuted) s += " at class " + std::to_string(v.refuted_at_class);
            return s + "\n  " + v.witness + "\n";
        };
    });

    auto* lrt = leaf(loc, "pp-roundtrip", "Pi-perfect candidate -> system with two solutions -> candidate", nullptr);
    lrt->footer(pp_footer);
    lrt->add_option("file", file, "Input file")->required();
    lrt->add_option("--group", gname, "Group with an epi line (default: first)");
    lrt->add_option("--candidate", cand_file, "Candidate with a rewriting for every generator")->required();
    lrt->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto in = load_candidate(epi_of(doc, gname));
            if (!in.rewriting) throw DomainError("the candidate needs 'rw' lines for a round trip");
            auto cfg = config();
            auto sys = pi_perfect_to_system(in.candidate, *in.rewriting, cfg);
            auto back = solutions_to_pi_perfect(sys.system, sys.nontrivial, sys.trivial, cfg);
            auto check = pi_perfect_check(back.candidate, opt.cls, back.rewriting, cfg);
            const auto& names = sys.system.ambient.source.generators;
            json nontriv = json::array(), gens = json::array();
            for (const auto& w : sys.nontrivial.values) nontriv.push_back(w.str(names));
            for (const auto& w : back.candidate.normal_generators) gens.push_back(w.str(names));
            if (want_json())
                return dump({{"system", sys.system.str()},
                             {"trivial_is_solution", to_string(is_solution(sys.system, sys.trivial.values, cfg))},
                             {"nontrivial", nontriv},
                             {"nontrivial_is_solution", to_string(is_solution(sys.system, sys.nontrivial.values, cfg))},
                             {"candidate", gens},
                             {"rewriting", rewriting_str(back.candidate, back.rewriting)},
                             {"verified", to_string(back.verified)},
                             {"check", to_string(check.status)},
                             {"notes", back.notes}});
            std::string s = "system: " + sys.system.str() + "\nsolutions: trivial and";
            for (const auto& w : nontriv) s += " " + w.get<std::string>();
            s += "\nrecovered generators:";
            for (const auto& w : gens) s += " " + w.get<std::string>();
            s += "\nrewriting: " + rewriting_str(back.candidate, back.rewriting) +
                 "\nverified: " + to_string(back.verified) + "\ncheck: " + to_string(check.status) + "\n";
            for (const auto& n : back.notes) s += "# " + n + "\n";
            return s;
        };
    });

    auto* lom = leaf(loc, "omega", "The four Omega conditions for a declared map", kGroupGrammar);
    lom->add_option("file", file, "Input file")->required();
    lom->add_option("--map", map_name, "Map name; source and target need epi lines")->required();
    lom->add_flag("--h2-surjective", h2, "Assert the H_2 condition from a chain-level argument");
    lom->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto f = morphism_of(doc, map_name);
            OmegaWitnesses w;
            w.h2_surjective = h2;
            auto r = omega_check(f, w, config());
            static const char* labels[4] = {"finitely generated source, finitely presented target",
                                            "finitely normally generated kernel", "normal surjection on kernels",
                                            "H_1 isomorphism and H_2 epimorphism"};
            json conds = json::array();
            std::string s;
            for (int i = 0; i < 4; ++i) {
                conds.push_back({{"condition", labels[i]},
                                 {"status", to_string(r.conditions[i].status)},
                                 {"note", r.conditions[i].note}});
                s += "(" + std::to_string(i + 1) + ") " + labels[i] + ": " + to_string(r.conditions[i].status) +
                     (r.conditions[i].note.empty() ? "" : " - " + r.conditions[i].note) + "\n";
            }
            if (want_json()) return dump({{"map", map_name}, {"conditions", conds}, {"verdict", to_string(r.verdict)}});
            return s + "in Omega: " + to_string(r.verdict) + "\n";
        };
    });

    // ---- sig
    auto* sig = app.add_subcommand("sig", "Levine-Tristram signatures and their integrals")->require_subcommand(1);
    auto tol = [&] { return parse_rational(opt.tol); };

    auto* sat = leaf(sig, "at", "Signature at omega = ((1-s^2) + 2si)/(1+s^2), or at -1", kSeifertGrammar);
    sat->add_option("file", file, "Input file")->required();
    sat->add_option("--s", s_value, "Rational s != 0 (omit for omega = -1)");
    sat->callback([&] {
        action = [&] {
            auto v = load_seifert(file);
            auto w = s_value.empty() ? CirclePoint::minus_one() : CirclePoint::at(parse_rational(s_value));
            int sgn = lt_signature_at(v, w);
            if (want_json()) return dump({{"knot", v.name}, {"omega", w.str()}, {"signature", sgn}});
            return "sigma(" + v.name + ") at " + w.str() + " = " + std::to_string(sgn) + "\n";
        };
    });

    auto* sfun = leaf(sig, "function", "Jumps and values on the upper half circle", kSeifertGrammar);
    sfun->add_option("file", file, "Input file")->required();
    sfun->callback([&] {
        action = [&] {
            auto v = load_seifert(file);
            auto f = signature_function(v);
            if (opt.format == "csv") return f.csv();
            if (opt.format == "svg") return f.svg();
            if (want_json()) {
                json jumps = json::array();
                for (const auto& j : f.jumps) jumps.push_back({{"cos_lo", j.lo.str()}, {"cos_hi", j.hi.str()}});
                return dump({{"knot", v.name},
                             {"polynomial", f.polynomial.str()},
                             {"jumps", jumps},
                             {"jump_at_minus_one", f.jump_at_minus_one},
                             {"values", f.values}});
            }
            std::string s = v.name + ": P(x) = " + f.polynomial.str() + "\n";
            s += "value " + std::to_string(f.values[0]) + " from omega = 1\n";
            for (std::size_t k = 0; k < f.jumps.size(); ++k)
                s += "jump at cos in " + interval(f.jumps[k].lo, f.jumps[k].hi) + ", then " +
                     std::to_string(f.values[k + 1]) + "\n";
            if (f.jump_at_minus_one) s += "jump at omega = -1\n";
            return s;
        };
    });

    auto* sint = leaf(sig, "integral", "Certified integral of the signature function (total measure 1)",
                      kSeifertGrammar);
    sint->add_option("file", file, "Input file")->required();
    sint->callback([&] {
        action = [&] {
            auto v = load_seifert(file);
            auto r = signature_integral(v, tol());
            if (want_json()) {
                auto j = real_json(r);
                j = json{{"knot", v.name}, {"integral", j}};
                return dump(j);
            }
            return "integral(" + v.name + ") in " + interval(r.lo, r.hi) + "\n  = " + r.symbolic + "\n";
        };
    });

    std::string file_b;
    bool mirror_b = false;
    auto* ssum = leaf(sig, "sum", "Connected sum of two Seifert matrices and its integral", kSeifertGrammar);
    ssum->add_option("a", file)->required();
    ssum->add_option("b", file_b)->required();
    ssum->add_flag("--mirror", mirror_b, "Use the mirror of the second knot");
    ssum->callback([&] {
        action = [&] {
            auto a = load_seifert(file);
            auto b = load_seifert(file_b);
            if (mirror_b) b = mirror(b);
            auto s = connected_sum(a, b);
            auto r = signature_integral(s, tol());
            if (want_json())
                return dump({{"seifert", json::parse(seifert_to_json(s))}, {"integral", real_json(r)}});
            return seifert_to_json(s) + "\nintegral in " + interval(r.lo, r.hi) + "\n  = " + r.symbolic + "\n";
        };
    });

    std::string eps_s = "1/10", lo_s = "-2", hi_s = "2";
    std::vector<std::string> targets;
    int max_summands = 4;
    auto* sdense = leaf(sig, "dense", "Connected sums of twist and torus knots with integrals near targets", nullptr);
    sdense->add_option("--eps", eps_s, "Spacing and accuracy");
    sdense->add_option("--lo", lo_s);
    sdense->add_option("--hi", hi_s);
    sdense->add_option("--target", targets, "Explicit targets instead of the range");
    sdense->add_option("--max-summands", max_summands)->check(CLI::Range(1, 8));
    sdense->callback([&] {
        action = [&] {
            DenseFamilyOptions dopt;
            dopt.max_summands = max_summands;
            const Rational eps = parse_rational(eps_s), lo = parse_rational(lo_s), hi = parse_rational(hi_s);
            std::vector<FamilyMember> fam;
            if (targets.empty()) {
                fam = dense_family(eps, lo, hi, dopt);
            } else {
                std::vector<Rational> t;
                for (const auto& s : targets) t.push_back(parse_rational(s));
                fam = dense_family(t, eps, dopt);
            }
            json members = json::array();
            std::string s;
            for (const auto& m : fam) {
                std::string name;
                for (const auto& x : m.summands) name += (name.empty() ? "" : " # ") + x;
                members.push_back({{"summands", m.summands}, {"target", m.target.str()}, {"integral", real_json(m.integral)}});
                s += interval(m.integral.lo, m.integral.hi) + "  " + (name.empty() ? "unknot" : name) + "\n";
            }
            if (targets.empty()) {
                auto rad = coverage_radius(fam, lo, hi);
                if (want_json()) return dump({{"members", members}, {"coverage_radius", rad.str()}});
                return s + std::to_string(fam.size()) + " knots, coverage radius " + rad.str() + "\n";
            }
            if (want_json()) return dump({{"members", members}});
            return s;
        };
    });

    // ---- ledger
    auto* ledger = app.add_subcommand("ledger", "Infection, depth certificates and rho differences")->require_subcommand(1);
    auto* linf = leaf(ledger, "infect", "Exterior of K(eta, L)", nullptr);
    const std::string inf_footer = std::string(kGroupGrammar) + "\n" + kSeifertGrammar;
    linf->footer(inf_footer);
    linf->add_option("file", file, "Input file")->required();
    linf->add_option("--knot", kname, "Exterior of K: marked, with an epi")->required();
    linf->add_option("--eta", word, "Curve in the exterior")->required();
    linf->add_option("--pattern", pattern_file, "Seifert JSON of L")->required();
    linf->add_option("--pattern-group", pattern_group, "Exterior of L in the same file (marked)");
    linf->add_flag("--collapse", collapse_flag, "Apply Tietze collapse afterwards");
    linf->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            KnotData k;
            k.gamma = epi_of(doc, kname);
            k.label = k.gamma.source.name;
            auto l = load_seifert(pattern_file);
            Word eta = parse_word(word, k.gamma.source.generators);
            std::optional<GroupPresentation> lg;
            if (!pattern_group.empty()) lg = doc.group(pattern_group);
            auto r = infect(k, eta, l, lg, config());
            if (collapse_flag) r = collapse(r);
            if (want_json()) {
                auto j = group_json(r.exterior());
                j["gamma"] = epi_json(r.gamma);
                j["symbolic"] = r.symbolic;
                j["notes"] = r.notes;
                return dump(j);
            }
            std::string s = to_text(r.exterior()) + epi_text(r.gamma);
            if (r.symbolic) s += "# symbolic: only the Seifert data of " + l.name + " is recorded\n";
            for (const auto& n : r.notes) s += "# " + n + "\n";
            return s;
        };
    });

    auto certify_from = [&](const EpiOverG& g, const std::string& text, int n) {
        return certify_eta(g, parse_word_expr(text, g.source.generators), n, config());
    };
    auto cert_json = [](const DepthCertificate& c) {
        return json{{"eta", c.eta_text},
                    {"depth", c.depth},
                    {"series", to_string(c.kind)},
                    {"in", membership_json(c.in_evidence)},
                    {"not_in", membership_json(c.notin_evidence)}};
    };

    auto* lcert = leaf(ledger, "certify", "eta in the n-th and not the (n+1)-th rational derived subgroup",
                       kGroupGrammar);
    lcert->add_option("file", file, "Input file")->required();
    lcert->add_option("--group", gname, "Group with an epi line (default: first)");
    lcert->add_option("--eta", word)->required();
    lcert->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    lcert->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto c = certify_from(epi_of(doc, gname), word, depth);
            if (want_json()) return dump(cert_json(c));
            return "certified: " + c.eta_text + " has depth exactly " + std::to_string(c.depth) + "\n  in:     " +
                   c.in_evidence.certificate + "\n  not in: " + c.notin_evidence.certificate + "\n";
        };
    });

    auto* lrho = leaf(ledger, "rho", "rho_i(M(K(eta,L))) - rho_i(M(K)) for i <= imax", nullptr);
    lrho->footer(inf_footer);
    lrho->add_option("file", file, "Input file")->required();
    lrho->add_option("--group", gname, "Group with an epi line (default: first)");
    lrho->add_option("--eta", word)->required();
    lrho->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    lrho->add_option("--pattern", pattern_file)->required();
    lrho->add_option("--imax", imax)->check(CLI::NonNegativeNumber);
    lrho->callback([&] {
        action = [&] {
            auto doc = load_doc(file);
            auto c = certify_from(epi_of(doc, gname), word, depth);
            auto l = load_seifert(pattern_file);
            auto rows = rho_differences(c, l, imax, tol(), l.name);
            if (want_json()) {
                json j = json::array();
                for (const auto& e : rows)
                    j.push_back({{"index", e.index},
                                 {"exact_zero", e.exact_zero},
                                 {"value", real_json(e.value)},
                                 {"provenance", e.provenance}});
                return dump({{"certificate", cert_json(c)}, {"rho", j}});
            }
            std::string s;
            for (const auto& e : rows)
                s += "rho_" + std::to_string(e.index) + ": " +
                     (e.exact_zero ? std::string("0 (exact)") : interval(e.value.lo, e.value.hi) + " = " + e.value.symbolic) +
                     "\n  " + e.provenance + "\n";
            return s;
        };
    });

    auto* lrep = leaf(ledger, "report", "Non-concordance report for a family of infections", kLedgerGrammar);
    lrep->add_option("file", file, "Ledger JSON")->required();
    lrep->callback([&] {
        action = [&] {
            auto text = read_file(file);
            json j;
            try {
                j = json::parse(text);
            } catch (const json::exception& e) {
                throw ParseError(file + ": invalid JSON: " + e.what(), 1, 1);
            }
            auto need = [&](const char* key) -> const json& {
                if (!j.contains(key)) throw DomainError(file + ": missing \"" + key + "\"");
                return j[key];
            };
            auto base_dir = std::filesystem::path(file).parent_path();
            auto doc = load_doc((base_dir / need("presentation").get<std::string>()).string());
            auto g = epi_of(doc, j.value("group", std::string()));
            const int n = j.value("depth", 0);
            KnotData base;
            base.label = j.value("base", std::string("K"));
            base.gamma = g;
            std::vector<FamilyInput> fam;
            for (const auto& m : need("members")) {
                auto pattern = with_path(file, [&] { return seifert_from_json(m.at("pattern").dump()); });
                fam.push_back({m.at("label").get<std::string>(), certify_from(g, m.at("eta").get<std::string>(), n),
                               pattern});
            }
            ReportOptions ro;
            ro.tol = tol();
            ro.base_is_j = j.value("base_is_j", false);
            ro.eta_bounds_disk = j.value("eta_bounds_disk", false);
            auto rep = distinguish_report(base, fam, ro);
            return want_json() ? rep.json() + "\n" : rep.text();
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        std::string out = action();
        if (opt.out.empty()) {
            std::cout << out;
        } else {
            std::ofstream f(opt.out, std::ios::binary);
            if (!f) throw DomainError("cannot write '" + opt.out + "'");
            f << out;
        }
    } catch (const DomainError& e) {
        std::cerr << "ck: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ck: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ck: internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
