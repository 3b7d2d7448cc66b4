#include "ck/localization.hpp"

#include "ck/errors.hpp"
#include "ck/groups.hpp"
#include "ck/nilpotent.hpp"
#include "ck/series.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ck {

std::vector<std::string> EquationSystem::names() const {
    auto n = ambient.source.generators;
    n.insert(n.end(), variables.begin(), variables.end());
    return n;
}

std::string EquationSystem::str() const {
    std::ostringstream os;
    os << "var";
    for (const auto& v : variables) os << ' ' << v;
    auto nm = names();
    for (int i = 0; i < size(); ++i) os << " ; eq " << variables[i] << " = " << right_sides[i].str(nm);
    return os.str();
}

namespace {

// Calls f(keyword, rest, line, col, rest_col) for every ';'- or newline-separated
// statement, '#' starting a comment.
template <class F>
void for_each_statement(std::string_view text, F&& f) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t semi = line.find(';', start);
            if (semi == std::string_view::npos) semi = line.size();
            std::string_view stmt = line.substr(start, semi - start);
            std::size_t lead = 0;
            while (lead < stmt.size() && std::isspace(static_cast<unsigned char>(stmt[lead]))) ++lead;
            const int col = static_cast<int>(start + lead) + 1;
            stmt = stmt.substr(lead);
            while (!stmt.empty() && std::isspace(static_cast<unsigned char>(stmt.back()))) stmt.remove_suffix(1);
            if (!stmt.empty()) {
                std::size_t sp = stmt.find_first_of(" \t");
                std::string_view kw = stmt.substr(0, sp);
                std::string_view rest = sp == std::string_view::npos ? std::string_view{} : stmt.substr(sp + 1);
                const int rest_col = col + static_cast<int>(sp == std::string_view::npos ? stmt.size() : sp + 1);
                f(kw, rest, line_no, col, rest_col);
            }
            if (semi == line.size()) break;
            start = semi + 1;
        }
        if (eol == text.size()) break;
        pos = eol + 1;
    }
}

std::string trimmed(std::string_view v) {
    std::string s(v);
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
}

}  // namespace

EquationSystem parse_system(std::string_view text, const EpiOverG& ambient) {
    EquationSystem sys;
    sys.ambient = ambient;
    std::vector<std::optional<Word>> rhs;
    bool have_vars = false;
    int last_line = 1;
    for_each_statement(text, [&](std::string_view kw, std::string_view rest, int line_no, int col, int rest_col) {
        last_line = line_no;
        if (kw == "var") {
            if (have_vars) throw ParseError("variables declared twice", line_no, col);
            have_vars = true;
            std::istringstream is{std::string(rest)};
            std::string v;
            while (is >> v) {
                if (ambient.source.index_of(v))
                    throw ParseError("variable '" + v + "' clashes with a generator", line_no, col);
                for (const auto& u : sys.variables)
                    if (u == v) throw ParseError("variable '" + v + "' declared twice", line_no, col);
                sys.variables.push_back(v);
            }
            rhs.assign(sys.variables.size(), std::nullopt);
        } else if (kw == "eq") {
            if (!have_vars) throw ParseError("'eq' before 'var'", line_no, col);
            std::size_t eqpos = rest.find('=');
            if (eqpos == std::string_view::npos) throw ParseError("expected '='", line_no, rest_col);
            std::string lhs = trimmed(rest.substr(0, eqpos));
            int idx = -1;
            for (std::size_t i = 0; i < sys.variables.size(); ++i)
                if (sys.variables[i] == lhs) idx = static_cast<int>(i);
            if (idx < 0) throw ParseError("'" + lhs + "' is not a declared variable", line_no, rest_col);
            if (rhs[idx]) throw ParseError("second equation for '" + lhs + "'", line_no, rest_col);
            rhs[idx] = parse_word_expr(rest.substr(eqpos + 1), sys.names(), line_no, rest_col + static_cast<int>(eqpos))
                           ->eval();
        } else {
            throw ParseError("unknown statement '" + std::string(kw) + "'", line_no, col);
        }
    });
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (!rhs[i]) throw ParseError("no equation for '" + sys.variables[i] + "'", last_line, 1);
        sys.right_sides.push_back(*rhs[i]);
    }
    return sys;
}

namespace {

// [m_j, B]^sign with B free of m-symbols, or nullopt.
std::optional<RewriteFactor> as_factor(ExprPtr e, int offset) {
    int sign = 1;
    while (e->kind == WordExpr::Kind::Product && e->children.size() == 1) e = e->children[0];
    if (e->kind == WordExpr::Kind::Power && (e->exp == 1 || e->exp == -1)) {
        sign = static_cast<int>(e->exp);
        e = e->children[0];
        while (e->kind == WordExpr::Kind::Product && e->children.size() == 1) e = e->children[0];
    }
    if (e->kind != WordExpr::Kind::Commutator) return std::nullopt;
    Word a = e->children[0]->eval(), b = e->children[1]->eval();
    auto lone_symbol = [&](const Word& w) { return w.length() == 1 && w.max_gen() >= offset && w.exponent_sum(w.max_gen()) == 1; };
    auto m_free = [&](const Word& w) { return w.max_gen() < offset; };
    RewriteFactor f;
    if (lone_symbol(a) && m_free(b)) {
        f.gen = a.max_gen() - offset;
        f.b = b;
        f.sign = sign;
    } else if (lone_symbol(b) && m_free(a)) {  // [B, m] = [m, B]^-1
        f.gen = b.max_gen() - offset;
        f.b = a;
        f.sign = -sign;
    } else {
        return std::nullopt;
    }
    return f;
}

}  // namespace

PiPerfectInput parse_pi_perfect(std::string_view text, const EpiOverG& ambient) {
    PiPerfectInput in;
    in.candidate.ambient = ambient;
    std::vector<std::string> names = ambient.source.generators;
    const int offset = ambient.source.rank();
    std::vector<std::optional<std::vector<RewriteFactor>>> rw;
    for_each_statement(text, [&](std::string_view kw, std::string_view rest, int line_no, int col, int rest_col) {
        std::size_t eqpos = rest.find('=');
        if (eqpos == std::string_view::npos) throw ParseError("expected '='", line_no, rest_col);
        std::string lhs = trimmed(rest.substr(0, eqpos));
        std::string_view rhs = rest.substr(eqpos + 1);
        const int rhs_col = rest_col + static_cast<int>(eqpos);
        if (kw == "gen") {
            if (!rw.empty() && std::any_of(rw.begin(), rw.end(), [](const auto& r) { return r.has_value(); }))
                throw ParseError("'gen' after 'rw'", line_no, col);
            if (std::find(names.begin(), names.end(), lhs) != names.end())
                throw ParseError("'" + lhs + "' is already a generator or symbol", line_no, rest_col);
            in.candidate.normal_generators.push_back(parse_word_expr(rhs, ambient.source.generators, line_no, rhs_col)->eval());
            in.symbols.push_back(lhs);
            names.push_back(lhs);
            rw.emplace_back();
        } else if (kw == "rw") {
            auto it = std::find(in.symbols.begin(), in.symbols.end(), lhs);
            if (it == in.symbols.end()) throw ParseError("'" + lhs + "' is not a declared symbol", line_no, rest_col);
            auto idx = static_cast<std::size_t>(it - in.symbols.begin());
            if (rw[idx]) throw ParseError("second rewriting for '" + lhs + "'", line_no, rest_col);
            auto e = parse_word_expr(rhs, names, line_no, rhs_col);
            std::vector<ExprPtr> items = e->kind == WordExpr::Kind::Product ? e->children : std::vector<ExprPtr>{e};
            std::vector<RewriteFactor> factors;
            Word prefix;
            for (const auto& item : items) {
                if (auto f = as_factor(item, offset)) {
                    f->conj = prefix;
                    factors.push_back(*f);
                } else {
                    Word w = item->eval();
                    if (w.max_gen() >= offset)
                        throw ParseError("symbols may only appear as [m, B] or [B, m]", line_no, rhs_col);
                    prefix = prefix * w;
                }
            }
            if (!prefix.empty())
                throw ParseError("words between commutators must cancel overall", line_no, rhs_col);
            rw[idx] = std::move(factors);
        } else {
            throw ParseError("unknown statement '" + std::string(kw) + "'", line_no, col);
        }
    });
    const bool any = std::any_of(rw.begin(), rw.end(), [](const auto& r) { return r.has_value(); });
    if (any) {
        Rewriting r;
        for (std::size_t i = 0; i < rw.size(); ++i) {
            if (!rw[i]) throw ParseError("no rewriting for '" + in.symbols[i] + "'", 1, 1);
            r.push_back(*rw[i]);
        }
        in.rewriting = std::move(r);
    }
    return in;
}

namespace {

struct Block {
    bool var = false;
    Word a;              // A-letters when !var
    int v = 0;           // variable letter index when var
    std::int64_t e = 0;  // its exponent
    Word word() const { return var ? Word::letter(v, e) : a; }
};

std::vector<Block> blocks_of(const Word& w, int offset) {
    std::vector<Block> out;
    for (const auto& s : w.syllables()) {
        if (s.gen >= offset) {
            out.push_back({true, {}, s.gen, s.exp});
        } else if (!out.empty() && !out.back().var) {
            out.back().a *= Word::letter(s.gen, s.exp);
        } else {
            out.push_back({false, Word::letter(s.gen, s.exp), 0, 0});
        }
    }
    return out;
}

// Re-establishes the block invariants after a removal at position i.
void merge_at(std::vector<Block>& b, std::size_t i) {
    // i is the index of the block now following the removed one
    while (i > 0 && i < b.size()) {
        Block& l = b[i - 1];
        Block& r = b[i];
        if (l.var && r.var && l.v == r.v) {
            l.e += r.e;
            b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
            if (l.e == 0) {
                b.erase(b.begin() + static_cast<std::ptrdiff_t>(i - 1));
                --i;
                continue;
            }
            return;
        }
        if (!l.var && !r.var) {
            l.a *= r.a;
            b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
            if (l.a.empty()) {
                b.erase(b.begin() + static_cast<std::ptrdiff_t>(i - 1));
                --i;
                continue;
            }
            return;
        }
        return;
    }
}

Config wider(const Config& cfg) {
    Config c = cfg;
    c.verify_class = std::max(cfg.verify_class, cfg.refute_class);
    return c;
}

}  // namespace

KernelDecomposition kernel_decomposition(const Word& w, const EpiOverG& ambient, int variables, const Config& cfg) {
    const int offset = ambient.source.rank();
    if (w.max_gen() >= offset + variables) throw DomainError("word uses an undeclared variable");
    KernelDecomposition out;
    auto blocks = blocks_of(w, offset);
    std::map<Word, Truth> cache;
    const Config c = wider(cfg);
    auto g_trivial = [&](const Word& a) {
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
        Truth t = is_trivial(ambient.target, ambient.apply(a), c).status;
        cache.emplace(a, t);
        return t;
    };
    for (;;) {
        std::size_t first = blocks.size(), last = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].var) {
                first = std::min(first, i);
                last = i;
            }
        if (first == blocks.size()) {
            Word rest;
            for (const auto& b : blocks) rest *= b.a;
            Truth t = rest.empty() ? Truth::True : g_trivial(rest);
            if (!rest.empty() && t == Truth::True) out.factors.push_back({Word{}, rest});
            out.status = t;
            out.note = t == Truth::True ? "all variable letters cancel" : "the remaining A-part is not certified trivial";
            return out;
        }
        bool removed = false, unknown = false;
        for (std::size_t i = first + 1; i < last; ++i) {
            if (blocks[i].var) continue;
            Truth t = g_trivial(blocks[i].a);
            if (t == Truth::Unknown) unknown = true;
            if (t != Truth::True) continue;
            Word prefix;
            for (std::size_t j = 0; j < i; ++j) prefix *= blocks[j].word();
            out.factors.push_back({prefix, blocks[i].a});
            blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i));
            merge_at(blocks, i);
            removed = true;
            break;
        }
        if (removed) continue;
        out.status = unknown ? Truth::Unknown : Truth::False;
        out.note = unknown ? "a block between variable letters is undecided in G"
                           : "variable letters survive in the free product normal form";
        return out;
    }
}

Truth system_kernel_status(const EquationSystem& sys, const Config& cfg) {
    if (static_cast<int>(sys.right_sides.size()) != sys.size()) throw DomainError("one equation per variable required");
    Truth t = Truth::True;
    for (const auto& w : sys.right_sides) {
        t = t && kernel_decomposition(w, sys.ambient, sys.size(), cfg).status;
        if (t == Truth::False) break;
    }
    return t;
}

bool validate_system(const EquationSystem& sys, const Config& cfg) {
    return system_kernel_status(sys, cfg) == Truth::True;
}

namespace {

std::vector<Word> substitution(const EquationSystem& sys, const std::vector<Word>& values) {
    std::vector<Word> images;
    for (int i = 0; i < sys.offset(); ++i) images.push_back(Word::letter(i));
    images.insert(images.end(), values.begin(), values.end());
    return images;
}

}  // namespace

SolutionSet solve_nilpotent(const EquationSystem& sys, int c, std::optional<std::vector<Word>> initial,
                            const Config& cfg) {
    if (!validate_system(sys, cfg)) throw PreconditionError("system does not satisfy the kernel condition");
    SolutionSet out;
    const int n = sys.size();
    if (n == 0) return out;
    auto nq = nilpotent_quotient(sys.ambient.source, c);
    std::vector<Word> x = initial.value_or(std::vector<Word>(n));
    if (static_cast<int>(x.size()) != n) throw DomainError("initial tuple has the wrong length");
    auto names = sys.ambient.source.generators;
    auto show = [&](const std::vector<Word>& v) {
        std::string s;
        for (int i = 0; i < n; ++i) s += (i ? ", " : "") + sys.variables[i] + " = " + v[i].str(names);
        return s;
    };
    out.trace.push_back("x(0): " + show(x));
    for (int k = 1; k <= c + 1; ++k) {
        if (cfg.cancelled()) throw DomainError("cancelled");
        auto images = substitution(sys, x);
        std::vector<Word> next;
        bool same = true;
        for (int i = 0; i < n; ++i) {
            Word w = sys.right_sides[i].substitute(images);
            if (w.length() > 256) w = nq->normal_word(w);
            same = same && nq->equal(w, x[i]);
            next.push_back(std::move(w));
        }
        out.trace.push_back("x(" + std::to_string(k) + "): " + show(next));
        if (same) {
            out.values = x;
            out.iterations = k;
            return out;
        }
        x = std::move(next);
    }
    throw DomainError("internal: iteration did not settle within class + 1 steps");
}

Truth is_solution(const EquationSystem& sys, const std::vector<Word>& values, const Config& cfg) {
    if (static_cast<int>(values.size()) != sys.size()) throw DomainError("solution has the wrong length");
    auto images = substitution(sys, values);
    Truth t = Truth::True;
    for (int i = 0; i < sys.size(); ++i) {
        t = t && is_trivial(sys.ambient.source, values[i].inverse() * sys.right_sides[i].substitute(images), cfg).status;
        if (t == Truth::False) break;
    }
    return t;
}

namespace {

std::vector<Word> symbol_images(const PiPerfectCandidate& cand) {
    std::vector<Word> images;
    for (int i = 0; i < cand.ambient.source.rank(); ++i) images.push_back(Word::letter(i));
    images.insert(images.end(), cand.normal_generators.begin(), cand.normal_generators.end());
    return images;
}

// [X, b] for X over A and the m-symbols, b over A, as conjugates of [m_j, b']^+-1.
std::vector<RewriteFactor> expand_commutator(const Word& x, const Word& b, int offset) {
    struct Z {
        Word prefix;
        int gen;
        int sign;
    };
    std::vector<Z> zs;
    Word prefix;
    for (const auto& s : x.syllables()) {
        if (s.gen < offset) {
            prefix *= Word::letter(s.gen, s.exp);
            continue;
        }
        int sign = s.exp > 0 ? 1 : -1;
        for (std::int64_t k = 0; k < (s.exp > 0 ? s.exp : -s.exp); ++k) zs.push_back({prefix, s.gen - offset, sign});
    }
    if (!prefix.empty()) throw std::logic_error("expand_commutator: element is not in the normal closure");
    std::vector<RewriteFactor> out;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        Word tail;
        for (std::size_t l = k + 1; l < zs.size(); ++l)
            tail *= zs[l].prefix * Word::letter(offset + zs[l].gen, zs[l].sign) * zs[l].prefix.inverse();
        RewriteFactor f;
        f.gen = zs[k].gen;
        f.b = zs[k].prefix.inverse() * b * zs[k].prefix;
        f.conj = tail.inverse() * zs[k].prefix;
        f.sign = 1;
        if (zs[k].sign < 0) {
            f.conj *= Word::letter(offset + zs[k].gen);
            f.sign = -1;
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

Word expand_rewriting(const PiPerfectCandidate& cand, const std::vector<RewriteFactor>& factors) {
    auto images = symbol_images(cand);
    Word out;
    for (const auto& f : factors) {
        if (f.gen < 0 || f.gen >= static_cast<int>(cand.normal_generators.size()))
            throw DomainError("rewriting refers to a missing generator");
        Word a = f.conj.substitute(images);
        Word c = commutator(cand.normal_generators[f.gen], f.b.substitute(images)).pow(f.sign);
        out *= a * c * a.inverse();
    }
    return out;
}

Truth verify_rewriting(const PiPerfectCandidate& cand, const Rewriting& rw, const Config& cfg) {
    if (rw.size() != cand.normal_generators.size()) throw DomainError("need one rewriting per generator");
    auto images = symbol_images(cand);
    Truth t = Truth::True;
    for (std::size_t i = 0; i < rw.size() && t != Truth::False; ++i) {
        for (const auto& f : rw[i]) {
            auto m = gamma_membership(cand.ambient, f.b.substitute(images), cfg);
            t = t && (m.status == Membership::In ? Truth::True
                      : m.status == Membership::NotIn ? Truth::False
                                                      : Truth::Unknown);
        }
        Word diff = cand.normal_generators[i].inverse() * expand_rewriting(cand, rw[i]);
        t = t && is_trivial(cand.ambient.source, diff, cfg).status;
    }
    return t;
}

std::string rewriting_str(const PiPerfectCandidate& cand, const Rewriting& rw) {
    auto names = cand.ambient.source.generators;
    for (std::size_t j = 0; j < cand.normal_generators.size(); ++j) names.push_back("m" + std::to_string(j + 1));
    const int off = cand.ambient.source.rank();
    std::ostringstream os;
    for (std::size_t i = 0; i < rw.size(); ++i) {
        os << names[off + i] << " = ";
        if (rw[i].empty()) os << "1";
        for (std::size_t k = 0; k < rw[i].size(); ++k) {
            const auto& f = rw[i][k];
            if (k) os << " . ";
            if (!f.conj.empty()) os << "(" << f.conj.str(names) << ") ";
            os << "[" << names[off + f.gen] << ", " << f.b.str(names) << "]";
            if (f.sign < 0) os << "^-1";
            if (!f.conj.empty()) os << " (" << f.conj.inverse().str(names) << ")";
        }
        os << "\n";
    }
    return os.str();
}

PiPerfectFromSolutions solutions_to_pi_perfect(const EquationSystem& sys, const SolutionSet& g, const SolutionSet& h,
                                               const Config& cfg) {
    const int n = sys.size();
    if (static_cast<int>(g.values.size()) != n || static_cast<int>(h.values.size()) != n)
        throw PreconditionError("solutions have the wrong length");
    for (const auto* s : {&g, &h}) {
        Truth t = is_solution(sys, s->values, cfg);
        if (t != Truth::True) throw PreconditionError("input is not a verified solution (" + to_string(t) + ")");
    }
    const int off = sys.offset();
    PiPerfectFromSolutions out;
    out.candidate.ambient = sys.ambient;
    for (int j = 0; j < n; ++j) out.candidate.normal_generators.push_back(g.values[j] * h.values[j].inverse());

    // x_j -> m_j h_j and x_j -> h_j
    std::vector<Word> to_mh, to_h;
    for (int i = 0; i < off; ++i) {
        to_mh.push_back(Word::letter(i));
        to_h.push_back(Word::letter(i));
    }
    for (int j = 0; j < n; ++j) {
        to_mh.push_back(Word::letter(off + j) * h.values[j]);
        to_h.push_back(h.values[j]);
    }
    out.rewriting.resize(n);
    bool free_ok = true;
    auto images = symbol_images(out.candidate);
    for (int i = 0; i < n; ++i) {
        auto dec = kernel_decomposition(sys.right_sides[i], sys.ambient, n, cfg);
        if (dec.status != Truth::True) throw PreconditionError("equation " + sys.variables[i] + " fails the kernel condition");
        // w(mh) = prod D K D^-1 = prod [D^-1, K^-1] K; move the K to the right
        Word left;
        for (const auto& f : dec.factors) {
            Word ph = f.prefix.substitute(to_h);
            Word d = f.prefix.substitute(to_mh) * ph.inverse();
            Word k = ph * f.core * ph.inverse();
            for (auto r : expand_commutator(d.inverse(), k.inverse(), off)) {
                r.conj = left * r.conj;
                out.rewriting[i].push_back(std::move(r));
            }
            left *= k;
        }
        // the product is freely w_i(g) w_i(h)^-1
        Word expect = sys.right_sides[i].substitute(substitution(sys, g.values)) *
                      sys.right_sides[i].substitute(substitution(sys, h.values)).inverse();
        if (expand_rewriting(out.candidate, out.rewriting[i]) != expect) free_ok = false;
    }
    Truth b_ok = Truth::True;
    for (const auto& fs : out.rewriting)
        for (const auto& f : fs) {
            auto m = gamma_membership(sys.ambient, f.b.substitute(images), cfg);
            b_ok = b_ok && (m.status == Membership::In ? Truth::True
                            : m.status == Membership::NotIn ? Truth::False
                                                            : Truth::Unknown);
        }
    // m_i = w_i(g) w_i(h)^-1 holds in A because g and h are solutions
    out.verified = free_ok ? b_ok : Truth::False;
    for (int c = 1; c <= std::min(cfg.refute_class, kMaxNilpotentClass); ++c) {
        auto nq = nilpotent_quotient(sys.ambient.source, c);
        for (int j = 0; j < n; ++j)
            if (!nq->is_trivial(out.candidate.normal_generators[j]))
                out.notes.push_back("m" + std::to_string(j + 1) + " survives at class " + std::to_string(c) +
                                    ": the two solutions cannot both hold there");
    }
    if (out.notes.empty())
        out.notes.push_back("all generators vanish in the nilpotent quotients up to class " +
                            std::to_string(std::min(cfg.refute_class, kMaxNilpotentClass)));
    return out;
}

SystemFromPiPerfect pi_perfect_to_system(const PiPerfectCandidate& cand, const Rewriting& rw, const Config& cfg) {
    Truth t = verify_rewriting(cand, rw, cfg);
    if (t != Truth::True) throw WitnessError("rewriting does not verify (" + to_string(t) + ")");
    SystemFromPiPerfect out;
    auto& sys = out.system;
    sys.ambient = cand.ambient;
    const int off = cand.ambient.source.rank();
    const int n = static_cast<int>(cand.normal_generators.size());
    std::string stem = "x";
    auto clash = [&](const std::string& s) {
        for (int j = 1; j <= n; ++j)
            if (cand.ambient.source.index_of(s + std::to_string(j))) return true;
        return false;
    };
    while (clash(stem)) stem += "_";
    for (int j = 1; j <= n; ++j) sys.variables.push_back(stem + std::to_string(j));
    auto images = symbol_images(cand);
    for (int i = 0; i < n; ++i) {
        Word w;
        for (const auto& f : rw[i]) {
            Word a = f.conj.substitute(images);
            w *= a * commutator(Word::letter(off + f.gen), f.b.substitute(images)).pow(f.sign) * a.inverse();
        }
        sys.right_sides.push_back(w);
    }
    out.trivial.values.assign(n, Word{});
    out.nontrivial.values = cand.normal_generators;
    if (is_solution(sys, out.trivial.values, cfg) != Truth::True || is_solution(sys, out.nontrivial.values, cfg) != Truth::True)
        throw WitnessError("the exhibited solutions do not verify");
    return out;
}

std::string to_string(PiPerfectStatus s) {
    switch (s) {
        case PiPerfectStatus::Certified: return "CertifiedPiPerfect";
        case PiPerfectStatus::Refuted: return "RefutedAtClass";
        case PiPerfectStatus::Unknown: return "Unknown";
    }
    return "?";
}

PiPerfectVerdict pi_perfect_check(const PiPerfectCandidate& cand, int c, const std::optional<Rewriting>& rw,
                                  const Config& cfg) {
    PiPerfectVerdict v;
    std::vector<Word> gens;
    for (const auto& g : cand.normal_generators)
        if (!g.empty()) gens.push_back(g);
    if (gens.empty()) {
        v.status = PiPerfectStatus::Certified;
        v.witness = "trivial subgroup";
        return v;
    }
    for (const auto& g : gens) {
        auto m = gamma_membership(cand.ambient, g, cfg);
        if (m.status == Membership::NotIn) {
            v.status = PiPerfectStatus::Refuted;
            v.witness = "generator outside ker(gamma): " + m.certificate;
            return v;
        }
    }
    auto nq = nilpotent_quotient(cand.ambient.source, c);
    int best = c + 1;
    std::string which;
    for (const auto& g : gens)
        if (auto k = nq->first_nontrivial_class(g); k && *k < best) {
            best = *k;
            which = cand.ambient.source.word_str(g);
        }
    if (best <= c) {
        v.status = PiPerfectStatus::Refuted;
        v.refuted_at_class = best;
        v.witness = which + " survives in the class-" + std::to_string(best) + " quotient";
        return v;
    }
    if (rw) {
        Truth t = verify_rewriting(cand, *rw, cfg);
        if (t == Truth::True) {
            v.status = PiPerfectStatus::Certified;
            v.witness = rewriting_str(cand, *rw);
            return v;
        }
        v.witness = "rewriting witness did not verify (" + to_string(t) + ")";
        return v;
    }
    v.witness = "no rewriting witness; all generators vanish up to class " + std::to_string(c);
    return v;
}

namespace {

bool is_identity_map(const MorphismOverG& f) {
    if (!same_shape(f.source(), f.target())) return false;
    for (int i = 0; i < f.source().rank(); ++i)
        if (f.images[i] != Word::letter(i)) return false;
    return true;
}

OmegaCondition normal_surjection(const MorphismOverG& f, const Config& cfg) {
    const auto& b = f.target();
    std::vector<Word> from_a, kb;
    try {
        for (const auto& k : kernel_normal_generators(f.gamma_a, std::nullopt, cfg).all()) {
            Word w = f.apply(k);
            if (!w.empty()) from_a.push_back(w);
        }
        kb = kernel_normal_generators(f.gamma_b, std::nullopt, cfg).all();
    } catch (const WitnessError& e) {
        return {Truth::Unknown, std::string("kernel generators unavailable: ") + e.what()};
    }
    Config quick = cfg;
    quick.search_budget = std::min(cfg.search_budget, 200);
    int nodes = 0;
    std::vector<Word> conjugators{Word{}};
    for (int g = 0; g < b.rank(); ++g)
        for (int e : {1, -1}) conjugators.push_back(Word::letter(g, e));
    std::vector<Word> pieces;
    for (const auto& u : from_a)
        for (int e : {1, -1})
            for (const auto& c : conjugators) pieces.push_back(conjugate(u.pow(e), c));
    for (const auto& k : kb) {
        if (k.empty()) continue;
        auto triv = is_trivial(b, k, quick);
        if (triv.status == Truth::True) continue;
        if (from_a.empty()) {
            if (triv.status == Truth::False)
                return {Truth::False, "ker(gamma_B) contains " + b.word_str(k) + " but the image of ker(gamma_A) is trivial"};
            return {Truth::Unknown, "image of ker(gamma_A) is trivial; " + b.word_str(k) + " undecided"};
        }
        bool found = false;
        for (std::size_t i = 0; i < pieces.size() && !found; ++i) {
            if (++nodes > cfg.search_budget || cfg.cancelled()) break;
            found = are_equal(b, k, pieces[i], quick).status == Truth::True;
        }
        for (std::size_t i = 0; i < pieces.size() && !found && nodes <= cfg.search_budget; ++i)
            for (std::size_t j = 0; j < pieces.size() && !found; ++j) {
                if (++nodes > cfg.search_budget || cfg.cancelled()) break;
                found = are_equal(b, k, pieces[i] * pieces[j], quick).status == Truth::True;
            }
        if (!found)
            return {Truth::Unknown, "search budget exhausted for " + b.word_str(k)};
    }
    return {Truth::True, "each normal generator of ker(gamma_B) is a product of conjugates of images"};
}

}  // namespace

OmegaReport omega_check(const MorphismOverG& f, const OmegaWitnesses& wit, const Config& cfg) {
    OmegaReport rep;
    const auto& a = f.source();
    const auto& b = f.target();
    rep.conditions[0] = {Truth::True, "source has " + std::to_string(a.rank()) + " generators; target has " +
                                          std::to_string(b.rank()) + " generators and " +
                                          std::to_string(b.relators.size()) + " relators"};
    if (a.rank() <= 1) {
        rep.conditions[1] = {Truth::True, "source is cyclic, so every subgroup is cyclic"};
    } else {
        try {
            auto k = kernel_normal_generators(f, wit.surjectivity, cfg);
            rep.conditions[1] = {Truth::True, "kernel normally generated by " + std::to_string(k.all().size()) + " words"};
        } catch (const WitnessError& e) {
            rep.conditions[1] = {Truth::Unknown, e.what()};
        }
    }
    rep.conditions[2] = normal_surjection(f, cfg);
    auto h1 = h1_compare(f, cfg);
    Truth t1 = h1.status == ModuleComparison::Iso      ? Truth::True
               : h1.status == ModuleComparison::NotIso ? Truth::False
                                                       : Truth::Unknown;
    Truth t2 = wit.h2_surjective || is_identity_map(f) ? Truth::True : Truth::Unknown;
    std::string h2 = wit.h2_surjective ? "H2 onto by supplied witness"
                     : is_identity_map(f) ? "H2 onto (identity map)"
                                          : "H2 epimorphism needs a chain-level witness";
    rep.conditions[3] = {t1 && t2, "H1 " + to_string(h1.status) + ": " + h1.witness + "; " + h2};
    // an undecided condition leaves the verdict undecided, even next to a refuted one
    rep.verdict = Truth::True;
    for (const auto& c : rep.conditions) rep.verdict = rep.verdict && c.status;
    for (const auto& c : rep.conditions)
        if (c.status == Truth::Unknown) rep.verdict = Truth::Unknown;
    return rep;
}

}  // namespace ck
