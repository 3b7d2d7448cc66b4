#include "ck/presentation.hpp"

#include "ck/errors.hpp"

#include <cctype>
#include <sstream>

namespace ck {

std::optional<int> GroupPresentation::index_of(std::string_view gen) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == gen) return static_cast<int>(i);
    return std::nullopt;
}

void GroupPresentation::validate() const {
    if (generators.empty() && !relators.empty()) throw DomainError("group " + name + ": relators without generators");
    auto check = [&](const Word& w, const std::string& what) {
        for (const auto& s : w.syllables())
            if (s.gen < 0 || s.gen >= rank())
                throw DomainError("group " + name + ": " + what + " uses undeclared generator index " + std::to_string(s.gen));
    };
    for (const auto& r : relators) check(r, "relator");
    for (const auto& [role, w] : marked) check(w, "marked word '" + role + "'");
}

const Word& GroupPresentation::meridian() const {
    auto it = marked.find("meridian");
    if (it == marked.end()) throw PreconditionError("group " + name + " has no marked meridian");
    return it->second;
}

const Word& GroupPresentation::longitude() const {
    auto it = marked.find("longitude");
    if (it == marked.end()) throw PreconditionError("group " + name + " has no marked longitude");
    return it->second;
}

const GroupPresentation& PresentationDocument::group(const std::string& name) const {
    for (const auto& g : groups)
        if (g.name == name) return g;
    throw DomainError("unknown group '" + name + "'");
}

EpiOverG PresentationDocument::epi(const std::string& source) const {
    auto it = epis.find(source);
    if (it == epis.end()) throw DomainError("group '" + source + "' declares no epi");
    EpiOverG e;
    e.source = group(source);
    e.target = group(it->second.target);
    e.images = it->second.images;
    return e;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

/// Recursive-descent parser for WORD. Positions are reported relative to a
/// base line/column so errors point into the original file.
class WordParser {
public:
    WordParser(std::string_view text, const std::vector<std::string>& gens, int line, int col0)
        : s_(text), gens_(gens), line_(line), col0_(col0) {}

    ExprPtr parse_all() {
        auto e = parse_word({});
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    ExprPtr parse_word(std::string_view stops) {
        std::vector<ExprPtr> parts;
        for (;;) {
            skip_ws();
            if (pos_ >= s_.size() || stops.find(s_[pos_]) != std::string_view::npos) break;
            auto t = parse_term();
            for (auto& p : t) parts.push_back(std::move(p));
        }
        if (parts.empty()) fail("expected a word");
        return WordExpr::product(std::move(parts));
    }

    std::int64_t parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail("expected an integer exponent");
        }
        try {
            return std::stoll(std::string(s_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            pos_ = start;
            fail("exponent out of range");
        }
    }

    ExprPtr maybe_power(ExprPtr base) {
        skip_ws();
        while (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            std::int64_t e = parse_int();
            base = WordExpr::power(base, e);
            skip_ws();
        }
        return base;
    }

    std::vector<ExprPtr> parse_term() {
        skip_ws();
        char c = s_[pos_];
        if (c == '[') {
            ++pos_;
            auto a = parse_word(",]");
            if (pos_ >= s_.size() || s_[pos_] != ',') fail("expected ',' in commutator");
            ++pos_;
            auto b = parse_word("]");
            if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ']'");
            ++pos_;
            return {maybe_power(WordExpr::bracket(a, b))};
        }
        if (c == '(') {
            ++pos_;
            auto a = parse_word(")");
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return {maybe_power(a)};
        }
        if (c == '1') {
            ++pos_;
            return {maybe_power(WordExpr::identity())};
        }
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            std::vector<ExprPtr> letters = resolve(name, start);
            letters.back() = maybe_power(letters.back());
            return letters;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    // A run of declared single-character generators written without spaces
    // ("xy") is read as their product.
    std::vector<ExprPtr> resolve(const std::string& name, std::size_t start) {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i] == name) return {WordExpr::make_letter(static_cast<int>(i))};
        std::vector<ExprPtr> out;
        for (char ch : name) {
            bool found = false;
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                if (gens_[i].size() == 1 && gens_[i][0] == ch) {
                    out.push_back(WordExpr::make_letter(static_cast<int>(i)));
                    found = true;
                    break;
                }
            }
            if (!found) {
                pos_ = start;
                fail("undeclared generator '" + name + "'");
            }
        }
        return out;
    }

    std::string_view s_;
    const std::vector<std::string>& gens_;
    int line_;
    int col0_;
    std::size_t pos_ = 0;
};

struct PendingMap {
    MapSpec spec;
    std::vector<std::pair<std::string, std::pair<std::string, int>>> raw;  // gen -> (text, column)
    int line = 0;
    bool is_epi = false;
};

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int column_of(std::string_view line, std::string_view part) {
    return static_cast<int>(part.data() - line.data());
}

/// "g1 -> WORD , g2 -> WORD" with column bookkeeping.
std::vector<std::pair<std::string, std::pair<std::string, int>>> parse_assignments(std::string_view line,
                                                                                   std::string_view body, int lineno) {
    std::vector<std::pair<std::string, std::pair<std::string, int>>> out;
    std::size_t i = 0;
    while (i <= body.size()) {
        // split on commas at bracket depth 0
        int depth = 0;
        std::size_t j = i;
        for (; j < body.size(); ++j) {
            char c = body[j];
            if (c == '[' || c == '(') ++depth;
            if (c == ']' || c == ')') --depth;
            if (c == ',' && depth == 0) break;
        }
        std::string_view item = trim(body.substr(i, j - i));
        if (!item.empty()) {
            auto arrow = item.find("->");
            if (arrow == std::string_view::npos)
                throw ParseError("expected 'gen -> WORD'", lineno, column_of(line, item) + 1);
            std::string gen(trim(item.substr(0, arrow)));
            std::string_view rhs = trim(item.substr(arrow + 2));
            if (gen.empty()) throw ParseError("missing generator before '->'", lineno, column_of(line, item) + 1);
            if (rhs.empty()) throw ParseError("missing image after '->'", lineno, column_of(line, item) + 1);
            out.push_back({gen, {std::string(rhs), column_of(line, rhs)}});
        }
        if (j >= body.size()) break;
        i = j + 1;
    }
    return out;
}

}  // namespace

ExprPtr parse_word_expr(std::string_view text, const std::vector<std::string>& gens, int line, int column) {
    return WordParser(text, gens, line, column).parse_all();
}

Word parse_word(std::string_view text, const std::vector<std::string>& gens) {
    return parse_word_expr(text, gens)->eval();
}

PresentationDocument parse_document(std::string_view text) {
    PresentationDocument doc;
    std::vector<PendingMap> pending;
    GroupPresentation* cur = nullptr;
    bool gens_seen = false;
    int lineno = 0;
    std::size_t start = 0;
    auto finish_group = [&](int line) {
        if (cur && !gens_seen) throw ParseError("group " + cur->name + " has no gens line", line, 1);
        if (cur && cur->generators.empty()) throw ParseError("group " + cur->name + ": empty generator list", line, 1);
    };
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view full = text.substr(start, end - start);
        ++lineno;
        start = end + 1;
        std::string_view line = full;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view body = trim(line);
        if (body.empty()) {
            if (end == text.size()) break;
            continue;
        }
        std::size_t kw_end = 0;
        while (kw_end < body.size() && !std::isspace(static_cast<unsigned char>(body[kw_end]))) ++kw_end;
        std::string kw(body.substr(0, kw_end));
        std::string_view rest = trim(body.substr(kw_end));
        int rest_col = column_of(full, rest);

        if (kw == "group") {
            finish_group(lineno);
            auto toks = split_ws(rest);
            if (toks.size() != 1) throw ParseError("expected 'group NAME'", lineno, column_of(full, body) + 1);
            for (const auto& g : doc.groups)
                if (g.name == toks[0]) throw ParseError("duplicate group '" + toks[0] + "'", lineno, rest_col + 1);
            doc.groups.push_back({});
            cur = &doc.groups.back();
            cur->name = toks[0];
            gens_seen = false;
            continue;
        }
        if (kw == "map") {
            // map NAME : SRC -> TGT : g -> WORD, ...
            auto c1 = rest.find(':');
            if (c1 == std::string_view::npos) throw ParseError("expected 'map NAME : SRC -> TGT : ...'", lineno, rest_col + 1);
            auto c2 = rest.find(':', c1 + 1);
            if (c2 == std::string_view::npos) throw ParseError("expected second ':' in map", lineno, rest_col + 1);
            std::string name(trim(rest.substr(0, c1)));
            std::string_view st = trim(rest.substr(c1 + 1, c2 - c1 - 1));
            auto arrow = st.find("->");
            if (arrow == std::string_view::npos) throw ParseError("expected 'SRC -> TGT'", lineno, column_of(full, st) + 1);
            PendingMap pm;
            pm.spec.name = name;
            pm.spec.source = std::string(trim(st.substr(0, arrow)));
            pm.spec.target = std::string(trim(st.substr(arrow + 2)));
            pm.raw = parse_assignments(full, rest.substr(c2 + 1), lineno);
            pm.line = lineno;
            pending.push_back(std::move(pm));
            continue;
        }
        if (!cur) throw ParseError("'" + kw + "' before any 'group' line", lineno, column_of(full, body) + 1);
        if (kw == "gens") {
            if (gens_seen) throw ParseError("second gens line for group " + cur->name, lineno, column_of(full, body) + 1);
            gens_seen = true;
            cur->generators = split_ws(rest);
            if (cur->generators.empty()) throw ParseError("empty generator list", lineno, column_of(full, body) + 1);
            for (std::size_t i = 0; i < cur->generators.size(); ++i) {
                const auto& g = cur->generators[i];
                bool ok = ident_start(g[0]);
                for (char ch : g) ok = ok && ident_char(ch);
                if (!ok) throw ParseError("bad generator name '" + g + "'", lineno, rest_col + 1);
                for (std::size_t j = 0; j < i; ++j)
                    if (cur->generators[j] == g) throw ParseError("duplicate generator '" + g + "'", lineno, rest_col + 1);
            }
            continue;
        }
        if (!gens_seen) throw ParseError("'" + kw + "' before gens line", lineno, column_of(full, body) + 1);
        if (kw == "rel") {
            if (rest.empty()) throw ParseError("expected a relator word", lineno, rest_col + 1);
            auto eq = rest.find('=');
            if (eq == std::string_view::npos) {
                cur->relators.push_back(WordParser(rest, cur->generators, lineno, rest_col).parse_all()->eval());
            } else {
                std::string_view lhs = trim(rest.substr(0, eq)), rhs = trim(rest.substr(eq + 1));
                if (lhs.empty() || rhs.empty()) throw ParseError("expected 'rel W1 = W2'", lineno, rest_col + 1);
                Word l = WordParser(lhs, cur->generators, lineno, column_of(full, lhs)).parse_all()->eval();
                Word r = WordParser(rhs, cur->generators, lineno, column_of(full, rhs)).parse_all()->eval();
                cur->relators.push_back(l * r.inverse());
            }
            continue;
        }
        if (kw == "mark") {
            std::size_t sp = 0;
            while (sp < rest.size() && !std::isspace(static_cast<unsigned char>(rest[sp]))) ++sp;
            std::string role(rest.substr(0, sp));
            if (role != "meridian" && role != "longitude")
                throw ParseError("mark role must be meridian or longitude", lineno, rest_col + 1);
            std::string_view w = trim(rest.substr(sp));
            if (w.empty()) throw ParseError("expected a word after mark " + role, lineno, rest_col + 1);
            cur->marked[role] = WordParser(w, cur->generators, lineno, column_of(full, w)).parse_all()->eval();
            continue;
        }
        if (kw == "epi") {
            auto colon = rest.find(':');
            if (colon == std::string_view::npos) throw ParseError("expected 'epi TARGET : ...'", lineno, rest_col + 1);
            PendingMap pm;
            pm.is_epi = true;
            pm.spec.name = "gamma_" + cur->name;
            pm.spec.source = cur->name;
            pm.spec.target = std::string(trim(rest.substr(0, colon)));
            if (pm.spec.target.empty()) throw ParseError("missing epi target", lineno, rest_col + 1);
            pm.raw = parse_assignments(full, rest.substr(colon + 1), lineno);
            pm.line = lineno;
            pending.push_back(std::move(pm));
            continue;
        }
        throw ParseError("unknown keyword '" + kw + "'", lineno, column_of(full, body) + 1);
    }
    finish_group(lineno);

    for (auto& pm : pending) {
        const GroupPresentation* src = nullptr;
        const GroupPresentation* tgt = nullptr;
        for (const auto& g : doc.groups) {
            if (g.name == pm.spec.source) src = &g;
            if (g.name == pm.spec.target) tgt = &g;
        }
        if (!src) throw ParseError("unknown source group '" + pm.spec.source + "'", pm.line, 1);
        if (!tgt) throw ParseError("unknown target group '" + pm.spec.target + "'", pm.line, 1);
        pm.spec.images.assign(src->generators.size(), Word{});
        std::vector<bool> seen(src->generators.size(), false);
        for (const auto& [gen, rhs] : pm.raw) {
            auto idx = src->index_of(gen);
            if (!idx) throw ParseError("'" + gen + "' is not a generator of " + src->name, pm.line, rhs.second + 1);
            if (seen[*idx]) throw ParseError("generator '" + gen + "' assigned twice", pm.line, rhs.second + 1);
            seen[*idx] = true;
            pm.spec.images[*idx] = WordParser(rhs.first, tgt->generators, pm.line, rhs.second).parse_all()->eval();
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) throw ParseError("no image for generator '" + src->generators[i] + "'", pm.line, 1);
        auto& dest = pm.is_epi ? doc.epis : doc.maps;
        if (dest.count(pm.is_epi ? pm.spec.source : pm.spec.name))
            throw ParseError("duplicate declaration of '" + pm.spec.name + "'", pm.line, 1);
        dest[pm.is_epi ? pm.spec.source : pm.spec.name] = pm.spec;
    }
    return doc;
}

GroupPresentation parse_presentation(std::string_view text) {
    auto doc = parse_document(text);
    if (doc.groups.empty()) throw ParseError("no group declared", 1, 1);
    return doc.groups.front();
}

std::string to_text(const GroupPresentation& p) {
    std::string out = "group " + p.name + "\ngens";
    for (const auto& g : p.generators) out += " " + g;
    out += "\n";
    for (const auto& r : p.relators) out += "rel " + p.word_str(r) + "\n";
    for (const auto& [role, w] : p.marked) out += "mark " + role + " " + p.word_str(w) + "\n";
    return out;
}

GroupPresentation free_group(const std::string& name, const std::vector<std::string>& gens) {
    GroupPresentation p;
    p.name = name;
    p.generators = gens;
    return p;
}

GroupPresentation trivial_group(const std::string& name) {
    GroupPresentation p;
    p.name = name;
    return p;
}

GroupPresentation free_abelian_group(const std::string& name, const std::vector<std::string>& gens) {
    GroupPresentation p = free_group(name, gens);
    for (int i = 0; i < p.rank(); ++i)
        for (int j = i + 1; j < p.rank(); ++j) p.relators.push_back(commutator(Word::letter(i), Word::letter(j)));
    return p;
}

GroupPresentation free_nilpotent_presentation(const std::string& name, const std::vector<std::string>& gens, int c) {
    GroupPresentation p = free_group(name, gens);
    int r = p.rank();
    if (c < 1) throw DomainError("nilpotency class must be at least 1");
    // Commutators [x_i, x_j] with i < j, then bracket with every generator.
    std::vector<Word> layer;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) layer.push_back(commutator(Word::letter(i), Word::letter(j)));
    for (int w = 2; w <= c; ++w) {
        std::vector<Word> next;
        for (const auto& u : layer)
            for (int k = 0; k < r; ++k) next.push_back(commutator(u, Word::letter(k)));
        layer = std::move(next);
    }
    p.relators = layer;
    return p;
}

GroupPresentation trefoil_group() {
    GroupPresentation p = parse_presentation(
        "group trefoil\n"
        "gens x y\n"
        "rel x y x y^-1 x^-1 y^-1\n"
        "mark meridian x\n"
        "mark longitude x y x y x y x^-6\n");
    return p;
}

GroupPresentation unknot_group(const std::string& gen) {
    GroupPresentation p = free_group("unknot", {gen});
    p.marked["meridian"] = Word::letter(0);
    p.marked["longitude"] = Word{};
    return p;
}

}  // namespace ck
