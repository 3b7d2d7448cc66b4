#include "ck/word.hpp"

#include "ck/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace ck {

Word Word::letter(int gen, std::int64_t exp) {
    Word w;
    if (exp != 0) w.syl_.push_back({gen, exp});
    return w;
}

std::int64_t Word::length() const {
    std::int64_t n = 0;
    for (const auto& s : syl_) n = checked::add(n, std::abs(s.exp));
    return n;
}

int Word::max_gen() const {
    int m = -1;
    for (const auto& s : syl_) m = std::max(m, s.gen);
    return m;
}

std::int64_t Word::exponent_sum(int gen) const {
    std::int64_t n = 0;
    for (const auto& s : syl_)
        if (s.gen == gen) n = checked::add(n, s.exp);
    return n;
}

Word free_reduce(const std::vector<Syllable>& raw) {
    Word out;
    auto& st = out.syl_;
    for (const auto& s : raw) {
        if (s.exp == 0) continue;
        if (!st.empty() && st.back().gen == s.gen) {
            std::int64_t e = checked::add(st.back().exp, s.exp);
            if (e == 0)
                st.pop_back();
            else
                st.back().exp = e;
        } else {
            st.push_back(s);
        }
    }
    return out;
}

Word Word::inverse() const {
    Word w;
    w.syl_.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::pow(std::int64_t e) const {
    if (e == 0 || empty()) return {};
    Word base = e > 0 ? *this : inverse();
    std::uint64_t n = e > 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-e);
    if (syl_.size() == 1) return letter(base.syl_[0].gen, checked::mul(base.syl_[0].exp, static_cast<std::int64_t>(n)));
    Word result;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Word Word::substitute(const std::vector<Word>& images) const {
    Word out;
    for (const auto& s : syl_) {
        if (s.gen < 0 || static_cast<std::size_t>(s.gen) >= images.size())
            throw std::out_of_range("substitute: generator index without image");
        out *= images[s.gen].pow(s.exp);
    }
    return out;
}

Word Word::shifted(int offset) const {
    Word w = *this;
    for (auto& s : w.syl_) s.gen += offset;
    return w;
}

std::vector<Syllable> Word::letters() const {
    std::vector<Syllable> out;
    for (const auto& s : syl_) {
        std::int64_t sg = s.exp > 0 ? 1 : -1;
        for (std::int64_t k = 0; k < std::abs(s.exp); ++k) out.push_back({s.gen, sg});
    }
    return out;
}

Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r *= b;
    return r;
}

Word& Word::operator*=(const Word& b) {
    std::size_t i = 0;
    while (i < b.syl_.size() && !syl_.empty()) {
        auto& last = syl_.back();
        const auto& s = b.syl_[i];
        if (last.gen != s.gen) break;
        std::int64_t e = checked::add(last.exp, s.exp);
        ++i;
        if (e == 0) {
            syl_.pop_back();
        } else {
            last.exp = e;
            break;
        }
    }
    syl_.insert(syl_.end(), b.syl_.begin() + static_cast<std::ptrdiff_t>(i), b.syl_.end());
    return *this;
}

std::string Word::str(const std::vector<std::string>& names) const {
    if (syl_.empty()) return "1";
    std::string out;
    for (const auto& s : syl_) {
        if (!out.empty()) out += ' ';
        if (s.gen >= 0 && static_cast<std::size_t>(s.gen) < names.size())
            out += names[s.gen];
        else
            out += "g" + std::to_string(s.gen);
        if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
}

Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

Word left_normed(const std::vector<Word>& ws) {
    if (ws.empty()) return {};
    Word acc = ws[0];
    for (std::size_t i = 1; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
    return acc;
}

Word conjugate(const Word& w, const Word& g) { return g.inverse() * w * g; }

Word cyclic_core(const Word& w) {
    std::vector<Syllable> s = w.syllables();
    while (s.size() >= 2 && s.front().gen == s.back().gen) {
        std::int64_t e = checked::add(s.front().exp, s.back().exp);
        s.pop_back();
        s.front().exp = e;
        if (e == 0) s.erase(s.begin());
    }
    return free_reduce(s);
}

namespace {

bool is_rotation(const std::vector<Syllable>& a, const std::vector<Syllable>& b) {
    if (a.size() != b.size()) return false;
    if (a == b) return true;
    std::vector<Syllable> la, lb;
    for (const auto& s : a)
        for (std::int64_t k = 0; k < std::abs(s.exp); ++k) la.push_back({s.gen, s.exp > 0 ? 1 : -1});
    for (const auto& s : b)
        for (std::int64_t k = 0; k < std::abs(s.exp); ++k) lb.push_back({s.gen, s.exp > 0 ? 1 : -1});
    if (la.size() != lb.size()) return false;
    std::size_t n = la.size();
    for (std::size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = la[(i + r) % n] == lb[i];
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool cyclically_equivalent(const Word& a, const Word& b) {
    Word ca = cyclic_core(a), cb = cyclic_core(b);
    if (ca.length() != cb.length()) return false;
    return is_rotation(ca.syllables(), cb.syllables()) || is_rotation(ca.syllables(), cb.inverse().syllables());
}

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& s : w.syllables()) {
        h ^= std::hash<std::int64_t>{}(s.gen * 1000003LL + s.exp) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Word WordExpr::eval() const {
    switch (kind) {
        case Kind::Identity: return {};
        case Kind::Letter: return Word::letter(gen);
        case Kind::Product: {
            Word w;
            for (const auto& c : children) w *= c->eval();
            return w;
        }
        case Kind::Commutator: return commutator(children[0]->eval(), children[1]->eval());
        case Kind::Power: return children[0]->eval().pow(exp);
    }
    return {};
}

std::string WordExpr::str(const std::vector<std::string>& names) const {
    switch (kind) {
        case Kind::Identity: return "1";
        case Kind::Letter:
            return gen >= 0 && static_cast<std::size_t>(gen) < names.size() ? names[gen] : "g" + std::to_string(gen);
        case Kind::Product: {
            std::string out;
            for (const auto& c : children) {
                if (!out.empty()) out += ' ';
                out += c->str(names);
            }
            return out;
        }
        case Kind::Commutator: return "[" + children[0]->str(names) + "," + children[1]->str(names) + "]";
        case Kind::Power: {
            std::string base = children[0]->str(names);
            if (children[0]->kind == Kind::Product) base = "(" + base + ")";
            return base + "^" + std::to_string(exp);
        }
    }
    return "";
}

ExprPtr WordExpr::identity() { return std::make_shared<WordExpr>(); }

ExprPtr WordExpr::make_letter(int g) {
    auto e = std::make_shared<WordExpr>();
    e->kind = Kind::Letter;
    e->gen = g;
    return e;
}

ExprPtr WordExpr::product(std::vector<ExprPtr> parts) {
    if (parts.empty()) return identity();
    if (parts.size() == 1) return parts[0];
    auto e = std::make_shared<WordExpr>();
    e->kind = Kind::Product;
    e->children = std::move(parts);
    return e;
}

ExprPtr WordExpr::bracket(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<WordExpr>();
    e->kind = Kind::Commutator;
    e->children = {std::move(a), std::move(b)};
    return e;
}

ExprPtr WordExpr::power(ExprPtr base, std::int64_t p) {
    if (p == 1) return base;
    auto e = std::make_shared<WordExpr>();
    e->kind = Kind::Power;
    e->exp = p;
    e->children = {std::move(base)};
    return e;
}

ExprPtr WordExpr::from_word(const Word& w) {
    std::vector<ExprPtr> parts;
    for (const auto& s : w.syllables()) parts.push_back(power(make_letter(s.gen), s.exp));
    return product(std::move(parts));
}

}  // namespace ck
