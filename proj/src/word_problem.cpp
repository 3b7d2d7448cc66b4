#include "ck/word_problem.hpp"

#include "ck/nilpotent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <mutex>
#include <queue>
#include <set>
#include <unordered_set>

namespace ck {

namespace {

using Letters = std::vector<std::pair<int, int>>;  // (gen, +-1)

Letters to_letters(const Word& w) {
    Letters out;
    for (const auto& s : w.syllables())
        for (std::int64_t k = 0; k < std::abs(s.exp); ++k) out.push_back({s.gen, s.exp > 0 ? 1 : -1});
    return out;
}

Word from_letters(const Letters& ls) {
    std::vector<Syllable> raw;
    raw.reserve(ls.size());
    for (auto [g, e] : ls) raw.push_back({g, e});
    return free_reduce(raw);
}

/// Least rotation of the cyclic core, used as a conjugacy-class key.
Letters canonical_cyclic(const Word& w) {
    Letters l = to_letters(cyclic_core(w));
    if (l.empty()) return l;
    Letters best = l;
    std::size_t n = l.size();
    for (std::size_t r = 1; r < n; ++r) {
        Letters rot(l.begin() + static_cast<std::ptrdiff_t>(r), l.end());
        rot.insert(rot.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(r));
        if (rot < best) best = std::move(rot);
    }
    return best;
}

bool matches_relator(const GroupPresentation& p, const Word& w) {
    for (const auto& r : p.relators)
        if (!r.empty() && cyclically_equivalent(w, r)) return true;
    return false;
}

std::string key_of(const GroupPresentation& p) {
    std::string key = std::to_string(p.rank()) + "|";
    for (const auto& r : p.relators) {
        for (const auto& s : r.syllables()) key += std::to_string(s.gen) + ":" + std::to_string(s.exp) + ",";
        key += ";";
    }
    return key;
}

}  // namespace

bool derive_trivial(const GroupPresentation& p, const Word& w, int budget, int max_len, const CancelToken* cancel) {
    if (w.empty()) return true;
    // cyclic variants of every relator and its inverse
    std::vector<Letters> variants;
    {
        std::set<Letters> seen;
        for (const auto& r : p.relators) {
            for (const Word& rr : {cyclic_core(r), cyclic_core(r).inverse()}) {
                Letters l = to_letters(rr);
                for (std::size_t k = 0; k < l.size(); ++k) {
                    Letters rot(l.begin() + static_cast<std::ptrdiff_t>(k), l.end());
                    rot.insert(rot.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(k));
                    if (seen.insert(rot).second) variants.push_back(rot);
                }
            }
        }
    }
    if (variants.empty()) return false;
    const int slack = 2;
    using Node = std::pair<std::size_t, std::uint64_t>;
    std::priority_queue<std::pair<std::pair<std::size_t, std::uint64_t>, Letters>,
                        std::vector<std::pair<std::pair<std::size_t, std::uint64_t>, Letters>>, std::greater<>>
        open;
    std::set<Letters> visited;
    std::uint64_t counter = 0;
    Letters start = canonical_cyclic(w);
    open.push({Node{start.size(), counter++}, start});
    visited.insert(start);
    int expanded = 0;
    while (!open.empty() && expanded < budget) {
        if (cancel && cancel->is_cancelled()) return false;
        Letters cur = open.top().second;
        open.pop();
        ++expanded;
        const std::size_t n = cur.size();
        // Work on the doubled word so subwords may wrap around.
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& v : variants) {
                std::size_t k = 0;
                while (k < v.size() && k < n && cur[(i + k) % n] == v[k]) ++k;
                for (std::size_t len = k; len >= 1; --len) {
                    std::size_t rest = v.size() - len;
                    if (static_cast<int>(rest) > static_cast<int>(len) + slack) break;
                    if (static_cast<int>(n - len + rest) > max_len) continue;
                    // rotate so the matched piece starts at 0, drop it, append inverse of the remainder
                    Letters next;
                    next.reserve(n - len + rest);
                    for (std::size_t j = len; j < n; ++j) next.push_back(cur[(i + j) % n]);
                    for (std::size_t j = v.size(); j-- > len;) next.push_back({v[j].first, -v[j].second});
                    Word nw = from_letters(next);
                    Letters canon = canonical_cyclic(nw);
                    if (canon.empty()) return true;
                    if (visited.insert(canon).second) open.push({Node{canon.size(), counter++}, std::move(canon)});
                }
            }
        }
    }
    return false;
}

std::optional<int> certified_nilpotency_class(const GroupPresentation& p) {
    static std::mutex mu;
    static std::map<std::string, std::optional<int>> cache;
    std::string key = key_of(p);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::optional<int> result;
    const int r = p.rank();
    if (r <= 1) {
        result = 1;
    } else {
        std::vector<Word> layer;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) layer.push_back(commutator(Word::letter(i), Word::letter(j)));
        for (int c = 1; c <= kMaxNilpotentClass && !result; ++c) {
            bool all = true;
            for (const auto& w : layer) {
                if (w.empty() || matches_relator(p, w)) continue;
                if (!derive_trivial(p, w, 300, 48)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                result = c;
                break;
            }
            std::vector<Word> next;
            for (const auto& u : layer)
                for (int k = 0; k < r; ++k) next.push_back(commutator(u, Word::letter(k)));
            layer = std::move(next);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = result;
    return result;
}

std::vector<int> PermutationRep::apply(const Word& w) const {
    std::vector<int> pt(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
        int x = i;
        for (const auto& s : w.syllables()) {
            const auto& g = images[static_cast<std::size_t>(s.gen)];
            if (s.exp > 0) {
                for (std::int64_t k = 0; k < s.exp; ++k) x = g[static_cast<std::size_t>(x)];
            } else {
                for (std::int64_t k = 0; k < -s.exp; ++k)
                    x = static_cast<int>(std::find(g.begin(), g.end(), x) - g.begin());
            }
        }
        pt[static_cast<std::size_t>(i)] = x;
    }
    return pt;
}

std::string PermutationRep::str(const GroupPresentation& p) const {
    std::string out = "S_" + std::to_string(degree) + ":";
    for (std::size_t g = 0; g < images.size(); ++g) {
        out += " " + p.generators[g] + " -> (";
        for (std::size_t i = 0; i < images[g].size(); ++i) out += (i ? " " : "") + std::to_string(images[g][i]);
        out += ")";
    }
    return out;
}

std::shared_ptr<const std::vector<PermutationRep>> permutation_representations(const GroupPresentation& p,
                                                                               long max_tuples) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const std::vector<PermutationRep>>> cache;
    const std::string key = to_text(p) + "#" + std::to_string(max_tuples);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto reps = std::make_shared<std::vector<PermutationRep>>();
    const int k = p.rank();
    for (int n = 3; n <= 5 && k > 0; ++n) {
        std::vector<std::vector<int>> perms;
        std::vector<int> id(static_cast<std::size_t>(n));
        std::iota(id.begin(), id.end(), 0);
        do perms.push_back(id);
        while (std::next_permutation(id.begin(), id.end()));
        double tuples = std::pow(static_cast<double>(perms.size()), k);
        if (tuples > static_cast<double>(max_tuples)) break;
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        PermutationRep rep;
        rep.degree = n;
        rep.images.resize(static_cast<std::size_t>(k));
        while (true) {
            bool nontrivial = false;
            for (int g = 0; g < k; ++g) {
                rep.images[static_cast<std::size_t>(g)] = perms[idx[static_cast<std::size_t>(g)]];
                nontrivial = nontrivial || idx[static_cast<std::size_t>(g)] != 0;
            }
            bool ok = nontrivial;
            for (std::size_t r = 0; ok && r < p.relators.size(); ++r) ok = rep.apply(p.relators[r]) == perms[0];
            if (ok) reps->push_back(rep);
            int g = 0;
            while (g < k && ++idx[static_cast<std::size_t>(g)] == perms.size()) idx[static_cast<std::size_t>(g++)] = 0;
            if (g == k) break;
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, reps).first->second;
}

TrivialityResult is_trivial(const GroupPresentation& p, const Word& w, const Config& cfg) {
    if (w.empty()) return {Truth::True, "freely trivial"};
    if (p.relators.empty()) return {Truth::False, "nontrivial reduced word in a free group"};
    if (matches_relator(p, w)) return {Truth::True, "conjugate of a relator or its inverse"};
    if (auto c = certified_nilpotency_class(p)) {
        auto q = nilpotent_quotient(p, *c);
        if (q->is_trivial(w)) return {Truth::True, "trivial in the group, which is nilpotent of class <= " + std::to_string(*c)};
        return {Truth::False, "nontrivial in the group, which is nilpotent of class <= " + std::to_string(*c)};
    }
    auto q = nilpotent_quotient(p, cfg.verify_class);
    if (auto k = q->first_nontrivial_class(w))
        return {Truth::False, "nontrivial in the class-" + std::to_string(*k) + " nilpotent quotient"};
    if (cfg.permutation_tuples > 0) {
        auto reps = permutation_representations(p, cfg.permutation_tuples);
        for (const auto& rep : *reps) {
            auto img = rep.apply(w);
            for (int i = 0; i < rep.degree; ++i)
                if (img[static_cast<std::size_t>(i)] != i)
                    return {Truth::False, "nontrivial under " + rep.str(p)};
        }
    }
    if (derive_trivial(p, w, cfg.search_budget, cfg.max_word_length, cfg.cancel.get()))
        return {Truth::True, "derived from the relators by rewriting"};
    return {Truth::Unknown, "trivial in nilpotent quotients up to class " +
                                std::to_string(cfg.verify_class) +
                                "; rewriting search exhausted its budget"};
}

TrivialityResult are_equal(const GroupPresentation& p, const Word& a, const Word& b, const Config& cfg) {
    return is_trivial(p, a * b.inverse(), cfg);
}

}  // namespace ck
