#include "ck/nilpotent.hpp"

#include "ck/errors.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ck {

namespace {

bool is_lyndon(const std::vector<int>& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::vector<int> suffix(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        if (!(w < suffix)) return false;
    }
    return !w.empty();
}

/// All Lyndon words of length <= n over {0..k-1}, in lexicographic order (Duval).
std::vector<std::vector<int>> lyndon_words(int k, int n) {
    std::vector<std::vector<int>> out;
    if (k == 0) return out;
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        out.push_back(w);
        std::size_t m = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
    }
    return out;
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

}  // namespace

std::int64_t witt_number(int r, int k) {
    Integer total = 0;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) total += mobius(d) * boost::multiprecision::pow(Integer(r), static_cast<unsigned>(k / d));
    return static_cast<std::int64_t>(total / k);
}

FreeNilpotentGroup::FreeNilpotentGroup(int rank, int cls) : L_(rank, cls) {
    auto words = lyndon_words(rank, cls);
    std::stable_sort(words.begin(), words.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    by_weight_.assign(cls + 1, {});
    std::map<std::vector<int>, int> index;
    for (const auto& w : words) {
        BasicCommutator bc;
        bc.letters = w;
        bc.weight = static_cast<int>(w.size());
        int id = static_cast<int>(basis_.size());
        if (bc.weight == 1) {
            bc.word = Word::letter(w[0]);
            series_.push_back(word_series<std::int64_t>(L_, bc.word));
            std::vector<std::int64_t> blk(L_.block(1), 0);
            blk[w[0]] = 1;
            lie_block_.push_back(std::move(blk));
        } else {
            // standard factorization: v is the longest proper Lyndon suffix
            std::size_t split = 1;
            for (; split < w.size(); ++split) {
                std::vector<int> v(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
                if (is_lyndon(v)) break;
            }
            std::vector<int> u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
            std::vector<int> v(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
            bc.left = index.at(u);
            bc.right = index.at(v);
            bc.word = ck::commutator(basis_[bc.left].word, basis_[bc.right].word);
            const auto& su = series_[bc.left];
            const auto& sv = series_[bc.right];
            series_.push_back(series_mul(L_, series_mul(L_, series_inverse(L_, su), series_inverse(L_, sv)),
                                         series_mul(L_, su, sv)));
            const auto& pu = lie_block_[bc.left];
            const auto& pv = lie_block_[bc.right];
            std::size_t p = u.size(), q = v.size();
            std::vector<std::int64_t> blk(L_.block(static_cast<int>(p + q)), 0);
            for (std::size_t a = 0; a < pu.size(); ++a) {
                if (pu[a] == 0) continue;
                for (std::size_t b = 0; b < pv.size(); ++b) {
                    if (pv[b] == 0) continue;
                    std::int64_t c = checked::mul(pu[a], pv[b]);
                    blk[a * L_.rpow[q] + b] = checked::add(blk[a * L_.rpow[q] + b], c);
                    blk[b * L_.rpow[p] + a] = checked::sub(blk[b * L_.rpow[p] + a], c);
                }
            }
            lie_block_.push_back(std::move(blk));
        }
        index[w] = id;
        by_weight_[bc.weight].push_back(id);
        basis_.push_back(std::move(bc));
    }
}

std::vector<std::int64_t> FreeNilpotentGroup::coordinates(const Series<std::int64_t>& g) const {
    std::vector<std::int64_t> coords(basis_.size(), 0);
    Series<std::int64_t> cur = g;
    for (int k = 1; k <= L_.cls; ++k) {
        std::vector<std::int64_t> blk(cur.begin() + static_cast<std::ptrdiff_t>(L_.offset[k]),
                                      cur.begin() + static_cast<std::ptrdiff_t>(L_.offset[k + 1]));
        bool any = false;
        for (int id : by_weight_[k]) {
            std::int64_t e = blk[L_.monomial(basis_[id].letters)];
            coords[id] = e;
            if (e == 0) continue;
            any = true;
            const auto& p = lie_block_[id];
            for (std::size_t i = 0; i < blk.size(); ++i)
                if (p[i] != 0) blk[i] = checked::sub(blk[i], checked::mul(e, p[i]));
        }
        for (auto v : blk)
            if (v != 0) throw std::logic_error("Mal'cev coordinate extraction left a non-Lie residue");
        if (!any || k == L_.cls) continue;
        const auto& ids = by_weight_[k];
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
            if (coords[*it] == 0) continue;
            cur = series_mul(L_, series_pow(L_, series_[*it], -coords[*it]), cur);
        }
    }
    return coords;
}

PcElement FreeNilpotentGroup::from_series(Series<std::int64_t> s) const {
    PcElement e;
    e.coords = coordinates(s);
    e.series = std::move(s);
    return e;
}

PcElement FreeNilpotentGroup::element(const Word& w) const {
    if (w.max_gen() >= rank()) throw std::out_of_range("word uses a generator outside the free nilpotent group");
    return from_series(word_series<std::int64_t>(L_, w));
}

PcElement FreeNilpotentGroup::identity() const {
    PcElement e;
    e.coords.assign(basis_.size(), 0);
    e.series = series_one<std::int64_t>(L_);
    return e;
}

PcElement FreeNilpotentGroup::mul(const PcElement& a, const PcElement& b) const {
    return from_series(series_mul(L_, a.series, b.series));
}

PcElement FreeNilpotentGroup::inverse(const PcElement& a) const { return from_series(series_inverse(L_, a.series)); }

PcElement FreeNilpotentGroup::pow(const PcElement& a, std::int64_t e) const {
    return from_series(series_pow(L_, a.series, e));
}

PcElement FreeNilpotentGroup::commutator(const PcElement& a, const PcElement& b) const {
    auto s = series_mul(L_, series_mul(L_, series_inverse(L_, a.series), series_inverse(L_, b.series)),
                        series_mul(L_, a.series, b.series));
    return from_series(std::move(s));
}

PcElement FreeNilpotentGroup::generator(int i, std::int64_t e) const {
    return from_series(series_pow(L_, series_[i], e));
}

Word FreeNilpotentGroup::word_of(const std::vector<std::int64_t>& coords) const {
    Word w;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) w *= basis_[i].word.pow(coords[i]);
    return w;
}

Series<Rational> FreeNilpotentGroup::lie_polynomial(int i) const {
    Series<Rational> s(L_.size(), Rational(0));
    int k = basis_[i].weight;
    for (std::size_t j = 0; j < lie_block_[i].size(); ++j) s[L_.offset[k] + j] = Rational(lie_block_[i][j]);
    return s;
}

bool PcSubgroup::sift_insert(PcElement g, std::vector<int>& changed) {
    bool grew = false;
    for (;;) {
        int d = 0;
        const int m = static_cast<int>(g.coords.size());
        while (d < m && g.coords[d] == 0) ++d;
        if (d == m) return grew;
        if (!rows_[d]) {
            if (g.coords[d] < 0) g = N_->inverse(g);
            rows_[d] = std::move(g);
            changed.push_back(d);
            return true;
        }
        const PcElement E = *rows_[d];
        std::int64_t a = E.coords[d], b = g.coords[d];
        if (b % a == 0) {
            g = N_->mul(g, N_->pow(E, -(b / a)));
            continue;
        }
        auto [gg, u, v] = ext_gcd(a, b);
        PcElement fresh = N_->mul(N_->pow(E, u), N_->pow(g, v));
        if (fresh.coords[d] < 0) fresh = N_->inverse(fresh);
        rows_[d] = fresh;
        changed.push_back(d);
        grew = true;
        sift_insert(N_->mul(E, N_->pow(fresh, -(a / gg))), changed);
        g = N_->mul(g, N_->pow(fresh, -(b / gg)));
    }
}

void PcSubgroup::add(const std::vector<PcElement>& gens, bool normal) {
    std::deque<PcElement> queue(gens.begin(), gens.end());
    const int c = N_->nilpotency_class();
    std::vector<PcElement> letters, letter_inverses;
    if (normal)
        for (int i = 0; i < N_->rank(); ++i) {
            letters.push_back(N_->generator(i, 1));
            letter_inverses.push_back(N_->generator(i, -1));
        }
    while (!queue.empty()) {
        PcElement g = std::move(queue.front());
        queue.pop_front();
        std::vector<int> changed;
        sift_insert(std::move(g), changed);
        for (int d : changed) {
            if (!rows_[d]) continue;
            const PcElement E = *rows_[d];
            const PcElement Einv = N_->inverse(E);
            int wd = N_->weight(d);
            for (std::size_t j = 0; j < rows_.size(); ++j) {
                if (!rows_[j] || static_cast<int>(j) == d || wd + N_->weight(static_cast<int>(j)) > c) continue;
                const PcElement& F = *rows_[j];
                queue.push_back(N_->commutator(E, F));
                queue.push_back(N_->commutator(Einv, F));
                queue.push_back(N_->commutator(E, N_->inverse(F)));
            }
            if (normal && wd + 1 <= c)
                for (std::size_t i = 0; i < letters.size(); ++i) {
                    queue.push_back(N_->commutator(E, letters[i]));
                    queue.push_back(N_->commutator(E, letter_inverses[i]));
                }
        }
    }
}

PcElement PcSubgroup::reduce(PcElement g) const {
    for (std::size_t d = 0; d < rows_.size(); ++d) {
        if (!rows_[d] || g.coords[d] == 0) continue;
        std::int64_t lead = rows_[d]->coords[d];
        std::int64_t q = floor_div(g.coords[d], lead);
        if (q != 0) g = N_->mul(g, N_->pow(*rows_[d], -q));
    }
    return g;
}

bool PcSubgroup::contains(const PcElement& g) const {
    auto r = reduce(g);
    for (auto v : r.coords)
        if (v != 0) return false;
    return true;
}

int PcSubgroup::hirsch_length() const {
    int h = 0;
    for (const auto& r : rows_)
        if (r) ++h;
    return h;
}

NilpotentQuotient::NilpotentQuotient(const GroupPresentation& p, int cls)
    : cls_(cls), rank_(p.rank()), N_(free_nilpotent(p.rank(), cls)), S_(N_) {
    std::vector<PcElement> rels;
    for (const auto& r : p.relators) rels.push_back(N_->element(r));
    S_.add(rels, true);
}

std::vector<std::int64_t> NilpotentQuotient::normal_form(const Word& w) const {
    return S_.reduce(N_->element(w)).coords;
}

bool NilpotentQuotient::is_trivial(const Word& w, int k) const {
    auto nf = normal_form(w);
    for (std::size_t i = 0; i < nf.size(); ++i)
        if (nf[i] != 0 && N_->weight(static_cast<int>(i)) <= k) return false;
    return true;
}

std::optional<int> NilpotentQuotient::first_nontrivial_class(const Word& w) const {
    auto nf = normal_form(w);
    for (std::size_t i = 0; i < nf.size(); ++i)
        if (nf[i] != 0) return N_->weight(static_cast<int>(i));
    return std::nullopt;
}

Word NilpotentQuotient::normal_word(const Word& w) const { return N_->word_of(normal_form(w)); }

std::vector<SectionInvariants> NilpotentQuotient::lower_central_sections() const {
    std::vector<SectionInvariants> out;
    for (int k = 1; k <= cls_; ++k) {
        const auto& ids = N_->of_weight(k);
        std::vector<int> rows;
        for (int id : ids)
            if (S_.rows()[id]) rows.push_back(id);
        IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ids.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < ids.size(); ++j) m(i, j) = Integer(S_.rows()[rows[i]]->coords[ids[j]]);
        auto inv = cokernel_invariants(m);
        out.push_back({k, inv.rank, inv.torsion});
    }
    return out;
}

int NilpotentQuotient::subgroup_hirsch_length(const std::vector<Word>& gens) const {
    PcSubgroup h = S_;
    std::vector<PcElement> els;
    for (const auto& g : gens) els.push_back(N_->element(g));
    h.add(els, false);
    return h.hirsch_length() - S_.hirsch_length();
}

int NilpotentQuotient::hirsch_length() const { return N_->size() - S_.hirsch_length(); }

std::shared_ptr<const FreeNilpotentGroup> free_nilpotent(int rank, int cls) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const FreeNilpotentGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{rank, cls}];
    if (!slot) slot = std::make_shared<FreeNilpotentGroup>(rank, cls);
    return slot;
}

std::shared_ptr<const NilpotentQuotient> nilpotent_quotient(const GroupPresentation& p, int cls) {
    if (cls < 1) throw DomainError("nilpotency class must be at least 1");
    if (cls > kMaxNilpotentClass)
        throw ClassBoundExceeded("class " + std::to_string(cls) + " exceeds the configured bound " +
                                 std::to_string(kMaxNilpotentClass));
    static std::mutex mu;
    static std::unordered_map<std::string, std::shared_ptr<const NilpotentQuotient>> cache;
    std::string key = std::to_string(cls) + "|" + std::to_string(p.rank()) + "|";
    for (const auto& r : p.relators) {
        for (const auto& s : r.syllables()) key += std::to_string(s.gen) + ":" + std::to_string(s.exp) + ",";
        key += ";";
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto q = std::make_shared<const NilpotentQuotient>(p, cls);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 4096) cache.clear();
    cache.emplace(key, q);
    return q;
}

}  // namespace ck
