#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ck {

/// One maximal power g^e inside a word.
struct Syllable {
    int gen = 0;
    std::int64_t exp = 0;
    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Element of a free group, stored freely reduced: adjacent syllables have
/// distinct generators and every exponent is nonzero.
class Word {
public:
    Word() = default;
    static Word letter(int gen, std::int64_t exp = 1);

    const std::vector<Syllable>& syllables() const { return syl_; }
    bool empty() const { return syl_.empty(); }
    std::size_t num_syllables() const { return syl_.size(); }
    /// Number of letters, i.e. sum of |exponent|.
    std::int64_t length() const;
    /// Largest generator index used, or -1 for the identity.
    int max_gen() const;
    /// Exponent sum of a single generator.
    std::int64_t exponent_sum(int gen) const;

    Word inverse() const;
    Word pow(std::int64_t e) const;
    /// Replace generator i by images[i].
    Word substitute(const std::vector<Word>& images) const;
    /// Add `offset` to every generator index.
    Word shifted(int offset) const;
    /// Letters as (gen, +-1) pairs.
    std::vector<Syllable> letters() const;

    friend Word operator*(const Word& a, const Word& b);
    Word& operator*=(const Word& b);
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

    /// Renders with the given generator names; the identity prints as "1".
    std::string str(const std::vector<std::string>& names) const;

private:
    friend Word free_reduce(const std::vector<Syllable>& raw);
    std::vector<Syllable> syl_;
};

/// Freely reduces an arbitrary syllable sequence (zero exponents allowed).
Word free_reduce(const std::vector<Syllable>& raw);
inline Word free_reduce(const Word& w) { return w; }

/// [a,b] = a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);
/// Left-normed [w1, w2, ..., wk].
Word left_normed(const std::vector<Word>& ws);
/// g^-1 w g.
Word conjugate(const Word& w, const Word& g);

/// Cyclically reduced conjugate of w.
Word cyclic_core(const Word& w);
/// Is `a` a cyclic permutation of `b` or of `b`^-1 (both cyclically reduced)?
bool cyclically_equivalent(const Word& a, const Word& b);

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

/// Parsed word with its bracket structure retained, so that commutator
/// shape can be used as evidence of membership in derived subgroups.
struct WordExpr {
    enum class Kind { Identity, Letter, Product, Commutator, Power };
    Kind kind = Kind::Identity;
    int gen = 0;              // Letter
    std::int64_t exp = 1;     // Power
    std::vector<std::shared_ptr<const WordExpr>> children;

    Word eval() const;
    std::string str(const std::vector<std::string>& names) const;

    static std::shared_ptr<const WordExpr> identity();
    static std::shared_ptr<const WordExpr> make_letter(int gen);
    static std::shared_ptr<const WordExpr> product(std::vector<std::shared_ptr<const WordExpr>> parts);
    static std::shared_ptr<const WordExpr> bracket(std::shared_ptr<const WordExpr> a,
                                                   std::shared_ptr<const WordExpr> b);
    static std::shared_ptr<const WordExpr> power(std::shared_ptr<const WordExpr> base, std::int64_t e);
    /// Flat expression equal to w, with no structure.
    static std::shared_ptr<const WordExpr> from_word(const Word& w);
};
using ExprPtr = std::shared_ptr<const WordExpr>;

}  // namespace ck
