#pragma once

// Nilpotent quotients P / gamma_{c+1}(P) of finitely presented groups.
//
// The free nilpotent group N = F_r / gamma_{c+1} is modelled inside the
// truncated Magnus algebra; Mal'cev coordinates are taken with respect to
// the basic commutators indexed by Lyndon words (ordered by weight, then
// lexicographically). The normal closure of the relators is kept as an
// induced polycyclic sequence in echelon form, which yields a canonical
// normal form for the quotient.

#include "ck/linalg.hpp"
#include "ck/magnus.hpp"
#include "ck/presentation.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace ck {

/// Largest nilpotency class accepted by the engine.
inline constexpr int kMaxNilpotentClass = 5;

struct BasicCommutator {
    std::vector<int> letters;  // Lyndon word
    int weight = 1;
    int left = -1;             // basis indices of the standard factorization
    int right = -1;
    Word word;                 // group word of the commutator
};

struct PcElement {
    std::vector<std::int64_t> coords;
    Series<std::int64_t> series;
};

class FreeNilpotentGroup {
public:
    FreeNilpotentGroup(int rank, int cls);

    int rank() const { return L_.rank; }
    int nilpotency_class() const { return L_.cls; }
    const MagnusLayout& layout() const { return L_; }
    int size() const { return static_cast<int>(basis_.size()); }
    const BasicCommutator& basis(int i) const { return basis_[i]; }
    int weight(int i) const { return basis_[i].weight; }
    /// Basis indices of a given weight, in order.
    const std::vector<int>& of_weight(int k) const { return by_weight_[k]; }

    std::vector<std::int64_t> coordinates(const Series<std::int64_t>& g) const;
    PcElement element(const Word& w) const;
    PcElement from_series(Series<std::int64_t> s) const;
    PcElement identity() const;
    PcElement mul(const PcElement& a, const PcElement& b) const;
    PcElement inverse(const PcElement& a) const;
    PcElement pow(const PcElement& a, std::int64_t e) const;
    PcElement commutator(const PcElement& a, const PcElement& b) const;
    PcElement generator(int i, std::int64_t e = 1) const;
    /// Word b_1^{e_1} ... b_m^{e_m} for given coordinates.
    Word word_of(const std::vector<std::int64_t>& coords) const;
    /// Lie polynomial P_w of basis element i, as a rational series.
    Series<Rational> lie_polynomial(int i) const;

private:
    MagnusLayout L_;
    std::vector<BasicCommutator> basis_;
    std::vector<std::vector<int>> by_weight_;
    std::vector<Series<std::int64_t>> series_;
    std::vector<std::vector<std::int64_t>> lie_block_;  // degree-|w| block of P_w
};

/// Subgroup of a free nilpotent group held as an induced polycyclic sequence.
class PcSubgroup {
public:
    explicit PcSubgroup(std::shared_ptr<const FreeNilpotentGroup> n) : N_(std::move(n)), rows_(N_->size()) {}

    /// Adds generators and closes under the subgroup (and, if `normal`, the
    /// normal-closure) conditions.
    void add(const std::vector<PcElement>& gens, bool normal);
    /// Reduces g modulo the subgroup to its canonical coset representative.
    PcElement reduce(PcElement g) const;
    bool contains(const PcElement& g) const;
    /// Number of rows, which equals the Hirsch length since N is torsion free.
    int hirsch_length() const;
    const std::vector<std::optional<PcElement>>& rows() const { return rows_; }

private:
    bool sift_insert(PcElement g, std::vector<int>& changed);
    std::shared_ptr<const FreeNilpotentGroup> N_;
    std::vector<std::optional<PcElement>> rows_;
};

struct SectionInvariants {
    int weight = 0;
    int rank = 0;
    std::vector<Integer> torsion;
};

/// P / gamma_{c+1}(P) with a total normal-form algorithm.
class NilpotentQuotient {
public:
    NilpotentQuotient(const GroupPresentation& p, int cls);

    int nilpotency_class() const { return cls_; }
    const FreeNilpotentGroup& free() const { return *N_; }
    std::shared_ptr<const FreeNilpotentGroup> free_ptr() const { return N_; }
    const PcSubgroup& relations() const { return S_; }

    /// Canonical coordinates of w in the quotient.
    std::vector<std::int64_t> normal_form(const Word& w) const;
    /// Is w trivial in P / gamma_{k+1}(P), k <= class?
    bool is_trivial(const Word& w, int k) const;
    bool is_trivial(const Word& w) const { return is_trivial(w, cls_); }
    /// Smallest k such that w survives in P / gamma_{k+1}, if any.
    std::optional<int> first_nontrivial_class(const Word& w) const;
    bool equal(const Word& a, const Word& b) const { return is_trivial(a * b.inverse()); }
    /// Word representing the normal form of w.
    Word normal_word(const Word& w) const;
    /// gamma_k / gamma_{k+1} for k = 1..class.
    std::vector<SectionInvariants> lower_central_sections() const;
    /// Hirsch length of the image of the subgroup generated by `gens`.
    int subgroup_hirsch_length(const std::vector<Word>& gens) const;
    int hirsch_length() const;

private:
    int cls_;
    int rank_;
    std::shared_ptr<const FreeNilpotentGroup> N_;
    PcSubgroup S_;
};

/// Free nilpotent groups are shared between quotients of equal rank and class.
std::shared_ptr<const FreeNilpotentGroup> free_nilpotent(int rank, int cls);

/// Cached quotient; throws ClassBoundExceeded above kMaxNilpotentClass.
std::shared_ptr<const NilpotentQuotient> nilpotent_quotient(const GroupPresentation& p, int cls);

/// Witt's necklace count of basic commutators of weight k on r generators.
std::int64_t witt_number(int r, int k);

}  // namespace ck
