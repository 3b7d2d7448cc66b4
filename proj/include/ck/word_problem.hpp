#pragma once

#include "ck/presentation.hpp"
#include "ck/truth.hpp"

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ck {

/// Cooperative cancellation for long searches.
struct CancelToken {
    std::atomic<bool> cancelled{false};
    void cancel() { cancelled.store(true); }
    bool is_cancelled() const { return cancelled.load(); }
};

struct Config {
    /// Nilpotency class used by triviality checks.
    int verify_class = 3;
    /// Class used for depth-0 series refutations in the coefficient group.
    int refute_class = 4;
    /// Class of the rational Lie algebra used for derived-series refutations.
    int lie_class = 5;
    /// Node budget for rewriting and conjugate-product searches.
    int search_budget = 10000;
    /// Longest word the searches will visit.
    int max_word_length = 64;
    /// Generator tuples tried when searching for maps onto symmetric groups
    /// S_3..S_5 (0 disables the search).
    long permutation_tuples = 20000;
    std::shared_ptr<CancelToken> cancel;

    bool cancelled() const { return cancel && cancel->is_cancelled(); }
};

/// Outcome of a triviality query with a short human-readable justification.
struct TrivialityResult {
    Truth status = Truth::Unknown;
    std::string certificate;
};

/// Is w trivial in the group presented by p?
///  True    - free reduction, a relator match, a rewriting derivation, or an
///            exact computation in a group certified nilpotent;
///  False   - w survives in a nilpotent quotient;
///  Unknown - otherwise.
TrivialityResult is_trivial(const GroupPresentation& p, const Word& w, const Config& cfg = {});
TrivialityResult are_equal(const GroupPresentation& p, const Word& a, const Word& b, const Config& cfg = {});

/// Bounded best-first rewriting search for a derivation of w from the relators.
bool derive_trivial(const GroupPresentation& p, const Word& w, int budget, int max_len,
                    const CancelToken* cancel = nullptr);

/// A homomorphism to S_degree, as images of the generators acting on the
/// right of {0..degree-1}.
struct PermutationRep {
    int degree = 0;
    std::vector<std::vector<int>> images;

    /// Image of w as a permutation.
    std::vector<int> apply(const Word& w) const;
    std::string str(const GroupPresentation& p) const;
};

/// Every nontrivial homomorphism to S_3, S_4 or S_5 whose generator tuples
/// fit within `max_tuples`, found by exhaustive search. Cached per presentation.
std::shared_ptr<const std::vector<PermutationRep>> permutation_representations(const GroupPresentation& p,
                                                                               long max_tuples);

/// Smallest c (<= kMaxNilpotentClass) for which every simple commutator of
/// weight c+1 in the generators is certified trivial, so that p is nilpotent
/// of class at most c.
std::optional<int> certified_nilpotency_class(const GroupPresentation& p);

}  // namespace ck
