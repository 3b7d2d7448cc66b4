#pragma once

// Constructions on presentations: abelianization, morphism checks,
// amalgamated products, J-surgery groups and kernel normal generators.

#include "ck/linalg.hpp"
#include "ck/presentation.hpp"
#include "ck/word_problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ck {

/// Z^rank + sum Z/d_i from the Smith form of the exponent-sum matrix.
AbelianInvariants abelianization(const GroupPresentation& p);

/// Relators of the source map to trivial words in the target.
TrivialityResult verify_homomorphism(const GroupPresentation& a, const GroupPresentation& b,
                                     const std::vector<Word>& images, const Config& cfg = {});
TrivialityResult verify_epi(const EpiOverG& g, const Config& cfg = {});
/// Homomorphism check plus gamma_B o f = gamma_A on generators.
TrivialityResult verify_morphism(const MorphismOverG& f, const Config& cfg = {});

/// For each target generator a source word mapping onto it, found by a short
/// search among products of at most `max_factors` generator images.
std::optional<std::vector<Word>> find_surjectivity_witness(const GroupPresentation& a, const GroupPresentation& b,
                                                           const std::vector<Word>& images, int max_factors = 3);

/// Normal generators of a morphism's kernel together with a note on how the
/// witnesses were verified.
struct KernelGenerators {
    std::vector<Word> relator_lifts;    // s_j
    std::vector<Word> generator_lifts;  // w_i (identity words dropped)
    std::vector<Word> all() const;
};

/// Constructive lemma: for f: A -> B onto with witnesses u_j (f(u_j) = beta_j),
/// Ker f is normally generated by s_j = r_j(beta -> u) and
/// w_i = a_i^-1 v_i(beta -> u) where v_i = f(a_i). Throws WitnessError if a
/// witness cannot be verified.
KernelGenerators kernel_normal_generators(const GroupPresentation& a, const GroupPresentation& b,
                                          const std::vector<Word>& images,
                                          std::optional<std::vector<Word>> witnesses = std::nullopt,
                                          const Config& cfg = {});
KernelGenerators kernel_normal_generators(const EpiOverG& g, std::optional<std::vector<Word>> witnesses = std::nullopt,
                                          const Config& cfg = {});
KernelGenerators kernel_normal_generators(const MorphismOverG& f,
                                          std::optional<std::vector<Word>> witnesses = std::nullopt,
                                          const Config& cfg = {});

struct PushoutResult {
    GroupPresentation group;
    EpiOverG gamma;
    std::vector<Word> inclusion_a;  // images of A generators
    std::vector<Word> inclusion_b;  // images of B generators
    std::vector<std::string> notes;
};

/// Amalgamated product A *_C B with identification relators f1(c) f2(c)^-1.
/// Generator names shared by A and B are prefixed with the group name.
PushoutResult pushout(const MorphismOverG& f1, const MorphismOverG& f2, const std::string& name = "P");

struct SurgeryResult {
    PushoutResult pushout;
    bool swapped = false;
};

/// pi_1 of E_K glued to -E_J with mu_K ~ mu_J^-1 and lambda_K ~ lambda_J
/// (or mu_K ~ mu_J when `swapped`).
SurgeryResult j_surgery_group(const GroupPresentation& ek, const GroupPresentation& ej, const EpiOverG& gamma_k,
                              const EpiOverG& gamma_j, bool swapped = false);

/// Presentations equal up to generator names and relator order?
bool same_shape(const GroupPresentation& a, const GroupPresentation& b);

/// Removes generators that occur exactly once, with exponent +-1, in a single
/// relator and nowhere else (including marked words), dropping that relator.
/// Returns the indices of the surviving generators.
std::vector<int> tietze_collapse(GroupPresentation& p);

}  // namespace ck
