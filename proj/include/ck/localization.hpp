#pragma once

// Systems of equations over a map onto G, their nilpotent-scale solutions,
// Pi-perfect subgroups and the conditions defining the class Omega^G.

#include "ck/alexander.hpp"
#include "ck/presentation.hpp"
#include "ck/truth.hpp"
#include "ck/word_problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ck {

/// x_i = w_i(x_1..x_n) with w_i over the generators of A followed by the
/// variables: letter index rank(A) + j stands for x_j.
struct EquationSystem {
    EpiOverG ambient;
    std::vector<std::string> variables;
    std::vector<Word> right_sides;

    int size() const { return static_cast<int>(variables.size()); }
    int offset() const { return ambient.source.rank(); }
    /// Generator names of A followed by the variable names.
    std::vector<std::string> names() const;
    std::string str() const;
};

/// Parses "var x1 x2 ; eq x1 = WORD ; eq x2 = WORD" (';' or newlines between
/// statements, '#' comments).
EquationSystem parse_system(std::string_view text, const EpiOverG& ambient);

/// w = prod_i p_i k_i p_i^-1 with k_i a word in A whose gamma-image is
/// trivial, found by deleting G-trivial blocks of A-letters between variable
/// letters until none remain.
struct KernelFactor {
    Word prefix;  // over A and the variables
    Word core;    // over A
};
struct KernelDecomposition {
    Truth status = Truth::Unknown;
    std::vector<KernelFactor> factors;
    std::string note;
};
KernelDecomposition kernel_decomposition(const Word& w, const EpiOverG& ambient, int variables,
                                         const Config& cfg = {});

/// Kernel condition for every right side.
Truth system_kernel_status(const EquationSystem& sys, const Config& cfg = {});
bool validate_system(const EquationSystem& sys, const Config& cfg = {});

struct SolutionSet {
    std::vector<Word> values;  // words over A
    int iterations = 0;
    std::vector<std::string> trace;
};

/// Fixed-point iteration in the class-c quotient of A starting from
/// `initial` (identity by default). Throws PreconditionError for invalid
/// systems and DomainError if the iteration fails to settle in c+1 steps.
SolutionSet solve_nilpotent(const EquationSystem& sys, int c, std::optional<std::vector<Word>> initial = std::nullopt,
                            const Config& cfg = {});

/// x = values satisfies every equation in A?
Truth is_solution(const EquationSystem& sys, const std::vector<Word>& values, const Config& cfg = {});

/// a [m_gen, b]^sign a^-1 with a, b over A and the symbols m_j (index rank(A)+j).
struct RewriteFactor {
    Word conj;
    int gen = 0;
    Word b;
    int sign = 1;
};
using Rewriting = std::vector<std::vector<RewriteFactor>>;  // one product per generator

struct PiPerfectCandidate {
    EpiOverG ambient;
    std::vector<Word> normal_generators;
};

/// Substitutes the candidate's generators for the m_j symbols.
Word expand_rewriting(const PiPerfectCandidate& cand, const std::vector<RewriteFactor>& factors);
/// Every b lies in ker(gamma) and every generator equals its product.
Truth verify_rewriting(const PiPerfectCandidate& cand, const Rewriting& rw, const Config& cfg = {});
std::string rewriting_str(const PiPerfectCandidate& cand, const Rewriting& rw);

struct PiPerfectFromSolutions {
    PiPerfectCandidate candidate;  // m_i = g_i h_i^-1
    Rewriting rewriting;
    Truth verified = Truth::Unknown;
    /// Generators trivial in the class-c quotients of A, as forced by
    /// m_i in [N, ker gamma].
    std::vector<std::string> notes;
};
PiPerfectFromSolutions solutions_to_pi_perfect(const EquationSystem& sys, const SolutionSet& g, const SolutionSet& h,
                                               const Config& cfg = {});

/// "gen m1 = WORD" declares a normal generator over A; "rw m1 = EXPR" writes
/// it as a product of [m_j, B]^+-1 (or [B, m_j]) with words of A in between
/// that cancel overall, each commutator conjugated by the word before it.
struct PiPerfectInput {
    PiPerfectCandidate candidate;
    std::vector<std::string> symbols;
    std::optional<Rewriting> rewriting;
};
PiPerfectInput parse_pi_perfect(std::string_view text, const EpiOverG& ambient);

struct SystemFromPiPerfect {
    EquationSystem system;
    SolutionSet trivial;
    SolutionSet nontrivial;
};
/// Replaces each m_j inside [m_j, b] by the variable x_j. Throws WitnessError
/// if the rewriting does not verify.
SystemFromPiPerfect pi_perfect_to_system(const PiPerfectCandidate& cand, const Rewriting& rw, const Config& cfg = {});

enum class PiPerfectStatus { Certified, Refuted, Unknown };
std::string to_string(PiPerfectStatus s);
struct PiPerfectVerdict {
    PiPerfectStatus status = PiPerfectStatus::Unknown;
    int refuted_at_class = 0;
    std::string witness;
};
PiPerfectVerdict pi_perfect_check(const PiPerfectCandidate& cand, int c, const std::optional<Rewriting>& rw = std::nullopt,
                                  const Config& cfg = {});

struct OmegaCondition {
    Truth status = Truth::Unknown;
    std::string note;
};
struct OmegaReport {
    OmegaCondition conditions[4];
    /// Unknown if any condition is, otherwise their conjunction.
    Truth verdict = Truth::Unknown;
};
struct OmegaWitnesses {
    std::optional<std::vector<Word>> surjectivity;  // source words onto target generators
    bool h2_surjective = false;                     // user-asserted chain-level witness
};
OmegaReport omega_check(const MorphismOverG& f, const OmegaWitnesses& w = {}, const Config& cfg = {});

}  // namespace ck
