#pragma once

// Kernel membership, the rational derived series of a map onto G, and PTFA
// certificates for G.

#include "ck/presentation.hpp"
#include "ck/truth.hpp"
#include "ck/word_problem.hpp"

#include <string>
#include <vector>

namespace ck {

enum class Membership { In, NotIn, Unknown };
std::string to_string(Membership m);

struct SeriesMembership {
    Word element;
    int depth = 0;
    Membership status = Membership::Unknown;
    std::string certificate;
};

/// Depth beyond which only structural certificates are accepted.
inline constexpr int kAutomaticSeriesDepth = 2;

/// w in ker(gamma)?
SeriesMembership gamma_membership(const EpiOverG& gamma, const Word& w, const Config& cfg = {});

/// w in the n-th rational derived subgroup of ker(gamma)? The bracket
/// structure of `w` serves as a certificate: a commutator of two depth n-1
/// members is a depth n member. Depth 1 over G = Z is decided exactly through
/// the Alexander module; elsewhere NotIn comes from the rational Lie algebra
/// of a nilpotent quotient of the source. Throws PreconditionError when n >= 1
/// and gamma(w) is certified nontrivial.
SeriesMembership rational_series_membership(const EpiOverG& gamma, const ExprPtr& w, int n, const Config& cfg = {});
SeriesMembership rational_series_membership(const EpiOverG& gamma, const Word& w, int n, const Config& cfg = {});

/// Chain of quotients G = Q_0 -> Q_1 -> ... -> Q_m = 1; maps[i] gives the
/// images of the generators of Q_i in Q_{i+1}.
struct PtfaCertificate {
    std::vector<GroupPresentation> groups;
    std::vector<std::vector<Word>> maps;

    /// Throws DomainError when the chain does not fit together.
    void validate() const;
};

struct PtfaReport {
    Truth status = Truth::Unknown;
    std::vector<std::string> sections;  // one line per kernel ker(Q_i -> Q_{i+1})
};

/// Checks every kernel of the chain is torsion-free abelian.
PtfaReport ptfa_report(const PtfaCertificate& cert, const Config& cfg = {});
bool ptfa_check(const PtfaCertificate& cert, const Config& cfg = {});

/// G -> G_ab -> 1 when G is abelian, or the lower central chain of a group
/// certified nilpotent.
PtfaCertificate lower_central_certificate(const GroupPresentation& g);

}  // namespace ck
