#pragma once

// Fox calculus and Alexander modules over Q[t, t^-1].

#include "ck/laurent.hpp"
#include "ck/presentation.hpp"
#include "ck/truth.hpp"
#include "ck/word_problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ck {

/// Square integer matrix V with det(V - V^T) = +-1.
struct SeifertMatrix {
    std::string name;
    IntMatrix V;

    int size() const { return static_cast<int>(V.rows()); }
    /// Throws DomainError unless V is square with unimodular V - V^T.
    void validate() const;
};

/// t-exponent of each source generator under a map onto <t>. Throws
/// DomainError if the target is not infinite cyclic.
std::vector<std::int64_t> cyclic_exponents(const EpiOverG& gamma);

/// Fox derivative d(w)/d(gen) pushed into Q[t^+-1] by gen_i -> t^phi[i].
LaurentQ fox_derivative(const Word& w, int gen, const std::vector<std::int64_t>& phi);
/// Row vector of all Fox derivatives of w.
std::vector<LaurentQ> fox_gradient(const Word& w, const std::vector<std::int64_t>& phi);

/// relators x generators matrix of Fox derivatives.
LaurentMatrix<Rational> fox_jacobian(const GroupPresentation& p, const EpiOverG& gamma);
LaurentMatrix<Rational> fox_jacobian(const GroupPresentation& p, const std::vector<std::int64_t>& phi);

struct ModuleDecomposition {
    int free_rank = 0;
    std::vector<LaurentQ> torsion;  // monic, non-units, each divides the next

    /// Product of the torsion invariants (the order of the torsion part).
    LaurentQ order() const;
    std::string str() const;
    friend bool operator==(const ModuleDecomposition& a, const ModuleDecomposition& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

/// Smith form L M R = diag(d_1..d_k, 0...) with d_i | d_{i+1}, d_i monic.
struct LaurentSmith {
    std::vector<LaurentQ> diagonal;  // nonzero invariants, units included
    int rows = 0;
    int cols = 0;
    LaurentMatrix<Rational> column_transform;  // R

    /// Cokernel of M acting on row vectors: Q[t^+-1]^cols / rowspan(M).
    ModuleDecomposition cokernel() const;
    /// v in the Q[t^+-1]-rowspan of M?
    bool in_rowspan(const std::vector<LaurentQ>& v) const;
};

LaurentSmith laurent_smith(LaurentMatrix<Rational> m);
/// Decomposition of the module presented by M (rows are relations).
ModuleDecomposition laurent_snf(const LaurentMatrix<Rational>& m);

/// Associate of p with p(t) = p(t^-1) up to sign and p(1) > 0 when p(1) != 0.
LaurentQ symmetric_normal(const LaurentQ& p);

/// det(V - t V^T), normalized symmetrically with Delta(1) = 1.
LaurentQ alexander_poly_from_seifert(const SeifertMatrix& v);
/// Order of the torsion of the Fox module, normalized symmetrically.
LaurentQ alexander_poly_from_presentation(const GroupPresentation& p, const EpiOverG& gamma);

enum class ModuleComparison { Iso, NotIso, Unknown };
std::string to_string(ModuleComparison c);

struct H1Report {
    ModuleComparison status = ModuleComparison::Unknown;
    std::string witness;
    std::optional<ModuleDecomposition> source, target, cokernel;
};

/// Compares H_1(A; Q[t^+-1]) and H_1(B; Q[t^+-1]) along f for G = <t>.
H1Report h1_compare(const MorphismOverG& f, const Config& cfg = {});

}  // namespace ck
