#include "ck/alexander.hpp"

#include "ck/errors.hpp"
#include "ck/groups.hpp"
#include "ck/linalg.hpp"

#include <map>
#include <sstream>

namespace ck {

void SeifertMatrix::validate() const {
    if (V.rows() != V.cols()) throw DomainError("Seifert matrix " + name + " is not square");
    if (V.rows() == 0) return;
    if (V.rows() % 2 != 0) throw DomainError("Seifert matrix " + name + " has odd size");
    IntMatrix s = V - V.transpose();
    Integer d = bareiss_determinant<Integer>(s);
    if (d != 1 && d != -1)
        throw DomainError("Seifert matrix " + name + ": det(V - V^T) = " + to_string(d) + ", expected +-1");
}

std::vector<std::int64_t> cyclic_exponents(const EpiOverG& gamma) {
    const auto& g = gamma.target;
    bool cyclic = g.rank() == 1;
    for (const auto& r : g.relators) cyclic = cyclic && r.empty();
    if (!cyclic) throw DomainError("coefficient group " + g.name + " is not infinite cyclic");
    std::vector<std::int64_t> phi;
    phi.reserve(gamma.images.size());
    for (const auto& w : gamma.images) phi.push_back(w.exponent_sum(0));
    return phi;
}

namespace {

void fox_accumulate(const Word& w, const std::vector<std::int64_t>& phi, std::vector<std::map<int, Rational>>& acc) {
    std::int64_t p = 0;
    for (const auto& s : w.syllables()) {
        const std::int64_t a = phi.at(s.gen);
        auto& m = acc[s.gen];
        if (s.exp > 0) {
            for (std::int64_t k = 0; k < s.exp; ++k) m[static_cast<int>(p + k * a)] += 1;
        } else {
            for (std::int64_t k = 1; k <= -s.exp; ++k) m[static_cast<int>(p - k * a)] -= 1;
        }
        p += s.exp * a;
    }
}

}  // namespace

std::vector<LaurentQ> fox_gradient(const Word& w, const std::vector<std::int64_t>& phi) {
    std::vector<std::map<int, Rational>> acc(phi.size());
    fox_accumulate(w, phi, acc);
    std::vector<LaurentQ> out;
    out.reserve(phi.size());
    for (auto& m : acc) out.push_back(LaurentQ::from_map(m));
    return out;
}

LaurentQ fox_derivative(const Word& w, int gen, const std::vector<std::int64_t>& phi) {
    return fox_gradient(w, phi).at(gen);
}

LaurentMatrix<Rational> fox_jacobian(const GroupPresentation& p, const std::vector<std::int64_t>& phi) {
    if (static_cast<int>(phi.size()) != p.rank()) throw DomainError("need one t-exponent per generator");
    LaurentMatrix<Rational> j(static_cast<Eigen::Index>(p.relators.size()), p.rank());
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        auto g = fox_gradient(p.relators[r], phi);
        for (int c = 0; c < p.rank(); ++c) j(static_cast<Eigen::Index>(r), c) = g[c];
    }
    return j;
}

LaurentMatrix<Rational> fox_jacobian(const GroupPresentation& p, const EpiOverG& gamma) {
    return fox_jacobian(p, cyclic_exponents(gamma));
}

LaurentQ ModuleDecomposition::order() const {
    LaurentQ o(1);
    for (const auto& d : torsion) o *= d;
    return o;
}

std::string ModuleDecomposition::str() const {
    std::ostringstream os;
    os << "free rank " << free_rank << ", torsion [";
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? ", " : "") << torsion[i].str();
    os << "]";
    return os.str();
}

ModuleDecomposition LaurentSmith::cokernel() const {
    ModuleDecomposition d;
    d.free_rank = cols - static_cast<int>(diagonal.size());
    for (const auto& x : diagonal)
        if (!x.is_unit()) d.torsion.push_back(monic_normal(x));
    return d;
}

bool LaurentSmith::in_rowspan(const std::vector<LaurentQ>& v) const {
    if (static_cast<int>(v.size()) != cols) throw DomainError("vector length does not match matrix columns");
    for (int j = 0; j < cols; ++j) {
        LaurentQ w;
        for (int i = 0; i < cols; ++i) w += v[i] * column_transform(i, j);
        if (j < static_cast<int>(diagonal.size())) {
            if (!(w % diagonal[j]).is_zero()) return false;
        } else if (!w.is_zero()) {
            return false;
        }
    }
    return true;
}

LaurentSmith laurent_smith(LaurentMatrix<Rational> m) {
    const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    LaurentMatrix<Rational> r(cols, cols);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) r(i, j) = LaurentQ(i == j ? 1 : 0);

    auto swap_rows = [&](int a, int b) {
        if (a != b) m.row(a).swap(m.row(b));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        m.col(a).swap(m.col(b));
        r.col(a).swap(r.col(b));
    };
    auto row_axpy = [&](int dst, const LaurentQ& q, int src) {  // row dst -= q row src
        for (int j = 0; j < cols; ++j)
            if (!m(src, j).is_zero()) m(dst, j) -= q * m(src, j);
    };
    auto col_axpy = [&](int dst, const LaurentQ& q, int src) {  // col dst -= q col src
        for (int i = 0; i < rows; ++i)
            if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
        for (int i = 0; i < cols; ++i)
            if (!r(i, src).is_zero()) r(i, dst) -= q * r(i, src);
    };

    LaurentSmith out;
    out.rows = rows;
    out.cols = cols;
    for (int k = 0; k < std::min(rows, cols); ++k) {
        // smallest entry of the trailing block becomes the pivot
        auto place_pivot = [&]() {
            int bi = -1, bj = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j)
                    if (!m(i, j).is_zero() && (bi < 0 || m(i, j).span() < m(bi, bj).span())) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) return false;
            swap_rows(k, bi);
            swap_cols(k, bj);
            return true;
        };
        if (!place_pivot()) break;
        for (;;) {
            bool dirty = false;
            for (int i = k + 1; i < rows; ++i) {
                if (m(i, k).is_zero()) continue;
                row_axpy(i, divmod(m(i, k), m(k, k)).first, k);
                if (!m(i, k).is_zero()) dirty = true;
            }
            for (int j = k + 1; j < cols; ++j) {
                if (m(k, j).is_zero()) continue;
                col_axpy(j, divmod(m(k, j), m(k, k)).first, k);
                if (!m(k, j).is_zero()) dirty = true;
            }
            if (dirty) {
                place_pivot();
                continue;
            }
            // pivot must divide the rest of the block
            int bad = -1;
            for (int i = k + 1; i < rows && bad < 0; ++i)
                for (int j = k + 1; j < cols; ++j)
                    if (!(m(i, j) % m(k, k)).is_zero()) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_axpy(k, LaurentQ(-1), bad);
        }
        // make the pivot monic with lowest degree 0 by a column unit
        LaurentQ p = m(k, k);
        LaurentQ unit = LaurentQ::monomial(Rational(1) / p.leading(), -p.low());
        for (int i = 0; i < rows; ++i) m(i, k) *= unit;
        for (int i = 0; i < cols; ++i) r(i, k) *= unit;
        out.diagonal.push_back(m(k, k));
    }
    out.column_transform = std::move(r);
    return out;
}

ModuleDecomposition laurent_snf(const LaurentMatrix<Rational>& m) { return laurent_smith(m).cokernel(); }

LaurentQ symmetric_normal(const LaurentQ& p) {
    if (p.is_zero()) return p;
    int shift = -(p.low() + p.high());
    if (shift % 2 != 0) --shift;  // odd span has no exact centre
    LaurentQ q = p.shifted(shift / 2);
    Rational at1 = q.evaluate(Rational(1));
    if (at1 < 0 || (at1 == 0 && q.leading() < 0)) q = -q;
    return q;
}

LaurentQ alexander_poly_from_seifert(const SeifertMatrix& v) {
    v.validate();
    const auto n = v.V.rows();
    if (n == 0) return LaurentQ(1);
    LaurentMatrix<Rational> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = LaurentQ(Rational(v.V(i, j))) - LaurentQ::monomial(Rational(v.V(j, i)), 1);
    return symmetric_normal(bareiss_determinant<LaurentQ>(m));
}

LaurentQ alexander_poly_from_presentation(const GroupPresentation& p, const EpiOverG& gamma) {
    return symmetric_normal(laurent_snf(fox_jacobian(p, gamma)).order());
}

std::string to_string(ModuleComparison c) {
    switch (c) {
        case ModuleComparison::Iso: return "Iso";
        case ModuleComparison::NotIso: return "NotIso";
        case ModuleComparison::Unknown: return "Unknown";
    }
    return "?";
}

H1Report h1_compare(const MorphismOverG& f, const Config& cfg) {
    H1Report rep;
    std::vector<std::int64_t> phi_a, phi_b;
    try {
        phi_a = cyclic_exponents(f.gamma_a);
        phi_b = cyclic_exponents(f.gamma_b);
    } catch (const DomainError& e) {
        rep.witness = std::string("module comparison needs G = Z: ") + e.what();
        return rep;
    }
    const auto& a = f.source();
    const auto& b = f.target();
    for (int i = 0; i < a.rank(); ++i) {
        if (f.images[i].max_gen() >= b.rank()) throw DomainError("image word uses a generator outside " + b.name);
        std::int64_t e = 0;
        for (const auto& s : f.images[i].syllables()) e += s.exp * phi_b[s.gen];
        if (e != phi_a[i]) {
            rep.witness = "gamma_B o f differs from gamma_A on " + a.generators[i];
            return rep;
        }
    }
    auto hom = verify_homomorphism(a, b, f.images, cfg);
    if (hom.status != Truth::True) {
        rep.witness = "homomorphism check " + to_string(hom.status) + ": " + hom.certificate;
        return rep;
    }
    rep.source = laurent_snf(fox_jacobian(a, phi_a));
    rep.target = laurent_snf(fox_jacobian(b, phi_b));
    // cokernel of the induced map on relative modules: rows of J_B and of D_f
    LaurentMatrix<Rational> stacked(static_cast<Eigen::Index>(b.relators.size()) + a.rank(), b.rank());
    auto jb = fox_jacobian(b, phi_b);
    for (Eigen::Index i = 0; i < jb.rows(); ++i)
        for (int j = 0; j < b.rank(); ++j) stacked(i, j) = jb(i, j);
    for (int i = 0; i < a.rank(); ++i) {
        auto g = fox_gradient(f.images[i], phi_b);
        for (int j = 0; j < b.rank(); ++j) stacked(jb.rows() + i, j) = g[j];
    }
    rep.cokernel = laurent_snf(stacked);
    if (!(*rep.source == *rep.target)) {
        rep.status = ModuleComparison::NotIso;
        rep.witness = "source module (" + rep.source->str() + ") differs from target module (" + rep.target->str() + ")";
    } else if (rep.cokernel->free_rank != 0 || !rep.cokernel->torsion.empty()) {
        rep.status = ModuleComparison::NotIso;
        rep.witness = "induced map is not onto: cokernel " + rep.cokernel->str();
    } else {
        rep.status = ModuleComparison::Iso;
        rep.witness = "equal decompositions (" + rep.source->str() + ") and onto";
    }
    return rep;
}

}  // namespace ck
