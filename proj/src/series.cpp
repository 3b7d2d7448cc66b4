#include "ck/series.hpp"

#include "ck/alexander.hpp"
#include "ck/errors.hpp"
#include "ck/groups.hpp"
#include "ck/linalg.hpp"
#include "ck/magnus.hpp"
#include "ck/nilpotent.hpp"

#include <sstream>

namespace ck {

std::string to_string(Membership m) {
    switch (m) {
        case Membership::In: return "In";
        case Membership::NotIn: return "NotIn";
        case Membership::Unknown: return "Unknown";
    }
    return "?";
}

SeriesMembership gamma_membership(const EpiOverG& gamma, const Word& w, const Config& cfg) {
    SeriesMembership out{w, 0, Membership::Unknown, ""};
    if (w.max_gen() >= gamma.source.rank()) throw DomainError("word uses a generator outside " + gamma.source.name);
    Config c = cfg;
    c.verify_class = std::max(cfg.verify_class, cfg.refute_class);
    Word image = gamma.apply(w);
    auto res = is_trivial(gamma.target, image, c);
    const std::string img = "gamma(w) = " + gamma.target.word_str(image);
    switch (res.status) {
        case Truth::True:
            out.status = Membership::In;
            out.certificate = img + " is trivial in " + gamma.target.name + " (" + res.certificate + ")";
            break;
        case Truth::False:
            out.status = Membership::NotIn;
            out.certificate = img + " is nontrivial in " + gamma.target.name + " (" + res.certificate + ")";
            break;
        case Truth::Unknown:
            out.certificate = img + " undecided in " + gamma.target.name;
            break;
    }
    return out;
}

namespace {

// Rational Lie algebra of the class-c quotient of the source, embedded in
// the truncated Magnus algebra. Generators act through log(1 + X_i).
class LieShadow {
public:
    LieShadow(const GroupPresentation& a, int cls) : L_(a.rank(), cls) {
        for (int i = 0; i < a.rank(); ++i) gens_.push_back(log_of(Word::letter(i)));
        std::vector<Series<Rational>> rel;
        for (const auto& r : a.relators) rel.push_back(log_of(r));
        relators_ = ideal(rel, RationalSubspace(L_.size()));
    }

    Series<Rational> log_of(const Word& w) const { return series_log(L_, word_series<Rational>(L_, w)); }

    /// Smallest ideal containing `seeds` and `start`.
    RationalSubspace ideal(const std::vector<Series<Rational>>& seeds, RationalSubspace span) const {
        std::vector<Series<Rational>> queue;
        for (const auto& s : seeds)
            if (span.insert(s)) queue.push_back(s);
        while (!queue.empty()) {
            Series<Rational> v = std::move(queue.back());
            queue.pop_back();
            for (const auto& g : gens_) {
                auto b = series_bracket(L_, v, g);
                if (span.insert(b)) queue.push_back(std::move(b));
            }
        }
        return span;
    }

    /// [h, h] + I_R for an ideal h.
    RationalSubspace derived(const RationalSubspace& h) const {
        RationalSubspace out = relators_;
        const auto& basis = h.basis();
        std::vector<int> deg;
        for (const auto& v : basis) deg.push_back(min_degree(L_, v));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                if (deg[i] + deg[j] <= L_.cls) out.insert(series_bracket(L_, basis[i], basis[j]));
        return out;
    }

    const RationalSubspace& relators() const { return relators_; }

private:
    MagnusLayout L_;
    std::vector<Series<Rational>> gens_;
    RationalSubspace relators_;
};

// Largest class <= wanted whose Magnus algebra stays at desk size.
int shadow_class(int rank, int wanted) {
    int c = 1;
    std::size_t dim = 1 + rank;
    std::size_t block = rank;
    while (c < wanted && c < kMaxNilpotentClass) {
        block *= rank;
        if (dim + block > 1500) break;
        dim += block;
        ++c;
    }
    return c;
}

struct Decider {
    const EpiOverG& gamma;
    const Config& cfg;
    bool cyclic = false;
    std::vector<std::int64_t> phi;
    std::optional<LaurentSmith> alexander;
    std::optional<std::vector<Word>> kernel;
    bool kernel_tried = false;

    Decider(const EpiOverG& g, const Config& c) : gamma(g), cfg(c) {
        try {
            phi = cyclic_exponents(g);
            cyclic = true;
        } catch (const DomainError&) {
        }
    }

    SeriesMembership membership(const ExprPtr& e, int n) {
        Word w = e->eval();
        SeriesMembership out{w, n, Membership::Unknown, ""};
        if (w.empty()) {
            out.status = Membership::In;
            out.certificate = "identity";
            return out;
        }
        if (n == 0) {
            out = gamma_membership(gamma, w, cfg);
            if (out.status != Membership::Unknown) return out;
        }
        if (auto s = structural(e, n)) return *s;
        if (n == 0) return out;
        auto below = membership(e, n - 1);
        if (below.status == Membership::NotIn) {
            out.status = Membership::NotIn;
            out.certificate = "not in depth " + std::to_string(n - 1) + ": " + below.certificate;
            return out;
        }
        if (n > kAutomaticSeriesDepth) {
            out.certificate = "depth " + std::to_string(n) + " needs a structural certificate";
            return out;
        }
        if (cyclic && n == 1) return alexander_module(w);
        return lie_shadow(w, n);
    }

    std::optional<SeriesMembership> structural(const ExprPtr& e, int n) {
        Word w = e->eval();
        auto in = [&](std::string why) { return SeriesMembership{w, n, Membership::In, std::move(why)}; };
        switch (e->kind) {
            case WordExpr::Kind::Identity: return in("identity");
            case WordExpr::Kind::Letter: return std::nullopt;
            case WordExpr::Kind::Power: {
                auto b = membership(e->children[0], n);
                if (b.status == Membership::In) return in("power of a member: " + b.certificate);
                return std::nullopt;
            }
            case WordExpr::Kind::Product: {
                // a_1 m_1 a_2 m_2 ... with members m_i and a_1 a_2 ... = 1 is a
                // product of conjugates of members
                Word rest;
                for (const auto& c : e->children)
                    if (membership(c, n).status != Membership::In) rest *= c->eval();
                if (rest.empty()) return in("product of conjugates of members");
                return std::nullopt;
            }
            case WordExpr::Kind::Commutator: {
                const auto& u = e->children[0];
                const auto& v = e->children[1];
                if (n >= 1) {
                    auto mu = membership(u, n - 1);
                    if (mu.status == Membership::In) {
                        auto mv = membership(v, n - 1);
                        if (mv.status == Membership::In)
                            return in("commutator of two depth-" + std::to_string(n - 1) + " members");
                    }
                }
                // the series terms are normal in the source
                for (const auto& side : {u, v})
                    if (membership(side, n).status == Membership::In)
                        return in("commutator with a depth-" + std::to_string(n) + " member");
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    SeriesMembership alexander_module(const Word& w) {
        if (!alexander) alexander = laurent_smith(fox_jacobian(gamma.source, phi));
        bool in = alexander->in_rowspan(fox_gradient(w, phi));
        SeriesMembership out{w, 1, in ? Membership::In : Membership::NotIn, ""};
        out.certificate = in ? "Fox vector of w lies in the Q[t^+-1]-span of the relator rows"
                             : "Fox vector of w is nonzero in H_1 of the infinite cyclic cover (Alexander module " +
                                   alexander->cokernel().str() + ")";
        return out;
    }

    SeriesMembership lie_shadow(const Word& w, int n) {
        SeriesMembership out{w, n, Membership::Unknown, ""};
        if (!kernel_tried) {
            kernel_tried = true;
            try {
                kernel = kernel_normal_generators(gamma, std::nullopt, cfg).all();
            } catch (const WitnessError&) {
            }
        }
        if (!kernel) {
            out.certificate = "no verified normal generators for ker(gamma)";
            return out;
        }
        int c = shadow_class(gamma.source.rank(), cfg.lie_class);
        LieShadow lie(gamma.source, c);
        std::vector<Series<Rational>> seeds;
        for (const auto& k : *kernel) seeds.push_back(lie.log_of(k));
        RationalSubspace h = lie.ideal(seeds, lie.relators());
        for (int m = 0; m < n; ++m) h = lie.derived(h);
        if (!h.contains(lie.log_of(w))) {
            out.status = Membership::NotIn;
            std::ostringstream os;
            os << "log w is outside the depth-" << n << " derived ideal (dimension " << h.rank()
               << ") of the rational Lie algebra of the class-" << c << " quotient of " << gamma.source.name;
            out.certificate = os.str();
        } else {
            out.certificate = "log w lies in the depth-" + std::to_string(n) + " derived ideal at class " +
                              std::to_string(c) + "; no derivation found";
        }
        return out;
    }
};

}  // namespace

SeriesMembership rational_series_membership(const EpiOverG& gamma, const ExprPtr& w, int n, const Config& cfg) {
    if (n < 0) throw DomainError("series depth must be nonnegative");
    Word word = w->eval();
    if (word.max_gen() >= gamma.source.rank()) throw DomainError("word uses a generator outside " + gamma.source.name);
    if (n >= 1) {
        auto k = gamma_membership(gamma, word, cfg);
        if (k.status == Membership::NotIn)
            throw PreconditionError("element is not in ker(gamma): " + k.certificate);
    }
    Decider d(gamma, cfg);
    return d.membership(w, n);
}

SeriesMembership rational_series_membership(const EpiOverG& gamma, const Word& w, int n, const Config& cfg) {
    return rational_series_membership(gamma, WordExpr::from_word(w), n, cfg);
}

void PtfaCertificate::validate() const {
    if (groups.empty()) throw DomainError("malformed PTFA chain: no groups");
    if (maps.size() + 1 != groups.size())
        throw DomainError("malformed PTFA chain: " + std::to_string(groups.size()) + " groups need " +
                          std::to_string(groups.size() - 1) + " maps");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (static_cast<int>(maps[i].size()) != groups[i].rank())
            throw DomainError("malformed PTFA chain: map " + std::to_string(i) + " has the wrong number of images");
        for (const auto& w : maps[i])
            if (w.max_gen() >= groups[i + 1].rank())
                throw DomainError("malformed PTFA chain: map " + std::to_string(i) + " leaves " + groups[i + 1].name);
    }
}

namespace {

bool certified(const GroupPresentation& p, const Word& w, const Config& cfg) {
    return is_trivial(p, w, cfg).status == Truth::True;
}

// Products s_1^{a_1} ... s_k^{a_k} with |a_i| <= 2 equal to target in p,
// tried in order of total exponent.
std::optional<std::vector<int>> express(const GroupPresentation& p, const std::vector<Word>& s, const Word& target,
                                        const Config& cfg) {
    std::vector<std::vector<int>> candidates{{}};
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& c : candidates)
            for (int a = -2; a <= 2; ++a) {
                next.push_back(c);
                next.back().push_back(a);
            }
        candidates = std::move(next);
    }
    auto norm = [](const std::vector<int>& a) {
        int n = 0;
        for (int x : a) n += std::abs(x);
        return n;
    };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const auto& x, const auto& y) { return norm(x) < norm(y); });
    for (const auto& a : candidates) {
        Word prod;
        for (std::size_t i = 0; i < s.size(); ++i) prod *= s[i].pow(a[i]);
        if (certified(p, target * prod.inverse(), cfg)) return a;
    }
    return std::nullopt;
}

struct Section {
    Truth status = Truth::Unknown;
    std::string note;
};

Section check_section(const GroupPresentation& q, const GroupPresentation& next, const std::vector<Word>& images,
                      const Config& cfg) {
    const std::string label = q.name + " -> " + next.name;
    auto hom = verify_homomorphism(q, next, images, cfg);
    if (hom.status == Truth::False) return {Truth::False, label + ": not a homomorphism (" + hom.certificate + ")"};
    if (hom.status == Truth::Unknown) return {Truth::Unknown, label + ": homomorphism undecided"};
    std::vector<Word> s;
    try {
        for (const auto& k : kernel_normal_generators(q, next, images, std::nullopt, cfg).all())
            if (!certified(q, k, cfg)) s.push_back(k);
    } catch (const WitnessError& e) {
        return {Truth::Unknown, label + ": " + e.what()};
    }
    if (s.empty()) return {Truth::True, label + ": kernel trivial"};

    for (const auto& x : s) {
        if (is_trivial(q, x, cfg).status != Truth::False) continue;
        for (int k = 2; k <= 12; ++k)
            if (certified(q, x.pow(k), cfg))
                return {Truth::False, label + ": kernel element " + q.word_str(x) + " has order dividing " +
                                          std::to_string(k)};
    }

    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            auto r = is_trivial(q, commutator(s[i], s[j]), cfg);
            if (r.status == Truth::False)
                return {Truth::False, label + ": kernel is not abelian ([" + q.word_str(s[i]) + ", " +
                                          q.word_str(s[j]) + "] survives)"};
            if (r.status == Truth::Unknown) return {Truth::Unknown, label + ": commutativity undecided"};
        }

    // the subgroup generated by s is normal, hence the whole kernel
    for (const auto& x : s)
        for (int g = 0; g < q.rank(); ++g)
            for (int e : {1, -1}) {
                Word conj = conjugate(x, Word::letter(g, e));
                if (!express(q, s, conj, cfg))
                    return {Truth::Unknown, label + ": no action witness for " + q.word_str(conj)};
            }

    // torsion-free: an independent subset carries full Hirsch length in a
    // nilpotent quotient and generates the rest
    int cls = certified_nilpotency_class(q).value_or(std::min(cfg.refute_class, kMaxNilpotentClass));
    auto nq = nilpotent_quotient(q, cls);
    std::vector<Word> basis;
    for (const auto& x : s) {
        auto trial = basis;
        trial.push_back(x);
        if (nq->subgroup_hirsch_length(trial) == static_cast<int>(trial.size())) basis = std::move(trial);
    }
    for (const auto& x : s) {
        if (std::find(basis.begin(), basis.end(), x) != basis.end()) continue;
        if (!express(q, basis, x, cfg))
            return {Truth::Unknown, label + ": could not certify the kernel torsion-free"};
    }
    return {Truth::True, label + ": kernel free abelian of rank " + std::to_string(basis.size())};
}

}  // namespace

PtfaReport ptfa_report(const PtfaCertificate& cert, const Config& cfg) {
    cert.validate();
    PtfaReport rep;
    const auto& last = cert.groups.back();
    Truth trivial_end = Truth::True;
    for (int g = 0; g < last.rank(); ++g) trivial_end = trivial_end && is_trivial(last, Word::letter(g), cfg).status;
    if (trivial_end == Truth::False) throw DomainError("malformed PTFA chain: it does not end at the trivial group");
    rep.status = trivial_end;
    if (trivial_end == Truth::Unknown) rep.sections.push_back(last.name + ": triviality undecided");
    for (std::size_t i = 0; i < cert.maps.size(); ++i) {
        auto sec = check_section(cert.groups[i], cert.groups[i + 1], cert.maps[i], cfg);
        rep.sections.push_back(sec.note);
        rep.status = rep.status && sec.status;
    }
    return rep;
}

bool ptfa_check(const PtfaCertificate& cert, const Config& cfg) { return ptfa_report(cert, cfg).status == Truth::True; }

PtfaCertificate lower_central_certificate(const GroupPresentation& g) {
    int c = certified_nilpotency_class(g).value_or(0);
    if (c == 0) throw NoCertificate("group " + g.name + " is not certified nilpotent");
    PtfaCertificate cert;
    std::vector<Word> identity;
    for (int i = 0; i < g.rank(); ++i) identity.push_back(Word::letter(i));
    // simple commutators of each weight
    std::vector<std::vector<Word>> simple(c + 2);
    for (int i = 0; i < g.rank(); ++i) simple[1].push_back(Word::letter(i));
    for (int k = 2; k <= c + 1; ++k)
        for (const auto& s : simple[k - 1])
            for (int i = 0; i < g.rank(); ++i) {
                Word x = commutator(s, Word::letter(i));
                if (!x.empty()) simple[k].push_back(x);
            }
    for (int k = c + 1; k >= 2; --k) {
        GroupPresentation q = g;
        q.name = k == c + 1 ? g.name : g.name + "/G" + std::to_string(k);
        for (int j = k; j <= c + 1; ++j)
            for (const auto& s : simple[j]) q.relators.push_back(s);
        cert.groups.push_back(std::move(q));
        cert.maps.push_back(identity);
    }
    cert.groups.push_back(trivial_group());
    cert.maps.back() = std::vector<Word>(g.rank());
    return cert;
}

}  // namespace ck
