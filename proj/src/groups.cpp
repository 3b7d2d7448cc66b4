#include "ck/groups.hpp"

#include "ck/errors.hpp"

#include <algorithm>
#include <set>

namespace ck {

AbelianInvariants abelianization(const GroupPresentation& p) {
    IntMatrix m(static_cast<Eigen::Index>(p.relators.size()), p.rank());
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        for (int j = 0; j < p.rank(); ++j) m(static_cast<Eigen::Index>(i), j) = Integer(p.relators[i].exponent_sum(j));
    return cokernel_invariants(m);
}

namespace {

TrivialityResult combine(TrivialityResult acc, const TrivialityResult& next, const std::string& what) {
    Truth t = acc.status && next.status;
    if (t != acc.status) acc.certificate = what + ": " + next.certificate;
    acc.status = t;
    return acc;
}

}  // namespace

TrivialityResult verify_homomorphism(const GroupPresentation& a, const GroupPresentation& b,
                                     const std::vector<Word>& images, const Config& cfg) {
    if (static_cast<int>(images.size()) != a.rank())
        throw DomainError("map from " + a.name + " needs " + std::to_string(a.rank()) + " generator images");
    for (const auto& w : images)
        if (w.max_gen() >= b.rank()) throw DomainError("image word uses a generator outside " + b.name);
    TrivialityResult acc{Truth::True, "every relator maps to a trivial word"};
    for (const auto& r : a.relators) {
        auto res = is_trivial(b, r.substitute(images), cfg);
        acc = combine(acc, res, "relator " + a.word_str(r));
        if (acc.status == Truth::False) break;
    }
    return acc;
}

TrivialityResult verify_epi(const EpiOverG& g, const Config& cfg) {
    auto res = verify_homomorphism(g.source, g.target, g.images, cfg);
    if (res.status == Truth::False) return res;
    if (!find_surjectivity_witness(g.source, g.target, g.images))
        return combine(res, {Truth::Unknown, "no surjectivity witness found"}, "surjectivity");
    return res;
}

TrivialityResult verify_morphism(const MorphismOverG& f, const Config& cfg) {
    if (!same_shape(f.gamma_a.target, f.gamma_b.target))
        throw DomainError("morphism over G: gamma targets differ (" + f.gamma_a.target.name + " vs " +
                          f.gamma_b.target.name + ")");
    auto acc = verify_homomorphism(f.source(), f.target(), f.images, cfg);
    if (acc.status == Truth::False) return acc;
    for (int i = 0; i < f.source().rank(); ++i) {
        Word lhs = f.gamma_b.apply(f.images[i]);
        auto res = are_equal(f.gamma_a.target, lhs, f.gamma_a.images[i], cfg);
        acc = combine(acc, res, "gamma compatibility at " + f.source().generators[i]);
        if (acc.status == Truth::False) break;
    }
    return acc;
}

std::optional<std::vector<Word>> find_surjectivity_witness(const GroupPresentation& a, const GroupPresentation& b,
                                                           const std::vector<Word>& images, int max_factors) {
    std::vector<Word> out(b.rank());
    std::vector<bool> found(b.rank(), false);
    int remaining = b.rank();
    std::vector<std::pair<Word, Word>> frontier{{Word{}, Word{}}};  // (source word, image)
    for (int depth = 1; depth <= max_factors && remaining > 0; ++depth) {
        std::vector<std::pair<Word, Word>> next;
        for (const auto& [src, img] : frontier) {
            for (int i = 0; i < a.rank(); ++i) {
                for (int e : {1, -1}) {
                    Word s = src * Word::letter(i, e);
                    if (static_cast<int>(s.length()) < depth) continue;
                    Word im = img * images[i].pow(e);
                    if (im.num_syllables() == 1 && im.syllables()[0].exp == 1) {
                        int g = im.syllables()[0].gen;
                        if (!found[g]) {
                            found[g] = true;
                            out[g] = s;
                            --remaining;
                        }
                    }
                    next.push_back({s, im});
                }
            }
        }
        frontier = std::move(next);
    }
    if (remaining > 0) return std::nullopt;
    return out;
}

std::vector<Word> KernelGenerators::all() const {
    std::vector<Word> out = relator_lifts;
    out.insert(out.end(), generator_lifts.begin(), generator_lifts.end());
    return out;
}

KernelGenerators kernel_normal_generators(const GroupPresentation& a, const GroupPresentation& b,
                                          const std::vector<Word>& images, std::optional<std::vector<Word>> witnesses,
                                          const Config& cfg) {
    if (!witnesses) witnesses = find_surjectivity_witness(a, b, images);
    if (!witnesses) throw WitnessError("no surjectivity witness for the map " + a.name + " -> " + b.name);
    if (static_cast<int>(witnesses->size()) != b.rank())
        throw WitnessError("need one witness word per generator of " + b.name);
    for (int j = 0; j < b.rank(); ++j) {
        Word img = (*witnesses)[j].substitute(images);
        auto res = are_equal(b, img, Word::letter(j), cfg);
        if (res.status != Truth::True)
            throw WitnessError("witness for " + b.generators[j] + " does not verify (" + to_string(res.status) + ": " +
                               res.certificate + ")");
    }
    KernelGenerators out;
    for (const auto& r : b.relators) {
        Word s = r.substitute(*witnesses);
        if (!s.empty()) out.relator_lifts.push_back(s);
    }
    for (int i = 0; i < a.rank(); ++i) {
        Word w = Word::letter(i, -1) * images[i].substitute(*witnesses);
        if (!w.empty()) out.generator_lifts.push_back(w);
    }
    return out;
}

KernelGenerators kernel_normal_generators(const EpiOverG& g, std::optional<std::vector<Word>> witnesses,
                                          const Config& cfg) {
    return kernel_normal_generators(g.source, g.target, g.images, std::move(witnesses), cfg);
}

KernelGenerators kernel_normal_generators(const MorphismOverG& f, std::optional<std::vector<Word>> witnesses,
                                          const Config& cfg) {
    return kernel_normal_generators(f.source(), f.target(), f.images, std::move(witnesses), cfg);
}

bool same_shape(const GroupPresentation& a, const GroupPresentation& b) {
    if (a.rank() != b.rank()) return false;
    std::multiset<Word> ra(a.relators.begin(), a.relators.end()), rb(b.relators.begin(), b.relators.end());
    return ra == rb;
}

PushoutResult pushout(const MorphismOverG& f1, const MorphismOverG& f2, const std::string& name) {
    const auto& A = f1.target();
    const auto& B = f2.target();
    if (!same_shape(f1.gamma_b.target, f2.gamma_b.target))
        throw DomainError("pushout: gamma targets differ (" + f1.gamma_b.target.name + " vs " + f2.gamma_b.target.name +
                          ")");
    if (f1.source().rank() != f2.source().rank())
        throw DomainError("pushout: the two maps have different sources");
    PushoutResult out;
    out.group.name = name;
    bool clash = false;
    for (const auto& g : A.generators)
        if (B.index_of(g)) clash = true;
    std::string pa = A.name, pb = B.name;
    if (pa == pb) {
        pa += "1";
        pb += "2";
    }
    for (const auto& g : A.generators) out.group.generators.push_back(clash ? pa + "_" + g : g);
    for (const auto& g : B.generators) out.group.generators.push_back(clash ? pb + "_" + g : g);
    if (clash) out.notes.push_back("generator names prefixed with " + pa + "_ and " + pb + "_");
    const int shift = A.rank();
    for (const auto& r : A.relators) out.group.relators.push_back(r);
    for (const auto& r : B.relators) out.group.relators.push_back(r.shifted(shift));
    for (int c = 0; c < f1.source().rank(); ++c) {
        Word rel = f1.images[c] * f2.images[c].shifted(shift).inverse();
        out.group.relators.push_back(rel);
    }
    for (int i = 0; i < A.rank(); ++i) out.inclusion_a.push_back(Word::letter(i));
    for (int i = 0; i < B.rank(); ++i) out.inclusion_b.push_back(Word::letter(shift + i));
    out.gamma.source = out.group;
    out.gamma.target = f1.gamma_b.target;
    out.gamma.images = f1.gamma_b.images;
    for (const auto& w : f2.gamma_b.images) out.gamma.images.push_back(w);
    out.gamma.ptfa = f1.gamma_b.ptfa;
    return out;
}

SurgeryResult j_surgery_group(const GroupPresentation& ek, const GroupPresentation& ej, const EpiOverG& gamma_k,
                              const EpiOverG& gamma_j, bool swapped) {
    for (const auto* g : {&ek, &ej})
        if (!g->has_marked("meridian") || !g->has_marked("longitude"))
            throw PreconditionError("group " + g->name + " lacks a marked meridian or longitude");
    if (!same_shape(gamma_k.target, gamma_j.target)) throw DomainError("J-surgery: gamma targets differ");
    GroupPresentation torus = free_abelian_group("T2", {"m", "l"});
    EpiOverG gamma_c;
    gamma_c.source = torus;
    gamma_c.target = gamma_k.target;
    gamma_c.images = {gamma_k.apply(ek.meridian()), gamma_k.apply(ek.longitude())};
    MorphismOverG f1{{ek.meridian(), ek.longitude()}, gamma_c, gamma_k};
    Word mj = swapped ? ej.meridian() : ej.meridian().inverse();
    MorphismOverG f2{{mj, ej.longitude()}, gamma_c, gamma_j};
    // the gluing must be compatible with gamma; a certified mismatch is an error
    for (int c = 0; c < 2; ++c) {
        auto res = are_equal(gamma_k.target, gamma_j.apply(f2.images[c]), gamma_c.images[c]);
        if (res.status == Truth::False)
            throw DomainError("J-surgery: gluing is incompatible with gamma (" + res.certificate + ")");
    }
    SurgeryResult out;
    out.swapped = swapped;
    out.pushout = pushout(f1, f2, "M_" + ek.name + "_" + ej.name);
    out.pushout.group.marked["meridian"] = ek.meridian();
    out.pushout.group.marked["longitude"] = ek.longitude();
    out.pushout.gamma.source = out.pushout.group;
    out.pushout.notes.push_back(swapped ? "orientation: mu_K ~ mu_J (swapped)" : "orientation: mu_K ~ mu_J^-1");
    return out;
}

std::vector<int> tietze_collapse(GroupPresentation& p) {
    std::vector<int> alive(p.rank());
    for (int i = 0; i < p.rank(); ++i) alive[i] = i;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::int64_t> count(p.rank(), 0);
        for (const auto& r : p.relators)
            for (const auto& s : r.syllables()) count[s.gen] += std::abs(s.exp);
        for (const auto& [role, w] : p.marked)
            for (const auto& s : w.syllables()) count[s.gen] += 1 + std::abs(s.exp);
        for (int g = 0; g < p.rank() && !changed; ++g) {
            if (count[g] != 1) continue;
            for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
                if (p.relators[ri].exponent_sum(g) == 0) continue;
                // drop relator ri and generator g, reindexing the rest
                p.relators.erase(p.relators.begin() + static_cast<std::ptrdiff_t>(ri));
                std::vector<Word> images(p.rank());
                for (int k = 0; k < p.rank(); ++k) images[k] = k < g ? Word::letter(k) : Word::letter(k - 1);
                images[g] = Word{};
                for (auto& r : p.relators) r = r.substitute(images);
                for (auto& [role, w] : p.marked) w = w.substitute(images);
                p.generators.erase(p.generators.begin() + g);
                alive.erase(alive.begin() + g);
                changed = true;
                break;
            }
        }
    }
    return alive;
}

}  // namespace ck
