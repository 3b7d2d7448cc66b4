#include "ck/ledger.hpp"

#include "ck/errors.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace ck {

Truth KnotData::meridian_condition(const Config& cfg) const {
    auto m = gamma_membership(gamma, exterior().meridian(), cfg);
    return m.status == Membership::In ? Truth::True : m.status == Membership::NotIn ? Truth::False : Truth::Unknown;
}

GroupPresentation zero_surgery(const GroupPresentation& knot, const std::string& name) {
    GroupPresentation p = knot;
    p.name = name.empty() ? "Z_" + knot.name : name;
    p.relators.push_back(knot.longitude());
    p.marked.clear();
    return p;
}

KnotData local_knot(const EpiOverG& m, const GroupPresentation& knot, const std::string& label) {
    if (!knot.has_marked("meridian") || !knot.has_marked("longitude"))
        throw PreconditionError("knot group " + knot.name + " lacks a marked meridian or longitude");
    const auto& mg = m.source;
    bool clash = false;
    for (const auto& g : knot.generators) clash = clash || mg.index_of(g).has_value();
    KnotData k;
    k.label = label;
    GroupPresentation& e = k.gamma.source;
    e.name = "E_" + label;
    e.generators = mg.generators;
    for (const auto& g : knot.generators) e.generators.push_back(clash ? "k_" + g : g);
    e.relators = mg.relators;
    const int shift = mg.rank();
    for (const auto& r : knot.relators) e.relators.push_back(r.shifted(shift));
    e.marked["meridian"] = knot.meridian().shifted(shift);
    e.marked["longitude"] = knot.longitude().shifted(shift);
    k.gamma.target = m.target;
    k.gamma.images = m.images;
    k.gamma.images.resize(e.rank());
    k.gamma.ptfa = m.ptfa;
    if (clash) k.notes.push_back("knot generators prefixed with k_");
    return k;
}

MKResult build_MK(const KnotData& k, const KnotData& j, const Config& cfg) {
    for (const auto* kd : {&k, &j})
        if (kd->meridian_condition(cfg) == Truth::False)
            throw PreconditionError("meridian of " + kd->label + " does not map to e in G");
    MKResult out;
    out.surgery = j_surgery_group(k.exterior(), j.exterior(), k.gamma, j.gamma);
    out.notes = out.surgery.pushout.notes;

    // G *_C G: two copies of G glued along the images of the boundary torus
    const auto& g = k.gamma.target;
    EpiOverG id_g{g, g, {}, k.gamma.ptfa};
    for (int i = 0; i < g.rank(); ++i) id_g.images.push_back(Word::letter(i));
    EpiOverG torus{free_abelian_group("T2", {"m", "l"}), g, {}, nullptr};
    torus.images = {k.gamma.apply(k.exterior().meridian()), k.gamma.apply(k.exterior().longitude())};
    MorphismOverG c1{torus.images, torus, id_g};
    MorphismOverG c2{{j.gamma.apply(j.exterior().meridian()).inverse(), j.gamma.apply(j.exterior().longitude())},
                     torus, id_g};
    auto amalgam = pushout(c1, c2, g.name + "*" + g.name);
    out.gamma_amalgam.source = out.group();
    out.gamma_amalgam.target = amalgam.group;
    out.gamma_amalgam.images = k.gamma.images;
    for (const auto& w : j.gamma.images) out.gamma_amalgam.images.push_back(w.shifted(g.rank()));
    out.notes.push_back("G *_C G amalgamated along the image of the boundary torus (the longitude; the meridian maps to e)");
    return out;
}

KnotData infect(const KnotData& k, const Word& eta, const SeifertMatrix& l,
                const std::optional<GroupPresentation>& l_group, const Config& cfg) {
    l.validate();
    if (eta.max_gen() >= k.exterior().rank()) throw DomainError("eta uses letters outside the exterior group");
    KnotData out = k;
    if (eta.empty()) {
        out.notes.push_back("eta is trivial: infection leaves the knot unchanged");
        return out;
    }
    out.label = k.label + "(" + k.exterior().word_str(eta) + "," + (l.name.empty() ? "L" : l.name) + ")";
    out.infections.push_back({eta, l, l_group.has_value()});
    if (!l_group) {
        out.symbolic = true;
        out.notes.push_back("no group for the pattern; only its Seifert matrix is recorded");
        return out;
    }
    const auto& lg = *l_group;
    if (!lg.has_marked("meridian") || !lg.has_marked("longitude"))
        throw PreconditionError("pattern group lacks a marked meridian or longitude");
    auto triv = is_trivial(k.gamma.target, k.gamma.apply(eta), cfg);
    if (triv.status != Truth::True)
        throw PreconditionError("gamma(eta) is not certified trivial (" + to_string(triv.status) + ")");

    GroupPresentation& e = out.gamma.source;
    const int base = e.rank();
    const int mu_eta = base;
    const int shift = base + 1;
    std::string stem = "eta_mu";
    while (e.index_of(stem)) stem += "_";
    e.generators.push_back(stem);
    std::string prefix = "L" + std::to_string(out.infections.size()) + "_";
    for (const auto& g : lg.generators) e.generators.push_back(prefix + g);
    for (const auto& r : lg.relators) e.relators.push_back(r.shifted(shift));
    // mu_L ~ eta^-1, lambda_L ~ mu_eta
    e.relators.push_back(lg.meridian().shifted(shift) * eta);
    e.relators.push_back(lg.longitude().shifted(shift) * Word::letter(mu_eta).inverse());
    e.name = "E_" + out.label;
    out.gamma.images.resize(e.rank());
    out.notes.push_back("the complement of eta is modelled by one extra generator " + stem +
                        " for its meridian");
    return out;
}

KnotData collapse(KnotData k) {
    auto alive = tietze_collapse(k.gamma.source);
    std::vector<Word> images;
    for (int i : alive) images.push_back(k.gamma.images[i]);
    k.gamma.images = std::move(images);
    return k;
}

SeifertMatrix infection_pattern(const KnotData& k, const Word& eta) {
    SeifertMatrix s{"unknot", IntMatrix(0, 0)};
    bool first = true;
    for (const auto& inf : k.infections)
        if (inf.eta == eta) {
            s = first ? inf.pattern : connected_sum(s, inf.pattern);
            first = false;
        }
    return s;
}

std::string to_string(SeriesKind k) { return k == SeriesKind::Rational ? "rational" : "local-user-supplied"; }

void DepthCertificate::validate() const {
    if (in_evidence.status != Membership::In || in_evidence.depth != depth)
        throw NoCertificate("depth " + std::to_string(depth) + " membership is " + to_string(in_evidence.status));
    if (notin_evidence.status != Membership::NotIn || notin_evidence.depth != depth + 1)
        throw NoCertificate("depth " + std::to_string(depth + 1) + " membership is " +
                            to_string(notin_evidence.status));
}

namespace {

template <class W>
DepthCertificate certify(const EpiOverG& p, const W& eta, const Word& flat, std::string text, int n,
                         const Config& cfg) {
    if (n < 0) throw DomainError("depth must be non-negative");
    DepthCertificate c;
    c.eta = flat;
    c.eta_text = std::move(text);
    c.depth = n;
    try {
        c.in_evidence = rational_series_membership(p, eta, n, cfg);
        c.notin_evidence = rational_series_membership(p, eta, n + 1, cfg);
    } catch (const PreconditionError& e) {
        throw NoCertificate(std::string("eta is not in the kernel of gamma: ") + e.what());
    }
    std::string missing;
    if (c.in_evidence.status != Membership::In)
        missing += "membership at depth " + std::to_string(n) + " is " + to_string(c.in_evidence.status) + " (" +
                   c.in_evidence.certificate + ")";
    if (c.notin_evidence.status != Membership::NotIn)
        missing += std::string(missing.empty() ? "" : "; ") + "membership at depth " + std::to_string(n + 1) + " is " +
                   to_string(c.notin_evidence.status) + " (" + c.notin_evidence.certificate + ")";
    if (!missing.empty()) throw NoCertificate(missing);
    return c;
}

}  // namespace

DepthCertificate certify_eta(const EpiOverG& p, const Word& eta, int n, const Config& cfg) {
    return certify(p, eta, eta, p.source.word_str(eta), n, cfg);
}

DepthCertificate certify_eta(const EpiOverG& p, const ExprPtr& eta, int n, const Config& cfg) {
    return certify(p, eta, eta->eval(), eta->str(p.source.generators), n, cfg);
}

DepthCertificate certify_eta_with_evidence(const Word& eta, int n, SeriesMembership in, SeriesMembership notin) {
    DepthCertificate c;
    c.eta = eta;
    c.depth = n;
    c.in_evidence = std::move(in);
    c.notin_evidence = std::move(notin);
    c.kind = SeriesKind::UserSupplied;
    c.validate();
    return c;
}

std::vector<RhoLedgerEntry> rho_differences(const DepthCertificate& cert, const SeifertMatrix& l, int i_max,
                                            const Rational& tol, const std::string& label) {
    cert.validate();
    const int n = cert.depth;
    if (i_max < 0) throw DomainError("index must be non-negative");
    if (i_max > n + 1)
        throw DomainError("the infection formula says nothing about indices above depth + 1 = " + std::to_string(n + 1));
    std::vector<RhoLedgerEntry> out;
    for (int i = 0; i <= i_max; ++i) {
        RhoLedgerEntry e;
        e.label = label;
        e.index = i;
        if (i <= n) {
            e.exact_zero = true;
            e.value = {Rational(0), Rational(0), "0"};
            e.provenance = "i <= n: the coefficient system does not see the infection (eta in depth " +
                           std::to_string(n) + ")";
        } else {
            e.value = signature_integral(l, tol);
            e.provenance = "i = n + 1: integral of the Levine-Tristram signature of " +
                           (l.name.empty() ? std::string("L") : l.name) + " over the circle";
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string to_string(TauImage t) { return t == TauImage::Trivial ? "Trivial" : "InfiniteCyclic"; }

TauImage tau_image(const DepthCertificate& cert, int i) {
    cert.validate();
    if (i < 0 || i > cert.depth + 1)
        throw DomainError("tau image is only known for 0 <= i <= depth + 1 = " + std::to_string(cert.depth + 1));
    return i <= cert.depth ? TauImage::Trivial : TauImage::InfiniteCyclic;
}

namespace {

CertifiedReal difference(const CertifiedReal& a, const CertifiedReal& b) {
    return {b.lo - a.hi, b.hi - a.lo, ""};
}

nlohmann::ordered_json real_json(const CertifiedReal& r) {
    nlohmann::ordered_json j;
    j["lo"] = r.lo.str();
    j["hi"] = r.hi.str();
    j["symbolic"] = r.symbolic;
    return j;
}

}  // namespace

DistinguishReport distinguish_report(const KnotData& base, const std::vector<FamilyInput>& family,
                                     const ReportOptions& opt) {
    DistinguishReport rep;
    rep.base = base.label;
    if (!family.empty()) rep.depth = family.front().cert.depth;
    for (const auto& f : family)
        if (f.cert.depth != rep.depth)
            throw DomainError("family members certify different depths (" + std::to_string(rep.depth) + " and " +
                              std::to_string(f.cert.depth) + ")");
    std::vector<std::pair<std::string, CertifiedReal>> top{{base.label, {Rational(0), Rational(0), "0"}}};
    for (const auto& f : family) {
        DistinguishReport::Row row;
        row.label = f.label;
        row.eta = f.cert.eta_text.empty() ? base.exterior().word_str(f.cert.eta) : f.cert.eta_text;
        row.pattern = f.pattern.name;
        row.rho = rho_differences(f.cert, f.pattern, rep.depth + 1, opt.tol, f.label);
        top.emplace_back(f.label, row.rho.back().value);
        rep.family.push_back(std::move(row));
    }
    for (std::size_t a = 0; a < top.size(); ++a)
        for (std::size_t b = a + 1; b < top.size(); ++b) {
            Verdict v;
            v.a = top[a].first;
            v.b = top[b].first;
            v.difference = difference(top[a].second, top[b].second);
            bool disjoint = top[a].second.hi < top[b].second.lo || top[b].second.hi < top[a].second.lo;
            v.status = disjoint ? "not concordant" : "no verdict";
            rep.verdicts.push_back(std::move(v));
        }
    rep.notes.push_back("rho_" + std::to_string(rep.depth + 1) +
                        " of J-surgery is a concordance invariant; disjoint certified intervals separate knots");
    if (opt.base_is_j && opt.eta_bounds_disk)
        rep.notes.push_back("each member is J-characteristic by construction (user asserted that eta bounds an "
                            "embedded disk in M)");
    else if (opt.eta_bounds_disk)
        rep.notes.push_back("eta bounds an embedded disk in M (user asserted)");
    return rep;
}

std::string DistinguishReport::json() const {
    nlohmann::ordered_json j;
    j["base"] = base;
    j["depth"] = depth;
    j["family"] = nlohmann::ordered_json::array();
    for (const auto& r : family) {
        nlohmann::ordered_json m;
        m["label"] = r.label;
        m["eta"] = r.eta;
        m["depth"] = depth;
        m["L"] = r.pattern;
        m["rho"] = nlohmann::ordered_json::array();
        for (const auto& e : r.rho) {
            nlohmann::ordered_json x;
            x["index"] = e.index;
            x["exact_zero"] = e.exact_zero;
            x["value"] = real_json(e.value);
            x["provenance"] = e.provenance;
            m["rho"].push_back(std::move(x));
        }
        j["family"].push_back(std::move(m));
    }
    j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        nlohmann::ordered_json x;
        x["a"] = v.a;
        x["b"] = v.b;
        x["status"] = v.status;
        x["gap"] = real_json(v.difference);
        j["verdicts"].push_back(std::move(x));
    }
    j["notes"] = notes;
    return j.dump(2);
}

std::string DistinguishReport::text() const {
    auto iv = [](const CertifiedReal& r) { return "[" + r.lo.str() + ", " + r.hi.str() + "]"; };
    std::ostringstream os;
    os << "base " << base << ", eta depth " << depth << "\n\n";
    os << std::left << std::setw(28) << "knot" << std::setw(14) << "pattern"
       << "rho_" << depth + 1 << " difference\n";
    for (const auto& r : family) {
        const auto& v = r.rho.back().value;
        os << std::setw(28) << r.label << std::setw(14) << r.pattern << v.symbolic;
        if (!v.symbolic.empty() && v.lo != v.hi) os << "  in " << iv(v);
        os << "\n";
    }
    os << "\n";
    for (const auto& v : verdicts) os << v.a << " vs " << v.b << ": " << v.status << ", difference in " << iv(v.difference) << "\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace ck
