#pragma once

// Non-concordance bookkeeping: J-surgery groups, infection, depth
// certificates for the infection curve, and rho-invariant differences.

#include "ck/groups.hpp"
#include "ck/series.hpp"
#include "ck/signatures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ck {

struct Infection {
    Word eta;
    SeifertMatrix pattern;
    bool group_attached = false;
};

/// A knot K in M: the exterior group with marked meridian and longitude and
/// gamma induced by the inclusion into M.
struct KnotData {
    std::string label;
    EpiOverG gamma;  // gamma.source is the exterior group
    std::vector<Infection> infections;
    /// Set when an infection changed only the Seifert data, not the group.
    bool symbolic = false;
    std::vector<std::string> notes;

    const GroupPresentation& exterior() const { return gamma.source; }
    /// gamma(mu) = e, as it must be for a knot in M.
    Truth meridian_condition(const Config& cfg = {}) const;
};

/// pi_1 of 0-surgery: the knot group with its longitude killed.
GroupPresentation zero_surgery(const GroupPresentation& knot, const std::string& name = "");
/// A knot inside a ball of M: the free product of pi_1(M) with the knot group,
/// the knot generators mapping to e.
KnotData local_knot(const EpiOverG& m, const GroupPresentation& knot, const std::string& label);

struct MKResult {
    SurgeryResult surgery;     // gamma_P: P -> G
    EpiOverG gamma_amalgam;    // P -> G *_C G, C the image of the boundary torus
    std::vector<std::string> notes;

    const GroupPresentation& group() const { return surgery.pushout.group; }
    const EpiOverG& gamma() const { return surgery.pushout.gamma; }
};

MKResult build_MK(const KnotData& k, const KnotData& j, const Config& cfg = {});

/// K(eta, L). With l_group the exterior becomes the amalgam of E_K, a new
/// meridian for eta and E_L over mu_L ~ eta^-1, lambda_L ~ mu_eta; without
/// it only the Seifert data is recorded.
KnotData infect(const KnotData& k, const Word& eta, const SeifertMatrix& l,
                const std::optional<GroupPresentation>& l_group = std::nullopt, const Config& cfg = {});

/// Applies tietze_collapse to the exterior and keeps gamma consistent.
KnotData collapse(KnotData k);

/// Connected sum of every pattern tied in along eta.
SeifertMatrix infection_pattern(const KnotData& k, const Word& eta);

enum class SeriesKind { Rational, UserSupplied };
std::string to_string(SeriesKind k);

struct DepthCertificate {
    Word eta;
    std::string eta_text;
    int depth = 0;
    SeriesMembership in_evidence;
    SeriesMembership notin_evidence;
    SeriesKind kind = SeriesKind::Rational;

    /// Throws NoCertificate unless the evidence is In at depth and NotIn at depth + 1.
    void validate() const;
};

DepthCertificate certify_eta(const EpiOverG& p, const Word& eta, int n, const Config& cfg = {});
DepthCertificate certify_eta(const EpiOverG& p, const ExprPtr& eta, int n, const Config& cfg = {});
/// Wraps evidence for a series the engine does not compute.
DepthCertificate certify_eta_with_evidence(const Word& eta, int n, SeriesMembership in, SeriesMembership notin);

struct RhoLedgerEntry {
    std::string label;
    int index = 0;
    bool exact_zero = false;
    CertifiedReal value;
    std::string provenance;
};

/// rho_i(M(K, eta, L)) - rho_i(M(K)) for i = 0..i_max; refuses i_max > depth + 1.
std::vector<RhoLedgerEntry> rho_differences(const DepthCertificate& cert, const SeifertMatrix& l, int i_max,
                                            const Rational& tol = Rational(1, 1000000), const std::string& label = "");

enum class TauImage { Trivial, InfiniteCyclic };
std::string to_string(TauImage t);
TauImage tau_image(const DepthCertificate& cert, int i);

struct FamilyInput {
    std::string label;
    DepthCertificate cert;
    SeifertMatrix pattern;
};

struct ReportOptions {
    Rational tol = Rational(1, 1000000);
    bool base_is_j = false;
    bool eta_bounds_disk = false;  // geometric input, asserted by the user
};

struct Verdict {
    std::string a, b;
    std::string status;  // "not concordant" or "no verdict"
    CertifiedReal difference;  // rho_{n+1}(b) - rho_{n+1}(a)
};

struct DistinguishReport {
    std::string base;
    int depth = 0;
    struct Row {
        std::string label;
        std::string eta;
        std::string pattern;
        std::vector<RhoLedgerEntry> rho;
    };
    std::vector<Row> family;
    std::vector<Verdict> verdicts;
    std::vector<std::string> notes;

    std::string json() const;
    std::string text() const;
};

DistinguishReport distinguish_report(const KnotData& base, const std::vector<FamilyInput>& family,
                                     const ReportOptions& opt = {});

}  // namespace ck
