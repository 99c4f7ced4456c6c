#ifndef PGQ_FAMILY_HPP
#define PGQ_FAMILY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgq/quadric.hpp"

namespace pgq {

/// A set of hyperplanes of one space, indexed over the hyperplane table.
struct HyperplaneFamily {
    std::string label;
    IndexBitset bits;

    std::uint64_t size() const { return bits.count(); }
};

struct Verdict {
    bool pass = false;
    std::string detail;
};

/// The three-way split of all hyperplanes by their section of a parabolic
/// quadric: the chosen sign's family, the singular (tangent) hyperplanes,
/// and the opposite sign's family.
struct QuadricPartition {
    int sign = +1;
    HyperplaneFamily selected;  // H+ or H-
    HyperplaneFamily tangent;   // T: hyperplanes through the red point
    HyperplaneFamily opposite;  // M: the rest, no red points
    std::uint64_t hyperbolic_count = 0, elliptic_count = 0, singular_count = 0;
};

QuadricPartition classify_family(const IndexBitset& quadric, const ProjectiveSpace& space,
                                 int n, int sign);

/// Per-point membership census.  A point is red on 0 hyperplanes of the
/// family, white on q^{2n-1}/2, black on q^n(q^{n-1}±1)/2; any other count
/// is a violation (collected up to the cap, never thrown).
struct ColouringReport {
    int n = 0;
    std::uint64_t q = 0;
    int sign = +1;
    std::uint64_t family_size = 0;
    std::uint64_t white_value = 0, black_value = 0;
    IndexBitset red, white, black;
    std::uint64_t r = 0, w = 0, b = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;

    struct Violation {
        std::size_t point;
        std::uint64_t count;
    };
    std::vector<Violation> violations;  // capped
    std::uint64_t violation_total = 0;

    /// |F| / (q^n/2) when that division is exact.
    std::optional<std::uint64_t> h_norm;
};

ColouringReport colour_points(const HyperplaneFamily& family, const ProjectiveSpace& space,
                              int n, int sign, std::size_t violation_cap = 100);

Verdict check_condition_I(const ColouringReport& report);

/// value -> multiplicity over the surveyed objects.
struct SpectrumReport {
    std::string context;
    std::map<std::uint64_t, std::uint64_t> multiplicity;
    std::uint64_t surveyed = 0;

    std::vector<std::uint64_t> support() const;
};

struct ConditionIIResult {
    /// Absent for odd q: the spectrum is reported without a verdict.
    std::optional<Verdict> verdict;
    SpectrumReport spectrum;
    /// Example flats with membership count in (0, q/2), capped.
    std::vector<std::array<std::size_t, 2>> violating_flats;
    std::uint64_t violation_total = 0;
    bool sampled = false;
};

/// Pencil-membership counts of the family over codimension-2 flats.  For
/// even q the verdict holds iff every flat contained in at least one member
/// lies in at least q/2 of them.  sample = 0 scans every flat.
ConditionIIResult check_condition_II(const HyperplaneFamily& family, const ProjectiveSpace& space,
                                     unsigned workers = 0, std::size_t sample = 0,
                                     std::uint64_t seed = 1, std::size_t violation_cap = 100);

/// Multiset of |B ∩ flat| over all codimension-2 flats.
SpectrumReport codim2_black_spectrum(const IndexBitset& black, const ProjectiveSpace& space,
                                     unsigned workers = 0);

/// Exact double-counting identities for a family whose colouring passed:
///   (incidence)  w*(q^{2n-1}/2) + b*(q^n/2)(q^{n-1}±1) = |F|*(q^{2n}-1)/(q-1)
///   (black)      b*(q^n/2)(q^{n-1}±1) = |F|*t
///   (white)      w*(q^{2n-1}/2) = |F|*s
/// with s and t the white/black counts inside a member, constant across the
/// family; plus |F| divisible by q^n/2 with the quotient congruent to 0 or
/// ±1 modulo q^{n-1}.
struct IdentityReport {
    bool divisible = false;
    std::uint64_t h_norm = 0;
    bool congruence_ok = false;
    bool s_constant = false, t_constant = false;
    std::uint64_t s = 0, t = 0;
    bool eq_incidence_ok = false, eq_black_ok = false, eq_white_ok = false;
    bool pass = false;
    std::string detail;
};

IdentityReport verify_counting_identities(const ColouringReport& report,
                                          const HyperplaneFamily& family,
                                          const ProjectiveSpace& space);

/// White/black counts inside members of the two complementary hyperplane
/// classes of a partition (a, b for the opposite family; c, d for the
/// tangent one), each constant across its class for a quadric partition.
struct SectionTallies {
    bool opposite_constant = false, tangent_constant = false;
    std::uint64_t opposite_white = 0, opposite_black = 0;  // a, b
    std::uint64_t tangent_white = 0, tangent_black = 0;    // c, d
};

SectionTallies partition_section_tallies(const QuadricPartition& partition,
                                         const ColouringReport& colouring,
                                         const ProjectiveSpace& space);

/// Spectrum of pencil-membership counts of H± over all codimension-2 flats
/// for odd q, with the cross-tabulation against |polar line ∩ Q|:
/// flats sectioning Q in a non-singular parabolic have polar lines meeting
/// Q in 0 or 2 points and lie on (q+1)/2 resp. (q-1)/2 members.
struct OddSpectrumResult {
    SpectrumReport spectrum;
    Verdict support_ok;   // spectrum ⊆ {0, (q-1)/2, (q+1)/2, q}
    Verdict cross_tab_ok; // the perp rules above
    /// (|perp ∩ Q|, membership count) -> multiplicity
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cross_tab;
};

OddSpectrumResult odd_q_spectrum(const QuadraticForm& form, const ProjectiveSpace& space,
                                 int n, int sign);

enum class ConclusionBranch { Quadric, Hyperoval, Neither };

const char* conclusion_branch_name(ConclusionBranch b);

/// Decide which characterisation branch a family lands in:
///  - Quadric: the black points carry a unique quadratic form whose zero set
///    they are, and the family is exactly the hyperplanes meeting that
///    quadric in |Q±(2n-1,q)| points;
///  - Hyperoval (n = 2, sign = -1): the red points are q+2 coplanar points,
///    no 3 collinear, and the family is exactly the solids avoiding them;
///  - Neither: a counterexample alert.
struct ConclusionResult {
    ConclusionBranch branch = ConclusionBranch::Neither;
    Verdict verdict;
    std::optional<QuadraticForm> fitted;
    std::vector<std::size_t> red_points;
};

ConclusionResult theorem_conclusion_check(const HyperplaneFamily& family,
                                          const ProjectiveSpace& space, int n, int sign);

/// Census of the lines meeting the red set of a colouring (n = 2): with u
/// white and v black points on such a line, u*(q^3/2) + v*(q^3-q^2)/2 =
/// (q^4-q^3)/2; tangent lines carry q black points, secants q-1 white.
struct LineCensusResult {
    Verdict verdict;
    std::uint64_t lines = 0, tangents = 0, secants = 0;
};

LineCensusResult red_line_census(const ColouringReport& report, const ProjectiveSpace& space);

} // namespace pgq

#endif
