// End-to-end acceptance suite.  Each criterion prints one [PASS]/[FAIL]
// line; the binary exits nonzero if any criterion fails.  All checks are
// exact integer comparisons — no tolerances anywhere.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pgq/constructions.hpp"
#include "pgq/family.hpp"

using namespace pgq;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int id, std::string name) : id_(id), name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok_ = false;
            notes_ += " | " + what;
        }
    }

    void note(const std::string& what) { notes_ += " | " + what; }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("[%s] criterion %2d: %s (%.2f s)%s\n", ok_ ? "PASS" : "FAIL", id_,
                    name_.c_str(), secs, notes_.c_str());
        std::fflush(stdout);
        if (!ok_) ++g_failures;
    }

private:
    int id_;
    std::string name_;
    bool ok_ = true;
    std::string notes_;
    std::chrono::steady_clock::time_point start_;
};

struct QuadricCase {
    int n;
    const ProjectiveSpace* space;
    IndexBitset quadric;
    QuadraticForm form;
};

std::string u2s(std::uint64_t v) { return std::to_string(v); }

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - mark_).count();
        mark_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point mark_ = std::chrono::steady_clock::now();
};

} // namespace

int main() {
    // the spaces every criterion shares
    const ProjectiveSpace pg42(4, Field::make(2, 1));
    const ProjectiveSpace pg44(4, Field::make(2, 2));
    const ProjectiveSpace pg62(6, Field::make(2, 1));
    const ProjectiveSpace pg64(6, Field::make(2, 2));
    const ProjectiveSpace pg48(4, Field::make(2, 3));
    const ProjectiveSpace pg43(4, Field::make(3, 1));
    const ProjectiveSpace pg45(4, Field::make(5, 1));

    std::vector<QuadricCase> quadrics;
    for (const auto* sp : {&pg42, &pg44, &pg62, &pg64}) {
        const int n = sp->dimension() / 2;
        QuadraticForm form = QuadraticForm::parabolic(n, sp->field());
        IndexBitset z = zero_set(form, *sp);
        quadrics.push_back({n, sp, std::move(z), std::move(form)});
    }

    // 1. enumerated sizes equal the closed forms, including every tangent
    //    section; each check under 1 s
    {
        Criterion c(1, "size formulas vs enumeration");
        Stopwatch sw;
        c.expect(quadrics[0].quadric.count() == 15, "|Q(4,2)| != 15");
        c.expect(quadrics[1].quadric.count() == 85, "|Q(4,4)| != 85");
        c.expect(quadrics[2].quadric.count() == 63, "|Q(6,2)| != 63");
        c.expect(sw.lap() < 1.0, "parabolic size checks over 1 s");

        const ProjectiveSpace pg32(3, Field::make(2, 1));
        const Field& f2 = pg32.field();
        c.expect(zero_set(QuadraticForm::hyperbolic(2, f2), pg32).count() == 9,
                 "|Q+(3,2)| != 9");
        c.expect(zero_set(QuadraticForm::elliptic(2, f2), pg32).count() == 5, "|Q-(3,2)| != 5");
        c.expect(sw.lap() < 1.0, "odd-dimension size checks over 1 s");

        for (const auto& qc : {quadrics[0], quadrics[1], quadrics[2]}) {
            const std::size_t nuc = nucleus(qc.form, *qc.space);
            const std::uint64_t want = tangent_section_size(qc.n, qc.space->field().order());
            for (std::size_t h = 0; h < qc.space->hyperplane_count(); ++h)
                if (qc.space->incident(nuc, h))
                    c.expect(qc.space->count_on_hyperplane(qc.quadric, h) == want,
                             "tangent section size mismatch at hyperplane " + u2s(h));
            c.expect(sw.lap() < 1.0, "tangent section scan over 1 s");
        }
    }

    // 2. hyperplane census of the three small quadrics, under 5 s
    {
        Criterion c(2, "family census (|H+|, |H-|, |T|)");
        Stopwatch sw;
        const std::uint64_t expect[3][3] = {{10, 6, 15}, {136, 120, 85}, {36, 28, 63}};
        for (int i = 0; i < 3; ++i) {
            const auto& qc = quadrics[static_cast<std::size_t>(i)];
            const std::uint64_t q = qc.space->field().order();
            const std::uint64_t qn = ipow(q, static_cast<unsigned>(qc.n));
            const QuadricPartition part = classify_family(qc.quadric, *qc.space, qc.n, +1);
            c.expect(part.hyperbolic_count == expect[i][0], "hyperbolic count");
            c.expect(part.elliptic_count == expect[i][1], "elliptic count");
            c.expect(part.singular_count == expect[i][2], "singular count");
            c.expect(part.hyperbolic_count == qn * (qn + 1) / 2, "|H+| formula");
            c.expect(part.elliptic_count == qn * (qn - 1) / 2, "|H-| formula");
            c.expect(part.singular_count == parabolic_size(qc.n, q), "|T| formula");
        }
        c.expect(sw.lap() < 5.0, "census over 5 s");
    }

    // cache the classified partitions and colourings for criteria 3-7
    struct FamilyRun {
        const QuadricCase* qc;
        int sign;
        QuadricPartition part;
        ColouringReport colouring;
        double seconds;
    };
    std::vector<FamilyRun> runs;
    for (const auto& qc : quadrics)
        for (int sign : {+1, -1}) {
            Stopwatch sw;
            QuadricPartition part = classify_family(qc.quadric, *qc.space, qc.n, sign);
            ColouringReport col = colour_points(part.selected, *qc.space, qc.n, sign);
            runs.push_back({&qc, sign, std::move(part), std::move(col), sw.lap()});
        }

    // 3. condition (I) histograms for H± of all four quadrics
    {
        Criterion c(3, "condition (I) colourings of H+/H- up to Q(6,4)");
        for (const auto& r : runs) {
            const std::string tag = r.part.selected.label + " of Q(" +
                                    std::to_string(2 * r.qc->n) + "," +
                                    u2s(r.qc->space->field().order()) + ")";
            c.expect(r.colouring.violation_total == 0, tag + ": violations");
            c.expect(check_condition_I(r.colouring).pass, tag + ": verdict");
            c.expect(r.colouring.r == 1, tag + ": red count");
            c.expect(r.colouring.b == parabolic_size(r.qc->n, r.qc->space->field().order()),
                     tag + ": black count");
            for (const auto& [value, mult] : r.colouring.histogram)
                c.expect(value == 0 || value == r.colouring.white_value ||
                             value == r.colouring.black_value,
                         tag + ": stray histogram value " + u2s(value));
            c.expect(r.seconds < 600.0, tag + ": colouring over 10 min");
        }
    }

    // 4. condition (II) full codimension-2 spectra, subsets of {0, q/2, q};
    //    PG(6,2) under 30 s, PG(6,4) under 30 min
    {
        Criterion c(4, "condition (II) spectra up to PG(6,4), full scans");
        for (const auto& r : runs) {
            const std::uint64_t q = r.qc->space->field().order();
            Stopwatch sw;
            const ConditionIIResult res = check_condition_II(r.part.selected, *r.qc->space);
            const double secs = sw.lap();
            const std::string tag = r.part.selected.label + " of Q(" +
                                    std::to_string(2 * r.qc->n) + "," + u2s(q) + ")";
            c.expect(res.verdict && res.verdict->pass, tag + ": verdict");
            c.expect(res.spectrum.surveyed == r.qc->space->codim2_count(),
                     tag + ": flats surveyed");
            for (std::uint64_t v : res.spectrum.support())
                c.expect(v == 0 || v == q / 2 || v == q, tag + ": stray value " + u2s(v));
            if (r.qc->n == 3 && q == 2) c.expect(secs < 30.0, tag + ": scan over 30 s");
            c.expect(secs < 1800.0, tag + ": scan over 30 min");
        }
    }

    // 5. the hyperoval families for q = 2, 4, 8, under 1 min
    std::vector<std::pair<const ProjectiveSpace*, HyperplaneFamily>> oval_runs;
    {
        Criterion c(5, "hyperoval families for q in {2, 4, 8}");
        Stopwatch sw;
        const std::uint64_t expect_size[3] = {4, 96, 1792};
        const ProjectiveSpace* spaces[3] = {&pg42, &pg44, &pg48};
        for (int i = 0; i < 3; ++i) {
            const ProjectiveSpace& sp = *spaces[i];
            const std::uint64_t q = sp.field().order();
            const Hyperoval oval = hyperoval_regular(sp);
            const HyperplaneFamily fam = solids_disjoint_from(oval, sp);
            const std::string tag = "q=" + u2s(q);
            c.expect(fam.size() == expect_size[i], tag + ": family size");
            c.expect(fam.size() == q * q * (q * q - q) / 2, tag + ": size formula");

            const ColouringReport col = colour_points(fam, sp, 2, -1);
            c.expect(col.r == q + 2, tag + ": red census");
            c.expect(col.w == q * q - 1, tag + ": white census");
            c.expect(col.b == ipow(q, 4) + ipow(q, 3), tag + ": black census");
            c.expect(check_condition_I(col).pass, tag + ": condition (I)");

            const ConditionIIResult c2 = check_condition_II(fam, sp);
            c.expect(c2.verdict && c2.verdict->pass, tag + ": condition (II)");
            for (std::uint64_t v : c2.spectrum.support())
                c.expect(v == 0 || v == q / 2 || v == q, tag + ": stray pencil value " + u2s(v));

            const LineCensusResult lines = red_line_census(col, sp);
            c.expect(lines.verdict.pass, tag + ": line census");
            c.expect(lines.secants == (q + 2) * (q + 1) / 2, tag + ": secant count");

            oval_runs.emplace_back(&sp, fam);
        }
        c.expect(sw.lap() < 60.0, "hyperoval verification over 1 min");
    }

    // 6. the conclusion oracle: quadric branch with round-trip recovery,
    //    hyperoval branch for the disjoint-solid families; under 1 min each
    {
        Criterion c(6, "conclusion oracle (quadric and hyperoval branches)");
        for (const auto& r : runs) {
            const std::string tag = r.part.selected.label + " of Q(" +
                                    std::to_string(2 * r.qc->n) + "," +
                                    u2s(r.qc->space->field().order()) + ")";
            Stopwatch sw;
            const ConclusionResult conc =
                theorem_conclusion_check(r.part.selected, *r.qc->space, r.qc->n, r.sign);
            c.expect(conc.branch == ConclusionBranch::Quadric, tag + ": branch");
            c.expect(conc.verdict.pass, tag + ": verdict");
            c.expect(conc.fitted && proportional(*conc.fitted, r.qc->form),
                     tag + ": form recovery");
            c.expect(sw.lap() < 60.0, tag + ": conclusion over 1 min");
        }
        for (const auto& [sp, fam] : oval_runs) {
            const std::string tag = "hyperoval family, q=" + u2s(sp->field().order());
            Stopwatch sw;
            const ConclusionResult conc = theorem_conclusion_check(fam, *sp, 2, -1);
            c.expect(conc.branch == ConclusionBranch::Hyperoval, tag + ": branch");
            c.expect(conc.verdict.pass, tag + ": verdict");
            c.expect(sw.lap() < 60.0, tag + ": conclusion over 1 min");
        }
    }

    // 7. divisibility of h± and the three double-counting identities
    {
        Criterion c(7, "divisibility and double-counting identities");
        for (const auto& r : runs) {
            const std::uint64_t q = r.qc->space->field().order();
            const std::string tag = r.part.selected.label + " of Q(" +
                                    std::to_string(2 * r.qc->n) + "," + u2s(q) + ")";
            const IdentityReport id =
                verify_counting_identities(r.colouring, r.part.selected, *r.qc->space);
            c.expect(id.pass, tag + ": " + id.detail);
            const std::uint64_t qn1 = ipow(q, static_cast<unsigned>(r.qc->n) - 1);
            const std::uint64_t hm = id.h_norm % qn1;
            c.expect(hm == 0 || hm == 1 || hm == qn1 - 1, tag + ": congruence");
        }
        for (const auto& [sp, fam] : oval_runs) {
            const std::string tag = "hyperoval family, q=" + u2s(sp->field().order());
            const ColouringReport col = colour_points(fam, *sp, 2, -1);
            const IdentityReport id = verify_counting_identities(col, fam, *sp);
            c.expect(id.pass, tag + ": " + id.detail);
        }
    }

    // 8. odd-q spectra with the polar-line cross-tabulation, under 1 min
    {
        Criterion c(8, "odd-q spectra of Q(4,3) and Q(4,5)");
        Stopwatch sw;
        for (const ProjectiveSpace* sp : {&pg43, &pg45}) {
            const std::uint64_t q = sp->field().order();
            const QuadraticForm form = QuadraticForm::parabolic(2, sp->field());
            for (int sign : {+1, -1}) {
                const OddSpectrumResult res = odd_q_spectrum(form, *sp, 2, sign);
                const std::string tag = "q=" + u2s(q) + " sign " + (sign > 0 ? "+" : "-");
                c.expect(res.support_ok.pass, tag + ": support");
                c.expect(res.cross_tab_ok.pass, tag + ": cross-tab");
                bool saw_empty = false, saw_secant = false;
                for (const auto& [key, mult] : res.cross_tab) {
                    if (key.first == 0) {
                        saw_empty = true;
                        c.expect(key.second == (q + 1) / 2, tag + ": empty polar line count");
                    }
                    if (key.first == 2) {
                        saw_secant = true;
                        c.expect(key.second == (q - 1) / 2, tag + ": 2-point polar line count");
                    }
                }
                c.expect(saw_empty && saw_secant, tag + ": cross-tab rows missing");
            }
        }
        c.expect(sw.lap() < 60.0, "odd-q spectra over 1 min");
    }

    // 9. black-point counts in codimension-2 flats take the three cone values
    {
        Criterion c(9, "codimension-2 black counts are cone sizes");
        for (const auto& qc : {quadrics[0], quadrics[1], quadrics[2]}) {
            const std::uint64_t q = qc.space->field().order();
            const SpectrumReport rep = codim2_black_spectrum(qc.quadric, *qc.space);
            const std::uint64_t plain = parabolic_size(qc.n - 1, q);
            const std::uint64_t plus = cone_over(q, quadric_pm_size(qc.n - 1, q, +1));
            const std::uint64_t minus = cone_over(q, quadric_pm_size(qc.n - 1, q, -1));
            const std::string tag =
                "Q(" + std::to_string(2 * qc.n) + "," + u2s(q) + ")";
            c.expect(rep.surveyed == qc.space->codim2_count(), tag + ": flats surveyed");
            for (std::uint64_t v : rep.support())
                c.expect(v == plain || v == plus || v == minus,
                         tag + ": stray black count " + u2s(v));
        }
    }

    // 10. negative controls: axiom independence, under 1 s
    {
        Criterion c(10, "negative controls (perturbed and flat-avoiding families)");
        Stopwatch sw;
        const QuadricPartition part = classify_family(quadrics[0].quadric, pg42, 2, +1);
        std::vector<std::size_t> members;
        part.selected.bits.for_each_set([&](std::size_t h) { members.push_back(h); });
        for (std::size_t h : members) {
            HyperplaneFamily damaged = part.selected;
            damaged.bits.reset(h);
            c.expect(!check_condition_I(colour_points(damaged, pg42, 2, +1)).pass,
                     "removing hyperplane " + u2s(h) + " kept condition (I)");
        }

        CodimTwoFlat chosen;
        bool got = false;
        for_each_codim2(pg42, [&](const CodimTwoFlat& f) {
            if (!got) {
                chosen = f;
                got = true;
            }
        });
        HyperplaneFamily avoiders{"avoiders", IndexBitset(pg42.hyperplane_count())};
        for (std::size_t h = 0; h < pg42.hyperplane_count(); ++h) avoiders.bits.set(h);
        for (std::size_t h : chosen.pencil) avoiders.bits.reset(h);
        const ConditionIIResult c2 = check_condition_II(avoiders, pg42);
        c.expect(c2.verdict && c2.verdict->pass, "flat-avoiding family fails condition (II)");
        c.expect(!check_condition_I(colour_points(avoiders, pg42, 2, +1)).pass,
                 "flat-avoiding family passes condition (I) for +");
        c.expect(!check_condition_I(colour_points(avoiders, pg42, 2, -1)).pass,
                 "flat-avoiding family passes condition (I) for -");
        c.expect(sw.lap() < 1.0, "negative controls over 1 s");
    }

    // 11. the exhaustive switch search is fast, stable and matches the
    //     recorded result: 448 of 32768 candidates pass the spectrum check
    //     and every passing candidate is a quadric
    {
        Criterion c(11, "exhaustive switch search over PG(4,2)");
        const auto t0 = std::chrono::steady_clock::now();
        const SwitchSearchReport a = exhaustive_switch_search(pg42);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(secs < 10.0, "search exceeded 10 s");
        c.expect(a.candidates == 32768, "candidate count");
        c.expect(a.standard_passes, "standard selection fails");
        c.expect(a.spectrum_pass == 448, "spectrum-pass count " + u2s(a.spectrum_pass));
        c.expect(a.quadric_pass == 448, "quadric-pass count " + u2s(a.quadric_pass));
        c.expect(a.nonquadric_pass == 0, "non-quadric passers " + u2s(a.nonquadric_pass));

        const SwitchSearchReport b = exhaustive_switch_search(pg42);
        c.expect(a.spectrum_pass == b.spectrum_pass && a.quadric_pass == b.quadric_pass &&
                     a.nonquadric_masks == b.nonquadric_masks,
                 "two runs disagree");
        c.note("recorded: " + u2s(a.spectrum_pass) + "/" + u2s(a.candidates) +
               " pass, all quadrics");
    }

    if (g_failures == 0) {
        std::printf("all 11 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
