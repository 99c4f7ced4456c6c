#include "pgq/family.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "pgq/parallel.hpp"

namespace pgq {

namespace {

std::size_t hyperplanes_through_point(const HyperplaneFamily& family,
                                      const ProjectiveSpace& space, std::size_t p) {
    if (space.has_bitmap()) return and_count(space.row(p), family.bits);
    std::size_t c = 0;
    family.bits.for_each_set([&](std::size_t h) {
        if (space.incident(p, h)) ++c;
    });
    return c;
}

} // namespace

QuadricPartition classify_family(const IndexBitset& quadric, const ProjectiveSpace& space,
                                 int n, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    QuadricPartition part;
    part.sign = sign;
    const std::size_t H = space.hyperplane_count();
    part.selected = {sign > 0 ? "H+" : "H-", IndexBitset(H)};
    part.tangent = {"T", IndexBitset(H)};
    part.opposite = {sign > 0 ? "M+" : "M-", IndexBitset(H)};
    for (std::size_t h = 0; h < H; ++h) {
        const SectionClass sc = classify_section(quadric, h, space, n);
        switch (sc.type) {
            case SectionType::Hyperbolic: ++part.hyperbolic_count; break;
            case SectionType::Elliptic: ++part.elliptic_count; break;
            case SectionType::SingularCone: ++part.singular_count; break;
        }
        const bool selected = (sc.type == SectionType::Hyperbolic && sign > 0) ||
                              (sc.type == SectionType::Elliptic && sign < 0);
        if (selected)
            part.selected.bits.set(h);
        else if (sc.type == SectionType::SingularCone)
            part.tangent.bits.set(h);
        else
            part.opposite.bits.set(h);
    }
    return part;
}

ColouringReport colour_points(const HyperplaneFamily& family, const ProjectiveSpace& space,
                              int n, int sign, std::size_t violation_cap) {
    const std::uint64_t q = space.field().order();
    if (q % 2 != 0)
        throw std::invalid_argument("point colouring is defined for even q only");
    if (n < 2) throw std::invalid_argument("point colouring needs n >= 2");
    if (family.bits.size() != space.hyperplane_count())
        throw std::invalid_argument("family is indexed over a different space");

    ColouringReport rep;
    rep.n = n;
    rep.q = q;
    rep.sign = sign;
    rep.family_size = family.size();
    rep.white_value = ipow(q, 2 * static_cast<unsigned>(n) - 1) / 2;
    const std::uint64_t qn = ipow(q, static_cast<unsigned>(n));
    const std::uint64_t qn1 = ipow(q, static_cast<unsigned>(n) - 1);
    rep.black_value = qn / 2 * (sign > 0 ? qn1 + 1 : qn1 - 1);

    const std::size_t P = space.point_count();
    rep.red = IndexBitset(P);
    rep.white = IndexBitset(P);
    rep.black = IndexBitset(P);
    for (std::size_t p = 0; p < P; ++p) {
        const std::uint64_t c = hyperplanes_through_point(family, space, p);
        ++rep.histogram[c];
        if (c == 0) {
            rep.red.set(p);
            ++rep.r;
        } else if (c == rep.white_value) {
            rep.white.set(p);
            ++rep.w;
        } else if (c == rep.black_value) {
            rep.black.set(p);
            ++rep.b;
        } else {
            ++rep.violation_total;
            if (rep.violations.size() < violation_cap) rep.violations.push_back({p, c});
        }
    }
    if (qn / 2 != 0 && rep.family_size % (qn / 2) == 0) rep.h_norm = rep.family_size / (qn / 2);
    return rep;
}

Verdict check_condition_I(const ColouringReport& report) {
    if (report.violation_total == 0)
        return {true, "every point lies on 0, " + std::to_string(report.white_value) + " or " +
                          std::to_string(report.black_value) + " family members"};
    std::ostringstream out;
    out << report.violation_total << " points with illegal membership counts;";
    for (const auto& v : report.violations) out << " point " << v.point << " -> " << v.count;
    return {false, out.str()};
}

std::vector<std::uint64_t> SpectrumReport::support() const {
    std::vector<std::uint64_t> s;
    s.reserve(multiplicity.size());
    for (const auto& [v, m] : multiplicity)
        if (m > 0) s.push_back(v);
    return s;
}

ConditionIIResult check_condition_II(const HyperplaneFamily& family, const ProjectiveSpace& space,
                                     unsigned workers, std::size_t sample, std::uint64_t seed,
                                     std::size_t violation_cap) {
    const std::uint64_t q = space.field().order();
    const std::uint64_t half_q = q / 2;
    const bool even = q % 2 == 0;

    ConditionIIResult res;
    res.spectrum.context = "codim2-pencil:" + family.label;

    struct Chunk {
        std::map<std::uint64_t, std::uint64_t> spectrum;
        std::vector<std::array<std::size_t, 2>> violators;
        std::uint64_t violation_total = 0;
    };

    auto tally = [&](Chunk& c, const CodimTwoFlat& flat) {
        std::uint64_t count = 0;
        for (std::size_t h : flat.pencil) count += family.bits.test(h);
        ++c.spectrum[count];
        if (even && count > 0 && count < half_q) {
            ++c.violation_total;
            if (c.violators.size() < violation_cap) c.violators.push_back(flat.generators);
        }
    };

    std::vector<Chunk> chunks;
    if (sample > 0) {
        res.sampled = true;
        chunks.resize(1);
        sample_codim2(space, sample, seed, [&](const CodimTwoFlat& f) { tally(chunks[0], f); });
    } else {
        const unsigned nw = resolve_workers(workers);
        const auto bounds = codim2_chunk_bounds(space.hyperplane_count(), nw * 4);
        chunks.resize(bounds.size() - 1);
        run_chunks(chunks.size(), nw, [&](std::size_t c) {
            for_each_codim2_range(space, bounds[c], bounds[c + 1],
                                  [&](const CodimTwoFlat& f) { tally(chunks[c], f); });
        });
    }
    for (const Chunk& c : chunks) {
        for (const auto& [v, m] : c.spectrum) res.spectrum.multiplicity[v] += m;
        res.violation_total += c.violation_total;
        for (const auto& g : c.violators)
            if (res.violating_flats.size() < violation_cap) res.violating_flats.push_back(g);
    }
    for (const auto& [v, m] : res.spectrum.multiplicity) res.spectrum.surveyed += m;

    if (even) {
        if (res.violation_total == 0)
            res.verdict = Verdict{true, "every flat in a member lies in at least " +
                                            std::to_string(half_q) + " members"};
        else
            res.verdict =
                Verdict{false, std::to_string(res.violation_total) +
                                   " flats lie in fewer than q/2 members (but at least one)"};
    }
    return res;
}

SpectrumReport codim2_black_spectrum(const IndexBitset& black, const ProjectiveSpace& space,
                                     unsigned workers) {
    SpectrumReport rep;
    rep.context = "codim2-black";
    const unsigned nw = resolve_workers(workers);
    const auto bounds = codim2_chunk_bounds(space.hyperplane_count(), nw * 4);
    std::vector<std::map<std::uint64_t, std::uint64_t>> chunks(bounds.size() - 1);
    run_chunks(chunks.size(), nw, [&](std::size_t c) {
        for_each_codim2_range(space, bounds[c], bounds[c + 1], [&](const CodimTwoFlat& f) {
            ++chunks[c][space.count_on_flat(black, f.generators[0], f.generators[1])];
        });
    });
    for (const auto& m : chunks)
        for (const auto& [v, cnt] : m) rep.multiplicity[v] += cnt;
    for (const auto& [v, m] : rep.multiplicity) rep.surveyed += m;
    return rep;
}

IdentityReport verify_counting_identities(const ColouringReport& report,
                                          const HyperplaneFamily& family,
                                          const ProjectiveSpace& space) {
    IdentityReport id;
    const std::uint64_t q = report.q;
    const std::uint64_t half_qn = ipow(q, static_cast<unsigned>(report.n)) / 2;
    const std::uint64_t qn1 = ipow(q, static_cast<unsigned>(report.n) - 1);
    const std::uint64_t F = report.family_size;
    std::ostringstream why;

    if (F == 0) {
        id.detail = "empty family";
        return id;
    }

    id.divisible = F % half_qn == 0;
    if (!id.divisible) why << "|F| not divisible by q^n/2; ";
    id.h_norm = id.divisible ? F / half_qn : 0;
    const std::uint64_t hm = id.h_norm % qn1;
    id.congruence_ok = id.divisible && (hm == 0 || hm == 1 || hm == qn1 - 1);
    if (!id.congruence_ok) why << "h quotient not congruent to 0 or ±1 mod q^{n-1}; ";

    bool first = true;
    id.s_constant = id.t_constant = true;
    family.bits.for_each_set([&](std::size_t h) {
        const std::uint64_t s = space.count_on_hyperplane(report.white, h);
        const std::uint64_t t = space.count_on_hyperplane(report.black, h);
        if (first) {
            id.s = s;
            id.t = t;
            first = false;
        } else {
            id.s_constant = id.s_constant && s == id.s;
            id.t_constant = id.t_constant && t == id.t;
        }
    });
    if (!id.s_constant) why << "white count varies across members; ";
    if (!id.t_constant) why << "black count varies across members; ";

    const std::uint64_t per_hyperplane = space.points_per_hyperplane();
    id.eq_incidence_ok =
        report.w * report.white_value + report.b * report.black_value == F * per_hyperplane;
    if (!id.eq_incidence_ok) why << "incidence double count fails; ";
    id.eq_black_ok = report.b * report.black_value == F * id.t;
    if (!id.eq_black_ok) why << "black double count fails; ";
    id.eq_white_ok = report.w * report.white_value == F * id.s;
    if (!id.eq_white_ok) why << "white double count fails; ";

    id.pass = id.divisible && id.congruence_ok && id.s_constant && id.t_constant &&
              id.eq_incidence_ok && id.eq_black_ok && id.eq_white_ok;
    id.detail = id.pass ? "all double-counting identities hold exactly" : why.str();
    return id;
}

SectionTallies partition_section_tallies(const QuadricPartition& partition,
                                         const ColouringReport& colouring,
                                         const ProjectiveSpace& space) {
    SectionTallies st;
    auto scan = [&](const HyperplaneFamily& fam, bool& constant, std::uint64_t& white,
                    std::uint64_t& black) {
        bool first = true;
        constant = true;
        fam.bits.for_each_set([&](std::size_t h) {
            const std::uint64_t s = space.count_on_hyperplane(colouring.white, h);
            const std::uint64_t t = space.count_on_hyperplane(colouring.black, h);
            if (first) {
                white = s;
                black = t;
                first = false;
            } else {
                constant = constant && s == white && t == black;
            }
        });
    };
    scan(partition.opposite, st.opposite_constant, st.opposite_white, st.opposite_black);
    scan(partition.tangent, st.tangent_constant, st.tangent_white, st.tangent_black);
    return st;
}

OddSpectrumResult odd_q_spectrum(const QuadraticForm& form, const ProjectiveSpace& space,
                                 int n, int sign) {
    const std::uint64_t q = space.field().order();
    if (q % 2 == 0) throw std::invalid_argument("odd-q spectrum requires odd q");

    const IndexBitset quadric = zero_set(form, space);
    const QuadricPartition part = classify_family(quadric, space, n, sign);

    OddSpectrumResult res;
    res.spectrum.context = "codim2-pencil:" + part.selected.label;
    bool cross_ok = true;
    std::ostringstream cross_why;

    for_each_codim2(space, [&](const CodimTwoFlat& flat) {
        std::uint64_t count = 0;
        for (std::size_t h : flat.pencil) count += part.selected.bits.test(h);
        ++res.spectrum.multiplicity[count];

        const std::vector<std::size_t> polar = perp_line(flat, form, space);
        std::uint64_t on_q = 0;
        for (std::size_t p : polar) on_q += quadric.test(p);
        ++res.cross_tab[{on_q, count}];
        if (on_q == 0 && count != (q + 1) / 2) {
            cross_ok = false;
            cross_why << "flat (" << flat.generators[0] << "," << flat.generators[1]
                      << ") has empty polar line but " << count << " members; ";
        }
        if (on_q == 2 && count != (q - 1) / 2) {
            cross_ok = false;
            cross_why << "flat (" << flat.generators[0] << "," << flat.generators[1]
                      << ") has 2-point polar line but " << count << " members; ";
        }
    });
    for (const auto& [v, m] : res.spectrum.multiplicity) res.spectrum.surveyed += m;

    bool support_ok = true;
    for (std::uint64_t v : res.spectrum.support())
        support_ok = support_ok && (v == 0 || v == (q - 1) / 2 || v == (q + 1) / 2 || v == q);
    res.support_ok = {support_ok, support_ok
                                      ? "spectrum contained in {0, (q-1)/2, (q+1)/2, q}"
                                      : "spectrum contains a value outside {0, (q-1)/2, (q+1)/2, q}"};
    res.cross_tab_ok = {cross_ok, cross_ok ? "polar-line cross-tabulation holds" : cross_why.str()};
    return res;
}

const char* conclusion_branch_name(ConclusionBranch b) {
    switch (b) {
        case ConclusionBranch::Quadric: return "quadric";
        case ConclusionBranch::Hyperoval: return "hyperoval";
        case ConclusionBranch::Neither: return "neither";
    }
    return "?";
}

ConclusionResult theorem_conclusion_check(const HyperplaneFamily& family,
                                          const ProjectiveSpace& space, int n, int sign) {
    const std::uint64_t q = space.field().order();
    ConclusionResult res;

    const ColouringReport colouring = colour_points(family, space, n, sign);
    if (colouring.violation_total != 0) {
        res.verdict = {false, "point colouring has violations; conclusion undefined"};
        return res;
    }
    colouring.red.for_each_set([&](std::size_t p) { res.red_points.push_back(p); });

    // quadric branch: the black points carry a unique form and the family
    // is exactly the sign-classified hyperplanes of its quadric
    if (auto fitted = fit_quadric(colouring.black, space)) {
        IndexBitset expected(space.hyperplane_count());
        const std::uint64_t want = quadric_pm_size(n, q, sign);
        for (std::size_t h = 0; h < space.hyperplane_count(); ++h)
            if (space.count_on_hyperplane(colouring.black, h) == want) expected.set(h);
        if (expected == family.bits) {
            res.branch = ConclusionBranch::Quadric;
            res.fitted = std::move(*fitted);
            res.verdict = {true,
                           "black points form the quadric " + form_to_string(*res.fitted) +
                               "; family is exactly its sign-" + (sign > 0 ? std::string("+") : std::string("-")) +
                               " hyperplane class"};
            return res;
        }
        res.verdict = {false, "black points form a quadric but the family is not its full "
                              "hyperplane class"};
        return res;
    }

    // hyperoval branch, only open for n = 2, sign = -1
    if (n == 2 && sign == -1) {
        std::ostringstream why;
        bool ok = res.red_points.size() == q + 2;
        if (!ok) why << "expected q+2 red points, found " << res.red_points.size() << "; ";
        if (ok) {
            Matrix reds(res.red_points.size(), static_cast<std::size_t>(space.dimension()) + 1);
            for (std::size_t i = 0; i < res.red_points.size(); ++i) {
                auto v = space.point(res.red_points[i]);
                for (std::size_t c = 0; c < v.size(); ++c) reds.at(i, c) = v[c];
            }
            if (rank(space.field(), reds) != 3) {
                ok = false;
                why << "red points are not coplanar; ";
            }
        }
        if (ok) {
            for (std::size_t i = 0; i < res.red_points.size() && ok; ++i)
                for (std::size_t j = i + 1; j < res.red_points.size() && ok; ++j) {
                    std::uint64_t reds_on_line = 0;
                    for (std::size_t p : space.line_through(res.red_points[i], res.red_points[j]))
                        reds_on_line += colouring.red.test(p);
                    if (reds_on_line > 2) {
                        ok = false;
                        why << "three red points are collinear; ";
                    }
                }
        }
        if (ok) {
            IndexBitset skew(space.hyperplane_count());
            for (std::size_t h = 0; h < space.hyperplane_count(); ++h)
                if (space.count_on_hyperplane(colouring.red, h) == 0) skew.set(h);
            if (!(skew == family.bits)) {
                ok = false;
                why << "family differs from the solids disjoint from the red points; ";
            }
        }
        if (ok) {
            res.branch = ConclusionBranch::Hyperoval;
            res.verdict = {true, "red points form a hyperoval and the family is exactly the "
                                 "solids disjoint from it"};
            return res;
        }
        res.verdict = {false, "no quadric fits the black points and the hyperoval branch "
                              "fails: " + why.str()};
        return res;
    }

    res.verdict = {false, "no quadric fits the black points and the hyperoval branch does "
                          "not apply"};
    return res;
}

LineCensusResult red_line_census(const ColouringReport& report, const ProjectiveSpace& space) {
    const std::uint64_t q = report.q;
    LineCensusResult res;
    if (report.n != 2) {
        res.verdict = {false, "line census applies to solids of PG(4,q) only"};
        return res;
    }
    const std::uint64_t rhs = (ipow(q, 4) - ipow(q, 3)) / 2;
    const std::uint64_t white_solid = ipow(q, 3) / 2;
    const std::uint64_t black_solid = (ipow(q, 3) - ipow(q, 2)) / 2;

    std::ostringstream why;
    bool ok = true;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::size_t> reds;
    report.red.for_each_set([&](std::size_t p) { reds.push_back(p); });

    for (std::size_t rp : reds) {
        for (std::size_t p = 0; p < space.point_count(); ++p) {
            if (p == rp) continue;
            const auto line = space.line_through(rp, p);
            const std::uint64_t key = std::uint64_t(line[0]) * space.point_count() + line[1];
            if (!seen.insert(key).second) continue;
            ++res.lines;
            std::uint64_t nr = 0, u = 0, v = 0;
            for (std::size_t x : line) {
                nr += report.red.test(x);
                u += report.white.test(x);
                v += report.black.test(x);
            }
            if (nr + u + v != q + 1) {
                ok = false;
                why << "line through " << rp << " carries an uncoloured point; ";
                continue;
            }
            if (u * white_solid + v * black_solid != rhs) {
                ok = false;
                why << "line (" << line[0] << "," << line[1] << ") fails the solid count; ";
            }
            if (nr == 1) {
                ++res.tangents;
                if (v != q) {
                    ok = false;
                    why << "tangent line (" << line[0] << "," << line[1] << ") has " << v
                        << " black points, expected q; ";
                }
            } else if (nr == 2) {
                ++res.secants;
                if (u != q - 1) {
                    ok = false;
                    why << "secant line (" << line[0] << "," << line[1] << ") has " << u
                        << " white points, expected q-1; ";
                }
            } else {
                ok = false;
                why << "line with " << nr << " red points; ";
            }
        }
    }
    res.verdict = {ok, ok ? "every line meeting the red set satisfies the solid count; "
                            "tangents carry q black and secants q-1 white points"
                          : why.str()};
    return res;
}

} // namespace pgq
