#include "pgq/constructions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "pgq/parallel.hpp"

namespace pgq {

namespace {

void check_pg4(const ProjectiveSpace& space) {
    if (space.dimension() != 4)
        throw std::invalid_argument("hyperovals are embedded in PG(4,q)");
    if (space.field().order() % 2 != 0)
        throw std::invalid_argument("hyperovals require even q");
}

Hyperoval build_oval(const ProjectiveSpace& space, unsigned frobenius_k, const char* kind) {
    const Field& f = space.field();
    const std::uint64_t q = f.order();

    Hyperoval oval;
    oval.kind = kind;
    oval.exponent = frobenius_k;
    oval.bits = IndexBitset(space.point_count());
    std::vector<Fel> v(5, 0);
    for (Fel t = 0; t < q; ++t) {
        v[0] = 1;
        v[1] = t;
        v[2] = f.pow(t, std::uint64_t{1} << frobenius_k);
        oval.points.push_back(space.index_of(v));
    }
    v = {0, 1, 0, 0, 0};
    oval.points.push_back(space.index_of(v));
    v = {0, 0, 1, 0, 0};
    oval.points.push_back(space.index_of(v));
    std::sort(oval.points.begin(), oval.points.end());
    for (std::size_t p : oval.points) oval.bits.set(p);

    if (oval.bits.count() != q + 2)
        throw std::logic_error("hyperoval points are not distinct");
    // no 3 collinear: every point triple must span a plane
    Matrix m(3, 5);
    for (std::size_t i = 0; i < oval.points.size(); ++i)
        for (std::size_t j = i + 1; j < oval.points.size(); ++j)
            for (std::size_t k = j + 1; k < oval.points.size(); ++k) {
                const std::size_t rows[3] = {oval.points[i], oval.points[j], oval.points[k]};
                for (int r = 0; r < 3; ++r) {
                    auto pt = space.point(rows[r]);
                    for (std::size_t c = 0; c < 5; ++c) m.at(static_cast<std::size_t>(r), c) = pt[c];
                }
                if (rank(f, m) != 3)
                    throw std::logic_error("hyperoval construction has 3 collinear points");
            }
    return oval;
}

} // namespace

Hyperoval hyperoval_regular(const ProjectiveSpace& pg4) {
    check_pg4(pg4);
    return build_oval(pg4, 1, "regular");
}

Hyperoval hyperoval_translation(const ProjectiveSpace& pg4, unsigned k) {
    check_pg4(pg4);
    const unsigned h = pg4.field().degree();
    if (k == 0 || std::gcd(k, h) != 1)
        throw std::invalid_argument("translation exponent k must satisfy gcd(k, h) = 1");
    return build_oval(pg4, k, "translation");
}

HyperplaneFamily solids_disjoint_from(const Hyperoval& oval, const ProjectiveSpace& space) {
    HyperplaneFamily fam{"H-", IndexBitset(space.hyperplane_count())};
    for (std::size_t h = 0; h < space.hyperplane_count(); ++h)
        if (space.count_on_hyperplane(oval.bits, h) == 0) fam.bits.set(h);
    const std::uint64_t q = space.field().order();
    if (fam.size() != q * q * (q * q - q) / 2)
        throw std::logic_error("disjoint-solid count does not match q^2(q^2-q)/2");
    return fam;
}

std::vector<std::vector<std::size_t>> lines_through(const ProjectiveSpace& space,
                                                    std::size_t point) {
    std::vector<std::vector<std::size_t>> lines;
    std::vector<bool> visited(space.point_count(), false);
    visited[point] = true;
    for (std::size_t p = 0; p < space.point_count(); ++p) {
        if (visited[p]) continue;
        auto line = space.line_through(point, p);
        for (std::size_t x : line) visited[x] = true;
        lines.push_back(std::move(line));
    }
    return lines;
}

QuasiQuadricVerdict verify_quasi_quadric(const IndexBitset& k, std::size_t nucleus_point,
                                         const ProjectiveSpace& space, int n) {
    const std::uint64_t q = space.field().order();
    QuasiQuadricVerdict v;
    v.size = k.count();
    v.size_ok = v.size == parabolic_size(n, q);

    for (const auto& line : lines_through(space, nucleus_point)) {
        std::uint64_t on = 0;
        for (std::size_t p : line) on += k.test(p);
        if (on != 1) ++v.bad_lines;
    }
    v.nucleus_lines_ok = v.bad_lines == 0;

    const std::uint64_t lo = quadric_pm_size(n, q, -1);
    const std::uint64_t hi = quadric_pm_size(n, q, +1);
    v.off_nucleus_spectrum.context = "off-nucleus-hyperplane-sizes";
    bool spectrum_ok = true;
    for (std::size_t h = 0; h < space.hyperplane_count(); ++h) {
        if (space.incident(nucleus_point, h)) continue;
        const std::uint64_t m = space.count_on_hyperplane(k, h);
        ++v.off_nucleus_spectrum.multiplicity[m];
        spectrum_ok = spectrum_ok && (m == lo || m == hi);
    }
    for (const auto& [val, mult] : v.off_nucleus_spectrum.multiplicity)
        v.off_nucleus_spectrum.surveyed += mult;
    v.spectrum_ok = spectrum_ok;
    v.pass = v.size_ok && v.nucleus_lines_ok && v.spectrum_ok;

    if (q % 2 == 0) {
        for (int sign : {+1, -1}) {
            HyperplaneFamily fam{sign > 0 ? "H+" : "H-", IndexBitset(space.hyperplane_count())};
            const std::uint64_t want = quadric_pm_size(n, q, sign);
            for (std::size_t h = 0; h < space.hyperplane_count(); ++h)
                if (space.count_on_hyperplane(k, h) == want) fam.bits.set(h);
            const ColouringReport rep = colour_points(fam, space, n, sign);
            (sign > 0 ? v.condition_I_plus : v.condition_I_minus) = rep.violation_total == 0;
        }
    }
    return v;
}

IndexBitset nucleus_line_switch(const IndexBitset& k, std::size_t nucleus_point,
                                const ProjectiveSpace& space,
                                const std::vector<std::size_t>& selected_lines,
                                unsigned replacement_offset) {
    const auto lines = lines_through(space, nucleus_point);
    IndexBitset out = k;
    for (std::size_t li : selected_lines) {
        if (li >= lines.size())
            throw std::invalid_argument("selection names a line not through the nucleus");
        const auto& line = lines[li];
        std::size_t current = space.point_count();
        std::vector<std::size_t> candidates;
        for (std::size_t p : line) {
            if (p == nucleus_point) continue;
            if (k.test(p))
                current = p;
            else
                candidates.push_back(p);
        }
        if (current == space.point_count() || candidates.size() != space.field().order() - 1)
            throw std::invalid_argument("input set does not meet a selected nucleus line once");
        out.reset(current);
        out.set(candidates[replacement_offset % candidates.size()]);
    }
    return out;
}

SwitchSearchReport exhaustive_switch_search(const ProjectiveSpace& pg42, unsigned workers,
                                            std::ostream* jsonl) {
    if (pg42.dimension() != 4 || pg42.field().order() != 2)
        throw std::invalid_argument("the exhaustive switch search runs in PG(4,2) only");

    const QuadraticForm form = QuadraticForm::parabolic(2, pg42.field());
    const IndexBitset quadric = zero_set(form, pg42);
    const std::size_t nuc = nucleus(form, pg42);
    const auto lines = lines_through(pg42, nuc);
    if (lines.size() != 15) throw std::logic_error("PG(4,2) must have 15 lines per point");

    // per line: the quadric point and the one alternative (q = 2)
    std::array<std::uint32_t, 15> keep{}, flip{};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t p : lines[i]) {
            if (p == nuc) continue;
            (quadric.test(p) ? keep[i] : flip[i]) = static_cast<std::uint32_t>(p);
        }
    }

    // hyperplanes off the nucleus, and their point rows as 31-bit masks
    std::vector<std::uint32_t> off_rows;
    for (std::size_t h = 0; h < pg42.hyperplane_count(); ++h) {
        if (pg42.incident(nuc, h)) continue;
        std::uint32_t row = 0;
        for (std::size_t p = 0; p < pg42.point_count(); ++p)
            if (pg42.incident(p, h)) row |= std::uint32_t{1} << p;
        off_rows.push_back(row);
    }

    const std::uint32_t total = std::uint32_t{1} << lines.size();
    struct Chunk {
        std::uint64_t spectrum_pass = 0, quadric_pass = 0;
        std::vector<std::uint32_t> nonquadric;
        std::string jsonl;
    };
    const unsigned nw = resolve_workers(workers);
    const std::size_t chunk_count = std::size_t{64};
    std::vector<Chunk> chunks(chunk_count);
    const std::uint32_t span = total / chunk_count;

    run_chunks(chunk_count, nw, [&](std::size_t c) {
        Chunk& out = chunks[c];
        for (std::uint32_t mask = static_cast<std::uint32_t>(c) * span,
                           end = mask + span;
             mask < end; ++mask) {
            std::uint32_t pts = 0;
            for (std::size_t i = 0; i < lines.size(); ++i)
                pts |= std::uint32_t{1} << ((mask >> i) & 1 ? flip[i] : keep[i]);
            bool ok = true;
            for (std::uint32_t row : off_rows) {
                const int m = std::popcount(pts & row);
                if (m != 5 && m != 9) {
                    ok = false;
                    break;
                }
            }
            bool is_quadric = false;
            if (ok) {
                ++out.spectrum_pass;
                IndexBitset set(pg42.point_count());
                for (std::size_t p = 0; p < pg42.point_count(); ++p)
                    if ((pts >> p) & 1) set.set(p);
                is_quadric = fit_quadric(set, pg42).has_value();
                if (is_quadric)
                    ++out.quadric_pass;
                else
                    out.nonquadric.push_back(mask);
            }
            if (jsonl) {
                out.jsonl += "{\"candidate\":" + std::to_string(mask) +
                             ",\"passes_spectrum\":" + (ok ? "true" : "false") +
                             ",\"is_quadric\":" + (is_quadric ? "true" : "false") + "}\n";
            }
        }
    });

    SwitchSearchReport rep;
    rep.candidates = total;
    for (const Chunk& c : chunks) {
        rep.spectrum_pass += c.spectrum_pass;
        rep.quadric_pass += c.quadric_pass;
        rep.nonquadric_masks.insert(rep.nonquadric_masks.end(), c.nonquadric.begin(),
                                    c.nonquadric.end());
        if (jsonl) *jsonl << c.jsonl;
    }
    rep.nonquadric_pass = rep.nonquadric_masks.size();

    // mask 0 is the untouched quadric selection
    IndexBitset std_set = quadric;
    rep.standard_passes = verify_quasi_quadric(std_set, nuc, pg42, 2).pass;
    return rep;
}

} // namespace pgq
