#include "pgq/projective_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgq/parallel.hpp"

namespace pgq {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::uint64_t pg_point_count(int dimension, std::uint64_t q) {
    return (ipow(q, static_cast<unsigned>(dimension) + 1) - 1) / (q - 1);
}

std::uint64_t pg_codim2_count(int dimension, std::uint64_t q) {
    const unsigned n1 = static_cast<unsigned>(dimension) + 1;
    // neither factor of the numerator need be divisible on its own
    unsigned __int128 num = ipow(q, n1) - 1;
    num *= ipow(q, n1 - 1) - 1;
    return static_cast<std::uint64_t>(num / ((q * q - 1) * (q - 1)));
}

ProjectiveSpace::ProjectiveSpace(int dimension, Field field, const SpaceOptions& opts)
    : dim_(dimension), field_(std::move(field)) {
    if (dim_ < 2) throw std::invalid_argument("projective dimension must be at least 2");
    const std::uint64_t q = field_.order();
    const std::uint64_t expected = pg_point_count(dim_, q);
    if (expected > opts.max_points)
        throw std::invalid_argument("point table would exceed the configured memory bound");
    count_ = static_cast<std::size_t>(expected);
    per_hyperplane_ = static_cast<std::size_t>(pg_point_count(dim_ - 1, q));

    // Canonical table: blocks by position k of the leading 1, k = N down to 0;
    // within a block the tail coordinates run lexicographically.  This is
    // exactly ascending lexicographic order on whole coordinate vectors.
    const std::size_t w = static_cast<std::size_t>(dim_) + 1;
    coords_.assign(count_ * w, 0);
    std::size_t idx = 0;
    for (int k = dim_; k >= 0; --k) {
        const std::uint64_t tails = ipow(q, static_cast<unsigned>(dim_ - k));
        for (std::uint64_t t = 0; t < tails; ++t, ++idx) {
            Fel* v = coords_.data() + idx * w;
            v[k] = 1;
            std::uint64_t rem = t;
            for (int i = dim_; i > k; --i) {
                v[i] = static_cast<Fel>(rem % q);
                rem /= q;
            }
        }
    }
    if (idx != count_) throw std::logic_error("point census does not match the Gaussian count");

    if (count_ <= opts.bitmap_point_limit) {
        rows_.assign(count_, IndexBitset(count_));
        const unsigned workers = resolve_workers(opts.workers);
        const std::size_t chunk = (count_ + workers * 4 - 1) / (workers * 4);
        const std::size_t chunks = (count_ + chunk - 1) / chunk;
        run_chunks(chunks, workers, [&](std::size_t c) {
            const std::size_t lo = c * chunk;
            const std::size_t hi = std::min(count_, lo + chunk);
            for (std::size_t h = lo; h < hi; ++h)
                for (std::size_t p = 0; p < count_; ++p)
                    if (dot(p, h) == 0) rows_[h].set(p);
        });
        // gaussian-count cross-check: each hyperplane carries a PG(N-1,q)
        for (std::size_t h = 0; h < count_; ++h)
            if (rows_[h].count() != per_hyperplane_)
                throw std::logic_error("incidence row size does not match the hyperplane count");
    }
}

std::span<const Fel> ProjectiveSpace::point(std::size_t i) const {
    if (i >= count_) throw std::out_of_range("point index out of range");
    const std::size_t w = static_cast<std::size_t>(dim_) + 1;
    return {coords_.data() + i * w, w};
}

std::size_t ProjectiveSpace::index_of(std::span<const Fel> v) const {
    const std::size_t w = static_cast<std::size_t>(dim_) + 1;
    if (v.size() != w) throw std::invalid_argument("coordinate vector length mismatch");
    const std::uint64_t q = field_.order();
    std::size_t k = 0;
    while (k < w && v[k] == 0) ++k;
    if (k == w) throw std::invalid_argument("zero vector has no projective point");
    const Fel scale = field_.inv(v[k]);
    // block offset for leading position k, then the tail read base-q
    std::uint64_t r = (ipow(q, static_cast<unsigned>(dim_ - static_cast<int>(k))) - 1) / (q - 1);
    std::uint64_t tail = 0;
    for (std::size_t i = k + 1; i < w; ++i) tail = tail * q + field_.mul(scale, v[i]);
    return static_cast<std::size_t>(r + tail);
}

Fel ProjectiveSpace::dot(std::size_t a, std::size_t b) const {
    const std::size_t w = static_cast<std::size_t>(dim_) + 1;
    const Fel* va = coords_.data() + a * w;
    const Fel* vb = coords_.data() + b * w;
    Fel s = 0;
    for (std::size_t i = 0; i < w; ++i) s = field_.add(s, field_.mul(va[i], vb[i]));
    return s;
}

bool ProjectiveSpace::incident(std::size_t point, std::size_t hyperplane) const {
    if (point >= count_ || hyperplane >= count_)
        throw std::out_of_range("index does not belong to this space");
    if (!rows_.empty()) return rows_[hyperplane].test(point);
    return dot(point, hyperplane) == 0;
}

const IndexBitset& ProjectiveSpace::row(std::size_t h) const {
    if (rows_.empty()) throw std::logic_error("incidence bitmaps were not built for this space");
    if (h >= count_) throw std::out_of_range("hyperplane index out of range");
    return rows_[h];
}

std::size_t ProjectiveSpace::count_on_hyperplane(const IndexBitset& pts, std::size_t h) const {
    if (!rows_.empty()) return and_count(pts, rows_[h]);
    std::size_t c = 0;
    pts.for_each_set([&](std::size_t p) {
        if (dot(p, h) == 0) ++c;
    });
    return c;
}

std::size_t ProjectiveSpace::count_on_flat(const IndexBitset& pts, std::size_t h1,
                                           std::size_t h2) const {
    if (!rows_.empty()) return and_count3(pts, rows_[h1], rows_[h2]);
    std::size_t c = 0;
    pts.for_each_set([&](std::size_t p) {
        if (dot(p, h1) == 0 && dot(p, h2) == 0) ++c;
    });
    return c;
}

std::vector<std::size_t> ProjectiveSpace::line_through(std::size_t p1, std::size_t p2) const {
    if (p1 == p2) throw std::invalid_argument("a line needs two distinct points");
    const std::size_t w = static_cast<std::size_t>(dim_) + 1;
    std::span<const Fel> a = point(p1), b = point(p2);
    std::vector<std::size_t> pts;
    pts.reserve(field_.order() + 1);
    pts.push_back(p2);
    std::vector<Fel> v(w);
    for (Fel lam = 0; lam < field_.order(); ++lam) {
        for (std::size_t i = 0; i < w; ++i) v[i] = field_.add(a[i], field_.mul(lam, b[i]));
        pts.push_back(index_of(v));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

namespace {

// Shared body of the codim-2 scan.  For each hyperplane pair (i, j), i < j,
// the dual line through them is the pencil of one flat; the flat is emitted
// at its lexicographically smallest generator pair, i.e. when every other
// pencil member has index > j.
void scan_range(const ProjectiveSpace& s, std::size_t begin, std::size_t end,
                const std::function<void(const CodimTwoFlat&)>& fn) {
    const Field& f = s.field();
    const std::uint64_t q = f.order();
    const std::size_t w = static_cast<std::size_t>(s.dimension()) + 1;
    const std::size_t H = s.hyperplane_count();

    CodimTwoFlat flat;
    flat.pencil.reserve(q + 1);
    std::vector<Fel> v(w);
    std::vector<std::size_t> others(q - 1);

    Matrix basis(2, w);
    for (std::size_t i = begin; i < end && i < H; ++i) {
        std::span<const Fel> vi = s.hyperplane(i);
        for (std::size_t j = i + 1; j < H; ++j) {
            std::span<const Fel> vj = s.hyperplane(j);
            bool minimal = true;
            // remaining pencil members v_i + lam * v_j, lam != 0
            for (Fel lam = 1; lam < q && minimal; ++lam) {
                for (std::size_t c = 0; c < w; ++c) v[c] = f.add(vi[c], f.mul(lam, vj[c]));
                const std::size_t r = s.index_of(v);
                if (r < j)
                    minimal = false;
                else
                    others[lam - 1] = r;
            }
            if (!minimal) continue;
            flat.generators = {i, j};
            flat.pencil.assign({i, j});
            flat.pencil.insert(flat.pencil.end(), others.begin(), others.end());
            std::sort(flat.pencil.begin(), flat.pencil.end());
            for (std::size_t c = 0; c < w; ++c) {
                basis.at(0, c) = vi[c];
                basis.at(1, c) = vj[c];
            }
            flat.dual_basis = rref(f, basis);
            fn(flat);
        }
    }
}

} // namespace

void for_each_codim2_range(const ProjectiveSpace& space, std::size_t begin, std::size_t end,
                           const std::function<void(const CodimTwoFlat&)>& fn) {
    scan_range(space, begin, end, fn);
}

void for_each_codim2(const ProjectiveSpace& space,
                     const std::function<void(const CodimTwoFlat&)>& fn) {
    scan_range(space, 0, space.hyperplane_count(), fn);
}

std::vector<std::size_t> codim2_chunk_bounds(std::size_t hyperplane_count, unsigned chunks) {
    if (chunks == 0) chunks = 1;
    const double total = 0.5 * double(hyperplane_count) * double(hyperplane_count - 1);
    std::vector<std::size_t> bounds{0};
    double acc = 0;
    std::size_t next_cut = 1;
    for (std::size_t i = 0; i < hyperplane_count && next_cut < chunks; ++i) {
        acc += double(hyperplane_count - 1 - i);
        if (acc >= total * double(next_cut) / double(chunks)) {
            bounds.push_back(i + 1);
            ++next_cut;
        }
    }
    while (bounds.size() < chunks) bounds.push_back(hyperplane_count);
    bounds.push_back(hyperplane_count);
    return bounds;
}

void sample_codim2(const ProjectiveSpace& space, std::size_t count, std::uint64_t seed,
                   const std::function<void(const CodimTwoFlat&)>& fn) {
    const Field& f = space.field();
    const std::uint64_t q = f.order();
    const std::size_t H = space.hyperplane_count();
    const std::size_t w = static_cast<std::size_t>(space.dimension()) + 1;

    // splitmix64; every flat arises from the same number of pairs, so
    // uniform pairs give uniform flats
    std::uint64_t state = seed;
    auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };

    CodimTwoFlat flat;
    std::vector<Fel> v(w);
    Matrix basis(2, w);
    for (std::size_t s_i = 0; s_i < count; ++s_i) {
        std::size_t i = next() % H, j = next() % H;
        while (j == i) j = next() % H;
        std::span<const Fel> vi = space.hyperplane(i);
        std::span<const Fel> vj = space.hyperplane(j);
        flat.pencil.assign({i, j});
        for (Fel lam = 1; lam < q; ++lam) {
            for (std::size_t c = 0; c < w; ++c) v[c] = f.add(vi[c], f.mul(lam, vj[c]));
            flat.pencil.push_back(space.index_of(v));
        }
        std::sort(flat.pencil.begin(), flat.pencil.end());
        flat.generators = {flat.pencil[0], flat.pencil[1]};
        for (std::size_t c = 0; c < w; ++c) {
            basis.at(0, c) = vi[c];
            basis.at(1, c) = vj[c];
        }
        flat.dual_basis = rref(f, basis);
        fn(flat);
    }
}

} // namespace pgq
