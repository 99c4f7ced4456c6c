#ifndef PGQ_PROJECTIVE_SPACE_HPP
#define PGQ_PROJECTIVE_SPACE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pgq/bitset.hpp"
#include "pgq/field.hpp"
#include "pgq/linalg.hpp"

namespace pgq {

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// |PG(N,q)| = (q^{N+1} - 1)/(q - 1)
std::uint64_t pg_point_count(int dimension, std::uint64_t q);

/// Number of codimension-2 flats of PG(N,q), the Gaussian binomial
/// [N+1 choose 2]_q = (q^{N+1}-1)(q^N-1) / ((q^2-1)(q-1)).
std::uint64_t pg_codim2_count(int dimension, std::uint64_t q);

struct SpaceOptions {
    std::size_t max_points = std::size_t{1} << 20;
    // incidence bitmaps are precomputed up to this many points; larger
    // spaces fall back to on-the-fly dot products
    std::size_t bitmap_point_limit = std::size_t{1} << 16;
    unsigned workers = 0;
};

/// PG(N,q): indexed tables of points and hyperplanes with incidence.
///
/// Points and hyperplanes share one table of normalized coordinate vectors
/// (leftmost nonzero coordinate 1), sorted lexicographically by element
/// index, so index i names both the point and the hyperplane with those
/// coordinates and the incidence matrix is symmetric.  Immutable once built.
class ProjectiveSpace {
public:
    ProjectiveSpace(int dimension, Field field, const SpaceOptions& opts = {});

    ProjectiveSpace(const ProjectiveSpace&) = delete;
    ProjectiveSpace& operator=(const ProjectiveSpace&) = delete;
    ProjectiveSpace(ProjectiveSpace&&) = default;

    int dimension() const { return dim_; }
    const Field& field() const { return field_; }
    std::size_t point_count() const { return count_; }
    std::size_t hyperplane_count() const { return count_; }
    std::size_t points_per_hyperplane() const { return per_hyperplane_; }

    std::span<const Fel> point(std::size_t i) const;
    std::span<const Fel> hyperplane(std::size_t i) const { return point(i); }

    /// Table position of the projective point with these coordinates
    /// (normalization applied; throws on the zero vector or length mismatch).
    std::size_t index_of(std::span<const Fel> v) const;

    /// P lies on H iff the coordinate dot product vanishes.
    bool incident(std::size_t point, std::size_t hyperplane) const;

    bool has_bitmap() const { return !rows_.empty(); }
    /// Bit row of hyperplane h over all point indices (and, by symmetry,
    /// of point h over all hyperplane indices).  Requires has_bitmap().
    const IndexBitset& row(std::size_t h) const;

    /// |S ∩ H| for a point set S.
    std::size_t count_on_hyperplane(const IndexBitset& pts, std::size_t h) const;
    /// |S ∩ H1 ∩ H2| — the codimension-2 flat spanned by the pencil of (H1,H2).
    std::size_t count_on_flat(const IndexBitset& pts, std::size_t h1, std::size_t h2) const;

    /// The q+1 points on the line through two distinct points, ascending.
    std::vector<std::size_t> line_through(std::size_t p1, std::size_t p2) const;

    std::uint64_t codim2_count() const { return pg_codim2_count(dim_, field_.order()); }

private:
    int dim_;
    Field field_;
    std::size_t count_ = 0;
    std::size_t per_hyperplane_ = 0;
    std::vector<Fel> coords_;        // count_ x (dim_+1), row-major, canonical order
    std::vector<IndexBitset> rows_;  // optional incidence bitmaps

    Fel dot(std::size_t a, std::size_t b) const;
};

/// Codimension-2 flat, named by the two smallest hyperplane indices
/// containing it.  The pencil lists all q+1 hyperplanes through the flat;
/// the dual basis is the unique reduced echelon form of their span, so two
/// flats are equal iff their bases are identical.
struct CodimTwoFlat {
    std::array<std::size_t, 2> generators;
    std::vector<std::size_t> pencil;
    Matrix dual_basis;
};

/// Visit every codimension-2 flat exactly once, in ascending order of the
/// generator pair.  Streaming: the flat reference is only valid during the call.
void for_each_codim2(const ProjectiveSpace& space,
                     const std::function<void(const CodimTwoFlat&)>& fn);

/// Restriction of the scan to flats whose smallest generator lies in
/// [begin, end); partitioning [0, hyperplane_count) over workers covers
/// every flat exactly once.
void for_each_codim2_range(const ProjectiveSpace& space, std::size_t begin, std::size_t end,
                           const std::function<void(const CodimTwoFlat&)>& fn);

/// Boundaries splitting the scan into `chunks` ranges of roughly equal
/// pair-work (the per-index work shrinks triangularly).
std::vector<std::size_t> codim2_chunk_bounds(std::size_t hyperplane_count, unsigned chunks);

/// Uniform random flats (duplicates possible), for spaces too large to scan.
void sample_codim2(const ProjectiveSpace& space, std::size_t count, std::uint64_t seed,
                   const std::function<void(const CodimTwoFlat&)>& fn);

} // namespace pgq

#endif
