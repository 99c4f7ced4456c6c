#ifndef PGQ_CONSTRUCTIONS_HPP
#define PGQ_CONSTRUCTIONS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgq/family.hpp"

namespace pgq {

/// q+2 points of the canonical plane {x3 = x4 = 0} of PG(4,q), q even,
/// no 3 collinear.  Invariants are verified at construction.
struct Hyperoval {
    std::string kind;  // "regular" or "translation"
    unsigned exponent = 1;
    std::vector<std::size_t> points;
    IndexBitset bits;
};

/// Conic plus nucleus: {(1, t, t^2)} ∪ {(0,1,0), (0,0,1)}, embedded.
Hyperoval hyperoval_regular(const ProjectiveSpace& pg4);

/// Translation variant {(1, t, t^{2^k})} ∪ {(0,1,0), (0,0,1)}, gcd(k,h) = 1.
Hyperoval hyperoval_translation(const ProjectiveSpace& pg4, unsigned k);

/// The solids of PG(4,q) containing no point of the hyperoval; there are
/// exactly q^2(q^2-q)/2 of them.
HyperplaneFamily solids_disjoint_from(const Hyperoval& oval, const ProjectiveSpace& space);

/// Quasi-quadric verdict for a candidate point set K with designated
/// nucleus: the size, nucleus-line and hyperplane-spectrum axioms, plus
/// whether the induced hyperplane families satisfy the point condition.
struct QuasiQuadricVerdict {
    bool size_ok = false;
    std::uint64_t size = 0;
    bool nucleus_lines_ok = false;
    std::uint64_t bad_lines = 0;
    bool spectrum_ok = false;
    SpectrumReport off_nucleus_spectrum;  // |K ∩ H| over hyperplanes off the nucleus
    bool condition_I_plus = false, condition_I_minus = false;
    bool pass = false;  // size, nucleus lines and spectrum
};

QuasiQuadricVerdict verify_quasi_quadric(const IndexBitset& k, std::size_t nucleus_point,
                                         const ProjectiveSpace& space, int n);

/// The lines through a point, in canonical order (ascending smallest
/// non-nucleus point); each line lists its q+1 point indices ascending.
std::vector<std::vector<std::size_t>> lines_through(const ProjectiveSpace& space,
                                                    std::size_t point);

/// Replace, on each selected nucleus line, the unique K-point by another
/// non-nucleus point of that line (chosen by index offset among the q-1
/// candidates in ascending order; forced for q = 2).  K must meet every
/// selected line exactly once.
IndexBitset nucleus_line_switch(const IndexBitset& k, std::size_t nucleus_point,
                                const ProjectiveSpace& space,
                                const std::vector<std::size_t>& selected_lines,
                                unsigned replacement_offset = 0);

/// Exhaustive scan of all one-point-per-nucleus-line candidates in PG(4,2):
/// candidate mask bit i flips line i of the standard Q(4,2) selection.
/// Reports which candidates satisfy the quasi-quadric hyperplane spectrum
/// and which of those are quadrics.  Optional JSON-lines stream receives one
/// verdict per candidate so a run can be replayed and audited.
struct SwitchSearchReport {
    std::uint64_t candidates = 0;
    std::uint64_t spectrum_pass = 0;
    std::uint64_t quadric_pass = 0;
    std::uint64_t nonquadric_pass = 0;
    bool standard_passes = false;
    std::vector<std::uint32_t> nonquadric_masks;
};

SwitchSearchReport exhaustive_switch_search(const ProjectiveSpace& pg42, unsigned workers = 0,
                                            std::ostream* jsonl = nullptr);

} // namespace pgq

#endif
