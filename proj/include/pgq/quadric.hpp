#ifndef PGQ_QUADRIC_HPP
#define PGQ_QUADRIC_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "pgq/projective_space.hpp"

namespace pgq {

// Closed-form sizes for quadrics over GF(q).  Every identity in this tool
// holds in exact integer arithmetic.

/// |Q(2n,q)| = (q^{2n} - 1)/(q - 1)
std::uint64_t parabolic_size(int n, std::uint64_t q);
/// |Q±(2n-1,q)| = (q^n ∓ 1)(q^{n-1} ± 1)/(q - 1); sign +1 hyperbolic, -1 elliptic
std::uint64_t quadric_pm_size(int n, std::uint64_t q, int sign);
/// Size of a cone: vertex point joined to a base of the given size.
std::uint64_t cone_over(std::uint64_t q, std::uint64_t base_size);
/// Section of Q(2n,q) by a hyperplane through the nucleus: (q^{2n-1} - 1)/(q - 1)
std::uint64_t tangent_section_size(int n, std::uint64_t q);

/// Quadratic form on PG(N,q), stored as the upper-triangular coefficient
/// matrix a_{ij}, i <= j, with f(x) = sum a_{ij} x_i x_j.  Immutable.
class QuadraticForm {
public:
    /// Validates the matrix is upper-triangular and not identically zero.
    QuadraticForm(Field field, Matrix upper);

    /// Q(2n,q) on 2n+1 coordinates: x0^2 + x1 x2 + ... + x_{2n-1} x_{2n}.
    static QuadraticForm parabolic(int n, const Field& f);
    /// Q+(2n-1,q) on 2n coordinates: x0 x1 + ... + x_{2n-2} x_{2n-1}.
    static QuadraticForm hyperbolic(int n, const Field& f);
    /// Q-(2n-1,q): the first hyperbolic block is replaced by an irreducible
    /// binary quadratic — x0^2 + x0 x1 + c x1^2 with trace(c) = 1 in even
    /// characteristic, x0^2 - d x1^2 with d a non-square otherwise.  The
    /// constant is the first valid field element in index order.
    static QuadraticForm elliptic(int n, const Field& f);

    int dimension() const { return static_cast<int>(upper_.cols) - 1; }
    const Field& field() const { return field_; }
    const Matrix& coeffs() const { return upper_; }

    Fel eval(std::span<const Fel> x) const;

    /// Bilinear matrix B = A + A^T of the polarization f(x+y) - f(x) - f(y).
    Matrix bilinear() const;

    /// Constant chosen for the elliptic block, if this form has one.
    std::optional<Fel> special_constant() const { return special_constant_; }

private:
    Field field_;
    Matrix upper_;
    std::optional<Fel> special_constant_;
};

/// All points of the space where the form vanishes.
IndexBitset zero_set(const QuadraticForm& form, const ProjectiveSpace& space);

enum class SectionType { Elliptic, Hyperbolic, SingularCone };

struct SectionClass {
    SectionType type;
    std::uint64_t points;
};

const char* section_type_name(SectionType t);

/// Classify the hyperplane section of a parabolic quadric point set by its
/// cardinality.  A count matching none of the three legal sizes throws —
/// the same detector flags arbitrary point sets that are not quadrics.
SectionClass classify_section(const IndexBitset& quadric, std::size_t hyperplane,
                              const ProjectiveSpace& space, int n);

/// Nucleus of a parabolic quadric in even characteristic: the unique point
/// spanning the radical of the bilinear matrix.  Throws in odd
/// characteristic or when the radical is not a single point.
std::size_t nucleus(const QuadraticForm& form, const ProjectiveSpace& space);

/// Point basis (reduced echelon rows) of the flat cut out by a dual basis.
Matrix flat_point_basis(const CodimTwoFlat& flat, const ProjectiveSpace& space);

/// Polarity image: basis of {y : B(x,y) = 0 for all x in the row space}.
Matrix perp_subspace(const Matrix& point_basis, const QuadraticForm& form);

/// The polar line of a codimension-2 flat under a form whose bilinear
/// radical avoids the flat; its q+1 point indices, ascending.  Throws on
/// degenerate configurations (radical inside the flat).
std::vector<std::size_t> perp_line(const CodimTwoFlat& flat, const QuadraticForm& form,
                                   const ProjectiveSpace& space);

/// Fit a quadratic form through a point set: solve f(x) = 0 for all x in S
/// over the (N+1)(N+2)/2 coefficients.  Returns the form iff the solution
/// space is one-dimensional and its zero set is exactly S; nullopt otherwise.
std::optional<QuadraticForm> fit_quadric(const IndexBitset& s, const ProjectiveSpace& space);

/// True when g = c * f for some nonzero scalar c.
bool proportional(const QuadraticForm& f, const QuadraticForm& g);

/// Human-readable rendering, e.g. "x0^2 + x1*x2 + x3*x4".
std::string form_to_string(const QuadraticForm& form);

} // namespace pgq

#endif
