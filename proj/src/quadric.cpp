#include "pgq/quadric.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pgq {

std::uint64_t parabolic_size(int n, std::uint64_t q) {
    return (ipow(q, 2 * static_cast<unsigned>(n)) - 1) / (q - 1);
}

std::uint64_t quadric_pm_size(int n, std::uint64_t q, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const std::uint64_t qn = ipow(q, static_cast<unsigned>(n));
    const std::uint64_t qn1 = ipow(q, static_cast<unsigned>(n) - 1);
    const std::uint64_t a = sign > 0 ? qn - 1 : qn + 1;
    const std::uint64_t b = sign > 0 ? qn1 + 1 : qn1 - 1;
    return a * b / (q - 1);
}

std::uint64_t cone_over(std::uint64_t q, std::uint64_t base_size) { return 1 + q * base_size; }

std::uint64_t tangent_section_size(int n, std::uint64_t q) {
    return (ipow(q, 2 * static_cast<unsigned>(n) - 1) - 1) / (q - 1);
}

QuadraticForm::QuadraticForm(Field field, Matrix upper)
    : field_(std::move(field)), upper_(std::move(upper)) {
    if (upper_.rows != upper_.cols || upper_.rows == 0)
        throw std::invalid_argument("coefficient matrix must be square");
    bool nonzero = false;
    for (std::size_t i = 0; i < upper_.rows; ++i)
        for (std::size_t j = 0; j < upper_.cols; ++j) {
            if (j < i && upper_.at(i, j) != 0)
                throw std::invalid_argument("coefficient matrix must be upper-triangular");
            nonzero = nonzero || upper_.at(i, j) != 0;
        }
    if (!nonzero) throw std::invalid_argument("the zero form defines no quadric");
}

QuadraticForm QuadraticForm::parabolic(int n, const Field& f) {
    if (n < 1) throw std::invalid_argument("parabolic index must be at least 1");
    Matrix m(2 * static_cast<std::size_t>(n) + 1, 2 * static_cast<std::size_t>(n) + 1);
    m.at(0, 0) = 1;
    for (int i = 1; i <= n; ++i) m.at(2 * static_cast<std::size_t>(i) - 1, 2 * static_cast<std::size_t>(i)) = 1;
    return QuadraticForm(f, std::move(m));
}

QuadraticForm QuadraticForm::hyperbolic(int n, const Field& f) {
    if (n < 1) throw std::invalid_argument("hyperbolic index must be at least 1");
    Matrix m(2 * static_cast<std::size_t>(n), 2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m.at(2 * static_cast<std::size_t>(i), 2 * static_cast<std::size_t>(i) + 1) = 1;
    return QuadraticForm(f, std::move(m));
}

QuadraticForm QuadraticForm::elliptic(int n, const Field& f) {
    if (n < 1) throw std::invalid_argument("elliptic index must be at least 1");
    Matrix m(2 * static_cast<std::size_t>(n), 2 * static_cast<std::size_t>(n));
    Fel constant = 0;
    if (f.even_characteristic()) {
        while (constant < f.order() && f.trace(constant) != 1) ++constant;
        if (constant == f.order()) throw std::logic_error("no trace-one element found");
        m.at(0, 0) = 1;
        m.at(0, 1) = 1;
        m.at(1, 1) = constant;
    } else {
        while (constant < f.order() && (constant == 0 || f.is_square(constant))) ++constant;
        if (constant == f.order()) throw std::logic_error("no non-square element found");
        m.at(0, 0) = 1;
        m.at(1, 1) = f.neg(constant);
    }
    for (int i = 1; i < n; ++i) m.at(2 * static_cast<std::size_t>(i), 2 * static_cast<std::size_t>(i) + 1) = 1;
    QuadraticForm qf(f, std::move(m));
    qf.special_constant_ = constant;
    return qf;
}

Fel QuadraticForm::eval(std::span<const Fel> x) const {
    if (x.size() != upper_.cols) throw std::invalid_argument("evaluation point has wrong length");
    Fel s = 0;
    for (std::size_t i = 0; i < upper_.rows; ++i) {
        if (x[i] == 0) continue;
        Fel rowsum = 0;
        for (std::size_t j = i; j < upper_.cols; ++j) {
            const Fel c = upper_.at(i, j);
            if (c != 0) rowsum = field_.add(rowsum, field_.mul(c, x[j]));
        }
        s = field_.add(s, field_.mul(x[i], rowsum));
    }
    return s;
}

Matrix QuadraticForm::bilinear() const {
    Matrix b(upper_.rows, upper_.cols);
    for (std::size_t i = 0; i < upper_.rows; ++i)
        for (std::size_t j = 0; j < upper_.cols; ++j)
            b.at(i, j) = field_.add(upper_.at(i, j), upper_.at(j, i));
    return b;
}

IndexBitset zero_set(const QuadraticForm& form, const ProjectiveSpace& space) {
    if (form.dimension() != space.dimension() || form.field().order() != space.field().order())
        throw std::invalid_argument("form and space dimensions do not match");
    IndexBitset s(space.point_count());
    for (std::size_t p = 0; p < space.point_count(); ++p)
        if (form.eval(space.point(p)) == 0) s.set(p);
    return s;
}

const char* section_type_name(SectionType t) {
    switch (t) {
        case SectionType::Elliptic: return "elliptic";
        case SectionType::Hyperbolic: return "hyperbolic";
        case SectionType::SingularCone: return "singular";
    }
    return "?";
}

SectionClass classify_section(const IndexBitset& quadric, std::size_t hyperplane,
                              const ProjectiveSpace& space, int n) {
    const std::uint64_t q = space.field().order();
    const std::uint64_t m = space.count_on_hyperplane(quadric, hyperplane);
    if (m == quadric_pm_size(n, q, -1)) return {SectionType::Elliptic, m};
    if (m == quadric_pm_size(n, q, +1)) return {SectionType::Hyperbolic, m};
    if (m == tangent_section_size(n, q)) return {SectionType::SingularCone, m};
    throw std::runtime_error("hyperplane section of size " + std::to_string(m) +
                             " matches no quadric section; input is not a parabolic quadric");
}

std::size_t nucleus(const QuadraticForm& form, const ProjectiveSpace& space) {
    if (!form.field().even_characteristic())
        throw std::invalid_argument("nucleus exists only in even characteristic");
    if (form.dimension() % 2 != 0)
        throw std::invalid_argument("nucleus requires a parabolic form on even projective dimension");
    const Matrix rad = kernel_basis(form.field(), form.bilinear());
    if (rad.rows != 1)
        throw std::invalid_argument("bilinear radical is " + std::to_string(rad.rows) +
                                    "-dimensional; no unique nucleus");
    return space.index_of(rad.row(0));
}

Matrix flat_point_basis(const CodimTwoFlat& flat, const ProjectiveSpace& space) {
    return kernel_basis(space.field(), flat.dual_basis);
}

Matrix perp_subspace(const Matrix& point_basis, const QuadraticForm& form) {
    const Field& f = form.field();
    const Matrix b = form.bilinear();
    Matrix prod(point_basis.rows, b.cols);
    for (std::size_t i = 0; i < point_basis.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Fel s = 0;
            for (std::size_t k = 0; k < b.rows; ++k)
                s = f.add(s, f.mul(point_basis.at(i, k), b.at(k, j)));
            prod.at(i, j) = s;
        }
    return kernel_basis(f, prod);
}

std::vector<std::size_t> perp_line(const CodimTwoFlat& flat, const QuadraticForm& form,
                                   const ProjectiveSpace& space) {
    const Matrix basis = flat_point_basis(flat, space);
    const Matrix perp = perp_subspace(basis, form);
    if (perp.rows != 2)
        throw std::runtime_error("polar image of the flat is not a line (radical meets the flat)");
    const Field& f = space.field();
    std::vector<std::size_t> pts;
    pts.reserve(f.order() + 1);
    std::vector<Fel> v(perp.cols);
    pts.push_back(space.index_of(perp.row(1)));
    for (Fel lam = 0; lam < f.order(); ++lam) {
        for (std::size_t c = 0; c < perp.cols; ++c)
            v[c] = f.add(perp.at(0, c), f.mul(lam, perp.at(1, c)));
        pts.push_back(space.index_of(v));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::optional<QuadraticForm> fit_quadric(const IndexBitset& s, const ProjectiveSpace& space) {
    const Field& f = space.field();
    const std::size_t w = static_cast<std::size_t>(space.dimension()) + 1;
    const std::size_t monomials = w * (w + 1) / 2;
    const std::size_t npts = s.count();
    if (npts == 0) return std::nullopt;

    Matrix sys(npts, monomials);
    std::size_t r = 0;
    s.for_each_set([&](std::size_t p) {
        std::span<const Fel> x = space.point(p);
        std::size_t c = 0;
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = i; j < w; ++j) sys.at(r, c++) = f.mul(x[i], x[j]);
        ++r;
    });

    const Matrix k = kernel_basis(f, sys);
    if (k.rows != 1) return std::nullopt;

    Matrix coeffs(w, w);
    std::size_t c = 0;
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = i; j < w; ++j) coeffs.at(i, j) = k.at(0, c++);
    QuadraticForm form(f, std::move(coeffs));
    if (zero_set(form, space) == s) return form;
    return std::nullopt;
}

bool proportional(const QuadraticForm& f, const QuadraticForm& g) {
    if (f.coeffs().rows != g.coeffs().rows) return false;
    const Field& fld = f.field();
    Fel scale = 0;
    for (std::size_t i = 0; i < f.coeffs().a.size(); ++i) {
        const Fel a = f.coeffs().a[i], b = g.coeffs().a[i];
        if ((a == 0) != (b == 0)) return false;
        if (a == 0) continue;
        const Fel s = fld.mul(b, fld.inv(a));
        if (scale == 0)
            scale = s;
        else if (scale != s)
            return false;
    }
    return scale != 0;
}

std::string form_to_string(const QuadraticForm& form) {
    std::ostringstream out;
    bool first = true;
    const Matrix& m = form.coeffs();
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i; j < m.cols; ++j) {
            const Fel c = m.at(i, j);
            if (c == 0) continue;
            if (!first) out << " + ";
            first = false;
            if (c != 1) out << c << "*";
            if (i == j)
                out << "x" << i << "^2";
            else
                out << "x" << i << "*x" << j;
        }
    return out.str();
}

} // namespace pgq
