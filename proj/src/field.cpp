#include "pgq/field.hpp"

#include <stdexcept>
#include <string>

namespace pgq {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Polynomials over GF(p) as coefficient vectors, c[i] the coefficient of x^i.
using Poly = std::vector<std::uint32_t>;

int poly_deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // Fermat; p prime, a != 0 mod p
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// In-place remainder of f by monic-up-to-scalar divisor g.
void poly_rem(Poly& f, const Poly& g, std::uint32_t p) {
    const int dg = poly_deg(g);
    const std::uint32_t lead_inv = mod_inverse(g[static_cast<std::size_t>(dg)], p);
    for (int df = poly_deg(f); df >= dg; df = poly_deg(f)) {
        const std::uint64_t c = std::uint64_t(f[static_cast<std::size_t>(df)]) * lead_inv % p;
        for (int j = 0; j <= dg; ++j) {
            std::uint64_t t = std::uint64_t(c) * g[static_cast<std::size_t>(j)] % p;
            std::uint32_t& slot = f[static_cast<std::size_t>(df - dg + j)];
            slot = static_cast<std::uint32_t>((slot + p - t) % p);
        }
    }
}

// Trial division over all monic polynomials of degree <= deg(f)/2.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const int df = poly_deg(f);
    if (df <= 0) return false;
    if (df == 1) return true;
    for (int dd = 1; dd <= df / 2; ++dd) {
        std::uint64_t count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly g(static_cast<std::size_t>(dd) + 1, 0);
            std::uint64_t t = v;
            for (int i = 0; i < dd; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[static_cast<std::size_t>(dd)] = 1;
            Poly r = f;
            poly_rem(r, g, p);
            if (poly_deg(r) < 0) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree h: scan the lower
// coefficients as an ascending base-p integer (constant term least significant).
Poly smallest_irreducible(std::uint32_t p, std::uint32_t h) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < h; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
        Poly f(h + 1, 0);
        std::uint64_t t = v;
        for (std::uint32_t i = 0; i < h; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[h] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found"); // unreachable
}

} // namespace

Field Field::make(std::uint32_t p, std::uint32_t h, const FieldOptions& opts) {
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (h == 0)
        throw std::invalid_argument("field degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
        q *= p;
        if (q > opts.max_order)
            throw std::invalid_argument("field order exceeds configured bound");
    }

    auto d = std::make_shared<Data>();
    d->p = p;
    d->h = h;
    d->q = static_cast<std::uint32_t>(q);
    d->modulus = smallest_irreducible(p, h);
    if (!poly_irreducible(d->modulus, p))
        throw std::logic_error("selected modulus failed irreducibility recheck");

    // f reads through its const view while the tables are filled through d
    Field f(d);
    if (d->q <= kMulTableLimit) {
        d->add_table.resize(std::size_t(d->q) * d->q);
        d->mul_table.resize(std::size_t(d->q) * d->q);
        for (Fel a = 0; a < d->q; ++a)
            for (Fel b = 0; b < d->q; ++b) {
                d->add_table[std::size_t(a) * d->q + b] = f.raw_add(a, b);
                d->mul_table[std::size_t(a) * d->q + b] = f.raw_mul(a, b);
            }
    }
    if (d->q <= kInvTableLimit) {
        d->inv_table.assign(d->q, 0);
        for (Fel a = 1; a < d->q; ++a) d->inv_table[a] = f.euclid_inv(a);
    }
    return f;
}

Fel Field::raw_add(Fel a, Fel b) const {
    const std::uint32_t p = d_->p;
    if (p == 2) return a ^ b;
    Fel r = 0;
    std::uint32_t base = 1;
    while (a || b) {
        const std::uint32_t da = a % p, db = b % p;
        r += (da + db) % p * base;
        a /= p;
        b /= p;
        base *= p;
    }
    return r;
}

Fel Field::raw_mul(Fel a, Fel b) const {
    const std::uint32_t p = d_->p, h = d_->h;
    std::uint32_t da[32], db[32];
    std::uint64_t prod[63] = {0};
    for (std::uint32_t i = 0; i < h; ++i) {
        da[i] = a % p;
        a /= p;
        db[i] = b % p;
        b /= p;
    }
    for (std::uint32_t i = 0; i < h; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < h; ++j)
            prod[i + j] += std::uint64_t(da[i]) * db[j];
    }
    // reduce via x^h = -(m_0 + m_1 x + ... + m_{h-1} x^{h-1})
    for (int dd = 2 * static_cast<int>(h) - 2; dd >= static_cast<int>(h); --dd) {
        const std::uint64_t c = prod[dd] % p;
        if (!c) continue;
        for (std::uint32_t j = 0; j < h; ++j)
            prod[dd - h + j] += c * (p - d_->modulus[j] % p);
        prod[dd] = 0;
    }
    Fel r = 0;
    std::uint32_t base = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
        r += static_cast<std::uint32_t>(prod[i] % p) * base;
        base *= p;
    }
    return r;
}

Fel Field::euclid_inv(Fel a) const {
    if (a == 0) throw std::domain_error("inverse of zero field element");
    const std::uint32_t p = d_->p;
    // extended Euclid in GF(p)[x]: r0 = modulus, r1 = a, track s with s*a = r (mod modulus)
    Poly r0(d_->modulus.begin(), d_->modulus.end());
    Poly r1(d_->h, 0);
    {
        Fel t = a;
        for (std::uint32_t i = 0; i < d_->h; ++i) {
            r1[i] = t % p;
            t /= p;
        }
    }
    Poly s0(d_->h + 1, 0), s1(d_->h + 1, 0);
    s1[0] = 1;
    while (poly_deg(r1) > 0) {
        // one division step: r0 = q*r1 + r, s0 -= q*s1 in lockstep
        const int d1 = poly_deg(r1);
        const std::uint32_t lead_inv = mod_inverse(r1[static_cast<std::size_t>(d1)], p);
        while (poly_deg(r0) >= d1) {
            const int d0 = poly_deg(r0);
            const std::uint64_t c = std::uint64_t(r0[static_cast<std::size_t>(d0)]) * lead_inv % p;
            const int shift = d0 - d1;
            for (int j = 0; j <= d1; ++j) {
                std::uint64_t t = c * r1[static_cast<std::size_t>(j)] % p;
                auto& slot = r0[static_cast<std::size_t>(j + shift)];
                slot = static_cast<std::uint32_t>((slot + p - t) % p);
            }
            for (std::size_t j = 0; j + static_cast<std::size_t>(shift) < s0.size(); ++j) {
                std::uint64_t t = c * s1[j] % p;
                auto& slot = s0[j + static_cast<std::size_t>(shift)];
                slot = static_cast<std::uint32_t>((slot + p - t) % p);
            }
        }
        std::swap(r0, r1);
        std::swap(s0, s1);
    }
    if (poly_deg(r1) != 0) throw std::logic_error("element not invertible; modulus reducible?");
    const std::uint32_t c_inv = mod_inverse(r1[0], p);
    Fel r = 0;
    std::uint32_t base = 1;
    for (std::uint32_t i = 0; i < d_->h; ++i) {
        r += static_cast<std::uint32_t>(std::uint64_t(s1[i]) * c_inv % p) * base;
        base *= p;
    }
    return r;
}

Fel Field::add(Fel a, Fel b) const {
    if (!d_->add_table.empty()) return d_->add_table[std::size_t(a) * d_->q + b];
    return raw_add(a, b);
}

Fel Field::neg(Fel a) const {
    if (d_->p == 2) return a;
    Fel r = 0;
    std::uint32_t base = 1;
    const std::uint32_t p = d_->p;
    while (a) {
        const std::uint32_t da = a % p;
        r += (da ? p - da : 0) * base;
        a /= p;
        base *= p;
    }
    return r;
}

Fel Field::sub(Fel a, Fel b) const { return add(a, neg(b)); }

Fel Field::mul(Fel a, Fel b) const {
    if (!d_->mul_table.empty()) return d_->mul_table[std::size_t(a) * d_->q + b];
    return raw_mul(a, b);
}

Fel Field::inv(Fel a) const {
    if (a == 0) throw std::domain_error("inverse of zero field element");
    if (!d_->inv_table.empty()) return d_->inv_table[a];
    return euclid_inv(a);
}

Fel Field::pow(Fel a, std::uint64_t e) const {
    Fel r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Fel Field::trace(Fel a) const {
    Fel s = a, x = a;
    for (std::uint32_t i = 1; i < d_->h; ++i) {
        x = pow(x, d_->p);
        s = add(s, x);
    }
    return s;
}

bool Field::is_square(Fel a) const {
    if (a == 0 || d_->p == 2) return true;
    return pow(a, (std::uint64_t(d_->q) - 1) / 2) == 1;
}

} // namespace pgq
