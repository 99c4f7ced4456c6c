#ifndef PGQ_FIELD_HPP
#define PGQ_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace pgq {

/// Field element, stored as its canonical index in [0, q).
/// The index is read as the base-p digit vector of a polynomial residue:
/// index 0 is the additive identity, index 1 the multiplicative identity.
using Fel = std::uint32_t;

struct FieldOptions {
    std::uint64_t max_order = std::uint64_t{1} << 20;
};

/// Exact arithmetic in GF(p^h).
///
/// The modulus is the lexicographically smallest monic irreducible of
/// degree h over GF(p) (for h = 1 this is x), so element indices are
/// reproducible across runs and machines.  Copies share the lookup
/// tables; a Field is immutable after construction and all operations
/// are pure, so concurrent use needs no locking.
class Field {
public:
    static Field make(std::uint32_t p, std::uint32_t h, const FieldOptions& opts = {});

    std::uint32_t characteristic() const { return d_->p; }
    std::uint32_t degree() const { return d_->h; }
    std::uint32_t order() const { return d_->q; }
    bool even_characteristic() const { return d_->p == 2; }

    /// Modulus coefficients c[0..h], c[h] = 1 (coefficient of x^i at [i]).
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }

    Fel add(Fel a, Fel b) const;
    Fel sub(Fel a, Fel b) const;
    Fel neg(Fel a) const;
    Fel mul(Fel a, Fel b) const;
    Fel inv(Fel a) const;   // throws std::domain_error on 0
    Fel pow(Fel a, std::uint64_t e) const;

    /// Absolute trace a + a^p + ... + a^{p^{h-1}}; lands in the prime subfield.
    Fel trace(Fel a) const;

    /// Square test in the multiplicative group; 0 counts as a square.
    bool is_square(Fel a) const;

private:
    struct Data {
        std::uint32_t p = 0, h = 0, q = 0;
        std::vector<std::uint32_t> modulus;
        // q <= kMulTableLimit: full q x q tables for add/mul
        std::vector<Fel> add_table, mul_table;
        // q <= kInvTableLimit: inverse lookup; otherwise extended Euclid per call
        std::vector<Fel> inv_table;
    };
    std::shared_ptr<const Data> d_;

    explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    Fel raw_add(Fel a, Fel b) const;
    Fel raw_mul(Fel a, Fel b) const;
    Fel euclid_inv(Fel a) const;

    static constexpr std::uint32_t kMulTableLimit = 256;
    static constexpr std::uint32_t kInvTableLimit = 1u << 16;
};

/// Trial-division primality check, sufficient for the configured field bound.
bool is_prime(std::uint64_t n);

} // namespace pgq

#endif
