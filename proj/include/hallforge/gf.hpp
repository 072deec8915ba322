#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hallforge/errors.hpp"

namespace hallforge::gf {

// GF(p^e) in the polynomial basis F_p[t]/(modulus).  Elements are identified
// with their index sum(c_i p^i); index order is the enumeration order used as
// the global tie-break everywhere downstream (0, 1, ..., up to the top of the
// field).  The modulus is the first monic irreducible of degree e in that
// same order, so canonical forms are identical across runs and platforms.
class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr std::uint64_t kDefaultFieldGuard = 1ull << 20;

class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr make(std::uint32_t p, std::uint32_t e,
                         std::uint64_t size_guard = kDefaultFieldGuard);

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint64_t size() const { return size_; }
    // Monic modulus c_0 + c_1 t + ... + t^e (length e+1, top coefficient 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (has_tables_) return add_tab_[a * size_ + b];
        return add_slow(a, b);
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (has_tables_) return neg_tab_[a];
        return neg_slow(a);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (has_tables_) return mul_tab_[a * size_ + b];
        return mul_slow(a, b);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;
    // x -> x^(p^times); times = e is the q-power map.
    std::uint32_t frobenius(std::uint32_t a, std::uint64_t times) const;
    std::uint32_t primitive_element() const { return primitive_; }

    std::vector<std::uint32_t> coeffs(std::uint32_t a) const;
    std::uint32_t from_coeffs(const std::vector<std::uint32_t>& c) const;
    // n mod p, as an element of the prime subfield.
    std::uint32_t from_int(std::uint64_t n) const { return static_cast<std::uint32_t>(n % p_); }

    std::string to_string(std::uint32_t a) const;  // e.g. "t+1"

    bool same(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_;
    }

private:
    Field() = default;
    std::uint32_t add_slow(std::uint32_t, std::uint32_t) const;
    std::uint32_t neg_slow(std::uint32_t) const;
    std::uint32_t mul_slow(std::uint32_t, std::uint32_t) const;
    void build_tables();
    void find_primitive();

    std::uint32_t p_ = 0, e_ = 0;
    std::uint64_t size_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::uint32_t primitive_ = 0;
    bool has_tables_ = false;
    std::vector<std::uint16_t> add_tab_, mul_tab_, neg_tab_, inv_tab_;
};

// Value-semantics element for the public API; hot loops use raw indices.
struct FieldElement {
    FieldPtr field;
    std::uint32_t idx = 0;

    FieldElement() = default;
    FieldElement(FieldPtr f, std::uint32_t i) : field(std::move(f)), idx(i) {}

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.idx == b.idx && a.field->same(*b.field);
    }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.field, a.field->add(a.idx, b.idx)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.field, a.field->mul(a.idx, b.idx)};
    }
    friend FieldElement operator-(const FieldElement& a) {
        return {a.field, a.field->neg(a.idx)};
    }
    FieldElement inverse() const { return {field, field->inv(idx)}; }
    FieldElement frobenius(std::uint64_t times) const {
        return {field, field->frobenius(idx, times)};
    }

private:
    static void check(const FieldElement& a, const FieldElement& b) {
        if (!a.field->same(*b.field)) throw FieldMismatch();
    }
};

std::vector<FieldElement> enumerate_field(const FieldPtr& f);

// Index table of the canonical embedding GF(p, e_small) -> GF(p, e_big),
// e_small | e_big; sends the generator to the least root of the small
// modulus in the big field.
std::vector<std::uint32_t> embedding_table(const Field& small, const Field& big);

// --- polynomial helpers over an arbitrary Field (used for Singer cycles) ---
// Polynomials are coefficient vectors, little-endian, over field indices.
using Poly = std::vector<std::uint32_t>;

Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
// Remainder of a by monic b.
Poly poly_mod(const Field& F, Poly a, const Poly& b);
bool poly_is_irreducible(const Field& F, const Poly& monic);
// Monic irreducible of degree n over F whose companion matrix has full order
// |F|^n - 1 (a Singer generator), least in the coefficient-encoding order.
Poly find_primitive_poly(const Field& F, std::uint32_t n);

}  // namespace hallforge::gf
