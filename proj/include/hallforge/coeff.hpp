#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "hallforge/errors.hpp"

namespace hallforge::hall {

// Exact value a + b*sqrt(q) for the run's fixed q.  When q is a perfect
// square the sqrt(q) part is folded into a, so b == 0 always holds there and
// equality is plain pair equality.
class Coef {
public:
    Coef() = default;
    Coef(mpq_class a, mpq_class b, std::uint64_t q) : a_(std::move(a)), b_(std::move(b)), q_(q) {
        canonicalize();
    }
    static Coef zero(std::uint64_t q) { return Coef(0, 0, q); }
    static Coef one(std::uint64_t q) { return Coef(1, 0, q); }
    static Coef rational(mpq_class r, std::uint64_t q) { return Coef(std::move(r), 0, q); }
    // v^n with v = sqrt(q); n may be negative.
    static Coef v_power(std::uint64_t q, long long n);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    std::uint64_t q() const { return q_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    friend Coef operator+(const Coef& x, const Coef& y) {
        x.check(y);
        return Coef(x.a_ + y.a_, x.b_ + y.b_, x.q_);
    }
    friend Coef operator-(const Coef& x, const Coef& y) {
        x.check(y);
        return Coef(x.a_ - y.a_, x.b_ - y.b_, x.q_);
    }
    friend Coef operator-(const Coef& x) { return Coef(-x.a_, -x.b_, x.q_); }
    friend Coef operator*(const Coef& x, const Coef& y) {
        x.check(y);
        mpq_class qq(static_cast<unsigned long>(x.q_));
        return Coef(x.a_ * y.a_ + x.b_ * y.b_ * qq, x.a_ * y.b_ + x.b_ * y.a_, x.q_);
    }
    Coef inverse() const {
        // (a - b sqrt(q)) / (a^2 - b^2 q); the norm vanishes only at zero
        // because sqrt(q) is irrational whenever b survives canonicalization.
        mpq_class qq(static_cast<unsigned long>(q_));
        mpq_class norm = a_ * a_ - b_ * b_ * qq;
        if (norm == 0) throw DivisionByZero();
        return Coef(a_ / norm, -b_ / norm, q_);
    }
    friend Coef operator/(const Coef& x, const Coef& y) { return x * y.inverse(); }
    friend bool operator==(const Coef& x, const Coef& y) {
        return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string to_string() const;  // "3/2", "1/2*sqrt(2)", "1+2*sqrt(3)"

private:
    void check(const Coef& o) const {
        if (q_ != o.q_) throw InputError("mixing coefficients of different q");
    }
    void canonicalize();

    mpq_class a_ = 0, b_ = 0;
    std::uint64_t q_ = 0;
};

// [n; k]_v, the Gaussian binomial at v = sqrt(q)
Coef v_binomial(std::uint64_t q, int n, int k);

}  // namespace hallforge::hall
