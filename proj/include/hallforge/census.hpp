#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "hallforge/rep.hpp"

namespace hallforge::census {

// divisor/Moebius utilities (exact, overflow-checked by size)
std::vector<std::uint32_t> divisors(std::uint32_t n);
int moebius(std::uint32_t n);

struct CensusRow {
    std::string quiver;
    qv::DimVector alpha;
    std::uint64_t q = 0;  // base field size p^e
    std::uint32_t s = 1;
    std::uint64_t M = 0, I = 0, A = 0;
    std::uint64_t M_F_direct = 0;
    std::uint64_t M_F_formula = 0;
    std::uint64_t M_min = 0;
    bool agree = false;  // M_F_direct == M_F_formula
};

// Counting workspace for one (quiver, p, e); censuses over GF(p, e*s) are
// cached across the s-sweep.
class Lab {
public:
    Lab(qv::Quiver q, std::uint32_t p, std::uint32_t e, rep::Guards guards = {});

    const qv::Quiver& quiver() const { return quiver_; }
    std::uint64_t base_q() const;

    const rep::Census& census(const qv::DimVector& a, std::uint32_t s);
    // the permutation [M] -> [M^{[q]}] on iso classes over GF(p, e*s)
    const std::vector<int>& twist_permutation(const qv::DimVector& a, std::uint32_t s);

    // (M, I, A): all / indecomposable / absolutely indecomposable class counts
    std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> count_MIA(const qv::DimVector& a,
                                                                      std::uint32_t s);
    // number of twist-permutation cycles
    std::uint64_t count_MF_direct(const qv::DimVector& a, std::uint32_t s);
    // Moebius sum  sum_{r|s} mu(s/r) M(alpha, q^r)
    std::uint64_t count_Mmin(const qv::DimVector& a, std::uint32_t s);
    // classes whose twist cycle has length exactly s (minimal field F_{q^s})
    std::uint64_t count_Mmin_direct(const qv::DimVector& a, std::uint32_t s);
    // double divisor sum  sum_{r|s} (1/r) sum_{t|r} mu(r/t) M(alpha, q^t)
    mpq_class count_MF_formula_exact(const qv::DimVector& a, std::uint32_t s);
    std::uint64_t count_MF_formula(const qv::DimVector& a, std::uint32_t s);  // asserts integer

    CensusRow row(const std::string& quiver_name, const qv::DimVector& a, std::uint32_t s);

private:
    qv::Quiver quiver_;
    std::uint32_t p_, e_;
    rep::Guards guards_;
    std::map<std::pair<qv::DimVector, std::uint32_t>, rep::Census> censuses_;
    std::map<std::pair<qv::DimVector, std::uint32_t>, std::vector<int>> perms_;
};

// --- exact polynomial fitting ---------------------------------------------------

struct Poly {
    std::vector<mpq_class> coeffs;  // little-endian; empty = zero polynomial
    mpq_class eval(const mpq_class& x) const;
    int degree() const;  // -1 for zero
    std::string str() const;
};

struct FitResult {
    Poly poly;
    bool exact_on_holdout = true;  // remaining samples reproduced exactly
};

// Lagrange interpolation through the first fit_count samples, the rest held
// out for validation; exact rational arithmetic, never least squares.
FitResult fit_polynomial(const std::vector<std::pair<std::uint64_t, mpq_class>>& samples,
                         int fit_count);

}  // namespace hallforge::census
