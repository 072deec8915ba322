#include "hallforge/census.hpp"

#include <algorithm>

namespace hallforge::census {

using qv::DimVector;

std::vector<std::uint32_t> divisors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(std::uint32_t n) {
    int mu = 1;
    for (std::uint32_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;  // square factor
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

Lab::Lab(qv::Quiver q, std::uint32_t p, std::uint32_t e, rep::Guards guards)
    : quiver_(std::move(q)), p_(p), e_(e), guards_(guards) {}

std::uint64_t Lab::base_q() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e_; ++i) q *= p_;
    return q;
}

const rep::Census& Lab::census(const DimVector& a, std::uint32_t s) {
    auto key = std::make_pair(a, s);
    auto it = censuses_.find(key);
    if (it != censuses_.end()) return it->second;
    auto field = gf::Field::make(p_, e_ * s, guards_.max_field);
    auto [ins, ok] = censuses_.emplace(key, rep::orbit_census(quiver_, a, field, guards_));
    return ins->second;
}

const std::vector<int>& Lab::twist_permutation(const DimVector& a, std::uint32_t s) {
    auto key = std::make_pair(a, s);
    auto it = perms_.find(key);
    if (it != perms_.end()) return it->second;
    const auto& c = census(a, s);
    std::vector<int> perm(c.size());
    for (int i = 0; i < c.size(); ++i) {
        auto twisted = rep::frobenius_twist(c.classes[i].canonical, 1, e_);
        perm[i] = c.classify(twisted);
    }
    // sanity: a permutation whose s-th power is the identity
    {
        std::vector<int> seen(perm.size(), 0);
        for (int v : perm) {
            if (v < 0 || v >= static_cast<int>(perm.size()) || seen[v])
                throw InternalError("twist map is not a permutation of classes");
            seen[v] = 1;
        }
    }
    auto [ins, ok] = perms_.emplace(key, std::move(perm));
    return ins->second;
}

std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> Lab::count_MIA(const DimVector& a,
                                                                       std::uint32_t s) {
    const auto& c = census(a, s);
    std::uint64_t m = c.size(), ind = 0, abs = 0;
    for (const auto& cl : c.classes) {
        if (rep::is_indecomposable(cl.canonical, guards_)) {
            ++ind;
            if (rep::is_absolutely_indecomposable(cl.canonical, guards_)) ++abs;
        }
    }
    return {m, ind, abs};
}

namespace {
std::vector<int> cycle_lengths(const std::vector<int>& perm) {
    std::vector<int> lengths(perm.size(), 0);
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        j = i;
        for (int k = 0; k < len; ++k) {
            lengths[j] = len;
            j = perm[j];
        }
    }
    return lengths;
}
}  // namespace

std::uint64_t Lab::count_MF_direct(const DimVector& a, std::uint32_t s) {
    const auto& perm = twist_permutation(a, s);
    auto lengths = cycle_lengths(perm);
    // number of cycles = sum over classes of 1/cycle_length
    std::uint64_t cycles = 0;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
        }
    }
    return cycles;
}

std::uint64_t Lab::count_Mmin_direct(const DimVector& a, std::uint32_t s) {
    auto lengths = cycle_lengths(twist_permutation(a, s));
    std::uint64_t n = 0;
    for (int len : lengths)
        if (len == static_cast<int>(s)) ++n;
    return n;
}

std::uint64_t Lab::count_Mmin(const DimVector& a, std::uint32_t s) {
    long long sum = 0;
    for (auto r : divisors(s))
        sum += static_cast<long long>(moebius(s / r)) *
               static_cast<long long>(census(a, r).size());
    if (sum < 0) throw NonIntegerResult("negative Moebius sum for M_min");
    return static_cast<std::uint64_t>(sum);
}

mpq_class Lab::count_MF_formula_exact(const DimVector& a, std::uint32_t s) {
    mpq_class sum = 0;
    for (auto r : divisors(s)) {
        mpq_class inner = 0;
        for (auto t : divisors(r))
            inner += mpq_class(moebius(r / t)) *
                     mpq_class(static_cast<unsigned long>(census(a, t).size()));
        sum += inner / mpq_class(static_cast<unsigned long>(r));
    }
    return sum;
}

std::uint64_t Lab::count_MF_formula(const DimVector& a, std::uint32_t s) {
    mpq_class v = count_MF_formula_exact(a, s);
    if (v.get_den() != 1)
        throw NonIntegerResult("M^F formula value " + v.get_str() + " is not an integer");
    if (v < 0) throw NonIntegerResult("M^F formula value is negative");
    return mpz_class(v.get_num()).get_ui();
}

CensusRow Lab::row(const std::string& quiver_name, const DimVector& a, std::uint32_t s) {
    CensusRow r;
    r.quiver = quiver_name;
    r.alpha = a;
    r.q = base_q();
    r.s = s;
    auto [m, i, abs] = count_MIA(a, s);
    r.M = m;
    r.I = i;
    r.A = abs;
    r.M_F_direct = count_MF_direct(a, s);
    r.M_F_formula = count_MF_formula(a, s);
    r.M_min = count_Mmin(a, s);
    r.agree = (r.M_F_direct == r.M_F_formula);
    return r;
}

// --- polynomial fitting ------------------------------------------------------------

mpq_class Poly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

int Poly::degree() const {
    for (std::size_t i = coeffs.size(); i-- > 0;)
        if (coeffs[i] != 0) return static_cast<int>(i);
    return -1;
}

std::string Poly::str() const {
    if (degree() < 0) return "0";
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += coeffs[i].get_str();
        } else {
            if (coeffs[i] != 1) out += coeffs[i].get_str() + "*";
            out += (i == 1) ? "q" : "q^" + std::to_string(i);
        }
    }
    return out;
}

FitResult fit_polynomial(const std::vector<std::pair<std::uint64_t, mpq_class>>& samples,
                         int fit_count) {
    if (fit_count < 1 || fit_count > static_cast<int>(samples.size()))
        throw InsufficientSamples("need between 1 and " + std::to_string(samples.size()) +
                                  " fit samples, got " + std::to_string(fit_count));
    for (int i = 0; i < fit_count; ++i)
        for (int j = i + 1; j < fit_count; ++j)
            if (samples[i].first == samples[j].first)
                throw InsufficientSamples("duplicate sample point q=" +
                                          std::to_string(samples[i].first));

    // Lagrange basis, expanded to coefficient form
    FitResult out;
    out.poly.coeffs.assign(fit_count, 0);
    for (int i = 0; i < fit_count; ++i) {
        // numerator polynomial prod_{j != i} (x - x_j), scaled by y_i / prod (x_i - x_j)
        std::vector<mpq_class> num{1};
        mpq_class den = 1;
        mpq_class xi(static_cast<unsigned long>(samples[i].first));
        for (int j = 0; j < fit_count; ++j) {
            if (j == i) continue;
            mpq_class xj(static_cast<unsigned long>(samples[j].first));
            // num *= (x - x_j)
            std::vector<mpq_class> next(num.size() + 1, 0);
            for (std::size_t k = 0; k < num.size(); ++k) {
                next[k + 1] += num[k];
                next[k] -= num[k] * xj;
            }
            num = std::move(next);
            den *= (xi - xj);
        }
        mpq_class scale = samples[i].second / den;
        for (std::size_t k = 0; k < num.size(); ++k) out.poly.coeffs[k] += num[k] * scale;
    }
    while (!out.poly.coeffs.empty() && out.poly.coeffs.back() == 0) out.poly.coeffs.pop_back();

    for (std::size_t i = fit_count; i < samples.size(); ++i) {
        mpq_class x(static_cast<unsigned long>(samples[i].first));
        if (out.poly.eval(x) != samples[i].second) out.exact_on_holdout = false;
    }
    return out;
}

}  // namespace hallforge::census
