#include "hallforge/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hallforge::gf {

namespace {

constexpr std::uint64_t kTableLimit = 512;  // build full op tables up to this size

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- dense mod-p polynomial helpers used during construction ---
using IPoly = std::vector<std::uint32_t>;  // little-endian, coefficients in [0,p)

void itrim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

IPoly imul(const IPoly& a, const IPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    IPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>(
                (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    itrim(c);
    return c;
}

// remainder of a modulo monic b
IPoly imod(IPoly a, const IPoly& b, std::uint32_t p) {
    itrim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        itrim(a);
    }
    return a;
}

bool idivides(const IPoly& divisor, const IPoly& poly, std::uint32_t p) {
    return imod(poly, divisor, p).empty();
}

IPoly poly_of_index(std::uint64_t m, std::uint32_t p, std::uint32_t len) {
    IPoly c(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        c[i] = static_cast<std::uint32_t>(m % p);
        m /= p;
    }
    return c;
}

bool irreducible_mod_p(const IPoly& monic, std::uint32_t p) {
    const std::size_t deg = monic.size() - 1;
    if (deg == 1) return true;
    // constant term zero means root 0
    if (monic[0] == 0) return false;
    std::uint64_t count = 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        count *= p;  // number of monic polys of degree d
        for (std::uint64_t m = 0; m < count; ++m) {
            IPoly g = poly_of_index(m, p, static_cast<std::uint32_t>(d) + 1);
            g[d] = 1;
            if (idivides(g, monic, p)) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

FieldPtr Field::make(std::uint32_t p, std::uint32_t e, std::uint64_t size_guard) {
    if (!is_prime(p)) throw NonPrimeError(p);
    if (e < 1) throw InputError("extension degree must be >= 1");
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (size > size_guard / p) throw SizeGuardExceeded("field size", 0, size_guard);
        size *= p;
    }

    // One shared instance per (p, e): the modulus is canonical anyway.
    static std::mutex cache_mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, e});
        if (it != cache.end()) return it->second;
    }

    auto F = std::shared_ptr<Field>(new Field());
    F->p_ = p;
    F->e_ = e;
    F->size_ = size;

    // Smallest monic irreducible of degree e in the element-encoding order.
    std::uint64_t low_count = 1;
    for (std::uint32_t i = 0; i < e; ++i) low_count *= p;
    for (std::uint64_t m = 0;; ++m) {
        if (m >= low_count) throw InternalError("no irreducible polynomial found");
        IPoly f = poly_of_index(m, p, e + 1);
        f[e] = 1;
        if (irreducible_mod_p(f, p)) {
            F->modulus_ = f;
            break;
        }
    }

    if (size <= kTableLimit) F->build_tables();
    F->find_primitive();

    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(std::make_pair(p, e), F);
    return it->second;
}

std::vector<std::uint32_t> Field::coeffs(std::uint32_t a) const {
    std::vector<std::uint32_t> c(e_, 0);
    for (std::uint32_t i = 0; i < e_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

std::uint32_t Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    std::uint64_t a = 0;
    for (std::size_t i = c.size(); i-- > 0;) a = a * p_ + (c[i] % p_);
    return static_cast<std::uint32_t>(a);
}

std::uint32_t Field::add_slow(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        out += mult * ((a % p_ + b % p_) % p_);
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return static_cast<std::uint32_t>(out);
}

std::uint32_t Field::neg_slow(std::uint32_t a) const {
    std::uint64_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        out += mult * ((p_ - a % p_) % p_);
        a /= p_;
        mult *= p_;
    }
    return static_cast<std::uint32_t>(out);
}

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
    IPoly pa = coeffs(a), pb = coeffs(b);
    itrim(pa);
    itrim(pb);
    IPoly prod = imod(imul(pa, pb, p_), modulus_, p_);
    prod.resize(e_, 0);
    return from_coeffs(prod);
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    if (has_tables_) return inv_tab_[a];
    return pow(a, size_ - 2);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t result = 1, base = a;
    while (k) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::uint32_t Field::frobenius(std::uint32_t a, std::uint64_t times) const {
    if (a == 0) return 0;
    // exponent p^times mod (size-1), since x^(size-1) = 1
    std::uint64_t ord = size_ - 1;
    if (ord == 1) return a;
    std::uint64_t exp = 1;
    std::uint64_t base = p_ % ord;
    std::uint64_t t = times;
    while (t) {
        if (t & 1) exp = (unsigned __int128)exp * base % ord;
        base = (unsigned __int128)base * base % ord;
        t >>= 1;
    }
    return pow(a, exp);
}

void Field::build_tables() {
    const std::size_t n = size_;
    add_tab_.resize(n * n);
    mul_tab_.resize(n * n);
    neg_tab_.resize(n);
    inv_tab_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        neg_tab_[a] = static_cast<std::uint16_t>(neg_slow(static_cast<std::uint32_t>(a)));
        for (std::size_t b = 0; b < n; ++b) {
            add_tab_[a * n + b] = static_cast<std::uint16_t>(
                add_slow(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
            mul_tab_[a * n + b] = static_cast<std::uint16_t>(
                mul_slow(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
        }
    }
    has_tables_ = true;
    inv_tab_[0] = 0;
    for (std::size_t a = 1; a < n; ++a)
        inv_tab_[a] = static_cast<std::uint16_t>(pow(static_cast<std::uint32_t>(a), size_ - 2));
}

void Field::find_primitive() {
    const std::uint64_t ord = size_ - 1;
    if (ord == 1) {
        primitive_ = 1;
        return;
    }
    auto factors = prime_factors(ord);
    for (std::uint32_t x = 1; x < size_; ++x) {
        bool primitive = true;
        for (auto ell : factors) {
            if (pow(x, ord / ell) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            primitive_ = x;
            return;
        }
    }
    throw InternalError("no primitive element found");
}

std::string Field::to_string(std::uint32_t a) const {
    if (a == 0) return "0";
    auto c = coeffs(a);
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

std::vector<FieldElement> enumerate_field(const FieldPtr& f) {
    std::vector<FieldElement> out;
    out.reserve(f->size());
    for (std::uint64_t i = 0; i < f->size(); ++i)
        out.emplace_back(f, static_cast<std::uint32_t>(i));
    return out;
}

std::vector<std::uint32_t> embedding_table(const Field& small, const Field& big) {
    if (small.p() != big.p() || big.e() % small.e() != 0)
        throw InputError("no embedding: target is not an extension");
    if (small.e() == big.e()) {
        std::vector<std::uint32_t> id(small.size());
        for (std::uint32_t i = 0; i < small.size(); ++i) id[i] = i;
        return id;
    }
    // least root of the small modulus in the big field
    const auto& f = small.modulus();
    std::uint32_t root = 0;
    bool found = false;
    for (std::uint32_t x = 0; x < big.size(); ++x) {
        std::uint32_t acc = 0;  // Horner
        for (std::size_t i = f.size(); i-- > 0;)
            acc = big.add(big.mul(acc, x), f[i] % big.p());
        if (acc == 0) {
            root = x;
            found = true;
            break;
        }
    }
    if (!found) throw InternalError("modulus has no root in extension");
    std::vector<std::uint32_t> rho_pow(small.e(), 1);
    for (std::uint32_t i = 1; i < small.e(); ++i) rho_pow[i] = big.mul(rho_pow[i - 1], root);
    std::vector<std::uint32_t> table(small.size());
    for (std::uint32_t a = 0; a < small.size(); ++a) {
        auto c = small.coeffs(a);
        std::uint32_t img = 0;
        for (std::uint32_t i = 0; i < small.e(); ++i)
            img = big.add(img, big.mul(c[i] % big.p(), rho_pow[i]));
        table[a] = img;
    }
    return table;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

Poly poly_mod(const Field& F, Poly a, const Poly& b) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(lead, b[i]));
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

bool poly_is_irreducible(const Field& F, const Poly& monic) {
    const std::size_t deg = monic.size() - 1;
    if (deg == 1) return true;
    if (monic[0] == 0) return false;
    std::uint64_t count = 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        count *= F.size();
        for (std::uint64_t m = 0; m < count; ++m) {
            Poly g(d + 1, 0);
            std::uint64_t mm = m;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(mm % F.size());
                mm /= F.size();
            }
            g[d] = 1;
            if (poly_mod(F, monic, g).empty()) return false;
        }
    }
    return true;
}

Poly find_primitive_poly(const Field& F, std::uint32_t n) {
    std::uint64_t ord = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (ord > (1ull << 62) / F.size()) throw SizeGuardExceeded("Singer order", 0, 1ull << 62);
        ord *= F.size();
    }
    ord -= 1;  // |F|^n - 1
    auto factors = prime_factors(ord);
    std::uint64_t total = ord + 1;
    for (std::uint64_t m = 0; m < total; ++m) {
        Poly f(n + 1, 0);
        std::uint64_t mm = m;
        for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(mm % F.size());
            mm /= F.size();
        }
        f[n] = 1;
        if (!poly_is_irreducible(F, f)) continue;
        // order of t in F[t]/(f) must be exactly ord
        bool primitive = true;
        for (auto ell : factors) {
            // t^(ord/ell) mod f
            Poly acc{1};
            Poly base{0, 1};
            std::uint64_t k = ord / ell;
            while (k) {
                if (k & 1) acc = poly_mod(F, poly_mul(F, acc, base), f);
                base = poly_mod(F, poly_mul(F, base, base), f);
                k >>= 1;
            }
            if (acc.size() == 1 && acc[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return f;
    }
    throw InternalError("no primitive polynomial found");
}

}  // namespace hallforge::gf
