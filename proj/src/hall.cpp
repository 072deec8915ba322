#include "hallforge/hall.hpp"

#include <algorithm>
#include <cmath>

namespace hallforge::hall {

using qv::DimVector;

// --- Coef --------------------------------------------------------------------

void Coef::canonicalize() {
    if (b_ == 0) return;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(q_)));
    while (r * r > q_) --r;
    while ((r + 1) * (r + 1) <= q_) ++r;
    if (r * r == q_) {
        a_ += b_ * mpq_class(static_cast<unsigned long>(r));
        b_ = 0;
    }
}

Coef Coef::v_power(std::uint64_t q, long long n) {
    long long m = ((n % 2) + 2) % 2;
    long long j = (n - m) / 2;
    mpq_class qj;
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(j < 0 ? -j : j));
    if (j >= 0)
        qj = mpq_class(pw);
    else
        qj = mpq_class(1) / mpq_class(pw);
    if (m == 0) return Coef(qj, 0, q);
    return Coef(0, qj, q);
}

namespace {
std::string mpq_str(const mpq_class& r) { return r.get_str(); }
}  // namespace

std::string Coef::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (a_ != 0) out += mpq_str(a_);
    if (b_ != 0) {
        if (b_ > 0 && !out.empty()) out += "+";
        if (b_ == -1)
            out += "-";
        else if (b_ != 1)
            out += mpq_str(b_) + "*";
        out += "sqrt(" + std::to_string(q_) + ")";
    }
    return out;
}

Coef v_binomial(std::uint64_t q, int n, int k) {
    if (k < 0 || k > n) throw InputError("v_binomial needs 0 <= k <= n");
    Coef num = Coef::one(q), den = Coef::one(q);
    for (int i = 1; i <= k; ++i) {
        long long top = n - i + 1;
        num = num * (Coef::v_power(q, top) - Coef::v_power(q, -top));
        den = den * (Coef::v_power(q, i) - Coef::v_power(q, -i));
    }
    return num / den;
}

// --- element helpers -----------------------------------------------------------

void add_into(Element& e, const Key& k, const Coef& c) {
    if (c.is_zero()) return;
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(k, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) e.erase(it);
}

void add_into(Tensor2& e, const std::pair<Key, Key>& k, const Coef& c) {
    if (c.is_zero()) return;
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(k, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) e.erase(it);
}

void add_into(TensorR& e, const std::vector<Key>& k, const Coef& c) {
    if (c.is_zero()) return;
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(k, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) e.erase(it);
}

Element scale(const Element& e, const Coef& c) {
    Element out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : e) {
        Coef p = v * c;
        if (!p.is_zero()) out.emplace(k, p);
    }
    return out;
}

bool is_zero(const Element& e) { return e.empty(); }

// --- graded subspace enumeration ------------------------------------------------

namespace {

struct SubspaceBasis {
    Mat rows;  // k x n reduced row echelon basis
    std::vector<std::uint32_t> pivots;
    std::vector<std::uint8_t> is_pivot;  // length n
};

std::uint64_t gaussian_count(std::uint64_t q, int n, int k) {
    // [n; k]_q as an integer
    if (k < 0 || k > n) return 0;
    mpz_class num = 1, den = 1, qz(static_cast<unsigned long>(q));
    for (int i = 0; i < k; ++i) {
        mpz_class qn, qi;
        mpz_pow_ui(qn.get_mpz_t(), qz.get_mpz_t(), n - i);
        mpz_pow_ui(qi.get_mpz_t(), qz.get_mpz_t(), k - i);
        num *= qn - 1;
        den *= qi - 1;
    }
    mpz_class out = num / den;
    if (!out.fits_ulong_p()) throw SizeGuardExceeded("subspace count", ~0ull, 0);
    return out.get_ui();
}

void enumerate_subspaces(const gf::Field& F, int n, int k,
                         const std::function<void(const SubspaceBasis&)>& fn) {
    if (k == 0) {
        SubspaceBasis b;
        b.rows = Mat(0, n);
        b.is_pivot.assign(n, 0);
        fn(b);
        return;
    }
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        // free positions: (row i, col j) with j > pivots[i], j not a pivot
        SubspaceBasis b;
        b.rows = Mat(k, n);
        b.pivots.assign(comb.begin(), comb.end());
        b.is_pivot.assign(n, 0);
        for (int i = 0; i < k; ++i) {
            b.is_pivot[comb[i]] = 1;
            b.rows.at(i, comb[i]) = 1;
        }
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
            for (int j = comb[i] + 1; j < n; ++j)
                if (!b.is_pivot[j]) free_pos.emplace_back(i, j);

        std::vector<std::uint32_t> vals(free_pos.size(), 0);
        while (true) {
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                b.rows.at(free_pos[t].first, free_pos[t].second) = vals[t];
            fn(b);
            std::size_t t = 0;
            while (t < vals.size()) {
                if (++vals[t] < F.size()) break;
                vals[t] = 0;
                ++t;
            }
            if (t == vals.size()) break;
        }

        // next combination
        int i = k - 1;
        while (i >= 0 && comb[i] == n - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
}

// Reduce v against the RREF basis; fills coords, returns true when v lies in
// the row space (residual left in v).
bool reduce_against(const gf::Field& F, const SubspaceBasis& b, std::vector<std::uint32_t>& v,
                    std::vector<std::uint32_t>& coords) {
    coords.assign(b.rows.rows, 0);
    for (std::uint32_t i = 0; i < b.rows.rows; ++i) {
        std::uint32_t c = v[b.pivots[i]];
        if (!c) continue;
        coords[i] = c;
        for (std::uint32_t j = 0; j < b.rows.cols; ++j)
            v[j] = F.sub(v[j], F.mul(c, b.rows.at(i, j)));
    }
    for (std::uint32_t x : v)
        if (x) return false;
    return true;
}

}  // namespace

// --- Context ---------------------------------------------------------------------

Context::Context(qv::Quiver q, gf::FieldPtr f, rep::Guards guards)
    : quiver_(std::move(q)), field_(std::move(f)), guards_(guards) {}

const rep::Census& Context::census(const DimVector& a) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return census_locked(a);
}

const rep::Census& Context::census_locked(const DimVector& a) {
    auto it = censuses_.find(a);
    if (it != censuses_.end()) return *it->second;
    auto census = std::make_unique<rep::Census>(rep::orbit_census(quiver_, a, field_, guards_));
    auto [ins, ok] = censuses_.emplace(a, std::move(census));
    return *ins->second;
}

Key Context::unit() {
    DimVector zero(quiver_.num_vertices(), 0);
    return Key{zero, 0};
}

Key Context::simple(int vertex) {
    if (vertex < 0 || vertex >= quiver_.num_vertices()) throw InputError("no such vertex");
    DimVector d(quiver_.num_vertices(), 0);
    d[vertex] = 1;
    return Key{d, 0};  // the zero point of E_{e_i} is S_i
}

Key Context::key_of(const DimVector& dim, int class_index) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    const auto& c = census_locked(dim);
    if (class_index < 0 || class_index >= c.size()) throw InputError("class index out of range");
    return Key{dim, c.classes[class_index].min_index};
}

Key Context::key_by_id(const std::string& id) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (id == "0") return unit();
    if (id.size() >= 2 && id[0] == 'S' && id.find(':') == std::string::npos) {
        try {
            int v = std::stoi(id.substr(1));
            if (v >= 1 && v <= quiver_.num_vertices()) return simple(v - 1);
        } catch (...) {
        }
        throw UnknownClassId(id);
    }
    auto colon = id.find(':');
    if (colon == std::string::npos) throw UnknownClassId(id);
    DimVector dim;
    std::uint64_t idx = 0;
    try {
        dim = qv::dim_from_string(id.substr(0, colon), quiver_.num_vertices());
        idx = std::stoull(id.substr(colon + 1));
    } catch (const Error&) {
        throw UnknownClassId(id);
    } catch (...) {
        throw UnknownClassId(id);
    }
    const auto& c = census_locked(dim);
    if (c.class_by_min_index(idx) < 0) throw UnknownClassId(id);
    return Key{dim, idx};
}

Key Context::classify(const rep::Representation& r) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    const auto& c = census_locked(r.dim);
    int cls = c.classify(r);
    return Key{r.dim, c.classes[cls].min_index};
}

const rep::IsoClass& Context::iso_locked(const Key& k) {
    const auto& c = census_locked(k.dim);
    int idx = c.class_by_min_index(k.min_index);
    if (idx < 0) throw UnknownClassId(k.id());
    return c.classes[idx];
}

const rep::IsoClass& Context::iso_class(const Key& k) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return iso_locked(k);
}

mpz_class Context::aut(const Key& k) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return iso_locked(k).aut;
}

// --- Hall numbers ------------------------------------------------------------------

const SubQuotTable& Context::subquot_table(const Key& l, const DimVector& sub_dim) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return subquot_table_locked(l, sub_dim);
}

const SubQuotTable& Context::subquot_table_locked(const Key& l, const DimVector& beta) {
    auto cache_key = std::make_pair(l, beta);
    auto it = subquot_.find(cache_key);
    if (it != subquot_.end()) return it->second;

    SubQuotTable tbl;
    const DimVector& gamma = l.dim;
    if (qv::dim_leq(beta, gamma)) {
        DimVector alpha = qv::dim_sub(gamma, beta);
        const auto& census_sub = census_locked(beta);
        const auto& census_quot = census_locked(alpha);
        const auto& F = *field_;
        const rep::Representation x = iso_locked(l).canonical;
        const auto& q = quiver_;
        const int nv = q.num_vertices();

        // guard: product of per-vertex Gaussian binomials
        std::uint64_t total = 1;
        for (int i = 0; i < nv; ++i) {
            std::uint64_t g = gaussian_count(F.size(), gamma[i], beta[i]);
            if (g == 0 || total > guards_.max_hom_scan / g)
                throw SizeGuardExceeded("graded subspace enumeration",
                                        g ? total * g : 0, guards_.max_hom_scan);
            total *= g;
        }

        // materialize per-vertex subspace lists
        std::vector<std::vector<SubspaceBasis>> per_vertex(nv);
        for (int i = 0; i < nv; ++i)
            enumerate_subspaces(F, gamma[i], beta[i],
                                [&](const SubspaceBasis& b) { per_vertex[i].push_back(b); });

        std::vector<std::size_t> choice(nv, 0);
        std::vector<std::uint32_t> vec, coords;
        while (true) {
            // W = product of chosen per-vertex subspaces
            bool stable = true;
            rep::Representation sub = rep::Representation::zero(q, field_, beta);
            rep::Representation quot = rep::Representation::zero(q, field_, alpha);
            for (std::size_t hi = 0; hi < q.arrows.size() && stable; ++hi) {
                const auto& h = q.arrows[hi];
                const SubspaceBasis& ws = per_vertex[h.src][choice[h.src]];
                const SubspaceBasis& wt = per_vertex[h.tgt][choice[h.tgt]];
                const Mat& xh = x.mats[hi];
                // sub-block: images of basis rows of W_src must stay in W_tgt
                for (std::uint32_t j = 0; j < ws.rows.rows && stable; ++j) {
                    vec.assign(gamma[h.tgt], 0);
                    for (int r = 0; r < gamma[h.tgt]; ++r) {
                        std::uint32_t acc = 0;
                        for (int c = 0; c < gamma[h.src]; ++c)
                            acc = F.add(acc, F.mul(xh.at(r, c), ws.rows.at(j, c)));
                        vec[r] = acc;
                    }
                    if (!reduce_against(F, wt, vec, coords)) {
                        stable = false;
                        break;
                    }
                    for (std::uint32_t r = 0; r < coords.size(); ++r)
                        sub.mats[hi].at(r, j) = coords[r];
                }
                if (!stable) break;
                // quotient block: images of complement coordinates, read off
                // the residual at non-pivot columns
                std::uint32_t jj = 0;
                for (int j = 0; j < gamma[h.src]; ++j) {
                    if (ws.is_pivot[j]) continue;
                    vec.assign(gamma[h.tgt], 0);
                    for (int r = 0; r < gamma[h.tgt]; ++r) vec[r] = xh.at(r, j);
                    reduce_against(F, wt, vec, coords);
                    std::uint32_t rr = 0;
                    for (int r = 0; r < gamma[h.tgt]; ++r) {
                        if (wt.is_pivot[r]) continue;
                        quot.mats[hi].at(rr, jj) = vec[r];
                        ++rr;
                    }
                    ++jj;
                }
            }
            if (stable) {
                int sub_cls = census_sub.classify(sub);
                int quot_cls = census_quot.classify(quot);
                ++tbl[{static_cast<std::uint16_t>(quot_cls), static_cast<std::uint16_t>(sub_cls)}];
            }
            // odometer over vertex choices
            int i = 0;
            while (i < nv) {
                if (++choice[i] < per_vertex[i].size()) break;
                choice[i] = 0;
                ++i;
            }
            if (i == nv) break;
        }
    }

    auto [ins, ok] = subquot_.emplace(std::move(cache_key), std::move(tbl));
    return ins->second;
}

std::uint64_t Context::hall_number(const Key& m, const Key& n, const Key& l) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (qv::dim_add(m.dim, n.dim) != l.dim) return 0;
    const auto& tbl = subquot_table_locked(l, n.dim);
    int mi = census_locked(m.dim).class_by_min_index(m.min_index);
    int ni = census_locked(n.dim).class_by_min_index(n.min_index);
    if (mi < 0) throw UnknownClassId(m.id());
    if (ni < 0) throw UnknownClassId(n.id());
    auto it = tbl.find({static_cast<std::uint16_t>(mi), static_cast<std::uint16_t>(ni)});
    return it == tbl.end() ? 0 : it->second;
}

mpz_class Context::hall_number_multi(const std::vector<Key>& parts, const Key& m) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return hall_multi_locked(parts, m);
}

mpz_class Context::hall_multi_locked(const std::vector<Key>& parts, const Key& m) {
    if (parts.empty()) throw InputError("hall_number_multi needs r >= 1");
    DimVector total(quiver_.num_vertices(), 0);
    for (const auto& p : parts) total = qv::dim_add(total, p.dim);
    if (total != m.dim) return 0;
    if (parts.size() == 1) return parts[0] == m ? 1 : 0;

    auto cache_key = std::make_pair(parts, m);
    auto it = multi_f_.find(cache_key);
    if (it != multi_f_.end()) return it->second;

    // F^M_{M_1...M_r} = sum_X F_{M_1,X}^M * F^X_{M_2...M_r}
    std::vector<Key> rest(parts.begin() + 1, parts.end());
    DimVector rest_dim = qv::dim_sub(m.dim, parts[0].dim);
    mpz_class out = 0;
    const auto& cx = census_locked(rest_dim);
    for (const auto& xc : cx.classes) {
        Key x{rest_dim, xc.min_index};
        std::uint64_t f1 = hall_number(parts[0], x, m);
        if (!f1) continue;
        mpz_class f2 = hall_multi_locked(rest, x);
        if (f2 == 0) continue;
        out += mpz_class(static_cast<unsigned long>(f1)) * f2;
    }
    multi_f_.emplace(std::move(cache_key), out);
    return out;
}

mpq_class Context::h_coef(const Key& l, const Key& m, const Key& n) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return h_locked(l, m, n);
}

mpq_class Context::h_locked(const Key& l, const Key& m, const Key& n) {
    std::uint64_t f = hall_number(m, n, l);
    if (!f) return 0;
    mpq_class h(static_cast<unsigned long>(f));
    h *= mpq_class(iso_locked(m).aut) * mpq_class(iso_locked(n).aut);
    h /= mpq_class(iso_locked(l).aut);
    return h;
}

mpq_class Context::h_coef_multi(const Key& m, const std::vector<Key>& parts) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    mpz_class f = hall_multi_locked(parts, m);
    if (f == 0) return 0;
    mpq_class h(f);
    for (const auto& p : parts) h *= mpq_class(iso_locked(p).aut);
    h /= mpq_class(iso_locked(m).aut);
    return h;
}

// --- direct extension counting (the independent h route) ----------------------------

const std::map<std::uint16_t, std::uint64_t>& Context::gluing_histogram(const Key& m,
                                                                        const Key& n) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return gluing_histogram_locked(m, n);
}

const std::map<std::uint16_t, std::uint64_t>& Context::gluing_histogram_locked(const Key& m,
                                                                               const Key& n) {
    auto cache_key = std::make_pair(m, n);
    auto it = gluings_.find(cache_key);
    if (it != gluings_.end()) return it->second;

    const auto& F = *field_;
    const auto& q = quiver_;
    const DimVector& alpha = m.dim;  // quotient
    const DimVector& beta = n.dim;   // sub
    DimVector gamma = qv::dim_add(alpha, beta);
    const auto& census_total = census_locked(gamma);
    const rep::Representation ym = iso_locked(m).canonical;
    const rep::Representation yn = iso_locked(n).canonical;

    // d ranges over D(alpha, beta) = sum_h Hom(K^{alpha_s}, K^{beta_t})
    std::vector<std::tuple<std::size_t, int, int>> dpos;  // (arrow, row in beta_t, col in alpha_s)
    for (std::size_t hi = 0; hi < q.arrows.size(); ++hi) {
        const auto& h = q.arrows[hi];
        for (int r = 0; r < beta[h.tgt]; ++r)
            for (int c = 0; c < alpha[h.src]; ++c) dpos.emplace_back(hi, r, c);
    }
    std::uint64_t scans = 1;
    for (std::size_t i = 0; i < dpos.size(); ++i) {
        if (scans > guards_.max_hom_scan / F.size())
            throw SizeGuardExceeded("gluing enumeration", 0, guards_.max_hom_scan);
        scans *= F.size();
    }

    // total space: first the sub block (beta), then the quotient block (alpha)
    rep::Representation total = rep::Representation::zero(q, field_, gamma);
    for (std::size_t hi = 0; hi < q.arrows.size(); ++hi) {
        const auto& h = q.arrows[hi];
        for (int r = 0; r < beta[h.tgt]; ++r)
            for (int c = 0; c < beta[h.src]; ++c) total.mats[hi].at(r, c) = yn.mats[hi].at(r, c);
        for (int r = 0; r < alpha[h.tgt]; ++r)
            for (int c = 0; c < alpha[h.src]; ++c)
                total.mats[hi].at(beta[h.tgt] + r, beta[h.src] + c) = ym.mats[hi].at(r, c);
    }

    std::map<std::uint16_t, std::uint64_t> hist;
    std::vector<std::uint32_t> vals(dpos.size(), 0);
    while (true) {
        for (std::size_t t = 0; t < dpos.size(); ++t) {
            auto [hi, r, c] = dpos[t];
            total.mats[hi].at(r, beta[quiver_.arrows[hi].src] + c) = vals[t];
        }
        ++hist[static_cast<std::uint16_t>(census_total.classify(total))];
        std::size_t t = 0;
        while (t < vals.size()) {
            if (++vals[t] < F.size()) break;
            vals[t] = 0;
            ++t;
        }
        if (t == vals.size() || vals.empty()) break;
    }

    auto [ins, ok] = gluings_.emplace(std::move(cache_key), std::move(hist));
    return ins->second;
}

std::uint64_t Context::direct_ext_count(const Key& m, const Key& n, const Key& l) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (qv::dim_add(m.dim, n.dim) != l.dim) return 0;
    const auto& hist = gluing_histogram_locked(m, n);
    const auto& c = census_locked(l.dim);
    int li = c.class_by_min_index(l.min_index);
    if (li < 0) throw UnknownClassId(l.id());
    auto it = hist.find(static_cast<std::uint16_t>(li));
    return it == hist.end() ? 0 : it->second;
}

mpq_class Context::h_coef_direct(const Key& l, const Key& m, const Key& n) {
    std::uint64_t count = direct_ext_count(m, n, l);
    long long dot = 0;
    for (int i = 0; i < quiver_.num_vertices(); ++i) dot += 1ll * m.dim[i] * n.dim[i];
    mpz_class qz(static_cast<unsigned long>(field_->size()));
    mpz_class denom;
    mpz_pow_ui(denom.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(dot));
    return mpq_class(static_cast<unsigned long>(count)) / mpq_class(denom);
}

// --- products, coproducts, antipode ---------------------------------------------------

Element Context::multiply_keys_locked(const Key& m, const Key& n, bool twisted) {
    Element out;
    DimVector gamma = qv::dim_add(m.dim, n.dim);
    const auto& c = census_locked(gamma);
    Coef factor = twisted ? v_pow(qv::euler_form(quiver_, m.dim, n.dim)) : cone();
    for (const auto& lc : c.classes) {
        Key l{gamma, lc.min_index};
        std::uint64_t f = hall_number(m, n, l);
        if (f)
            add_into(out, l,
                     factor * coef(mpq_class(static_cast<unsigned long>(f))));
    }
    return out;
}

Element Context::multiply(const Element& x, const Element& y, bool twisted) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Element out;
    for (const auto& [km, cm] : x)
        for (const auto& [kn, cn] : y) {
            Coef c = cm * cn;
            if (c.is_zero()) continue;
            Element prod = multiply_keys_locked(km, kn, twisted);
            for (const auto& [kl, cl] : prod) add_into(out, kl, c * cl);
        }
    return out;
}

Element Context::multiply_many(const std::vector<Element>& factors, bool twisted) {
    if (factors.empty()) return Element{{unit(), cone()}};
    Element acc = factors.back();
    for (std::size_t i = factors.size() - 1; i-- > 0;) acc = multiply(factors[i], acc, twisted);
    return acc;
}

Tensor2 Context::comultiply_key_locked(const Key& l, bool twisted) {
    Tensor2 out;
    for (const auto& beta : qv::splittings_below(l.dim)) {
        DimVector alpha = qv::dim_sub(l.dim, beta);
        const auto& tbl = subquot_table_locked(l, beta);
        if (tbl.empty()) continue;
        const auto& cm = census_locked(alpha);
        const auto& cn = census_locked(beta);
        Coef factor = twisted ? v_pow(qv::euler_form(quiver_, alpha, beta)) : cone();
        for (const auto& [mn, f] : tbl) {
            Key m{alpha, cm.classes[mn.first].min_index};
            Key n{beta, cn.classes[mn.second].min_index};
            mpq_class h(static_cast<unsigned long>(f));
            h *= mpq_class(cm.classes[mn.first].aut) * mpq_class(cn.classes[mn.second].aut);
            h /= mpq_class(iso_locked(l).aut);
            add_into(out, {m, n}, factor * coef(h));
        }
    }
    return out;
}

Tensor2 Context::comultiply(const Element& x, bool twisted) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Tensor2 out;
    for (const auto& [kl, c] : x) {
        Tensor2 dl = comultiply_key_locked(kl, twisted);
        for (const auto& [mn, h] : dl) add_into(out, mn, c * h);
    }
    return out;
}

TensorR Context::r_fold_comultiply(const Element& x, int r, bool twisted) {
    if (r < 1) throw InputError("r_fold_comultiply needs r >= 1");
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    TensorR cur;
    for (const auto& [k, c] : x) cur.emplace(std::vector<Key>{k}, c);
    for (int step = 0; step < r; ++step) {
        TensorR next;
        for (const auto& [legs, c] : cur) {
            Tensor2 dl = comultiply_key_locked(legs.back(), twisted);
            for (const auto& [mn, h] : dl) {
                std::vector<Key> nl(legs.begin(), legs.end() - 1);
                nl.push_back(mn.first);
                nl.push_back(mn.second);
                add_into(next, nl, c * h);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Element Context::antipode_basis_locked(const Key& m, bool twisted) {
    auto cache_key = std::make_pair(m, twisted);
    auto it = antipode_.find(cache_key);
    if (it != antipode_.end()) return it->second;

    Element out;
    if (qv::dim_is_zero(m.dim)) {
        add_into(out, unit(), cone());
    } else {
        // sum_r (-1)^r m^{(t,r)} applied to the r-fold proper coproduct
        std::map<std::vector<Key>, Coef> cur;
        cur.emplace(std::vector<Key>{m}, cone());
        const int total = qv::dim_total(m.dim);
        for (int r = 1; r <= total && !cur.empty(); ++r) {
            const Coef sign = (r % 2) ? -cone() : cone();
            for (const auto& [legs, c] : cur) {
                Element prod = basis(legs.back());
                for (std::size_t i = legs.size() - 1; i-- > 0;) {
                    Element next;
                    for (const auto& [k2, c2] : prod) {
                        Element p = multiply_keys_locked(legs[i], k2, twisted);
                        for (const auto& [k3, c3] : p) add_into(next, k3, c2 * c3);
                    }
                    prod = std::move(next);
                }
                for (const auto& [k2, c2] : prod) add_into(out, k2, sign * c * c2);
            }
            if (r == total) break;
            std::map<std::vector<Key>, Coef> next;
            for (const auto& [legs, c] : cur) {
                Tensor2 dl = comultiply_key_locked(legs.back(), twisted);
                for (const auto& [mn, h] : dl) {
                    if (qv::dim_is_zero(mn.first.dim) || qv::dim_is_zero(mn.second.dim))
                        continue;  // proper part only
                    std::vector<Key> nl(legs.begin(), legs.end() - 1);
                    nl.push_back(mn.first);
                    nl.push_back(mn.second);
                    add_into(next, nl, c * h);
                }
            }
            cur = std::move(next);
        }
    }

    auto [ins, ok] = antipode_.emplace(std::move(cache_key), std::move(out));
    return ins->second;
}

Element Context::antipode(const Element& x, bool twisted, AntipodeConvention conv) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Element out;
    for (const auto& [k, c] : x) {
        Element s = (conv == AntipodeConvention::Iterated)
                        ? antipode_basis_locked(k, twisted)
                        : antipode_formula(k, twisted, conv);
        for (const auto& [k2, c2] : s) add_into(out, k2, c * c2);
    }
    return out;
}

namespace {
// ordered compositions of dim into r nonzero parts
void compositions_rec(const DimVector& remaining, int parts_left,
                      std::vector<DimVector>& acc,
                      const std::function<void(const std::vector<DimVector>&)>& fn) {
    if (parts_left == 1) {
        if (qv::dim_is_zero(remaining)) return;
        acc.push_back(remaining);
        fn(acc);
        acc.pop_back();
        return;
    }
    for (const auto& part : qv::splittings_below(remaining)) {
        if (qv::dim_is_zero(part)) continue;
        if (part == remaining) continue;  // later parts must stay nonzero
        acc.push_back(part);
        compositions_rec(qv::dim_sub(remaining, part), parts_left - 1, acc, fn);
        acc.pop_back();
    }
}
}  // namespace

Element Context::antipode_formula(const Key& m, bool twisted, AntipodeConvention conv) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Element out;
    if (qv::dim_is_zero(m.dim)) {
        add_into(out, unit(), cone());
        return out;
    }
    const int total = qv::dim_total(m.dim);
    const auto& target_census = census_locked(m.dim);
    for (int r = 1; r <= total; ++r) {
        const Coef sign = (r % 2) ? -cone() : cone();
        std::vector<DimVector> acc;
        compositions_rec(m.dim, r, acc, [&](const std::vector<DimVector>& parts) {
            // all class tuples with these dimension parts
            std::vector<const rep::Census*> cens;
            for (const auto& d : parts) cens.push_back(&census_locked(d));
            std::vector<int> pick(parts.size(), 0);
            while (true) {
                std::vector<Key> tuple;
                for (std::size_t i = 0; i < parts.size(); ++i)
                    tuple.push_back(Key{parts[i], cens[i]->classes[pick[i]].min_index});
                mpq_class h = 0;
                {
                    mpz_class f = hall_multi_locked(tuple, m);
                    if (f != 0) {
                        h = mpq_class(f);
                        for (const auto& p : tuple) h *= mpq_class(iso_locked(p).aut);
                        h /= mpq_class(iso_locked(m).aut);
                    }
                }
                if (h != 0) {
                    long long twist_exp = 0;
                    if (twisted) {
                        for (std::size_t i = 0; i < parts.size(); ++i)
                            for (std::size_t j = i; j < parts.size(); ++j) {
                                if (i == j && conv == AntipodeConvention::Iterated) continue;
                                twist_exp += 2 * qv::euler_form(quiver_, parts[i], parts[j]);
                            }
                    }
                    Coef factor = sign * coef(h) * (twisted ? v_pow(twist_exp) : cone());
                    for (const auto& nc : target_census.classes) {
                        Key n{m.dim, nc.min_index};
                        mpz_class f = hall_multi_locked(tuple, n);
                        if (f != 0) add_into(out, n, factor * coef(mpq_class(f)));
                    }
                }
                std::size_t t = 0;
                while (t < pick.size()) {
                    if (++pick[t] < cens[t]->size()) break;
                    pick[t] = 0;
                    ++t;
                }
                if (t == pick.size()) break;
            }
        });
    }
    return out;
}

Coef Context::hopf_pairing(const Element& x, const Element& y) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Coef out = czero();
    for (const auto& [k, cx] : x) {
        auto it = y.find(k);
        if (it == y.end()) continue;
        out = out + cx * it->second * coef(mpq_class(1) / mpq_class(iso_locked(k).aut));
    }
    return out;
}

Coef Context::hopf_pairing_tensor(const Tensor2& x, const Tensor2& y) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Coef out = czero();
    for (const auto& [k, cx] : x) {
        auto it = y.find(k);
        if (it == y.end()) continue;
        mpq_class w = mpq_class(1) / mpq_class(iso_locked(k.first).aut);
        w /= mpq_class(iso_locked(k.second).aut);
        out = out + cx * it->second * coef(w);
    }
    return out;
}

std::pair<int, int> Context::hom_ext(const Key& m, const Key& n) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return hom_ext_locked(m, n);
}

std::pair<int, int> Context::hom_ext_locked(const Key& m, const Key& n) {
    auto cache_key = std::make_pair(m, n);
    auto it = homext_.find(cache_key);
    if (it != homext_.end()) return it->second;
    auto val = rep::hom_ext_dims(iso_locked(m).canonical, iso_locked(n).canonical);
    homext_.emplace(std::move(cache_key), val);
    return val;
}

}  // namespace hallforge::hall
