#include "hallforge/rep.hpp"

#include <algorithm>
#include <numeric>

namespace hallforge::rep {

using qv::DimVector;
using qv::Quiver;

Representation Representation::zero(const Quiver& q, gf::FieldPtr f, DimVector a) {
    qv::check_dim(q, a);
    Representation r;
    r.quiver = &q;
    r.field = std::move(f);
    r.dim = std::move(a);
    for (const auto& h : q.arrows)
        r.mats.emplace_back(static_cast<std::uint32_t>(r.dim[h.tgt]),
                            static_cast<std::uint32_t>(r.dim[h.src]));
    return r;
}

std::uint64_t e_dim(const Quiver& q, const DimVector& a) {
    std::uint64_t d = 0;
    for (const auto& h : q.arrows) d += std::uint64_t(a[h.src]) * a[h.tgt];
    return d;
}

std::uint64_t point_count(const Quiver& q, const DimVector& a, const gf::Field& f,
                          std::uint64_t guard) {
    std::uint64_t d = e_dim(q, a);
    unsigned __int128 n = 1;
    for (std::uint64_t i = 0; i < d && n <= guard; ++i) n *= f.size();
    if (n > guard) {
        std::uint64_t reported = n > ~0ull ? ~0ull : static_cast<std::uint64_t>(n);
        throw SizeGuardExceeded("point enumeration for E_" + qv::dim_to_string(a), reported,
                                guard);
    }
    return static_cast<std::uint64_t>(n);
}

std::uint64_t encode_point(const Representation& r) {
    const std::uint64_t qs = r.field->size();
    std::uint64_t idx = 0;
    for (const auto& m : r.mats)
        for (std::uint32_t v : m.a) idx = idx * qs + v;
    return idx;
}

Representation decode_point(const Quiver& q, gf::FieldPtr f, const DimVector& a,
                            std::uint64_t index) {
    Representation r = Representation::zero(q, std::move(f), a);
    const std::uint64_t qs = r.field->size();
    for (std::size_t mi = r.mats.size(); mi-- > 0;) {
        auto& m = r.mats[mi];
        for (std::size_t k = m.a.size(); k-- > 0;) {
            m.a[k] = static_cast<std::uint32_t>(index % qs);
            index /= qs;
        }
    }
    return r;
}

void enumerate_reps(const Quiver& q, const DimVector& a, gf::FieldPtr f, const Guards& guards,
                    const std::function<void(const Representation&)>& fn) {
    std::uint64_t n = point_count(q, a, *f, guards.max_points);
    for (std::uint64_t i = 0; i < n; ++i) fn(decode_point(q, f, a, i));
}

// --- Hom / Ext ---------------------------------------------------------------

namespace {

// Matrix of f |-> (f_{t(h)} x_h - y_h f_{s(h)})_h on the vertexwise maps.
// Unknowns: entries of f_i (a (dim N_i) x (dim M_i) block per vertex).
Mat intertwiner_matrix(const Representation& m, const Representation& n) {
    const Quiver& q = *m.quiver;
    const auto& F = *m.field;
    const int nv = q.num_vertices();
    std::vector<std::uint32_t> var_offset(nv + 1, 0);
    for (int i = 0; i < nv; ++i)
        var_offset[i + 1] = var_offset[i] + std::uint32_t(n.dim[i]) * m.dim[i];
    const std::uint32_t num_vars = var_offset[nv];

    std::uint32_t num_eqs = 0;
    for (const auto& h : q.arrows) num_eqs += std::uint32_t(m.dim[h.src]) * n.dim[h.tgt];

    Mat sys(num_eqs, num_vars);
    std::uint32_t eq = 0;
    for (std::size_t hi = 0; hi < q.arrows.size(); ++hi) {
        const auto& h = q.arrows[hi];
        const Mat& x = m.mats[hi];  // dim: m_t x m_s
        const Mat& y = n.mats[hi];  // dim: n_t x n_s
        const int ms = m.dim[h.src], nt = n.dim[h.tgt];
        // rows of the equation block: (r, c) with r < n_t, c < m_s
        for (int r = 0; r < nt; ++r) {
            for (int c = 0; c < ms; ++c, ++eq) {
                // (f_t x)_rc = sum_k f_t[r,k] x[k,c]
                for (int k = 0; k < m.dim[h.tgt]; ++k) {
                    std::uint32_t coeff = x.at(k, c);
                    if (!coeff) continue;
                    std::uint32_t var = var_offset[h.tgt] + std::uint32_t(r) * m.dim[h.tgt] + k;
                    sys.at(eq, var) = F.add(sys.at(eq, var), coeff);
                }
                // -(y f_s)_rc = -sum_k y[r,k] f_s[k,c]
                for (int k = 0; k < n.dim[h.src]; ++k) {
                    std::uint32_t coeff = y.at(r, k);
                    if (!coeff) continue;
                    std::uint32_t var = var_offset[h.src] + std::uint32_t(k) * m.dim[h.src] + c;
                    sys.at(eq, var) = F.sub(sys.at(eq, var), coeff);
                }
            }
        }
    }
    return sys;
}

}  // namespace

HomSpace hom_space(const Representation& m, const Representation& n) {
    const Quiver& q = *m.quiver;
    const auto& F = *m.field;
    Mat sys = intertwiner_matrix(m, n);
    Mat kernel = nullspace_basis(F, sys);
    HomSpace out;
    out.dim = kernel.rows;
    const int nv = q.num_vertices();
    for (std::uint32_t k = 0; k < kernel.rows; ++k) {
        std::vector<Mat> blocks;
        std::uint32_t off = 0;
        for (int i = 0; i < nv; ++i) {
            Mat b(n.dim[i], m.dim[i]);
            for (std::size_t t = 0; t < b.a.size(); ++t) b.a[t] = kernel.at(k, off + t);
            off += static_cast<std::uint32_t>(b.a.size());
            blocks.push_back(std::move(b));
        }
        out.basis.push_back(std::move(blocks));
    }
    return out;
}

std::pair<int, int> hom_ext_dims(const Representation& m, const Representation& n) {
    const auto& F = *m.field;
    Mat sys = intertwiner_matrix(m, n);
    std::uint32_t rank = mat_rank(F, sys);
    int hom = static_cast<int>(sys.cols - rank);
    int ext = static_cast<int>(sys.rows - rank);
    return {hom, ext};
}

int hom_dim(const Representation& m, const Representation& n) {
    return hom_ext_dims(m, n).first;
}

int ext_dim(const Representation& m, const Representation& n) {
    long long eu = qv::euler_form(*m.quiver, m.dim, n.dim);
    return static_cast<int>(hom_dim(m, n) - eu);
}

int ext_dim_cokernel(const Representation& m, const Representation& n) {
    return hom_ext_dims(m, n).second;
}

namespace {

// Assemble f = sum_k coeffs[k] * basis[k], one block per vertex.
std::vector<Mat> combine(const gf::Field& F, const HomSpace& hs,
                         const std::vector<std::uint32_t>& coeffs) {
    std::vector<Mat> out;
    for (std::size_t i = 0; i < hs.basis[0].size(); ++i) {
        Mat acc(hs.basis[0][i].rows, hs.basis[0][i].cols);
        for (std::size_t k = 0; k < hs.basis.size(); ++k) {
            if (coeffs[k] == 0) continue;
            acc = mat_add(F, acc, mat_scale(F, coeffs[k], hs.basis[k][i]));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

bool all_invertible(const gf::Field& F, const std::vector<Mat>& blocks) {
    for (const auto& b : blocks)
        if (b.rows > 0 && !mat_invertible(F, b)) return false;
    return true;
}

// Odometer over Q^k coefficient tuples; returns false after the last one.
bool next_tuple(std::vector<std::uint32_t>& t, std::uint64_t qs) {
    for (auto& x : t) {
        if (++x < qs) return true;
        x = 0;
    }
    return false;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t guard,
                          const std::string& what) {
    std::uint64_t n = 1;
    for (int i = 0; i < exp; ++i) {
        if (n > guard / base) throw SizeGuardExceeded(what, ~0ull, guard);
        n *= base;
    }
    return n;
}

}  // namespace

bool is_isomorphic(const Representation& m, const Representation& n, const Guards& guards) {
    if (m.dim != n.dim) return false;
    const auto& F = *m.field;
    if (!F.same(*n.field)) throw FieldMismatch();
    if (qv::dim_is_zero(m.dim)) return true;
    int hmn = hom_dim(m, n);
    if (hmn == 0) return false;
    // fingerprint prefilter; never used as the positive criterion
    if (hom_dim(m, m) != hmn || hom_dim(n, n) != hmn) return false;
    HomSpace hs = hom_space(m, n);
    std::uint64_t scans =
        checked_pow(F.size(), hs.dim, guards.max_hom_scan, "isomorphism Hom-space scan");
    std::vector<std::uint32_t> coeffs(hs.dim, 0);
    for (std::uint64_t i = 1; i < scans; ++i) {
        next_tuple(coeffs, F.size());
        if (all_invertible(F, combine(F, hs, coeffs))) return true;
    }
    return false;
}

Representation frobenius_twist(const Representation& m, std::uint64_t r, std::uint32_t e_base) {
    Representation out = m;
    const auto& F = *m.field;
    // one lookup per distinct entry value
    std::vector<std::uint32_t> tw(F.size());
    for (std::uint32_t x = 0; x < F.size(); ++x) tw[x] = F.frobenius(x, r * e_base);
    for (auto& mat : out.mats)
        for (auto& v : mat.a) v = tw[v];
    return out;
}

std::uint32_t minimal_field_of_definition(const Representation& m, std::uint32_t e_base,
                                          std::uint32_t s, const Guards& guards) {
    if (m.field->e() != e_base * s) throw InputError("field degree is not e*s");
    for (std::uint32_t r = 1; r <= s; ++r) {
        if (s % r != 0) continue;  // the minimal r divides s
        if (is_isomorphic(m, frobenius_twist(m, r, e_base), guards)) return r;
    }
    throw InternalError("minimal field search failed at r=s");
}

namespace {

bool has_nontrivial_idempotent(const gf::Field& F, const Representation& m,
                               const HomSpace& end, const Guards& guards) {
    std::uint64_t scans =
        checked_pow(F.size(), end.dim, guards.max_hom_scan, "End(M) idempotent scan");
    std::vector<std::uint32_t> coeffs(end.dim, 0);
    for (std::uint64_t i = 1; i < scans; ++i) {
        next_tuple(coeffs, F.size());
        auto f = combine(F, end, coeffs);
        bool idem = true, identity = true;
        for (std::size_t v = 0; v < f.size() && idem; ++v) {
            if (f[v].rows == 0) continue;
            if (!(mat_mul(F, f[v], f[v]) == f[v])) idem = false;
            if (!(f[v] == Mat::identity(f[v].rows))) identity = false;
        }
        if (idem && !identity) return true;
    }
    return false;
}

}  // namespace

bool is_indecomposable(const Representation& m, const Guards& guards) {
    if (qv::dim_is_zero(m.dim)) return false;  // zero module
    const auto& F = *m.field;
    HomSpace end = hom_space(m, m);
    return !has_nontrivial_idempotent(F, m, end, guards);
}

Representation base_change(const Representation& m, const gf::FieldPtr& big) {
    auto table = gf::embedding_table(*m.field, *big);
    Representation out = m;
    out.field = big;
    for (auto& mat : out.mats)
        for (auto& v : mat.a) v = table[v];
    return out;
}

bool is_absolutely_indecomposable(const Representation& m, const Guards& guards) {
    if (!is_indecomposable(m, guards)) return false;
    int d = hom_dim(m, m);
    // End/rad is a field of degree <= dim End over the ground field; if that
    // degree is some t >= 2, the module splits over the degree-t extension.
    for (int t = 2; t <= d; ++t) {
        auto big = gf::Field::make(m.field->p(), m.field->e() * t, guards.max_field);
        if (!is_indecomposable(base_change(m, big), guards)) return false;
    }
    return true;
}

// --- orbit census --------------------------------------------------------------

mpz_class general_linear_order(std::uint64_t field_size, int n) {
    mpz_class q(static_cast<unsigned long>(field_size));
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    mpz_class order = 1, qj = 1;
    for (int j = 0; j < n; ++j) {
        order *= (qn - qj);
        qj *= q;
    }
    return order;
}

mpz_class group_order(const Quiver& q, const DimVector& a, std::uint64_t field_size) {
    mpz_class order = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        order *= general_linear_order(field_size, a[i]);
    return order;
}

namespace {

// one group generator: acts at a single vertex
struct Generator {
    int vertex;
    Mat g, g_inv;
};

Mat companion_matrix(const gf::Field& F, const gf::Poly& monic) {
    const std::uint32_t n = static_cast<std::uint32_t>(monic.size() - 1);
    Mat c(n, n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;  // subdiagonal
    for (std::uint32_t i = 0; i < n; ++i) c.at(i, n - 1) = F.neg(monic[i]);
    return c;
}

Mat mat_inverse(const gf::Field& F, const Mat& m) {
    const std::uint32_t n = m.rows;
    Mat aug(n, 2 * n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    Echelon e = row_reduce(F, aug);
    if (e.rank < n) throw InternalError("singular matrix");
    Mat inv(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) inv.at(i, j) = e.m.at(i, n + j);
    return inv;
}

std::vector<Generator> group_generators(const Quiver& q, const DimVector& a,
                                        const gf::Field& F) {
    std::vector<Generator> gens;
    for (int v = 0; v < q.num_vertices(); ++v) {
        const int n = a[v];
        if (n == 0) continue;
        if (n == 1) {
            if (F.size() == 2) continue;  // GL_1(F_2) is trivial
            Mat g(1, 1);
            g.at(0, 0) = F.primitive_element();
            gens.push_back({v, g, mat_inverse(F, g)});
            continue;
        }
        // Singer cycle: companion matrix of a primitive polynomial.
        Mat s = companion_matrix(F, gf::find_primitive_poly(F, n));
        gens.push_back({v, s, mat_inverse(F, s)});
        // Both corner transvections.  A Singer cycle plus one transvection can
        // land inside the semilinear normalizer for some (n, q); the opposite
        // transvection never does, so the three together generate GL_n.
        Mat t1 = Mat::identity(n);
        t1.at(0, 1) = 1;
        gens.push_back({v, t1, mat_inverse(F, t1)});
        Mat t2 = Mat::identity(n);
        t2.at(1, 0) = 1;
        gens.push_back({v, t2, mat_inverse(F, t2)});
    }
    return gens;
}

}  // namespace

int Census::classify(const Representation& r) const {
    return table_[encode_point(r)];
}

int Census::class_by_min_index(std::uint64_t index) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), index,
                               [](const IsoClass& c, std::uint64_t v) { return c.min_index < v; });
    if (it == classes.end() || it->min_index != index) return -1;
    return static_cast<int>(it - classes.begin());
}

Census orbit_census(const Quiver& q, const DimVector& a, gf::FieldPtr f, const Guards& guards) {
    qv::check_dim(q, a);
    Census census;
    census.quiver = &q;
    census.field = f;
    census.alpha = a;
    census.num_points = point_count(q, a, *f, guards.max_points);
    census.group_order = group_order(q, a, f->size());

    const auto& F = *f;
    const std::uint64_t qs = F.size();
    const std::size_t num_arrows = q.arrows.size();

    // entry layout: per-arrow offsets into the flat tuple
    std::vector<std::size_t> arrow_off(num_arrows + 1, 0);
    for (std::size_t hi = 0; hi < num_arrows; ++hi)
        arrow_off[hi + 1] =
            arrow_off[hi] + std::size_t(a[q.arrows[hi].tgt]) * a[q.arrows[hi].src];
    const std::size_t D = arrow_off[num_arrows];

    constexpr std::uint16_t kUnset = 0xFFFF;
    census.table_.assign(census.num_points, kUnset);

    auto gens = group_generators(q, a, F);

    // flat work buffers reused across the whole run
    std::vector<std::uint32_t> stack;  // tuples, D entries each
    std::vector<std::uint32_t> cur(D), img(D), scratch(D);

    auto encode = [&](const std::uint32_t* t) {
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < D; ++k) idx = idx * qs + t[k];
        return idx;
    };
    auto decode = [&](std::uint64_t idx, std::uint32_t* t) {
        for (std::size_t k = D; k-- > 0;) {
            t[k] = static_cast<std::uint32_t>(idx % qs);
            idx /= qs;
        }
    };

    // y_h = g x_h at the target, y_h = x_h g^{-1} at the source (both when loop)
    auto apply_gen = [&](const Generator& gen, const std::uint32_t* src, std::uint32_t* dst) {
        std::copy(src, src + D, dst);
        for (std::size_t hi = 0; hi < num_arrows; ++hi) {
            const auto& h = q.arrows[hi];
            const int rows = a[h.tgt], cols = a[h.src];
            if (rows == 0 || cols == 0) continue;
            std::uint32_t* block = dst + arrow_off[hi];
            std::uint32_t* tmp = scratch.data() + arrow_off[hi];
            const std::size_t block_len = std::size_t(rows) * cols;
            if (h.tgt == gen.vertex) {
                // block <- g * block
                std::fill(tmp, tmp + block_len, 0u);
                for (int i = 0; i < rows; ++i)
                    for (int k = 0; k < rows; ++k) {
                        std::uint32_t gik = gen.g.at(i, k);
                        if (!gik) continue;
                        for (int j = 0; j < cols; ++j) {
                            std::uint32_t prod = F.mul(gik, block[std::size_t(k) * cols + j]);
                            if (prod)
                                tmp[std::size_t(i) * cols + j] =
                                    F.add(tmp[std::size_t(i) * cols + j], prod);
                        }
                    }
                std::copy(tmp, tmp + block_len, block);
            }
            if (h.src == gen.vertex) {
                // block <- block * g^{-1}
                std::fill(tmp, tmp + block_len, 0u);
                for (int i = 0; i < rows; ++i)
                    for (int k = 0; k < cols; ++k) {
                        std::uint32_t bik = block[std::size_t(i) * cols + k];
                        if (!bik) continue;
                        for (int j = 0; j < cols; ++j) {
                            std::uint32_t prod = F.mul(bik, gen.g_inv.at(k, j));
                            if (prod)
                                tmp[std::size_t(i) * cols + j] =
                                    F.add(tmp[std::size_t(i) * cols + j], prod);
                        }
                    }
                std::copy(tmp, tmp + block_len, block);
            }
        }
    };

    for (std::uint64_t seed = 0; seed < census.num_points; ++seed) {
        if (census.table_[seed] != kUnset) continue;
        const int cls = static_cast<int>(census.classes.size());
        if (cls >= 0xFFFF) throw InternalError("more than 65534 classes in one census");
        census.table_[seed] = static_cast<std::uint16_t>(cls);

        std::uint64_t orbit = 1;
        stack.clear();
        decode(seed, cur.data());
        stack.insert(stack.end(), cur.begin(), cur.end());

        while (!stack.empty()) {
            std::copy(stack.end() - D, stack.end(), cur.begin());
            stack.resize(stack.size() - D);
            for (const auto& gen : gens) {
                apply_gen(gen, cur.data(), img.data());
                std::uint64_t idx = encode(img.data());
                if (census.table_[idx] == kUnset) {
                    census.table_[idx] = static_cast<std::uint16_t>(cls);
                    ++orbit;
                    stack.insert(stack.end(), img.begin(), img.end());
                }
            }
        }

        IsoClass ic;
        ic.min_index = seed;
        ic.orbit_size = orbit;
        mpz_class rem;
        mpz_class orb(static_cast<unsigned long>(orbit));
        mpz_fdiv_qr(ic.aut.get_mpz_t(), rem.get_mpz_t(), census.group_order.get_mpz_t(),
                    orb.get_mpz_t());
        if (rem != 0)
            throw InternalError("orbit size does not divide |G^F| in census " +
                                qv::dim_to_string(a));
        ic.canonical = decode_point(q, f, a, seed);
        ic.id = qv::dim_to_string(a) + ":" + std::to_string(seed);
        census.classes.push_back(std::move(ic));
    }

    return census;
}

}  // namespace hallforge::rep
