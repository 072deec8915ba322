#pragma once

// Brute-force reference routes used only by tests.  Each oracle recomputes a
// quantity through machinery independent of the implementation path it
// checks: full group enumeration instead of generator closure, raw map
// counting instead of Gaussian elimination, point-level crossing/square
// enumeration instead of Hall-number formulas.

#include <cstdint>
#include <map>
#include <vector>

#include "hallforge/hall.hpp"
#include "hallforge/rep.hpp"

namespace oracles {

using namespace hallforge;

// dim Hom(M,N) by counting all intertwiners among the q^(sum a_i b_i) raw
// vertex-map tuples; no elimination involved.
inline int brute_hom_dim(const rep::Representation& m, const rep::Representation& n) {
    const auto& q = *m.quiver;
    const auto& F = *m.field;
    std::vector<std::pair<int, int>> vars;  // (vertex, flat entry)
    for (int v = 0; v < q.num_vertices(); ++v)
        for (int t = 0; t < m.dim[v] * n.dim[v]; ++t) vars.emplace_back(v, t);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= F.size();

    std::uint64_t solutions = 0;
    std::vector<std::uint32_t> vals(vars.size(), 0);
    while (true) {
        std::vector<Mat> f;
        std::size_t off = 0;
        for (int v = 0; v < q.num_vertices(); ++v) {
            Mat b(n.dim[v], m.dim[v]);
            for (auto& x : b.a) x = vals[off++];
            f.push_back(std::move(b));
        }
        bool ok = true;
        for (std::size_t hi = 0; hi < q.arrows.size() && ok; ++hi) {
            const auto& h = q.arrows[hi];
            Mat lhs = mat_mul(F, f[h.tgt], m.mats[hi]);
            Mat rhs = mat_mul(F, n.mats[hi], f[h.src]);
            if (!(lhs == rhs)) ok = false;
        }
        if (ok) ++solutions;
        std::size_t t = 0;
        while (t < vals.size()) {
            if (++vals[t] < F.size()) break;
            vals[t] = 0;
            ++t;
        }
        if (t == vals.size()) break;
        if (vals.empty()) break;
    }
    if (vals.empty()) solutions = 1;
    // solutions = q^dim
    int d = 0;
    while (solutions > 1) {
        solutions /= F.size();
        ++d;
    }
    return d;
}

// All invertible elements of GL_n(F), by filtering every matrix.
inline std::vector<Mat> all_gl(const gf::Field& F, int n) {
    std::vector<Mat> out;
    if (n == 0) {
        out.push_back(Mat(0, 0));
        return out;
    }
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i) total *= F.size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Mat m(n, n);
        std::uint64_t t = idx;
        for (int i = n * n; i-- > 0;) {
            m.a[i] = static_cast<std::uint32_t>(t % F.size());
            t /= F.size();
        }
        if (mat_invertible(F, m)) out.push_back(std::move(m));
    }
    return out;
}

struct BruteOrbit {
    std::uint64_t min_index;
    std::uint64_t size;
};

inline Mat brute_inverse(const gf::Field& F, const Mat& m) {
    Mat aug(m.rows, 2 * m.cols);
    for (std::uint32_t i = 0; i < m.rows; ++i) {
        for (std::uint32_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    auto e = row_reduce(F, aug);
    Mat inv(m.rows, m.cols);
    for (std::uint32_t i = 0; i < m.rows; ++i)
        for (std::uint32_t j = 0; j < m.cols; ++j) inv.at(i, j) = e.m.at(i, m.cols + j);
    return inv;
}

// Orbit partition by applying EVERY group element to every point.
inline std::vector<BruteOrbit> brute_census(const qv::Quiver& q, const qv::DimVector& a,
                                            const gf::FieldPtr& f) {
    const auto& F = *f;
    rep::Guards guards;
    std::uint64_t n = rep::point_count(q, a, F, guards.max_points);

    std::vector<std::vector<Mat>> gls, gls_inv;
    for (int v = 0; v < q.num_vertices(); ++v) {
        gls.push_back(all_gl(F, a[v]));
        std::vector<Mat> invs;
        for (const auto& g : gls.back()) invs.push_back(brute_inverse(F, g));
        gls_inv.push_back(std::move(invs));
    }

    std::vector<int> cls(n, -1);
    std::vector<BruteOrbit> orbits;
    std::vector<std::size_t> pick(q.num_vertices(), 0);
    for (std::uint64_t seed = 0; seed < n; ++seed) {
        if (cls[seed] >= 0) continue;
        int c = static_cast<int>(orbits.size());
        std::uint64_t count = 0;
        auto rep0 = rep::decode_point(q, f, a, seed);
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            // g . x with g = (pick), arrow h: g_t x_h g_s^{-1}
            rep::Representation img = rep0;
            for (std::size_t hi = 0; hi < q.arrows.size(); ++hi) {
                const auto& h = q.arrows[hi];
                img.mats[hi] = mat_mul(F, mat_mul(F, gls[h.tgt][pick[h.tgt]], rep0.mats[hi]),
                                       gls_inv[h.src][pick[h.src]]);
            }
            std::uint64_t idx = rep::encode_point(img);
            if (cls[idx] < 0) {
                cls[idx] = c;
                ++count;
            }
            std::size_t v = 0;
            while (v < pick.size()) {
                if (++pick[v] < gls[v].size()) break;
                pick[v] = 0;
                ++v;
            }
            if (v == pick.size()) break;
        }
        orbits.push_back({seed, count});
    }
    return orbits;
}

// |Q|: crossings of two short exact sequences through the same middle term,
// counted pointwise over E_gamma x Hom-scans.  Equals |G_gamma^F| times the
// Green-formula left side for (M,N) x (M',N').
inline mpz_class count_crossings(hall::Context& ctx, const hall::Key& mk, const hall::Key& nk,
                                 const hall::Key& mpk, const hall::Key& npk) {
    const auto& q = ctx.quiver();
    const auto& f = ctx.field();
    const auto& F = *f;
    qv::DimVector gamma = qv::dim_add(mk.dim, nk.dim);
    rep::Guards guards;

    auto count_pairs = [&](const rep::Representation& sub, const rep::Representation& total,
                           const rep::Representation& quot) -> std::uint64_t {
        // injections a : sub -> total whose cokernel is isomorphic to quot,
        // times the number of surjections total -> quot with kernel im(a)
        rep::HomSpace hs = rep::hom_space(sub, total);
        std::uint64_t pairs = 0;
        std::vector<std::uint32_t> coeffs(hs.dim, 0);
        std::uint64_t scans = 1;
        for (int i = 0; i < hs.dim; ++i) scans *= F.size();
        for (std::uint64_t it = 1; it < scans; ++it) {
            {
                std::size_t t = 0;
                while (t < coeffs.size()) {
                    if (++coeffs[t] < F.size()) break;
                    coeffs[t] = 0;
                    ++t;
                }
            }
            // assemble a and test injectivity vertexwise
            std::vector<Mat> amap;
            bool injective = true;
            for (int v = 0; v < q.num_vertices() && injective; ++v) {
                Mat acc(total.dim[v], sub.dim[v]);
                for (int k = 0; k < hs.dim; ++k)
                    if (coeffs[k]) acc = mat_add(F, acc, mat_scale(F, coeffs[k], hs.basis[k][v]));
                if (sub.dim[v] > 0 && mat_rank(F, acc) < static_cast<std::uint32_t>(sub.dim[v]))
                    injective = false;
                amap.push_back(std::move(acc));
            }
            if (!injective) continue;
            // cokernel representation: coordinates on a complement of im(a)
            rep::Representation coker = rep::Representation::zero(q, f, quot.dim);
            std::vector<Echelon> image_ech;
            std::vector<std::vector<int>> complement_cols;
            bool shapes_ok = true;
            for (int v = 0; v < q.num_vertices(); ++v) {
                // rows = images of sub basis (as row space)
                Mat rows(sub.dim[v], total.dim[v]);
                for (int r = 0; r < sub.dim[v]; ++r)
                    for (int c = 0; c < total.dim[v]; ++c) rows.at(r, c) = amap[v].at(c, r);
                auto e = row_reduce(F, rows);
                std::vector<int> comp;
                std::vector<bool> is_p(total.dim[v], false);
                for (auto c : e.pivot_cols) is_p[c] = true;
                for (int c = 0; c < total.dim[v]; ++c)
                    if (!is_p[c]) comp.push_back(c);
                if (static_cast<int>(comp.size()) != quot.dim[v]) shapes_ok = false;
                image_ech.push_back(std::move(e));
                complement_cols.push_back(std::move(comp));
            }
            if (!shapes_ok) continue;
            for (std::size_t hi = 0; hi < q.arrows.size(); ++hi) {
                const auto& h = q.arrows[hi];
                for (std::size_t jj = 0; jj < complement_cols[h.src].size(); ++jj) {
                    int col = complement_cols[h.src][jj];
                    std::vector<std::uint32_t> vec(total.dim[h.tgt]);
                    for (int r = 0; r < total.dim[h.tgt]; ++r)
                        vec[r] = total.mats[hi].at(r, col);
                    // reduce modulo the image at the target
                    const auto& e = image_ech[h.tgt];
                    for (std::uint32_t i = 0; i < e.rank; ++i) {
                        std::uint32_t c = vec[e.pivot_cols[i]];
                        if (!c) continue;
                        for (int j = 0; j < total.dim[h.tgt]; ++j)
                            vec[j] = F.sub(vec[j], F.mul(c, e.m.at(i, j)));
                    }
                    for (std::size_t rr = 0; rr < complement_cols[h.tgt].size(); ++rr)
                        coker.mats[hi].at(rr, jj) = vec[complement_cols[h.tgt][rr]];
                }
            }
            if (!rep::is_isomorphic(coker, quot, guards)) continue;
            // surjections with the given kernel = automorphisms of the quotient
            pairs += 1;
        }
        return pairs;
    };

    // #B-choices for a fixed injection image = |Aut(quot)|; aut counts from ctx
    mpz_class aut_m = ctx.aut(mk), aut_mp = ctx.aut(mpk);
    const auto& cm = ctx.census(mk.dim);
    const auto& cn = ctx.census(nk.dim);
    const auto& cmp = ctx.census(mpk.dim);
    const auto& cnp = ctx.census(npk.dim);
    rep::Representation rn = cn.classes[cn.class_by_min_index(nk.min_index)].canonical;
    rep::Representation rm = cm.classes[cm.class_by_min_index(mk.min_index)].canonical;
    rep::Representation rnp = cnp.classes[cnp.class_by_min_index(npk.min_index)].canonical;
    rep::Representation rmp = cmp.classes[cmp.class_by_min_index(mpk.min_index)].canonical;

    mpz_class total_count = 0;
    std::uint64_t npoints = rep::point_count(q, gamma, F, guards.max_points);
    for (std::uint64_t i = 0; i < npoints; ++i) {
        auto l = rep::decode_point(q, f, gamma, i);
        std::uint64_t inj1 = count_pairs(rn, l, rm);
        if (!inj1) continue;
        std::uint64_t inj2 = count_pairs(rnp, l, rmp);
        if (!inj2) continue;
        total_count += mpz_class(static_cast<unsigned long>(inj1)) * aut_m *
                       mpz_class(static_cast<unsigned long>(inj2)) * aut_mp;
    }
    return total_count;
}

}  // namespace oracles
