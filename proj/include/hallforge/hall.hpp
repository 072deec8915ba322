#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hallforge/coeff.hpp"
#include "hallforge/rep.hpp"

namespace hallforge::hall {

// A basis class of the Hall algebra: census class named by dimension vector
// plus canonical point index.  Ordering is (dim, index), the global output
// order.
struct Key {
    qv::DimVector dim;
    std::uint64_t min_index = 0;

    std::string id() const { return qv::dim_to_string(dim) + ":" + std::to_string(min_index); }
    friend bool operator<(const Key& x, const Key& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        return x.min_index < y.min_index;
    }
    friend bool operator==(const Key& x, const Key& y) {
        return x.dim == y.dim && x.min_index == y.min_index;
    }
};

using Element = std::map<Key, Coef>;
using Tensor2 = std::map<std::pair<Key, Key>, Coef>;
using TensorR = std::map<std::vector<Key>, Coef>;

void add_into(Element& e, const Key& k, const Coef& c);
void add_into(Tensor2& e, const std::pair<Key, Key>& k, const Coef& c);
void add_into(TensorR& e, const std::vector<Key>& k, const Coef& c);
Element scale(const Element& e, const Coef& c);
bool is_zero(const Element& e);

// Twisted-antipode exponent convention.  Iterated is the twist the iterated
// maps m^{t,r} (delta^{t,r}) actually produce, v^(2 sum_{i<j} <a_i,a_j>); the
// alternative keeps the diagonal i = j terms as well.  Only Iterated
// satisfies the antipode axiom; the other is kept for diagnostics.
enum class AntipodeConvention { Iterated, WithDiagonalTerms };

// Sub-quotient multiplicity table of one class L at a fixed sub-dimension:
// (quotient class, sub class) -> number of stable graded subspaces.
using SubQuotTable = std::map<std::pair<std::uint16_t, std::uint16_t>, std::uint64_t>;

// One Hall-algebra run: quiver + working field + guards, with memoized
// censuses, Hall numbers and Hom/Ext dimensions.  All accessors are
// thread-safe behind one lock; results never depend on call order.
class Context {
public:
    Context(qv::Quiver q, gf::FieldPtr f, rep::Guards guards = {});

    const qv::Quiver& quiver() const { return quiver_; }
    const gf::FieldPtr& field() const { return field_; }
    const rep::Guards& guards() const { return guards_; }
    std::uint64_t qsize() const { return field_->size(); }

    Coef coef(mpq_class r) const { return Coef::rational(std::move(r), qsize()); }
    Coef v_pow(long long n) const { return Coef::v_power(qsize(), n); }
    Coef czero() const { return Coef::zero(qsize()); }
    Coef cone() const { return Coef::one(qsize()); }

    const rep::Census& census(const qv::DimVector& a);
    Key unit();                       // class of the zero module
    Key simple(int vertex);           // vertex simple S_i
    Key key_of(const qv::DimVector& dim, int class_index);
    Key key_by_id(const std::string& id);  // throws UnknownClassId
    Key classify(const rep::Representation& r);
    const rep::IsoClass& iso_class(const Key& k);
    mpz_class aut(const Key& k);
    Element basis(const Key& k) { return Element{{k, cone()}}; }

    // F_{MN}^L: stable graded subspaces W of L with W ~ N and L/W ~ M
    std::uint64_t hall_number(const Key& m, const Key& n, const Key& l);
    // F^M_{M_1...M_r} via the filtration recursion
    mpz_class hall_number_multi(const std::vector<Key>& parts, const Key& m);
    const SubQuotTable& subquot_table(const Key& l, const qv::DimVector& sub_dim);

    // h_L^{MN} by Riedtmann-Peng (default route)
    mpq_class h_coef(const Key& l, const Key& m, const Key& n);
    mpq_class h_coef_multi(const Key& m, const std::vector<Key>& parts);
    // |D^F(alpha,beta)_L|: block-gluing count, the independent route
    std::uint64_t direct_ext_count(const Key& m, const Key& n, const Key& l);
    const std::map<std::uint16_t, std::uint64_t>& gluing_histogram(const Key& m, const Key& n);
    // h_L^{MN} = direct_ext_count / q^{sum_i alpha_i beta_i}
    mpq_class h_coef_direct(const Key& l, const Key& m, const Key& n);

    Element multiply(const Element& x, const Element& y, bool twisted);
    Element multiply_many(const std::vector<Element>& factors, bool twisted);
    Tensor2 comultiply(const Element& x, bool twisted);
    // r applications of the comultiplication, acting on the last leg: r+1 legs
    TensorR r_fold_comultiply(const Element& x, int r, bool twisted);

    Element antipode(const Element& x, bool twisted,
                     AntipodeConvention conv = AntipodeConvention::Iterated);
    // literal alternating-sum formula; reference/diagnostic route
    Element antipode_formula(const Key& m, bool twisted, AntipodeConvention conv);

    Coef hopf_pairing(const Element& x, const Element& y);
    Coef hopf_pairing_tensor(const Tensor2& x, const Tensor2& y);

    std::pair<int, int> hom_ext(const Key& m, const Key& n);  // (Hom, Ext) by corank

private:
    const rep::Census& census_locked(const qv::DimVector& a);
    Element antipode_basis_locked(const Key& m, bool twisted);
    Tensor2 comultiply_key_locked(const Key& l, bool twisted);
    Element multiply_keys_locked(const Key& m, const Key& n, bool twisted);
    const SubQuotTable& subquot_table_locked(const Key& l, const qv::DimVector& sub_dim);
    mpz_class hall_multi_locked(const std::vector<Key>& parts, const Key& m);
    mpq_class h_locked(const Key& l, const Key& m, const Key& n);
    const rep::IsoClass& iso_locked(const Key& k);
    std::pair<int, int> hom_ext_locked(const Key& m, const Key& n);
    const std::map<std::uint16_t, std::uint64_t>& gluing_histogram_locked(const Key& m,
                                                                          const Key& n);

    qv::Quiver quiver_;
    gf::FieldPtr field_;
    rep::Guards guards_;

    mutable std::recursive_mutex mutex_;
    std::map<qv::DimVector, std::unique_ptr<rep::Census>> censuses_;
    std::map<std::pair<Key, qv::DimVector>, SubQuotTable> subquot_;
    std::map<std::pair<Key, Key>, std::pair<int, int>> homext_;
    std::map<std::pair<Key, Key>, std::map<std::uint16_t, std::uint64_t>> gluings_;
    std::map<std::pair<std::vector<Key>, Key>, mpz_class> multi_f_;
    std::map<std::pair<Key, bool>, Element> antipode_;
};

}  // namespace hallforge::hall
