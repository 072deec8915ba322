#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hallforge/gf.hpp"
#include "hallforge/matrix.hpp"
#include "hallforge/quiver.hpp"

namespace hallforge::rep {

struct Guards {
    std::uint64_t max_points = 10'000'000;    // E_alpha enumeration limit
    std::uint64_t max_hom_scan = 1'000'000;   // Hom-space element scans
    std::uint64_t max_field = gf::kDefaultFieldGuard;
};

// One point of E_alpha: a matrix per arrow, shapes a_{t(h)} x a_{s(h)}.
struct Representation {
    const qv::Quiver* quiver = nullptr;
    gf::FieldPtr field;
    qv::DimVector dim;
    std::vector<Mat> mats;

    static Representation zero(const qv::Quiver& q, gf::FieldPtr f, qv::DimVector a);
};

// --- point codec -----------------------------------------------------------
// Entries are ordered by: arrow declaration order, then row-major inside each
// matrix.  The point index enumerates entry tuples lexicographically (first
// entry most significant), matching the field's element order, so index 0 is
// the zero representation and "minimal point" means lexicographically least.

std::uint64_t e_dim(const qv::Quiver& q, const qv::DimVector& a);
std::uint64_t point_count(const qv::Quiver& q, const qv::DimVector& a, const gf::Field& f,
                          std::uint64_t guard);  // throws SizeGuardExceeded
std::uint64_t encode_point(const Representation& r);
Representation decode_point(const qv::Quiver& q, gf::FieldPtr f, const qv::DimVector& a,
                            std::uint64_t index);

void enumerate_reps(const qv::Quiver& q, const qv::DimVector& a, gf::FieldPtr f,
                    const Guards& guards,
                    const std::function<void(const Representation&)>& fn);

// --- Hom / Ext --------------------------------------------------------------

struct HomSpace {
    int dim = 0;
    // basis[k][i] is the vertex-i block of the k-th basis morphism,
    // a (dim N_i) x (dim M_i) matrix for f : M -> N.
    std::vector<std::vector<Mat>> basis;
};

HomSpace hom_space(const Representation& m, const Representation& n);
// (dim Hom, dim Ext^1) off one elimination: Hom = ker, Ext = coker of
// f |-> (f_{t(h)} x_h - y_h f_{s(h)})_h.
std::pair<int, int> hom_ext_dims(const Representation& m, const Representation& n);
int hom_dim(const Representation& m, const Representation& n);
// dim Ext^1 = dim Hom - <dim M, dim N>  (hereditary)
int ext_dim(const Representation& m, const Representation& n);
// independent route: corank of the same linear map
int ext_dim_cokernel(const Representation& m, const Representation& n);

bool is_isomorphic(const Representation& m, const Representation& n, const Guards& guards);

// entrywise (p^e_base)^r power; e_base = e of the run's base field F_q
Representation frobenius_twist(const Representation& m, std::uint64_t r, std::uint32_t e_base);

// M lives over GF(p, e_base*s); smallest r with M =~ M^{[q^r]}, q = p^e_base.
std::uint32_t minimal_field_of_definition(const Representation& m, std::uint32_t e_base,
                                          std::uint32_t s, const Guards& guards);

// no idempotents in End(M) besides 0 and 1 (exhaustive End scan)
bool is_indecomposable(const Representation& m, const Guards& guards);
// still indecomposable over GF(p, e*t) for every t = 1..dim End(M)
bool is_absolutely_indecomposable(const Representation& m, const Guards& guards);

// reinterpret over an extension field via the canonical embedding
Representation base_change(const Representation& m, const gf::FieldPtr& big);

// --- orbit census ------------------------------------------------------------

struct IsoClass {
    std::string id;            // "<alpha>:<canonical point index>"
    std::uint64_t min_index = 0;
    std::uint64_t orbit_size = 0;
    mpz_class aut;             // a_X = |G^F| / orbit
    Representation canonical;  // decoded minimal point
};

class Census {
public:
    const qv::Quiver* quiver = nullptr;
    gf::FieldPtr field;
    qv::DimVector alpha;
    std::uint64_t num_points = 0;
    mpz_class group_order;
    std::vector<IsoClass> classes;  // ascending min_index

    int class_of_point(std::uint64_t index) const { return table_[index]; }
    int classify(const Representation& r) const;          // by point lookup
    int class_by_min_index(std::uint64_t index) const;    // -1 when not canonical
    const IsoClass& at(int c) const { return classes[c]; }
    int size() const { return static_cast<int>(classes.size()); }

    friend Census orbit_census(const qv::Quiver&, const qv::DimVector&, gf::FieldPtr,
                               const Guards&);

private:
    std::vector<std::uint16_t> table_;  // point index -> class
};

// Partitions E_alpha^F into G_alpha^F-orbits by closing under a generating
// set of the group (Singer cycle plus both corner transvections per GL
// factor, a primitive scalar for GL_1).  Canonical representative = least
// point index; a_X = |G^F| / orbit size, with integrality enforced.
Census orbit_census(const qv::Quiver& q, const qv::DimVector& a, gf::FieldPtr f,
                    const Guards& guards);

mpz_class general_linear_order(std::uint64_t field_size, int n);
mpz_class group_order(const qv::Quiver& q, const qv::DimVector& a, std::uint64_t field_size);

}  // namespace hallforge::rep
