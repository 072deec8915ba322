#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallforge/errors.hpp"

namespace hallforge::qv {

// Per-vertex dimensions, in the quiver's declared vertex order.
using DimVector = std::vector<int>;

struct Arrow {
    int src = 0, tgt = 0;
};

struct Quiver {
    std::vector<std::string> vertices;  // declaration order is canonical
    std::vector<Arrow> arrows;          // parallel arrows and loops allowed

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    bool has_loop_at(int v) const {
        for (const auto& h : arrows)
            if (h.src == v && h.tgt == v) return true;
        return false;
    }
    int vertex_index(const std::string& name) const;  // -1 when absent
};

// Parses {"vertices": [...], "arrows": [{"src":..,"tgt":..}, ...]}.
Quiver quiver_from_json(const std::string& json_text);
Quiver quiver_from_file(const std::string& path);
std::string quiver_to_json(const Quiver& q);

// convenience builders used all over the tests
Quiver make_a2();         // 1 -> 2
Quiver make_a3();         // 1 -> 2 -> 3
Quiver make_jordan();     // one vertex, one loop
Quiver make_kronecker();  // 1 => 2

void check_dim(const Quiver& q, const DimVector& a);
DimVector dim_add(const DimVector& a, const DimVector& b);
DimVector dim_sub(const DimVector& a, const DimVector& b);
bool dim_leq(const DimVector& a, const DimVector& b);  // componentwise
bool dim_is_zero(const DimVector& a);
int dim_total(const DimVector& a);
std::string dim_to_string(const DimVector& a);          // "1,1"
DimVector dim_from_string(const std::string& s, int expected_len = -1);

// <a,b> = sum_i a_i b_i - sum_h a_{s(h)} b_{t(h)}  (Euler-Ringel form)
long long euler_form(const Quiver& q, const DimVector& a, const DimVector& b);
// {a,b} = sum_i a_i b_i + sum_h a_{s(h)} b_{t(h)}
long long twist_form(const Quiver& q, const DimVector& a, const DimVector& b);
// (dim E_alpha, dim G_alpha)
std::pair<long long, long long> space_dims(const Quiver& q, const DimVector& a);

// All b with 0 <= b <= a componentwise, in lexicographic order.
std::vector<DimVector> splittings_below(const DimVector& a);

}  // namespace hallforge::qv
