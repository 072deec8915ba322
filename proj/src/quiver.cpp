#include "hallforge/quiver.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hallforge::qv {

int Quiver::vertex_index(const std::string& name) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertices[i] == name) return i;
    return -1;
}

Quiver quiver_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("quiver JSON parse error: ") + e.what());
    }
    Quiver q;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw InputError("quiver JSON needs a \"vertices\" array");
    for (const auto& v : j["vertices"]) q.vertices.push_back(v.get<std::string>());
    if (q.vertices.empty()) throw InputError("quiver has no vertices");
    for (std::size_t i = 0; i < q.vertices.size(); ++i)
        for (std::size_t k = i + 1; k < q.vertices.size(); ++k)
            if (q.vertices[i] == q.vertices[k])
                throw InputError("duplicate vertex id: " + q.vertices[i]);
    if (j.contains("arrows")) {
        for (const auto& a : j["arrows"]) {
            int s = q.vertex_index(a.at("src").get<std::string>());
            int t = q.vertex_index(a.at("tgt").get<std::string>());
            if (s < 0 || t < 0) throw InputError("arrow endpoint not a declared vertex");
            q.arrows.push_back({s, t});
        }
    }
    return q;
}

Quiver quiver_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open quiver file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return quiver_from_json(ss.str());
}

std::string quiver_to_json(const Quiver& q) {
    nlohmann::ordered_json j;
    j["vertices"] = q.vertices;
    j["arrows"] = nlohmann::ordered_json::array();
    for (const auto& a : q.arrows)
        j["arrows"].push_back({{"src", q.vertices[a.src]}, {"tgt", q.vertices[a.tgt]}});
    return j.dump();
}

Quiver make_a2() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{0, 1}};
    return q;
}

Quiver make_a3() {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{0, 1}, {1, 2}};
    return q;
}

Quiver make_jordan() {
    Quiver q;
    q.vertices = {"1"};
    q.arrows = {{0, 0}};
    return q;
}

Quiver make_kronecker() {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{0, 1}, {0, 1}};
    return q;
}

void check_dim(const Quiver& q, const DimVector& a) {
    if (static_cast<int>(a.size()) != q.num_vertices())
        throw QuiverMismatch("dimension vector length " + std::to_string(a.size()) +
                             " does not match quiver with " +
                             std::to_string(q.num_vertices()) + " vertices");
    for (int x : a)
        if (x < 0) throw InputError("negative dimension");
}

DimVector dim_add(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw QuiverMismatch("dimension vectors of different quivers");
    DimVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

DimVector dim_sub(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw QuiverMismatch("dimension vectors of different quivers");
    DimVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

bool dim_leq(const DimVector& a, const DimVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool dim_is_zero(const DimVector& a) {
    for (int x : a)
        if (x) return false;
    return true;
}

int dim_total(const DimVector& a) {
    int t = 0;
    for (int x : a) t += x;
    return t;
}

std::string dim_to_string(const DimVector& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a[i]);
    }
    return out;
}

DimVector dim_from_string(const std::string& s, int expected_len) {
    DimVector out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            throw InputError("bad dimension vector: " + s);
        }
    }
    if (out.empty()) throw InputError("empty dimension vector");
    if (expected_len >= 0 && static_cast<int>(out.size()) != expected_len)
        throw InputError("dimension vector \"" + s + "\" has wrong length");
    return out;
}

long long euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    check_dim(q, a);
    check_dim(q, b);
    long long val = 0;
    for (int i = 0; i < q.num_vertices(); ++i) val += 1ll * a[i] * b[i];
    for (const auto& h : q.arrows) val -= 1ll * a[h.src] * b[h.tgt];
    return val;
}

long long twist_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    check_dim(q, a);
    check_dim(q, b);
    long long val = 0;
    for (int i = 0; i < q.num_vertices(); ++i) val += 1ll * a[i] * b[i];
    for (const auto& h : q.arrows) val += 1ll * a[h.src] * b[h.tgt];
    return val;
}

std::pair<long long, long long> space_dims(const Quiver& q, const DimVector& a) {
    check_dim(q, a);
    long long e = 0, g = 0;
    for (const auto& h : q.arrows) e += 1ll * a[h.src] * a[h.tgt];
    for (int i = 0; i < q.num_vertices(); ++i) g += 1ll * a[i] * a[i];
    return {e, g};
}

std::vector<DimVector> splittings_below(const DimVector& a) {
    std::vector<DimVector> out;
    DimVector b(a.size(), 0);
    while (true) {
        out.push_back(b);
        std::size_t i = 0;
        while (i < a.size()) {
            if (b[i] < a[i]) {
                ++b[i];
                break;
            }
            b[i] = 0;
            ++i;
        }
        if (i == a.size()) break;
    }
    // lexicographic order, most significant component first
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hallforge::qv
