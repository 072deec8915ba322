#include "hallforge/io.hpp"

namespace hallforge::io {

std::string element_str(const hall::Element& e) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : e) {
        if (!out.empty()) out += " + ";
        if (c == hall::Coef::one(c.q()))
            out += "[" + k.id() + "]";
        else
            out += "(" + c.to_string() + ")*[" + k.id() + "]";
    }
    return out;
}

std::string tensor2_str(const hall::Tensor2& t) {
    if (t.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : t) {
        if (!out.empty()) out += " + ";
        std::string basis = "[" + k.first.id() + "]x[" + k.second.id() + "]";
        if (c == hall::Coef::one(c.q()))
            out += basis;
        else
            out += "(" + c.to_string() + ")*" + basis;
    }
    return out;
}

std::string tensorr_str(const hall::TensorR& t) {
    if (t.empty()) return "0";
    std::string out;
    for (const auto& [legs, c] : t) {
        if (!out.empty()) out += " + ";
        std::string basis;
        for (const auto& k : legs) {
            if (!basis.empty()) basis += "x";
            basis += "[" + k.id() + "]";
        }
        if (c == hall::Coef::one(c.q()))
            out += basis;
        else
            out += "(" + c.to_string() + ")*" + basis;
    }
    return out;
}

json coef_json(const hall::Coef& c) {
    json j;
    j["a"] = c.a().get_str();
    j["b"] = c.b().get_str();
    return j;
}

hall::Coef coef_from_json(const json& j, std::uint64_t q) {
    mpq_class a(j.at("a").get<std::string>());
    mpq_class b(j.at("b").get<std::string>());
    a.canonicalize();
    b.canonicalize();
    return hall::Coef(a, b, q);
}

json element_json(const hall::Element& e) {
    json arr = json::array();
    for (const auto& [k, c] : e) {
        json row;
        row["class"] = k.id();
        row["a"] = c.a().get_str();
        row["b"] = c.b().get_str();
        arr.push_back(row);
    }
    return arr;
}

hall::Element element_from_json(const json& j, std::uint64_t q) {
    hall::Element out;
    for (const auto& row : j) {
        std::string id = row.at("class").get<std::string>();
        auto colon = id.find(':');
        if (colon == std::string::npos) throw InputError("bad class id in element JSON: " + id);
        hall::Key k;
        k.dim = qv::dim_from_string(id.substr(0, colon));
        k.min_index = std::stoull(id.substr(colon + 1));
        mpq_class a(row.at("a").get<std::string>());
        mpq_class b(row.at("b").get<std::string>());
        a.canonicalize();
        b.canonicalize();
        hall::Coef c(a, b, q);
        if (!c.is_zero()) out.emplace(k, c);
    }
    return out;
}

}  // namespace hallforge::io
