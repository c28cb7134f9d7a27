#pragma once

#include "quatlab/qmatrix.hpp"

#include <json.hpp>

#include <string>

namespace quatlab {

using json = nlohmann::json;

// Quaternion wire format: [a, b, c, d], each entry a number (float mode) or a
// string "p/q" (exact mode, bit-exact round trip).

inline json to_json(const Quaternion<double>& q) { return json::array({q.a, q.b, q.c, q.d}); }

inline json to_json(const Quaternion<Rat>& q) {
    return json::array({rat_to_string(q.a), rat_to_string(q.b), rat_to_string(q.c),
                        rat_to_string(q.d)});
}

inline Rat rat_from_json(const json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw std::invalid_argument("expected exact rational (string or integer)");
}

inline double double_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(rat_from_string(j.get<std::string>()));
    throw std::invalid_argument("expected numeric quaternion component");
}

template <class R>
Quaternion<R> quaternion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("quaternion must be a 4-element array");
    if constexpr (scalar_traits<R>::exact)
        return {rat_from_json(j[0]), rat_from_json(j[1]), rat_from_json(j[2]),
                rat_from_json(j[3])};
    else
        return {double_from_json(j[0]), double_from_json(j[1]), double_from_json(j[2]),
                double_from_json(j[3])};
}

// Matrix wire format: {"rows": n, "cols": m, "entries": [[a,b,c,d], ...]} row-major.

template <class R>
json to_json(const QMatrix<R>& A) {
    json entries = json::array();
    for (const auto& q : A.entries) entries.push_back(to_json(q));
    return json{{"rows", A.rows}, {"cols", A.cols}, {"entries", entries}};
}

template <class R>
QMatrix<R> qmatrix_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw std::invalid_argument("matrix object needs rows/cols/entries");
    QMatrix<R> A(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>());
    const auto& e = j["entries"];
    if (!e.is_array() || e.size() != A.rows * A.cols)
        throw std::invalid_argument("entries length must be rows*cols");
    for (std::size_t i = 0; i < e.size(); ++i) A.entries[i] = quaternion_from_json<R>(e[i]);
    return A;
}

}  // namespace quatlab
