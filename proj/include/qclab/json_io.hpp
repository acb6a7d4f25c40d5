#ifndef QCLAB_JSON_IO_HPP
#define QCLAB_JSON_IO_HPP

// JSON (de)serialization of the core value types, canonical polygon hashing
// for the result cache, and deterministic number formatting for CSV output.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qclab/errors.hpp"
#include "qclab/fredholm.hpp"
#include "qclab/grunsky.hpp"
#include "qclab/polygon.hpp"
#include "qclab/scmap.hpp"
#include "qclab/schwarzian.hpp"

namespace qclab {

using nlohmann::json;

// Fixed-format doubles so identical values always serialize identically.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline Polygon polygon_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw std::runtime_error("polygon JSON must be {\"vertices\": [[x,y],...]}");
    std::vector<cplx> v;
    for (const auto& p : j["vertices"]) {
        if (!p.is_array() || p.size() != 2)
            throw std::runtime_error("vertex entries must be [x, y] pairs");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return make_polygon(std::move(v));
}

inline Polygon load_polygon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);  // parse_error propagates
    return polygon_from_json(j);
}

inline json to_json(const Polygon& P) {
    json v = json::array();
    for (const auto& p : P.vertices) v.push_back({p.real(), p.imag()});
    return {{"vertices", v}, {"beta", P.beta}, {"alphaExt", P.alpha_ext}};
}

inline json to_json(const ScExteriorMap& M) {
    return {{"thetas", M.thetas},
            {"alphaExt", M.alpha_ext},
            {"d0", {M.d0.real(), M.d0.imag()}},
            {"d1", {M.d1.real(), M.d1.imag()}},
            {"residuals", {{"solver", M.residual}}},
            {"crowdingWarning", M.crowdingWarning}};
}

inline json to_json(const GrunskyMatrix& G) {
    json rows = json::array();
    for (int m = 0; m < G.N; ++m)
        for (int n = 0; n < G.N; ++n)
            rows.push_back({G.beta(m, n).real(), G.beta(m, n).imag()});
    return {{"N", G.N}, {"beta", rows}, {"provenance", G.provenance}};
}

inline GrunskyMatrix grunsky_from_json(const json& j) {
    GrunskyMatrix G;
    G.N = j.at("N").get<int>();
    G.provenance = j.at("provenance").get<std::string>();
    G.beta.resize(G.N, G.N);
    const auto& rows = j.at("beta");
    for (int m = 0; m < G.N; ++m)
        for (int n = 0; n < G.N; ++n) {
            const auto& e = rows.at(m * G.N + n);
            G.beta(m, n) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return G;
}

inline json to_json(const FredholmSpectrum& S) {
    return {{"eigenvalues", S.eigenvalues},
            {"invRho", S.invRho},
            {"dropped", S.dropped},
            {"meshParams",
             {{"panels", S.meshParams.panels},
              {"grading", S.meshParams.grading},
              {"nodes", S.meshParams.nodes}}}};
}

inline json to_json(const SchwarzianData& D, const R0Roots& r0) {
    return {{"a", D.a},
            {"alphaInt", D.alphaInt},
            {"C", D.C},
            {"Cpair", D.Cpair},
            {"r0", r0.inclusive},
            {"r0Exclusive", r0.exclusive}};
}

// Canonical form for cache keys: counterclockwise orientation (make_polygon
// already enforces it), vertex list rotated so the lexicographically smallest
// rounded vertex comes first, coordinates rounded to 1e-12.
inline std::string canonical_polygon_string(const Polygon& P) {
    const std::size_t n = P.size();
    auto rounded = [&](std::size_t j) {
        double x = std::round(P.vertices[j].real() * 1e12) / 1e12;
        double y = std::round(P.vertices[j].imag() * 1e12) / 1e12;
        return std::pair<double, double>(x, y);
    };
    std::size_t start = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (rounded(j) < rounded(start)) start = j;
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
        auto [x, y] = rounded((start + k) % n);
        s += fmt_double(x) + "," + fmt_double(y) + ";";
    }
    return s;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string cache_key(const Polygon& P, const std::string& opts) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_polygon_string(P) + "|" + opts)));
    return buf;
}

}  // namespace qclab

#endif
