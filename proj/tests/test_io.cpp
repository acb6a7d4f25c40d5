#include <catch2/catch_amalgamated.hpp>
#include <fstream>

#include "qclab/json_io.hpp"

using namespace qclab;

TEST_CASE("polygon JSON round trip") {
    Polygon P = make_polygon({cplx(0, 0), cplx(2, 0.5), cplx(1.5, 2), cplx(-0.3, 1)});
    json j = to_json(P);
    Polygon Q = polygon_from_json(j);
    REQUIRE(Q.size() == P.size());
    for (std::size_t k = 0; k < P.size(); ++k)
        CHECK(std::abs(P.vertices[k] - Q.vertices[k]) < 1e-15);
}

TEST_CASE("malformed polygon JSON is rejected") {
    CHECK_THROWS(polygon_from_json(json::parse("{\"verts\": []}")));
    CHECK_THROWS(polygon_from_json(json::parse("{\"vertices\": [[1,2],[3]]}")));
    CHECK_THROWS(polygon_from_json(json::parse("[1,2,3]")));
}

TEST_CASE("Grunsky matrix JSON round trip") {
    GrunskyMatrix G;
    G.N = 2;
    G.provenance = "test";
    G.beta.resize(2, 2);
    G.beta << cplx(0.1, 0.2), cplx(0.3, -0.4), cplx(0.3, -0.4), cplx(0.0, 0.5);
    GrunskyMatrix H = grunsky_from_json(to_json(G));
    CHECK(H.N == 2);
    CHECK(H.provenance == "test");
    CHECK((H.beta - G.beta).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("canonical polygon string is rotation invariant") {
    Polygon A = make_polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)});
    Polygon B = make_polygon({cplx(1, 1), cplx(0, 1), cplx(0, 0), cplx(1, 0)});
    CHECK(canonical_polygon_string(A) == canonical_polygon_string(B));
    CHECK(cache_key(A, "opts") == cache_key(B, "opts"));
    // sub-rounding perturbations hash identically
    Polygon C = make_polygon({cplx(1e-14, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)});
    CHECK(cache_key(A, "opts") == cache_key(C, "opts"));
    // different options give different keys
    CHECK(cache_key(A, "opts") != cache_key(A, "other"));
}

TEST_CASE("fixed-format doubles are stable") {
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(1.0 / 3.0) == fmt_double(1.0 / 3.0));
    CHECK(fmt_double(0.0) == "0");
}
