#include "doctest.h"
#include "test_helpers.hpp"
#include "wha/canonical.hpp"
#include "wha/instances.hpp"
#include "wha/io.hpp"

#include <nlohmann/json.hpp>

using namespace wha;

TEST_CASE("document shapes for the pair groupoid") {
    const std::string bytes = save(pair_groupoid_wha(2), {{"note", "fixture"}});
    const auto doc = nlohmann::json::parse(bytes);
    CHECK(doc["format_version"].get<int>() == kFormatVersion);
    CHECK(doc["algebra"]["blocks"] == nlohmann::json::array({2}));
    CHECK(doc["gauge"] == "identity");
    CHECK(doc["delta"].size() == 16);
    CHECK(doc["delta"][0].size() == 4);
    CHECK(doc["metadata"]["note"] == "fixture");
}

TEST_CASE("save/load round trip is bit exact") {
    for (const WeakHopf& w : {pair_groupoid_wha(3),
                              function_algebra_wha(FiniteGroupoid::cyclic_group(3)),
                              op_tensor_wha(BlockAlgebra({2}, "M2"))}) {
        const std::string first = save(w);
        const WeakHopf back = load(first);
        CHECK(save(back) == first);
        CHECK(back.delta.matrix() == w.delta.matrix());
        CHECK(back.kappa.matrix() == w.kappa.matrix());
        CHECK(back.eps.matrix() == w.eps.matrix());
    }
}

TEST_CASE("gauged structures round trip including the gauge") {
    const WeakHopf w = op_tensor_wha(BlockAlgebra({2}, "M2"));
    const WeakHopf d = deform(w, sample_admissible(w, 2).k);
    REQUIRE_FALSE(d.has_standard_gauge());
    const std::string bytes = save(d);
    const WeakHopf back = load(bytes);
    CHECK(back.gauge.to_vector() == d.gauge.to_vector());
    CHECK(save(back) == bytes);
}

TEST_CASE("malformed documents raise typed errors") {
    const std::string good = save(pair_groupoid_wha(2));
    CHECK_THROWS_AS((void)load(good.substr(0, good.size() / 2)), ParseError);
    CHECK_THROWS_AS((void)load("not json at all"), ParseError);

    auto doc = nlohmann::json::parse(good);
    doc["format_version"] = 99;
    CHECK_THROWS_AS((void)load(doc.dump()), UnsupportedVersion);

    auto short_delta = nlohmann::json::parse(good);
    short_delta["delta"].erase(0);
    CHECK_THROWS_AS((void)load(short_delta.dump()), ShapeMismatch);

    auto missing = nlohmann::json::parse(good);
    missing.erase("kappa");
    CHECK_THROWS_AS((void)load(missing.dump()), ParseError);
}

TEST_CASE("element round trip") {
    auto rng = wha::testing::rng_for(51);
    const BlockAlgebra a({2, 3});
    const AlgElement x = wha::testing::random_element(a, rng);
    const AlgElement back = load_element(save_element(x));
    CHECK(back.to_vector() == x.to_vector());
    CHECK_THROWS_AS((void)load_element("{}"), ParseError);
}

TEST_CASE("reports serialize with named residuals") {
    StructureReport rep;
    rep.tol = 1e-8;
    rep.add("alpha", 0.0);
    rep.add("beta", 0.5);
    const auto doc = nlohmann::json::parse(report_to_json(rep, rep.pass()));
    CHECK(doc["pass"] == false);
    CHECK(doc["residuals"]["beta"].get<double>() == 0.5);
}
