#include <cmath>

#include <gtest/gtest.h>

#include "gnbg/generators.hpp"
#include "gnbg/io.hpp"

using namespace gnbg;

namespace {

json doc_for(int id) { return instance_to_json(suite_instance(id, 5)); }

std::string field_of(const json& j) {
    try {
        instance_from_json(j);
    } catch (const ParseError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(InstanceJson, RoundTripEvaluatesIdentically) {
    for (int id : {1, 6, 12, 15, 21, 24}) {
        const auto inst = suite_instance(id, 5);
        const auto back = parse_instance(serialize_instance(inst));
        EXPECT_EQ(back, inst) << id;
        auto rng = Rng::stream(id, "probe");
        std::vector<double> x(30);
        for (int k = 0; k < 100; ++k) {
            for (auto& v : x) v = rng.uniform(-100, 100);
            EXPECT_EQ(inst(x), back(x));
        }
    }
}

TEST(InstanceJson, SerializationIsStable) {
    const auto s = serialize_instance(suite_instance(17, 3));
    EXPECT_EQ(serialize_instance(parse_instance(s)), s);
}

TEST(InstanceJson, IndicesAreOneBased) {
    const auto j = doc_for(5);
    const auto& t = j["components"][0]["theta"];
    ASSERT_EQ(t.size(), 29u);
    EXPECT_GE(t[0]["p"].get<int>(), 1);
    EXPECT_EQ(t[28]["q"].get<int>(), 30);
}

TEST(InstanceJson, RawRotationField) {
    ThetaSpec th(3);
    th.set(0, 2, 0.4);
    ComponentParams p;
    p.center = {0, 0, 0};
    p.h_diag = {1, 2, 3};
    p.rotation = rotation_from_theta(th);
    const ProblemInstance inst({-1, -1, -1}, {1, 1, 1}, {Component(p)});
    const auto j = instance_to_json(inst);
    ASSERT_TRUE(j["components"][0].contains("rotation"));
    EXPECT_EQ(instance_from_json(j), inst);
}

TEST(InstanceJson, RejectsInvalidFields) {
    auto j = doc_for(1);
    j["components"][0]["h_diag"][4] = 0.0;
    EXPECT_EQ(field_of(j), "$.components[0].h_diag[4]");

    j = doc_for(4);
    j["components"][0]["theta"][0]["p"] = 3;
    j["components"][0]["theta"][0]["q"] = 2;
    EXPECT_EQ(field_of(j), "$.components[0].theta[0]");

    j = doc_for(1);
    j["format_version"] = "2.0";
    EXPECT_EQ(field_of(j), "$.format_version");

    j = doc_for(1);
    j["components"][0].erase("lambda");
    EXPECT_EQ(field_of(j), "$.components[0].lambda");

    j = doc_for(1);
    j["components"][0]["m"].push_back(1.0);
    EXPECT_EQ(field_of(j), "$.components[0].m");

    j = doc_for(1);
    j["components"][0]["omega"][2] = -1;
    EXPECT_EQ(field_of(j), "$.components[0].omega[2]");

    j = doc_for(1);
    j["components"][0]["m"][0] = 150.0;
    EXPECT_EQ(field_of(j), "$");

    EXPECT_THROW(parse_instance("{not json"), ParseError);
}

TEST(InstanceJson, RejectsNonOrthogonalRotation) {
    auto j = doc_for(1);
    j["components"][0].erase("theta");
    json rows = json::array();
    for (int r = 0; r < 30; ++r) rows.push_back(std::vector<double>(30, r == 0 ? 1.0 : 0.0));
    j["components"][0]["rotation"] = rows;
    EXPECT_EQ(field_of(j), "$.components[0].rotation");
}

TEST(Grid, SphereCorners) {
    const auto inst = gen_linearity(1.0, {2, -100, 100, 0});
    const auto g = export_grid(inst, 0, 1, 3, {0, 0});
    ASSERT_EQ(g.values.size(), 3u);
    EXPECT_EQ(g.values[0][0], 20000.0);
    EXPECT_EQ(g.values[2][2], 20000.0);
    EXPECT_EQ(g.values[1][1], 0.0);
    EXPECT_EQ(g.values[0][1], 10000.0);
}

TEST(Grid, ResolutionTwoIsCorners) {
    const auto inst = suite_instance(4, 0);
    const auto g = export_grid(inst, 3, 7, 2);
    ASSERT_EQ(g.values.size(), 2u);
    std::vector<double> x = inst.optimum_position();
    x[3] = 100;
    x[7] = -100;
    EXPECT_EQ(g.values[1][0], inst(x));
}

TEST(Grid, MinimumOnNodeEqualsSigma) {
    ComponentParams p;
    p.center = {0, 50};
    p.h_diag = {1, 1};
    p.sigma = -3;
    const ProblemInstance inst({-100, -100}, {100, 100}, {Component(p)});
    const auto g = export_grid(inst, 0, 1, 5, {0, 0});
    double lo = INFINITY;
    for (const auto& row : g.values)
        for (double v : row) lo = std::min(lo, v);
    EXPECT_EQ(lo, -3.0);
}

TEST(Grid, Validation) {
    const auto inst = gen_linearity(1.0, {3, -1, 1, 0});
    EXPECT_THROW(export_grid(inst, 0, 0, 5), InvalidArgument);
    EXPECT_THROW(export_grid(inst, 0, 3, 5), InvalidArgument);
    EXPECT_THROW(export_grid(inst, 0, 1, 1), InvalidArgument);
    EXPECT_EQ(grid_to_json(export_grid(inst, 0, 2, 4)).dump(), grid_to_json(export_grid(inst, 0, 2, 4)).dump());
}

TEST(ReportJson, NullsForMissingSuccess) {
    ExperimentReport rep;
    rep.milestones = {{10, 1.0, 0.0}};
    const auto j = report_to_json(rep);
    EXPECT_TRUE(j["mean_fe_success"].is_null());
    EXPECT_TRUE(j["knob"].is_null());
}
