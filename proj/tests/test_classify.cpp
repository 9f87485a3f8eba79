#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "gnbg/classify.hpp"
#include "gnbg/generators.hpp"

using namespace gnbg;

namespace {

// Expected overview characteristics of f1..f24.
// sep: F / P / N; sym: S / A; lin: E super, L sub, l linear.
struct Row {
    const char* modality;  // U unimodal, S single-component multimodal, M multi-component
    bool local_optima;
    char sep;
    bool varying;
    char sym;
    bool ill;
    char lin;
    bool deceptive;
};

// clang-format off
const Row expected[24] = {
    {"U", false, 'F', false, 'S', false, 'E', false},  // f1
    {"U", false, 'F', false, 'S', false, 'L', false},  // f2
    {"U", false, 'F', false, 'S', true,  'E', false},  // f3
    {"U", false, 'N', false, 'S', false, 'E', false},  // f4
    {"U", false, 'N', false, 'S', true,  'L', false},  // f5
    {"U", false, 'N', false, 'S', true,  'L', false},  // f6
    {"S", true,  'F', false, 'S', false, 'E', false},  // f7
    {"S", true,  'F', false, 'S', false, 'E', false},  // f8
    {"S", true,  'F', false, 'S', false, 'E', false},  // f9
    {"S", true,  'F', false, 'A', false, 'E', false},  // f10
    {"S", true,  'N', false, 'A', false, 'E', false},  // f11
    {"S", true,  'P', false, 'A', false, 'E', false},  // f12
    {"S", true,  'N', false, 'S', false, 'E', false},  // f13
    {"S", true,  'N', false, 'A', true,  'E', false},  // f14
    {"S", true,  'N', false, 'S', true,  'L', false},  // f15
    {"M", false, 'N', false, 'A', false, 'E', true},   // f16
    {"M", false, 'N', true,  'A', true,  'E', true},   // f17
    {"M", true,  'N', true,  'A', false, 'E', true},   // f18
    {"M", true,  'N', true,  'A', false, 'E', true},   // f19
    {"M", true,  'N', true,  'A', false, 'L', true},   // f20
    {"M", true,  'N', true,  'A', false, 'l', true},   // f21
    {"M", true,  'N', true,  'A', false, 'E', true},   // f22
    {"M", true,  'N', true,  'A', false, 'L', false},  // f23
    {"M", true,  'N', true,  'A', true,  'L', true},   // f24
};
// clang-format on

char sep_code(Separability s) {
    switch (s) {
        case Separability::fully_separable: return 'F';
        case Separability::partially_separable: return 'P';
        case Separability::non_separable: return 'N';
    }
    return '?';
}

char lin_code(const std::optional<BasinLinearity>& b) {
    if (!b) return '?';
    switch (*b) {
        case BasinLinearity::sub_linear: return 'L';
        case BasinLinearity::linear: return 'l';
        case BasinLinearity::super_linear: return 'E';
    }
    return '?';
}

const char* mod_code(Modality m) {
    switch (m) {
        case Modality::unimodal: return "U";
        case Modality::multimodal_single_component: return "S";
        case Modality::multimodal_multiple_components: return "M";
    }
    return "?";
}

}  // namespace

class SuiteOverview : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SuiteOverview, MatchesExpectedTable) {
    for (int id = 1; id <= 24; ++id) {
        SCOPED_TRACE("f" + std::to_string(id));
        const auto ch = classify(suite_instance(id, GetParam()));
        const auto& e = expected[id - 1];
        EXPECT_STREQ(mod_code(ch.modality), e.modality);
        EXPECT_EQ(ch.basin_local_optima, e.local_optima);
        EXPECT_EQ(sep_code(ch.separability), e.sep);
        EXPECT_EQ(ch.varying_interactions, e.varying);
        EXPECT_EQ(ch.symmetric ? 'S' : 'A', e.sym);
        EXPECT_EQ(ch.ill_conditioned, e.ill);
        EXPECT_EQ(lin_code(ch.linearity), e.lin);
        EXPECT_EQ(ch.deceptive, e.deceptive);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SuiteOverview, ::testing::Values(0u, 42u, 2024u));

TEST(Classify, AxisAlignedAnglesDoNotCouple) {
    auto p = ComponentParams{};
    p.center.assign(3, 0.0);
    p.h_diag = {1, 2, 3};
    ThetaSpec th(3);
    th.set(0, 1, std::numbers::pi / 2);
    p.theta = th;
    const ProblemInstance inst({-1, -1, -1}, {1, 1, 1}, {Component(p)});
    EXPECT_EQ(classify(inst).separability, Separability::fully_separable);
}

TEST(Classify, RawRotationFallsBackToMatrixPattern) {
    ThetaSpec th(4);
    th.set(0, 1, 0.3);
    ComponentParams p;
    p.center.assign(4, 0.0);
    p.h_diag = {1, 2, 3, 4};
    p.rotation = rotation_from_theta(th);
    const ProblemInstance inst(std::vector<double>(4, -1), std::vector<double>(4, 1), {Component(p)});
    const auto ch = classify(inst);
    EXPECT_EQ(ch.separability, Separability::partially_separable);
    ASSERT_EQ(ch.components[0].interactions.size(), 1u);
    EXPECT_EQ(ch.components[0].interactions[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Classify, MixedLinearity) {
    ComponentParams a, b;
    a.center = {0, 0};
    a.h_diag = {1, 1};
    a.lambda = 0.25;
    b = a;
    b.center = {50, 50};
    b.lambda = 1.0;
    b.sigma = 1;
    const ProblemInstance inst({-100, -100}, {100, 100}, {Component(a), Component(b)});
    EXPECT_FALSE(classify(inst).linearity.has_value());
}

TEST(Classify, ScenarioFlags) {
    EXPECT_EQ(classify(gen_linearity(0.5, {2, -100, 100, 0})).linearity, BasinLinearity::linear);
    EXPECT_EQ(classify(gen_conditioning(1e7, 0.4)).ill_conditioned, true);
    EXPECT_EQ(classify(gen_interaction({0.0, {}})).separability, Separability::fully_separable);
    EXPECT_EQ(classify(gen_interaction({1.0, {}})).separability, Separability::non_separable);
    EXPECT_EQ(classify(gen_multimodal(0.5, 10)).modality, Modality::multimodal_single_component);
}
