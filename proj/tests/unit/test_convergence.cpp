#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "tgs/convergence.hpp"

using namespace tgs;

namespace {

RunConfig dx_study_config() {
    return parse_config(
        "[grid]\ncells_per_axis = 64\nL_box = 6\n"
        "[model]\nr = 0\n"
        "[initial]\npreset = barenblatt\nmass = 1\nt0 = 0.5\n"
        "[scheme]\nt_end = 0.6\n");
}

}  // namespace

TEST(ConvergeStudy, RejectsSetupsWithoutAnExactReference) {
    RunConfig cfg = dx_study_config();
    EXPECT_THROW(converge_study(cfg, ConvergeAxis::Dx, 2), ConfigError);  // too few levels

    RunConfig bumps = parse_config("[initial]\npreset = gaussian_bumps\n[model]\nr = 0\n");
    EXPECT_THROW(converge_study(bumps, ConvergeAxis::Dx, 3), ConfigError);

    RunConfig with_reactions = dx_study_config();
    with_reactions.model.r = 1.0;
    EXPECT_THROW(converge_study(with_reactions, ConvergeAxis::Dx, 3), ConfigError);

    RunConfig with_epsilon = dx_study_config();
    with_epsilon.scheme.epsilon = 0.01;
    EXPECT_THROW(converge_study(with_epsilon, ConvergeAxis::Dx, 3), ConfigError);

    RunConfig with_delta = dx_study_config();
    with_delta.scheme.delta = 0.01;
    EXPECT_THROW(converge_study(with_delta, ConvergeAxis::Dx, 3), ConfigError);
}

TEST(ConvergeStudy, GridAxisHalvesDxAndShrinksTheError) {
    const ConvergenceStudy study = converge_study(dx_study_config(), ConvergeAxis::Dx, 3);
    ASSERT_EQ(study.table.rows.size(), 3u);
    ASSERT_EQ(study.levels.size(), 3u);
    EXPECT_FALSE(study.table.rows[0].has_order);
    for (std::size_t k = 1; k < 3; ++k) {
        EXPECT_TRUE(study.table.rows[k].has_order);
        EXPECT_NEAR(study.table.rows[k - 1].param / study.table.rows[k].param, 2.0, 1e-12);
        EXPECT_LT(study.table.rows[k].l1_n, study.table.rows[k - 1].l1_n);
        EXPECT_GT(study.table.rows[k].order, 0.0);
    }
    for (const auto& row : study.table.rows) {
        EXPECT_GT(row.l1_n, 0.0);
        EXPECT_GT(row.l2_grad_p, 0.0);
    }
}

TEST(ConvergeStudy, RegularizationLadderComparesAgainstFinestLevel) {
    RunConfig cfg = parse_config(
        "[grid]\ncells_per_axis = 64\nL_box = 6\n"
        "[initial]\npreset = gaussian_bumps\n"
        "[scheme]\nt_end = 0.2\n");
    const ConvergenceStudy study = converge_study(cfg, ConvergeAxis::Epsilon, 3);
    // Three levels 1e-1, 1e-2, 1e-3: two comparison rows against the finest.
    ASSERT_EQ(study.table.rows.size(), 2u);
    EXPECT_NEAR(study.table.rows[0].param, 1e-1, 1e-15);
    EXPECT_NEAR(study.table.rows[1].param, 1e-2, 1e-15);
    EXPECT_LT(study.table.rows[1].l1_n, study.table.rows[0].l1_n);
    ASSERT_EQ(study.levels.size(), 3u);
    for (const auto& level : study.levels) EXPECT_EQ(level.at.size(), 8u);
}

TEST(ConvergeStudy, FloorLadderUsesItsOwnBaseValue) {
    RunConfig cfg = parse_config(
        "[grid]\ncells_per_axis = 64\nL_box = 6\n"
        "[initial]\npreset = gaussian_bumps\n"
        "[scheme]\nt_end = 0.1\n");
    const ConvergenceStudy study = converge_study(cfg, ConvergeAxis::Delta, 3);
    ASSERT_EQ(study.table.rows.size(), 2u);
    EXPECT_NEAR(study.table.rows[0].param, 1e-2, 1e-15);
    EXPECT_NEAR(study.table.rows[1].param, 1e-3, 1e-15);
}

TEST(ConvergeStudy, TextAndCsvRenderings) {
    ConvergenceTable table;
    table.axis = ConvergeAxis::Dx;
    ConvergenceRow a;
    a.param = 0.1;
    a.l1_n = 2e-2;
    a.l2_grad_p = 3e-2;
    ConvergenceRow b = a;
    b.param = 0.05;
    b.l1_n = 1e-2;
    b.order = 1.0;
    b.has_order = true;
    table.rows = {a, b};

    const std::string text = to_text(table);
    EXPECT_NE(text.find("axis: dx"), std::string::npos);
    EXPECT_NE(text.find("order"), std::string::npos);

    const std::string path = "convergence_test.csv";
    write_convergence_csv(table, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "dx,l1_n,l2_grad_p,order");
    std::string row1, row2;
    std::getline(in, row1);
    std::getline(in, row2);
    EXPECT_EQ(row1.back(), ',');  // first row has no order entry
    EXPECT_NE(row2.find("1"), std::string::npos);
    std::remove(path.c_str());

    EXPECT_THROW(write_convergence_csv(table, "/no/such/dir/c.csv"), IoError);
}
