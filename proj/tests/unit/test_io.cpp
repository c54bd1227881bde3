#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tgs/io.hpp"
#include "tgs/scheme.hpp"

using namespace tgs;

namespace {

constexpr const char* kHeader =
    "t,mass,mass_bound,p_max,second_moment,entropy,entropy_diss_cum,"
    "w_minus_L2,w_minus_L3_cum,lap_L1,energy,energy_diss_cum,clamp_total";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

DiagnosticsSeries awkward_series() {
    DiagnosticsSeries series;
    DiagnosticsRecord r;
    r.t = 1.0 / 3.0;
    r.mass = std::sqrt(2.0);
    r.mass_bound = std::exp(1.0);
    r.p_max = 0.1;  // not representable exactly: exercises the digit count
    r.second_moment = 12345.678901234567;
    r.entropy = -2.5e-17;
    r.entropy_diss_cum = 7.0;
    r.w_minus_L2 = 0.0;
    r.w_minus_L3_cum = 1e300;
    r.lap_L1 = 1e-300;
    r.energy = 0.75;
    r.energy_diss_cum = 3.25;
    r.clamp_total = 4.9e-324;  // smallest subnormal still round-trips
    series.records.push_back(r);
    return series;
}

RunResult small_featureful_run() {
    Grid g{1, 64, 6.0};
    InitialData data;
    data.n1_0 = Field(g);
    data.n2_0 = Field(g);
    for (std::int64_t i = 0; i < g.total_cells(); ++i) {
        const double x = g.axis_center(static_cast<int>(i));
        data.n1_0[i] = 0.3 * std::exp(-0.5 * (x + 1.5) * (x + 1.5));
        data.n2_0[i] = 0.25 * std::exp(-0.5 * (x - 1.5) * (x - 1.5));
    }
    SchemeParams params;
    params.t_end = 0.2;
    params.epsilon = 0.01;
    params.delta = 1e-3;
    params.diag_every = 3;
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.4, 0.6);
    return run(data, params, model);
}

}  // namespace

TEST(DiagnosticsCsv, HeaderIsTheDocumentedColumnList) {
    const std::string csv = diagnostics_csv(DiagnosticsSeries{});
    ASSERT_FALSE(csv.empty());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kHeader);
}

TEST(DiagnosticsCsv, ValuesRoundTripThroughSeventeenDigits) {
    const DiagnosticsSeries series = awkward_series();
    const std::string csv = diagnostics_csv(series);
    const auto lines = split(csv, '\n');
    ASSERT_GE(lines.size(), 2u);
    const auto fields = split(lines[1], ',');
    ASSERT_EQ(fields.size(), 13u);
    const DiagnosticsRecord& r = series.records[0];
    const double expected[13] = {r.t,          r.mass,          r.mass_bound,
                                 r.p_max,      r.second_moment, r.entropy,
                                 r.entropy_diss_cum, r.w_minus_L2, r.w_minus_L3_cum,
                                 r.lap_L1,     r.energy,        r.energy_diss_cum,
                                 r.clamp_total};
    for (int k = 0; k < 13; ++k)
        EXPECT_EQ(std::strtod(fields[static_cast<std::size_t>(k)].c_str(), nullptr),
                  expected[k])
            << "column " << k;
}

TEST(DiagnosticsCsv, OneLinePerRecord) {
    DiagnosticsSeries series = awkward_series();
    series.records.push_back(series.records.front());
    series.records.push_back(series.records.front());
    const std::string csv = diagnostics_csv(series);
    const auto lines = split(csv, '\n');
    std::size_t nonempty = 0;
    for (const auto& l : lines)
        if (!l.empty()) ++nonempty;
    EXPECT_EQ(nonempty, 1u + series.records.size());
}

TEST(DiagnosticsCsv, IdenticalRunsProduceIdenticalBytes) {
    const RunResult a = small_featureful_run();
    const RunResult b = small_featureful_run();
    const std::string csv_a = diagnostics_csv(a.series);
    const std::string csv_b = diagnostics_csv(b.series);
    EXPECT_EQ(csv_a, csv_b);
    ASSERT_EQ(a.final_state.n.size(), b.final_state.n.size());
    for (std::int64_t i = 0; i < a.final_state.n.size(); ++i) {
        EXPECT_EQ(a.final_state.n[i], b.final_state.n[i]);
        EXPECT_EQ(a.final_state.c1[i], b.final_state.c1[i]);
    }
}

TEST(DiagnosticsCsv, FileMatchesTheInMemoryString) {
    const DiagnosticsSeries series = awkward_series();
    const std::string path = "diag_csv_test.csv";
    write_diagnostics_csv(series, path);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), diagnostics_csv(series));
    std::remove(path.c_str());
}

TEST(TextFiles, RoundTripAndErrorPath) {
    const std::string path = "text_io_test.txt";
    write_text_file(path, "alpha\nbeta\n");
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), "alpha\nbeta\n");
    std::remove(path.c_str());

    EXPECT_THROW(write_text_file("/no/such/dir/file.txt", "x"), IoError);
    EXPECT_THROW(write_diagnostics_csv(DiagnosticsSeries{}, "/no/such/dir/d.csv"), IoError);
}
