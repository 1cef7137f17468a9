#include <gtest/gtest.h>

#include "semsense/report.hpp"

using namespace semsense;
using namespace semsense::report;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.n_list = {10};
  cfg.seeds = {1};
  cfg.sim.rounds = 5;
  return cfg;
}

}  // namespace

TEST(Sweep, PairedRowsOnSameTopology) {
  const auto result = sweep(small_config());
  ASSERT_TRUE(result.failures.empty());
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[0].encoding, Encoding::SSW);
  EXPECT_EQ(result.rows[1].encoding, Encoding::ES3N);
  EXPECT_GT(result.rows[1].total_tx_kb, result.rows[0].total_tx_kb);
  EXPECT_GT(result.rows[1].energy_spent_j, result.rows[0].energy_spent_j);
}

TEST(Sweep, Preconditions) {
  auto cfg = small_config();
  cfg.encodings.clear();
  EXPECT_THROW(sweep(cfg), ValidationError);
  cfg = small_config();
  cfg.seeds.clear();
  EXPECT_THROW(sweep(cfg), ValidationError);
  cfg = small_config();
  cfg.n_list.clear();
  EXPECT_THROW(sweep(cfg), ValidationError);
}

TEST(Sweep, DeterministicAndThreadCountIndependent) {
  auto cfg = small_config();
  cfg.n_list = {10, 20, 30};
  cfg.seeds = {1, 2, 3};
  cfg.threads = 1;
  const auto serial = sweep(cfg);
  cfg.threads = 4;
  EXPECT_EQ(sweep(cfg), serial);
  EXPECT_EQ(sweep(cfg), serial);
  for (std::size_t i = 1; i < serial.rows.size(); ++i) {
    const auto& a = serial.rows[i - 1];
    const auto& b = serial.rows[i];
    EXPECT_LT(std::tie(a.n, a.encoding, a.seed), std::tie(b.n, b.encoding, b.seed));
  }
}

// With one reference node per 10 m square, n=1 always reaches the centre sink
// within 7.1 m; n=100 spread over 100 m with the same range never connects.
TEST(Sweep, FailedCellDoesNotAbort) {
  auto cfg = small_config();
  cfg.n_list = {1, 100};
  cfg.field_side = 10.0;
  cfg.reference_n = 1;
  cfg.radio_range = 7.1;
  const auto result = sweep(cfg);
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[0].n, 1);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].n, 100);
  EXPECT_NE(result.failures[0].message.find("larger radio range"), std::string::npos);
}

TEST(Sweep, ConstantDensityField) {
  SweepConfig cfg;
  EXPECT_DOUBLE_EQ(field_side_for(cfg, 100), 200.0);
  EXPECT_DOUBLE_EQ(field_side_for(cfg, 25), 100.0);
  cfg.constant_density = false;
  EXPECT_DOUBLE_EQ(field_side_for(cfg, 25), 200.0);
}

TEST(Csv, HeaderPlusRows) {
  const auto csv = emit_csv(sweep(small_config()));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_TRUE(csv.starts_with("n,encoding,seed,total_tx_kb,lifetime_rounds,energy_spent_j\n10,ssw,1,"));
}

TEST(Csv, EmptyResultIsAnError) {
  EXPECT_THROW(emit_csv(SweepResult{}), ValidationError);
  EXPECT_THROW(emit_plotdata(SweepResult{}), ValidationError);
}

TEST(Csv, RoundTripIsLossFree) {
  SweepResult r;
  r.rows = {{10, Encoding::SSW, 1, 12.345, 0, 0.1 + 0.2},
            {10, Encoding::ES3N, 18446744073709551615ULL, 1e-7, 42, 123456789.123456789}};
  EXPECT_EQ(parse_csv(emit_csv(r)), r);
  auto cfg = small_config();
  cfg.seeds = {1, 2};
  const auto real = sweep(cfg);
  EXPECT_EQ(parse_csv(emit_csv(real)).rows, real.rows);
  EXPECT_THROW(parse_csv("bad header\n"), ValidationError);
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\n1,xyz,1,1,1,1\n"), ValidationError);
}

// Means recomputed by hand from the row values.
TEST(Plotdata, MeansPerNAndEncoding) {
  SweepResult r;
  const double ssw[] = {1.0, 2.0, 3.0, 4.0, 5.5};
  const double es3n[] = {2.0, 2.5, 3.0, 3.5, 4.0};
  for (std::uint64_t s = 0; s < 5; ++s) {
    r.rows.push_back({10, Encoding::SSW, s, ssw[s], 0, 0.0});
    r.rows.push_back({10, Encoding::ES3N, s, es3n[s], 0, 0.0});
  }
  r.rows.push_back({20, Encoding::SSW, 0, 7.25, 0, 0.0});
  const auto means = mean_total_tx_kb(r);
  EXPECT_DOUBLE_EQ((means.at({10, Encoding::SSW})), 3.1);
  EXPECT_DOUBLE_EQ((means.at({10, Encoding::ES3N})), 3.0);
  EXPECT_EQ(emit_plotdata(r),
            "# n ssw_mean_total_tx_kb es3n_mean_total_tx_kb\n"
            "10 3.1 3\n"
            "20 7.25 nan\n");
}
