#include <gtest/gtest.h>

#include "lexent/eval/report.hpp"

namespace lexent::eval {
namespace {

TEST(Report, ValuesRoundTripAtFullPrecision) {
  auto r = metrics({50, 10, 20, 20});
  r.ap1 = 0.8125;
  r.leaked_terms = 3;
  const auto kv = parse_key_values(format_report_values(r));
  EXPECT_EQ(kv.at("ap0"), "na");
  EXPECT_EQ(std::stod(kv.at("ap1")), 0.8125);
  EXPECT_EQ(std::stod(kv.at("pre")), r.pre);
  EXPECT_EQ(std::stod(kv.at("f")), r.f);
  EXPECT_EQ(std::stod(kv.at("ci_low")), r.wilson_low);
  EXPECT_EQ(kv.at("c01"), "10");
  EXPECT_EQ(kv.at("leaked_terms"), "3");
  EXPECT_EQ(kv.size(), 13u);
}

TEST(Report, TableShowsRoundedValues) {
  const auto t = format_report_table(metrics({50, 10, 20, 20}));
  EXPECT_NE(t.find("Accuracy      70.0  (95% CI"), std::string::npos);
  EXPECT_NE(t.find("F-measure     0.690"), std::string::npos);
  EXPECT_NE(t.find("AP0           n/a"), std::string::npos);
  EXPECT_NE(t.find("c00=50 c01=10 c10=20 c11=20"), std::string::npos);
}

TEST(Report, ParseSkipsCommentsAndBlankLines) {
  const auto kv = parse_key_values("# note\n\nk=v\nx=a=b\n");
  EXPECT_EQ(kv.at("k"), "v");
  EXPECT_EQ(kv.at("x"), "a=b");
}

}  // namespace
}  // namespace lexent::eval
