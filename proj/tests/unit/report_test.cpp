#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "entropia/error.hpp"
#include "entropia/report.hpp"

namespace entropia {
namespace {

TEST(Report, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    EXPECT_EQ(std::strtod(format_number(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(format_number(1.0 / 0.0), "inf");
}

TEST(Report, CsvQuotesSpecialFields) {
  Table t({"a", "b"});
  t.add_row({"plain", "with,comma"});
  t.add_row({"say \"hi\"", "x"});
  EXPECT_EQ(t.to_csv(), "a,b\nplain,\"with,comma\"\n\"say \"\"hi\"\"\",x\n");
  EXPECT_THROW(t.add_row({"short"}), Error);
}

TEST(Report, JsonMirrorsCsvFields) {
  const Table t = bound_table({{"c_n", 0.5, {{"n", "2"}}, "f", 1e-6}}, "abc");
  const auto j = t.to_json();
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["name"], "c_n");
  EXPECT_EQ(j[0]["value"], "0.5");
  EXPECT_EQ(j[0]["inputs"], "n=2");
  EXPECT_EQ(j[0]["formula_id"], "f");
  EXPECT_EQ(j[0]["tolerance"], "1e-06");
  EXPECT_EQ(j[0]["config_hash"], "abc");
  std::size_t i = 0;
  for (auto it = j[0].begin(); it != j[0].end(); ++it, ++i) EXPECT_EQ(it.key(), t.header()[i]);
}

TEST(Report, HashIsFnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

}  // namespace
}  // namespace entropia
