#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "nicd/dataset_io.hpp"
#include "nicd/error.hpp"
#include "support.hpp"

using namespace nicd;

namespace {

Dataset csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in, "t");
}

Dataset arff(const std::string& text) {
  std::istringstream in(text);
  return read_arff(in, "t");
}

std::size_t failing_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const IngestionError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Csv, ParsesTypedHeaderAndCategoriesInFileOrder) {
  const auto ds = csv("x:num,colour:cat,class:cat\n1.5,red,yes\n2,blue,no\n?,red,no\n");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.num_features(), 2u);
  EXPECT_EQ(ds.classes(), (std::vector<std::string>{"yes", "no"}));
  EXPECT_EQ(ds.features()[1].categories, (std::vector<std::string>{"red", "blue"}));
  EXPECT_DOUBLE_EQ(ds[0].values[0], 1.5);
  EXPECT_TRUE(is_missing(ds[2].values[0]));
  EXPECT_EQ(ds[1].values[1], 1.0);
  EXPECT_EQ(ds[2].label, 1u);
}

TEST(Csv, ErrorsNameTheLine) {
  EXPECT_EQ(failing_line([] { csv("x:num,class:cat\n1,a\n2\n"); }), 3u);
  EXPECT_EQ(failing_line([] { csv("x:num,class:cat\n1,a\nfoo,b\n"); }), 3u);
  EXPECT_EQ(failing_line([] { csv("x:num,class:cat\n1,a\n2,?\n"); }), 3u);
  EXPECT_EQ(failing_line([] { csv("x,class:cat\n1,a\n"); }), 1u);
}

TEST(Csv, RoundTrips) {
  const auto ds = fixtures::load("mixed_rules.csv");
  std::stringstream s;
  write_csv(s, ds);
  const auto back = read_csv(s, ds.name());
  EXPECT_EQ(back, ds);
}

TEST(Arff, ParsesDeclaredDomains) {
  const auto ds = arff(
      "% comment\n@RELATION toy\n@attribute w numeric\n@attribute 'c c' {a,b,c}\n@attribute class {p,n}\n"
      "@data\n1,b,n\n2.5,?,p\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.features()[1].categories, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(ds.classes(), (std::vector<std::string>{"p", "n"}));
  EXPECT_EQ(ds[0].values[1], 1.0);
  EXPECT_EQ(ds[0].label, 1u);
  EXPECT_TRUE(is_missing(ds[1].values[1]));
}

TEST(Arff, UndeclaredValueIsAnError) {
  EXPECT_EQ(failing_line([] { arff("@relation r\n@attribute a {x,y}\n@attribute class {p,n}\n@data\nx,p\nz,n\n"); }),
            6u);
}

TEST(Bundled, CorpusLoadsWithExpectedShapes) {
  struct Expect {
    const char* file;
    std::size_t size, features, classes;
  };
  const Expect expected[] = {
      {"iris.csv", 150, 4, 3},         {"wine.csv", 178, 13, 3},        {"wdbc.csv", 569, 30, 2},
      {"balance_scale.csv", 625, 4, 3}, {"monks1.arff", 432, 6, 2},      {"tic_tac_toe.arff", 958, 9, 2},
      {"waveform.csv", 600, 21, 3},    {"led7.csv", 500, 7, 10},        {"two_blobs.csv", 500, 2, 2},
      {"checkerboard.csv", 400, 2, 2}, {"mixed_rules.csv", 400, 4, 2},
  };
  for (const auto& e : expected) {
    const auto ds = fixtures::load(e.file);
    EXPECT_EQ(ds.size(), e.size) << e.file;
    EXPECT_EQ(ds.num_features(), e.features) << e.file;
    EXPECT_EQ(ds.num_classes(), e.classes) << e.file;
  }
}

TEST(Dataset, RejectsInvalidRows) {
  const std::vector<FeatureDescriptor> f{FeatureDescriptor::numeric("x")};
  EXPECT_THROW(Dataset("d", f, {"a"}, {{{1.0, 2.0}, 0}}), ArgumentError);
  EXPECT_THROW(Dataset("d", f, {"a"}, {{{1.0}, 1}}), ArgumentError);
  EXPECT_THROW(Dataset("d", f, {}, {}), ArgumentError);
  EXPECT_THROW(Dataset("d", f, {"a", "a"}, {}), ArgumentError);
}

TEST(Dataset, SubsetKeepsSchemaAndOrder) {
  const auto ds = fixtures::load("iris.csv");
  const std::vector<std::size_t> rows{5, 1, 149};
  const auto sub = ds.subset(rows);
  ASSERT_EQ(sub.size(), 3u);
  EXPECT_TRUE(sub.same_schema(ds));
  EXPECT_EQ(sub[0], ds[5]);
  EXPECT_EQ(sub[2], ds[149]);
  const auto counts = ds.class_counts();
  EXPECT_EQ(counts, (std::vector<std::size_t>{50, 50, 50}));
}
