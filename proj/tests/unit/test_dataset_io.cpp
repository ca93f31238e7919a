#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "spdml/dataset_io.hpp"

using namespace spdml;

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("dataset write then read is exact") {
  Rng rng(1);
  const LabeledSpdDataset ds = oracle::random_dataset(rng, 4, 7, 1.0);
  std::stringstream ss;
  write_dataset(ss, ds);
  const LabeledSpdDataset back = read_dataset(ss);
  REQUIRE(back.size() == ds.size());
  CHECK(back.labels() == ds.labels());
  for (std::size_t i = 0; i < ds.size(); ++i) CHECK(back.sample(i).matrix() == ds.sample(i).matrix());

  const auto path = std::filesystem::temp_directory_path() / "spdml_io_test.spdds";
  dataset_write(ds, path);
  CHECK(dataset_read(path).sample(6).matrix() == ds.sample(6).matrix());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(dataset_read(path), Error);
}

TEST_CASE("matrix write then read is exact") {
  Rng rng(2);
  const SpdMatrix m = random_spd(rng, 5);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss).matrix() == m.matrix());
}

TEST_CASE("dataset reader errors") {
  SUBCASE("singular sample reports its index") {
    std::istringstream in("SPDDS 1\nn=3 d=2\n+1 1 0 0 1\n-1 2 0 0 1\n+1 1 1 1 1\n");
    try {
      read_dataset(in);
      FAIL("expected NotPositiveDefinite");
    } catch (const NotPositiveDefinite& e) {
      REQUIRE(e.index().has_value());
      CHECK(*e.index() == 2);
    }
  }
  SUBCASE("too few samples") {
    std::istringstream in("SPDDS 1\nn=0 d=2\n");
    CHECK_THROWS_AS(read_dataset(in), InvalidDataset);
  }
  SUBCASE("bad label") {
    std::istringstream in("SPDDS 1\nn=2 d=1\n+1 1\n0 2\n");
    CHECK_THROWS_AS(read_dataset(in), InvalidDataset);
  }
  SUBCASE("accepted label spellings") {
    std::istringstream in("SPDDS 1\nn=2 d=1\n1 1\n-1 2\n");
    CHECK(read_dataset(in).labels() == std::vector<int>{1, -1});
  }
  SUBCASE("wrong header, short rows, trailing data") {
    std::istringstream a("SPDM 1\nn=2 d=1\n1 1\n-1 2\n");
    CHECK_THROWS_AS(read_dataset(a), FormatError);
    std::istringstream b("SPDDS 1\nn=2 d=2\n1 1 0 0 1\n-1 2 0 0\n");
    CHECK_THROWS_AS(read_dataset(b), FormatError);
    std::istringstream c("SPDDS 1\nn=2 d=1\n1 1\n-1 2\n1 3\n");
    CHECK_THROWS_AS(read_dataset(c), FormatError);
    std::istringstream d("SPDDS 1\nn=2 d=1\n1 x\n-1 2\n");
    CHECK_THROWS_AS(read_dataset(d), FormatError);
  }
  SUBCASE("asymmetric entries beyond tolerance are rejected") {
    std::istringstream in("SPDDS 1\nn=2 d=2\n1 2 1 0 2\n-1 1 0 0 1\n");
    CHECK_THROWS_AS(read_dataset(in), Error);
  }
}
