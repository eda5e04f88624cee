#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common.hpp"
#include "doctest.h"
#include "features.hpp"
#include "io.hpp"
#include "rng.hpp"

using namespace glseg;
namespace fs = std::filesystem;

namespace {
fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "glseg_test_io";
  fs::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("feature CSV round-trips and detects headers") {
  const fs::path dir = temp_dir();
  FeatureMatrix m(3, 2);
  m.values = {1.0, -2.5, 0.125, 1e-9, 3.14159, 7.0};

  const std::string plain = (dir / "plain.csv").string();
  write_features_csv(m, plain);
  const FeatureMatrix back = read_features_csv(plain);
  CHECK(back.rows == 3);
  CHECK(back.cols == 2);
  CHECK(back.values == m.values);  // %.17g round-trips doubles exactly

  const std::string with_header = (dir / "header.csv").string();
  {
    std::ofstream out(with_header);
    out << "x,y\n1,2\n3,4\n";
  }
  const FeatureMatrix h = read_features_csv(with_header);
  CHECK(h.rows == 2);
  CHECK(h.at(1, 1) == 4.0);
}

TEST_CASE("feature CSV errors: ragged rows, non-numeric data rows") {
  const fs::path dir = temp_dir();
  const std::string ragged = (dir / "ragged.csv").string();
  {
    std::ofstream out(ragged);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(read_features_csv(ragged), Error);

  const std::string bad = (dir / "bad.csv").string();
  {
    std::ofstream out(bad);
    out << "1,2\n3,oops\n";
  }
  CHECK_THROWS_AS(read_features_csv(bad), Error);

  CHECK_THROWS_AS(read_features_csv((dir / "missing.csv").string()), Error);
}

TEST_CASE("GLSEGF01 binary round-trips bit-exactly") {
  const fs::path dir = temp_dir();
  Rng rng(5);
  FeatureMatrix m(17, 5);
  for (double& v : m.values) v = rng.uniform(-100.0, 100.0);

  const std::string path = (dir / "features.bin").string();
  write_features_binary(m, path);
  const FeatureMatrix back = read_features_binary(path);
  CHECK(back.rows == m.rows);
  CHECK(back.cols == m.cols);
  CHECK(back.values == m.values);

  // corrupt the magic
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.put('X');
  }
  CHECK_THROWS_AS(read_features_binary(path), Error);
}

TEST_CASE("labels CSV round-trip, permuted rows, and validation") {
  const fs::path dir = temp_dir();
  const std::vector<int> labels = {2, 0, 1, 1, 0};
  const std::string path = (dir / "labels.csv").string();
  write_labels_csv(labels, path);
  CHECK(read_labels_csv(path) == labels);

  // rows out of order are fine; indices must still cover 0..n-1
  const std::string shuffled = (dir / "shuffled.csv").string();
  {
    std::ofstream out(shuffled);
    out << "index,label\n2,5\n0,3\n1,4\n";
  }
  CHECK(read_labels_csv(shuffled) == std::vector<int>{3, 4, 5});

  const std::string dup = (dir / "dup.csv").string();
  {
    std::ofstream out(dup);
    out << "0,1\n0,2\n";
  }
  CHECK_THROWS_AS(read_labels_csv(dup), Error);

  const std::string gap = (dir / "gap.csv").string();
  {
    std::ofstream out(gap);
    out << "0,1\n2,2\n";
  }
  CHECK_THROWS_AS(read_labels_csv(gap), Error);

  // result files (index,label,u) read back as labels
  const std::string result = (dir / "result.csv").string();
  {
    std::ofstream out(result);
    out << "index,label,u\n0,1,1.02\n1,0,-0.3\n";
  }
  CHECK(read_labels_csv(result) == std::vector<int>{1, 0});
}
