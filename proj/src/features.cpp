#include "features.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "common.hpp"

namespace glseg {

void FeatureMatrix::validate() const {
  require(rows >= 1, ErrorCode::invalid_argument, "feature matrix is empty");
  require(cols >= 1, ErrorCode::invalid_argument,
          "feature matrix has zero columns");
  require(values.size() == rows * cols, ErrorCode::size_mismatch,
          "feature matrix storage does not match its shape");
  for (std::size_t i = 0; i < values.size(); ++i)
    require(std::isfinite(values[i]), ErrorCode::invalid_argument,
            "feature matrix contains a non-finite entry at flat index " +
                std::to_string(i));
}

namespace {

bool parse_field(const std::string& field, double& out) {
  const char* s = field.c_str();
  char* end = nullptr;
  out = std::strtod(s, &end);
  if (end == s) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  for (const std::string& f : split_csv_line(line)) {
    double v;
    if (!parse_field(f, v)) return false;
    out.push_back(v);
  }
  return true;
}

void put_u64_le(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u64_le(std::istream& is, std::uint64_t& v) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return true;
}

constexpr char kMagic[8] = {'G', 'L', 'S', 'E', 'G', 'F', '0', '1'};

}  // namespace

FeatureMatrix read_features_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open feature CSV: " + path);

  FeatureMatrix m;
  std::vector<double> row;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (!parse_row(line, row)) {
      // a non-numeric first row is a header; anywhere else it is an error
      require(lineno == 1, ErrorCode::format,
              path + ":" + std::to_string(lineno) + ": non-numeric field");
      continue;
    }
    if (first_data_row) {
      m.cols = row.size();
      first_data_row = false;
    }
    require(row.size() == m.cols, ErrorCode::format,
            path + ":" + std::to_string(lineno) + ": expected " +
                std::to_string(m.cols) + " columns, got " +
                std::to_string(row.size()));
    m.values.insert(m.values.end(), row.begin(), row.end());
    ++m.rows;
  }
  require(m.rows > 0, ErrorCode::format, path + ": no data rows");
  m.validate();
  return m;
}

void write_features_csv(const FeatureMatrix& m, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write feature CSV: " + path);
  char buf[40];
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

FeatureMatrix read_features_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "cannot open feature file: " + path);
  char magic[8];
  require(bool(in.read(magic, 8)) && std::memcmp(magic, kMagic, 8) == 0,
          ErrorCode::format, path + ": missing GLSEGF01 magic");
  std::uint64_t n = 0, d = 0;
  require(get_u64_le(in, n) && get_u64_le(in, d), ErrorCode::format,
          path + ": truncated header");
  require(n >= 1 && d >= 1 && n < (1ull << 32) && d < (1ull << 32),
          ErrorCode::format, path + ": implausible shape in header");
  FeatureMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
  for (double& v : m.values) {
    std::uint64_t bits;
    require(get_u64_le(in, bits), ErrorCode::format,
            path + ": truncated payload");
    v = std::bit_cast<double>(bits);
  }
  m.validate();
  return m;
}

void write_features_binary(const FeatureMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "cannot write feature file: " + path);
  out.write(kMagic, 8);
  put_u64_le(out, m.rows);
  put_u64_le(out, m.cols);
  for (double v : m.values) put_u64_le(out, std::bit_cast<std::uint64_t>(v));
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

}  // namespace glseg
