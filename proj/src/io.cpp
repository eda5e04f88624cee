#include "io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "common.hpp"

namespace glseg {

namespace {

// parses "<u64>,<long>[,...]"; returns false if the row is not numeric
bool parse_index_label(const std::string& line, std::uint64_t& idx,
                       long& label) {
  const char* s = line.c_str();
  char* end = nullptr;
  idx = std::strtoull(s, &end, 10);
  if (end == s || *end != ',') return false;
  s = end + 1;
  label = std::strtol(s, &end, 10);
  if (end == s) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0' || *end == ',';
}

std::vector<std::pair<std::uint64_t, long>> read_index_label_rows(
    const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open label CSV: " + path);
  std::vector<std::pair<std::uint64_t, long>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::uint64_t idx;
    long label;
    if (!parse_index_label(line, idx, label)) {
      require(lineno == 1, ErrorCode::format,
              path + ":" + std::to_string(lineno) + ": malformed row");
      continue;  // header
    }
    rows.emplace_back(idx, label);
  }
  require(!rows.empty(), ErrorCode::format, path + ": no data rows");
  return rows;
}

}  // namespace

std::vector<int> read_labels_csv(const std::string& path) {
  const auto rows = read_index_label_rows(path);
  std::vector<int> labels(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [idx, label] : rows) {
    require(idx < labels.size(), ErrorCode::format,
            path + ": index " + std::to_string(idx) +
                " out of range for " + std::to_string(labels.size()) +
                " rows");
    require(!seen[idx], ErrorCode::format,
            path + ": duplicate index " + std::to_string(idx));
    seen[idx] = true;
    labels[idx] = static_cast<int>(label);
  }
  return labels;
}

void write_labels_csv(std::span<const int> labels, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write label CSV: " + path);
  out << "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << ',' << labels[i] << '\n';
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

std::vector<std::pair<std::uint32_t, int>> read_fidelity_csv(
    const std::string& path) {
  const auto rows = read_index_label_rows(path);
  std::vector<std::pair<std::uint32_t, int>> entries;
  entries.reserve(rows.size());
  for (const auto& [idx, label] : rows)
    entries.emplace_back(static_cast<std::uint32_t>(idx),
                         static_cast<int>(label));
  return entries;
}

void write_fidelity_csv(std::span<const std::pair<std::uint32_t, int>> entries,
                        const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write fidelity CSV: " + path);
  out << "index,label\n";
  for (const auto& [idx, label] : entries)
    out << idx << ',' << label << '\n';
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

void write_result_csv(std::span<const int> labels,
                      std::span<const double> state, const std::string& path) {
  require(labels.size() == state.size(), ErrorCode::size_mismatch,
          "labels and state differ in length");
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write result CSV: " + path);
  out << "index,label,u\n";
  char buf[40];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", state[i]);
    out << i << ',' << labels[i] << ',' << buf << '\n';
  }
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

void write_trace_csv(std::span<const TraceEntry> trace,
                     const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write trace CSV: " + path);
  out << "iter,eps,smoothing,potential,fidelity,total\n";
  char buf[40];
  for (const TraceEntry& t : trace) {
    out << t.iteration;
    const double cols[5] = {t.eps, t.energy.smoothing, t.energy.potential,
                            t.energy.fidelity, t.energy.total};
    for (double v : cols) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

void write_confusion_csv(const ConfusionMatrix& m, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write confusion CSV: " + path);
  out << "obtained\\true";
  for (int t = 0; t < m.num_classes; ++t) out << ',' << t;
  out << '\n';
  for (int p = 0; p < m.num_classes; ++p) {
    out << p;
    for (int t = 0; t < m.num_classes; ++t) out << ',' << m.at(p, t);
    out << '\n';
  }
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

}  // namespace glseg
