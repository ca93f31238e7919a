#include "spdml/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace spdml {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line_no) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail("line " + std::to_string(line_no) + ": malformed number '" + std::string(tok) + "'");
  }
  return v;
}

long long parse_int(std::string_view tok, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("malformed " + what + " '" + std::string(tok) + "'");
  return v;
}

long long parse_key(std::string_view tok, std::string_view key) {
  if (tok.substr(0, key.size() + 1) != std::string(key) + "=") {
    fail("expected '" + std::string(key) + "=<value>', got '" + std::string(tok) + "'");
  }
  return parse_int(tok.substr(key.size() + 1), std::string(key));
}

bool next_line(std::istream& is, std::string& line, std::size_t& line_no) {
  while (std::getline(is, line)) {
    ++line_no;
    if (!split_ws(line).empty()) return true;
  }
  return false;
}

void expect_magic(std::istream& is, std::size_t& line_no, std::string_view magic) {
  std::string line;
  if (!next_line(is, line, line_no)) fail("empty input, expected header '" + std::string(magic) + " 1'");
  auto toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != magic) fail("bad header, expected '" + std::string(magic) + " 1'");
  if (toks[1] != "1") fail("unsupported " + std::string(magic) + " version '" + std::string(toks[1]) + "'");
}

SymMatrix parse_entries(const std::vector<std::string_view>& toks, std::size_t first, Index d, std::size_t line_no) {
  Matrix m(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      m(i, j) = parse_double(toks[first + static_cast<std::size_t>(i * d + j)], line_no);
    }
  }
  return SymMatrix(m);
}

void write_row_major(std::ostream& os, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) os << ' ' << format_double(m(i, j));
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_dataset(std::ostream& os, const LabeledSpdDataset& ds) {
  os << "SPDDS 1\n";
  os << "n=" << ds.size() << " d=" << ds.dim() << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    os << (ds.label(i) > 0 ? "+1" : "-1");
    write_row_major(os, ds.sample(i).matrix());
    os << '\n';
  }
}

LabeledSpdDataset read_dataset(std::istream& is) {
  std::size_t line_no = 0;
  expect_magic(is, line_no, "SPDDS");
  std::string line;
  if (!next_line(is, line, line_no)) fail("missing 'n=<count> d=<dim>' line");
  auto header = split_ws(line);
  if (header.size() != 2) fail("line " + std::to_string(line_no) + ": expected 'n=<count> d=<dim>'");
  const long long n = parse_key(header[0], "n");
  const long long d = parse_key(header[1], "d");
  if (n < 0) fail("negative sample count");
  if (d < 1) fail("dimension must be positive");
  if (n < 2) throw InvalidDataset("dataset: at least two samples are required (n=" + std::to_string(n) + ")");

  std::vector<SpdMatrix> samples;
  std::vector<int> labels;
  samples.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    if (!next_line(is, line, line_no)) {
      fail("expected " + std::to_string(n) + " samples, found " + std::to_string(k));
    }
    auto toks = split_ws(line);
    const auto want = static_cast<std::size_t>(1 + d * d);
    if (toks.size() != want) {
      fail("line " + std::to_string(line_no) + ": expected label and " + std::to_string(d * d) + " entries, got " +
           std::to_string(toks.size()) + " tokens");
    }
    int label;
    if (toks[0] == "+1" || toks[0] == "1") {
      label = 1;
    } else if (toks[0] == "-1") {
      label = -1;
    } else {
      throw InvalidDataset("dataset: label '" + std::string(toks[0]) + "' of sample " + std::to_string(k) +
                           " is not +1 or -1");
    }
    SymMatrix x = parse_entries(toks, 1, static_cast<Index>(d), line_no);
    try {
      samples.push_back(assert_spd(x));
    } catch (const NotPositiveDefinite& e) {
      throw NotPositiveDefinite(e.lambda_min(), static_cast<std::size_t>(k));
    }
    labels.push_back(label);
  }
  if (next_line(is, line, line_no)) fail("line " + std::to_string(line_no) + ": trailing data after last sample");
  return LabeledSpdDataset(std::move(samples), std::move(labels));
}

void dataset_write(const LabeledSpdDataset& ds, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_dataset(out, ds);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

LabeledSpdDataset dataset_read(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dataset(in);
}

void write_matrix(std::ostream& os, const SpdMatrix& m) {
  os << "SPDM 1\n";
  os << "d=" << m.dim() << '\n';
  for (Index i = 0; i < m.dim(); ++i) {
    for (Index j = 0; j < m.dim(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

SpdMatrix read_matrix(std::istream& is) {
  std::size_t line_no = 0;
  expect_magic(is, line_no, "SPDM");
  std::string line;
  if (!next_line(is, line, line_no)) fail("missing 'd=<dim>' line");
  auto header = split_ws(line);
  if (header.size() != 1) fail("line " + std::to_string(line_no) + ": expected 'd=<dim>'");
  const long long d = parse_key(header[0], "d");
  if (d < 1) fail("dimension must be positive");
  Matrix m(d, d);
  for (long long i = 0; i < d; ++i) {
    if (!next_line(is, line, line_no)) fail("expected " + std::to_string(d) + " matrix rows");
    auto toks = split_ws(line);
    if (toks.size() != static_cast<std::size_t>(d)) {
      fail("line " + std::to_string(line_no) + ": expected " + std::to_string(d) + " entries");
    }
    for (long long j = 0; j < d; ++j) m(i, j) = parse_double(toks[static_cast<std::size_t>(j)], line_no);
  }
  if (next_line(is, line, line_no)) fail("line " + std::to_string(line_no) + ": trailing data after matrix");
  return assert_spd(SymMatrix(m));
}

void matrix_write(const SpdMatrix& m, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_matrix(out, m);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

SpdMatrix matrix_read(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

}  // namespace spdml
