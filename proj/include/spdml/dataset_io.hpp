#pragma once

// Text formats.
//
// Dataset:
//   SPDDS 1
//   n=<count> d=<dim>
//   <label> <d*d entries, row-major>      (one line per sample, label +1/-1)
//
// Matrix:
//   SPDM 1
//   d=<dim>
//   <d entries>                           (d lines)
//
// Numbers are written in the shortest decimal form that round-trips. The
// readers reject entries that are not symmetric to 1e-12 (relative) and
// then require every matrix to be SPD.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "spdml/alignment.hpp"
#include "spdml/symmat.hpp"

namespace spdml {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

void write_dataset(std::ostream& os, const LabeledSpdDataset& ds);
LabeledSpdDataset read_dataset(std::istream& is);
void dataset_write(const LabeledSpdDataset& ds, const std::filesystem::path& path);
LabeledSpdDataset dataset_read(const std::filesystem::path& path);

void write_matrix(std::ostream& os, const SpdMatrix& m);
SpdMatrix read_matrix(std::istream& is);
void matrix_write(const SpdMatrix& m, const std::filesystem::path& path);
SpdMatrix matrix_read(const std::filesystem::path& path);

}  // namespace spdml
