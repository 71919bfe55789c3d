#pragma once

// Dataset loading, target encoding and splitting. Samples are columns.

#include "dtssfn/linalg.hpp"
#include "dtssfn/network.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dtssfn {

/// Dense features (P x J) with one label string per column.
struct RawTable {
  Matrix x;
  std::vector<std::string> labels;
};

struct CsvOptions {
  char delimiter = ',';
  bool has_header = false;
  int label_index = -1;        // negative counts from the end
  std::string label_name;      // overrides label_index; needs has_header
};

/// RFC-4180 style: quoted fields, doubled quotes, CRLF. Blank lines are skipped.
/// Errors name the 1-based line of the offending row.
RawTable load_csv(const std::filesystem::path& path, const CsvOptions& opts = {});

/// "label idx:val idx:val ..." with 1-based strictly increasing indices.
/// The width is the largest index seen, or min_features if larger.
RawTable load_libsvm(const std::filesystem::path& path, std::size_t min_features = 0);

/// IDX images (0x00000803) and labels (0x00000801), gzip or plain.
/// Pixels are divided by 255.
RawTable load_idx(const std::filesystem::path& images, const std::filesystem::path& labels);

/// Features then label, one sample per line, round-trip double formatting.
void export_csv(const std::filesystem::path& path, const RawTable& table, char delimiter = ',');

Matrix one_hot(const Labels& labels, std::size_t q);

/// Dense 0..Q-1 ids in first-appearance order.
struct LabelMap {
  std::vector<std::string> names;

  std::size_t add(const std::string& name);
  /// Throws ParseError for a label not in the map.
  std::size_t id(const std::string& name) const;
};

struct Dataset {
  Matrix x_train, t_train, x_test, t_test;
  Labels y_train, y_test;
  std::vector<std::string> class_names;

  std::size_t p() const { return static_cast<std::size_t>(x_train.rows()); }
  std::size_t q() const { return class_names.size(); }
};

/// Labels are mapped in first-appearance order over train then test; the
/// narrower table is zero padded to the common feature count.
Dataset make_dataset(const RawTable& train, const RawTable& test);

struct SplitIndices {
  std::vector<std::size_t> train, test;  // ascending
  bool stratified = true;
  std::string warning;
};

/// `fraction` of the samples go to train. Stratified per class with
/// largest-remainder rounding unless some class has a single sample.
SplitIndices split_indices(const std::vector<std::string>& labels, double fraction, std::uint64_t seed);

RawTable take_columns(const RawTable& table, const std::vector<std::size_t>& idx);

/// Seeded choice of k distinct columns, returned in ascending order.
std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

/// Gaussian blobs around centers drawn uniformly in [-1, 1]^dims.
RawTable synth_blobs(std::size_t classes, std::size_t dims, std::size_t samples_per_class, double spread,
                     std::uint64_t seed);

}  // namespace dtssfn
