#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dpoem {

struct Feature {
  std::uint32_t index;  // 0-based
  double value;

  bool operator==(const Feature&) const = default;
};

struct Sample {
  std::vector<Feature> features;  // strictly increasing indices
  int label = 1;                  // -1 or +1

  double squared_norm() const;
  bool operator==(const Sample&) const = default;
};

struct Dataset {
  std::size_t dim = 0;
  std::vector<Sample> samples;

  bool operator==(const Dataset&) const = default;
};

/// Raw label conventions accepted on input. kAuto picks whichever of the three
/// binary schemes covers every label in the file.
enum class LabelScheme { kAuto, kPlusMinusOne, kZeroOne, kOneTwo };

struct LibsvmOptions {
  std::optional<std::size_t> dim;  // must be >= max observed index when set
  LabelScheme labels = LabelScheme::kAuto;
};

/// Parse/validation failure; `line` is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Dataset parse_libsvm(std::istream& in, const LibsvmOptions& options = {});
Dataset parse_libsvm(std::string_view text, const LibsvmOptions& options = {});
Dataset load_libsvm(const std::string& path, const LibsvmOptions& options = {});

/// Lossless text form (labels written as +1/-1, values with 17 significant digits).
std::string to_libsvm(const Dataset& ds);

struct Partition {
  std::vector<std::vector<std::size_t>> assignments;  // per agent, sample indices

  std::size_t agents() const { return assignments.size(); }
};

/// Seeded uniform shuffle split into n contiguous blocks; the first N mod n blocks get one extra.
Partition partition_iid(std::size_t sample_count, std::size_t n, std::uint64_t seed);
inline Partition partition_iid(const Dataset& ds, std::size_t n, std::uint64_t seed) {
  return partition_iid(ds.samples.size(), n, seed);
}

/// max over samples of ||a||_2, the Lipschitz constant of the hinge loss.
double max_feature_norm(const Dataset& ds);

/// Scales every feature column by 1 / max |value| (columns that are all zero are left alone).
void scale_max_abs(Dataset& ds);

/// Uniform random subset of `count` samples, kept in original order.
Dataset subsample(const Dataset& ds, std::size_t count, std::uint64_t seed);

/// FNV-1a hash of the dataset contents.
std::uint64_t fingerprint(const Dataset& ds);

}  // namespace dpoem
