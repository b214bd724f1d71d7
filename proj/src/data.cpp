#include "dpoem/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "dpoem/rng.hpp"

namespace dpoem {

namespace {

struct RawSample {
  double label;
  std::size_t line;
  std::vector<Feature> features;
};

double parse_number(std::string_view token, std::size_t line, const char* what) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value))
    throw DataError(line, std::string("unparsable ") + what + " '" + std::string(token) + "'");
  return value;
}

std::uint32_t parse_index(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || value == 0 ||
      value > UINT32_MAX)
    throw DataError(line, "bad feature index '" + std::string(token) + "'");
  return static_cast<std::uint32_t>(value - 1);
}

RawSample parse_line(std::string_view text, std::size_t line) {
  RawSample raw{0.0, line, {}};
  bool have_label = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\r') ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (!have_label) {
      raw.label = parse_number(token, line, "label");
      have_label = true;
      continue;
    }
    const auto colon = token.find(':');
    if (colon == std::string_view::npos)
      throw DataError(line, "malformed token '" + std::string(token) + "' (expected idx:val)");
    const std::uint32_t index = parse_index(token.substr(0, colon), line);
    const double value = parse_number(token.substr(colon + 1), line, "feature value");
    if (!raw.features.empty() && index <= raw.features.back().index)
      throw DataError(line, "feature indices not strictly increasing at '" + std::string(token) + "'");
    raw.features.push_back({index, value});
  }
  return raw;
}

bool subset_of(const std::set<double>& seen, std::initializer_list<double> allowed) {
  return std::all_of(seen.begin(), seen.end(), [&](double v) {
    return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
  });
}

LabelScheme detect_scheme(const std::set<double>& seen) {
  if (subset_of(seen, {-1.0, 1.0})) return LabelScheme::kPlusMinusOne;
  if (subset_of(seen, {0.0, 1.0})) return LabelScheme::kZeroOne;
  if (subset_of(seen, {1.0, 2.0})) return LabelScheme::kOneTwo;
  return LabelScheme::kAuto;
}

int map_label(double raw, LabelScheme scheme, std::size_t line) {
  switch (scheme) {
    case LabelScheme::kPlusMinusOne:
      if (raw == 1.0) return 1;
      if (raw == -1.0) return -1;
      break;
    case LabelScheme::kZeroOne:
      if (raw == 1.0) return 1;
      if (raw == 0.0) return -1;
      break;
    case LabelScheme::kOneTwo:
      if (raw == 1.0) return 1;
      if (raw == 2.0) return -1;
      break;
    case LabelScheme::kAuto:
      break;
  }
  std::ostringstream msg;
  msg << "label " << raw << " is not valid for the binary label scheme";
  throw DataError(line, msg.str());
}

void fnv_mix(std::uint64_t& h, const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

DataError::DataError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

double Sample::squared_norm() const {
  double s = 0.0;
  for (const auto& f : features) s += f.value * f.value;
  return s;
}

Dataset parse_libsvm(std::istream& in, const LibsvmOptions& options) {
  std::vector<RawSample> raws;
  std::string line;
  std::size_t line_no = 0;
  std::size_t max_index_plus_one = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    if (view.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    RawSample raw = parse_line(view, line_no);
    if (!raw.features.empty())
      max_index_plus_one = std::max<std::size_t>(max_index_plus_one, raw.features.back().index + 1);
    raws.push_back(std::move(raw));
  }
  if (raws.empty()) throw DataError(0, "dataset has no samples");

  LabelScheme scheme = options.labels;
  if (scheme == LabelScheme::kAuto) {
    std::set<double> seen;
    for (const auto& r : raws) seen.insert(r.label);
    scheme = detect_scheme(seen);
    if (scheme == LabelScheme::kAuto) {
      // Report the first label outside every binary scheme seen so far.
      std::set<double> prefix;
      for (const auto& r : raws) {
        prefix.insert(r.label);
        if (detect_scheme(prefix) == LabelScheme::kAuto)
          throw DataError(r.line, "labels do not form a binary {-1,+1}, {0,1} or {1,2} set");
      }
    }
  }

  Dataset ds;
  ds.dim = max_index_plus_one;
  if (options.dim) {
    if (*options.dim < max_index_plus_one)
      throw DataError(0, "explicit dimension " + std::to_string(*options.dim) +
                             " is smaller than the largest feature index " +
                             std::to_string(max_index_plus_one));
    ds.dim = *options.dim;
  }
  ds.samples.reserve(raws.size());
  for (auto& r : raws) ds.samples.push_back({std::move(r.features), map_label(r.label, scheme, r.line)});
  return ds;
}

Dataset parse_libsvm(std::string_view text, const LibsvmOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_libsvm(in, options);
}

Dataset load_libsvm(const std::string& path, const LibsvmOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(0, "cannot open dataset file '" + path + "'");
  return parse_libsvm(in, options);
}

std::string to_libsvm(const Dataset& ds) {
  std::string out;
  char buf[64];
  for (const auto& s : ds.samples) {
    out += s.label > 0 ? "+1" : "-1";
    for (const auto& f : s.features) {
      std::snprintf(buf, sizeof buf, " %u:%.17g", f.index + 1, f.value);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Partition partition_iid(std::size_t sample_count, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("partition_iid: need at least one agent");
  if (n > sample_count)
    throw std::invalid_argument("partition_iid: " + std::to_string(n) + " agents but only " +
                                std::to_string(sample_count) + " samples");
  std::vector<std::size_t> order(sample_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_stream(seed, StreamTag::kPartition);
  std::shuffle(order.begin(), order.end(), rng);

  Partition part;
  part.assignments.resize(n);
  const std::size_t base = sample_count / n;
  const std::size_t extra = sample_count % n;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    part.assignments[i].assign(order.begin() + static_cast<std::ptrdiff_t>(offset),
                               order.begin() + static_cast<std::ptrdiff_t>(offset + len));
    offset += len;
  }
  return part;
}

double max_feature_norm(const Dataset& ds) {
  if (ds.samples.empty()) throw std::invalid_argument("max_feature_norm: empty dataset");
  double best = 0.0;
  for (const auto& s : ds.samples) best = std::max(best, s.squared_norm());
  return std::sqrt(best);
}

void scale_max_abs(Dataset& ds) {
  std::vector<double> scale(ds.dim, 0.0);
  for (const auto& s : ds.samples)
    for (const auto& f : s.features) scale[f.index] = std::max(scale[f.index], std::abs(f.value));
  for (auto& s : ds.samples)
    for (auto& f : s.features)
      if (scale[f.index] > 0.0) f.value /= scale[f.index];
}

Dataset subsample(const Dataset& ds, std::size_t count, std::uint64_t seed) {
  if (count == 0 || count > ds.samples.size())
    throw std::invalid_argument("subsample: count must lie in [1, " +
                                std::to_string(ds.samples.size()) + "]");
  std::vector<std::size_t> order(ds.samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_stream(seed, StreamTag::kSubsample);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(count);
  std::sort(order.begin(), order.end());
  Dataset out;
  out.dim = ds.dim;
  out.samples.reserve(count);
  for (std::size_t i : order) out.samples.push_back(ds.samples[i]);
  return out;
}

std::uint64_t fingerprint(const Dataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::uint64_t dim = ds.dim;
  fnv_mix(h, &dim, sizeof dim);
  for (const auto& s : ds.samples) {
    fnv_mix(h, &s.label, sizeof s.label);
    for (const auto& f : s.features) {
      fnv_mix(h, &f.index, sizeof f.index);
      fnv_mix(h, &f.value, sizeof f.value);
    }
    const std::uint32_t sep = 0xffffffffU;
    fnv_mix(h, &sep, sizeof sep);
  }
  return h;
}

}  // namespace dpoem
