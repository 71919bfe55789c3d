#include "dtssfn/data.hpp"

#include "dtssfn/error.hpp"
#include "dtssfn/rng.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dtssfn {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

// Splits CSV text into records; each record remembers its starting line.
struct CsvRecord {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<CsvRecord> parse_csv(const std::string& text, char delim, const std::filesystem::path& path) {
  std::vector<CsvRecord> records;
  CsvRecord cur{1, {}};
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes an empty line from a line with one empty field
  std::size_t line = 1;

  auto end_record = [&] {
    if (field_started || !cur.fields.empty()) {
      cur.fields.push_back(std::move(field));
      records.push_back(std::move(cur));
    }
    field.clear();
    field_started = false;
    cur = CsvRecord{line + 1, {}};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw ParseError(where(path, line) + "quote inside an unquoted field");
      in_quotes = true;
      field_started = true;
    } else if (c == delim) {
      cur.fields.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError(where(path, cur.line) + "unterminated quoted field");
  end_record();
  return records;
}

}  // namespace

RawTable load_csv(const std::filesystem::path& path, const CsvOptions& opts) {
  const auto records = parse_csv(read_text(path), opts.delimiter, path);
  if (records.empty()) throw ParseError(path.string() + ": no rows");

  const std::size_t width = records.front().fields.size();
  if (width < 2) throw ParseError(where(path, records.front().line) + "need at least one feature and a label");

  std::size_t label_col = 0;
  if (!opts.label_name.empty()) {
    if (!opts.has_header) throw ConfigError("csv: a label column name needs a header row");
    const auto& hdr = records.front().fields;
    const auto it = std::find(hdr.begin(), hdr.end(), opts.label_name);
    if (it == hdr.end()) throw ParseError(path.string() + ": no column named '" + opts.label_name + "'");
    label_col = static_cast<std::size_t>(it - hdr.begin());
  } else {
    const long idx = opts.label_index < 0 ? static_cast<long>(width) + opts.label_index : opts.label_index;
    if (idx < 0 || idx >= static_cast<long>(width)) {
      throw ConfigError("csv: label column " + std::to_string(opts.label_index) + " outside " +
                        std::to_string(width) + " columns");
    }
    label_col = static_cast<std::size_t>(idx);
  }

  const std::size_t first = opts.has_header ? 1 : 0;
  const std::size_t n = records.size() - first;
  RawTable table;
  table.x.resize(static_cast<Eigen::Index>(width - 1), static_cast<Eigen::Index>(n));
  table.labels.reserve(n);
  for (std::size_t r = first; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      throw ParseError(where(path, rec.line) + "expected " + std::to_string(width) + " fields, found " +
                       std::to_string(rec.fields.size()));
    }
    const auto col = static_cast<Eigen::Index>(r - first);
    Eigen::Index row = 0;
    for (std::size_t f = 0; f < width; ++f) {
      if (f == label_col) continue;
      double v = 0.0;
      if (!parse_double(rec.fields[f], v)) {
        throw ParseError(where(path, rec.line) + "field " + std::to_string(f + 1) + " is not a finite number: '" +
                         rec.fields[f] + "'");
      }
      table.x(row++, col) = v;
    }
    table.labels.push_back(rec.fields[label_col]);
  }
  return table;
}

RawTable load_libsvm(const std::filesystem::path& path, std::size_t min_features) {
  const std::string text = read_text(path);
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<std::string> labels;
  std::size_t width = min_features;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string label;
    if (!(tokens >> label)) continue;
    std::vector<std::pair<std::size_t, double>> entries;
    std::string tok;
    std::size_t last = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0) throw ParseError(where(path, lineno) + "malformed token '" + tok + "'");
      std::size_t idx = 0;
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + colon, idx);
      double v = 0.0;
      if (ec != std::errc{} || p != tok.data() + colon || idx == 0 ||
          !parse_double(std::string_view(tok).substr(colon + 1), v)) {
        throw ParseError(where(path, lineno) + "malformed token '" + tok + "'");
      }
      if (idx <= last) {
        throw ParseError(where(path, lineno) + "index " + std::to_string(idx) + (idx == last ? " repeated" : " out of order"));
      }
      last = idx;
      entries.emplace_back(idx, v);
    }
    width = std::max(width, last);
    rows.push_back(std::move(entries));
    labels.push_back(label);
  }
  if (rows.empty()) throw ParseError(path.string() + ": no samples");

  RawTable table;
  table.x = Matrix::Zero(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (const auto& [idx, v] : rows[j]) table.x(static_cast<Eigen::Index>(idx - 1), static_cast<Eigen::Index>(j)) = v;
  }
  table.labels = std::move(labels);
  return table;
}

namespace {

std::vector<unsigned char> read_maybe_gzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  std::vector<unsigned char> out;
  std::array<unsigned char, 1 << 16> buf{};
  for (;;) {
    const int got = gzread(f, buf.data(), static_cast<unsigned>(buf.size()));
    if (got < 0) {
      int errnum = 0;
      const std::string msg = gzerror(f, &errnum);
      gzclose(f);
      throw IoError("reading '" + path.string() + "': " + msg);
    }
    if (got == 0) break;
    out.insert(out.end(), buf.begin(), buf.begin() + got);
  }
  gzclose(f);
  return out;
}

std::uint32_t be32(const std::vector<unsigned char>& b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) |
         std::uint32_t{b[at + 3]};
}

}  // namespace

RawTable load_idx(const std::filesystem::path& images, const std::filesystem::path& labels) {
  const auto img = read_maybe_gzip(images);
  const auto lab = read_maybe_gzip(labels);
  if (img.size() < 16) throw ParseError(images.string() + ": truncated header");
  if (lab.size() < 8) throw ParseError(labels.string() + ": truncated header");
  if (be32(img, 0) != 0x00000803u) throw ParseError(images.string() + ": bad magic, not an IDX image file");
  if (be32(lab, 0) != 0x00000801u) throw ParseError(labels.string() + ": bad magic, not an IDX label file");

  const std::size_t n = be32(img, 4), rows = be32(img, 8), cols = be32(img, 12);
  const std::size_t nl = be32(lab, 4);
  if (n != nl) {
    throw ParseError("IDX count mismatch: " + std::to_string(n) + " images, " + std::to_string(nl) + " labels");
  }
  const std::size_t pixels = rows * cols;
  if (pixels == 0) throw ParseError(images.string() + ": zero-sized images");
  if (img.size() != 16 + n * pixels) {
    throw ParseError(images.string() + ": expected " + std::to_string(16 + n * pixels) + " bytes, found " +
                     std::to_string(img.size()));
  }
  if (lab.size() != 8 + n) {
    throw ParseError(labels.string() + ": expected " + std::to_string(8 + n) + " bytes, found " +
                     std::to_string(lab.size()));
  }

  RawTable table;
  table.x.resize(static_cast<Eigen::Index>(pixels), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const unsigned char* src = img.data() + 16 + j * pixels;
    for (std::size_t i = 0; i < pixels; ++i) {
      table.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = src[i] / 255.0;
    }
  }
  table.labels.reserve(n);
  for (std::size_t j = 0; j < n; ++j) table.labels.push_back(std::to_string(lab[8 + j]));
  return table;
}

void export_csv(const std::filesystem::path& path, const RawTable& table, char delimiter) {
  if (static_cast<std::size_t>(table.x.cols()) != table.labels.size()) {
    throw DimensionError("export_csv: label count differs from sample count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  std::array<char, 32> buf{};
  for (Eigen::Index j = 0; j < table.x.cols(); ++j) {
    for (Eigen::Index i = 0; i < table.x.rows(); ++i) {
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), table.x(i, j));
      out.write(buf.data(), res.ptr - buf.data());
      out << delimiter;
    }
    const std::string& label = table.labels[static_cast<std::size_t>(j)];
    if (label.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string::npos) {
      std::string quoted = "\"";
      for (char c : label) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      out << quoted << '"';
    } else {
      out << label;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Matrix one_hot(const Labels& labels, std::size_t q) {
  if (q == 0) throw DimensionError("one_hot: q must be positive");
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] >= q) {
      throw DimensionError("one_hot: label " + std::to_string(labels[j]) + " outside [0, " + std::to_string(q) + ")");
    }
    t(static_cast<Eigen::Index>(labels[j]), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return t;
}

std::size_t LabelMap::add(const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.push_back(name);
  return names.size() - 1;
}

std::size_t LabelMap::id(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ParseError("unknown class label '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

namespace {

Matrix pad_rows(const Matrix& x, Eigen::Index rows) {
  if (x.rows() == rows) return x;
  Matrix out = Matrix::Zero(rows, x.cols());
  out.topRows(x.rows()) = x;
  return out;
}

}  // namespace

Dataset make_dataset(const RawTable& train, const RawTable& test) {
  for (const RawTable* t : {&train, &test}) {
    if (static_cast<std::size_t>(t->x.cols()) != t->labels.size()) {
      throw DimensionError("dataset: label count differs from sample count");
    }
  }
  LabelMap map;
  Dataset d;
  for (const auto& l : train.labels) d.y_train.push_back(map.add(l));
  for (const auto& l : test.labels) d.y_test.push_back(map.add(l));
  d.class_names = map.names;
  const Eigen::Index p = std::max(train.x.rows(), test.x.rows());
  d.x_train = pad_rows(train.x, p);
  d.x_test = pad_rows(test.x, p);
  d.t_train = one_hot(d.y_train, d.q());
  d.t_test = one_hot(d.y_test, d.q());
  return d;
}

SplitIndices split_indices(const std::vector<std::string>& labels, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("split fraction must lie in (0, 1)");
  const std::size_t n = labels.size();
  SplitIndices out;
  Rng rng(seed);

  std::map<std::string, std::vector<std::size_t>> by_class;
  std::vector<std::string> order;  // first appearance
  for (std::size_t j = 0; j < n; ++j) {
    auto [it, inserted] = by_class.try_emplace(labels[j]);
    if (inserted) order.push_back(labels[j]);
    it->second.push_back(j);
  }
  const bool can_stratify =
      std::all_of(by_class.begin(), by_class.end(), [](const auto& kv) { return kv.second.size() >= 2; });
  const auto total = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));

  if (!can_stratify) {
    out.stratified = false;
    out.warning = "a class has a single sample; split is not stratified";
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    rng.shuffle(all);
    out.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(total));
    out.test.assign(all.begin() + static_cast<std::ptrdiff_t>(total), all.end());
  } else {
    // Largest remainder: floor quotas, then hand out the rest by fractional part.
    std::vector<std::size_t> quota(order.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < order.size(); ++c) {
      const double exact = fraction * static_cast<double>(by_class[order[c]].size());
      quota[c] = static_cast<std::size_t>(std::floor(exact));
      assigned += quota[c];
      rem.emplace_back(exact - std::floor(exact), c);
    }
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < total && k < rem.size(); ++k, ++assigned) ++quota[rem[k].second];
    for (std::size_t c = 0; c < order.size(); ++c) {
      auto idx = by_class[order[c]];
      rng.shuffle(idx);
      out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(quota[c]));
      out.test.insert(out.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(quota[c]), idx.end());
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

RawTable take_columns(const RawTable& table, const std::vector<std::size_t>& idx) {
  RawTable out;
  out.x.resize(table.x.rows(), static_cast<Eigen::Index>(idx.size()));
  out.labels.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= table.labels.size()) throw DimensionError("take_columns: index out of range");
    out.x.col(static_cast<Eigen::Index>(k)) = table.x.col(static_cast<Eigen::Index>(idx[k]));
    out.labels.push_back(table.labels[idx[k]]);
  }
  return out;
}

std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw ConfigError("subsample: asked for " + std::to_string(k) + " of " + std::to_string(n) + " samples");
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  Rng rng(seed);
  rng.shuffle(all);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

RawTable synth_blobs(std::size_t classes, std::size_t dims, std::size_t samples_per_class, double spread,
                     std::uint64_t seed) {
  if (classes == 0 || dims == 0 || samples_per_class == 0) throw ConfigError("synth_blobs: sizes must be positive");
  if (!(spread >= 0.0) || !std::isfinite(spread)) throw ConfigError("synth_blobs: spread must be >= 0");
  Rng rng(seed);
  const auto p = static_cast<Eigen::Index>(dims);
  Matrix centers(p, static_cast<Eigen::Index>(classes));
  for (Eigen::Index c = 0; c < centers.cols(); ++c) {
    for (Eigen::Index i = 0; i < p; ++i) centers(i, c) = 2.0 * rng.uniform() - 1.0;
  }
  RawTable table;
  table.x.resize(p, static_cast<Eigen::Index>(classes * samples_per_class));
  Eigen::Index col = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t s = 0; s < samples_per_class; ++s, ++col) {
      for (Eigen::Index i = 0; i < p; ++i) {
        table.x(i, col) = centers(i, static_cast<Eigen::Index>(c)) + spread * rng.normal();
      }
      table.labels.push_back(std::to_string(c));
    }
  }
  return table;
}

}  // namespace dtssfn
