#include "dtssfn/model_io.hpp"

#include "dtssfn/config.hpp"
#include "dtssfn/error.hpp"

#include <json.hpp>
#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dtssfn {

using nlohmann::json;

namespace {

constexpr const char* kMagic = "DTSSFN-MODEL";

json matrix_to_json(const Matrix& m) {
  std::vector<double> data(m.data(), m.data() + m.size());
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size()) {
    throw ParseError("model: matrix size does not match its data");
  }
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

json vector_to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector vector_from_json(const json& j) {
  const auto data = j.get<std::vector<double>>();
  return Vector::Map(data.data(), static_cast<Eigen::Index>(data.size()));
}

std::string mask_to_string(const Mask& mask) {
  std::string s(mask.size(), '0');
  for (std::size_t i = 0; i < mask.size(); ++i) s[i] = mask[i] ? '1' : '0';
  return s;
}

Mask mask_from_string(const std::string& s) {
  Mask m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ParseError("model: bad prune mask");
    m[i] = s[i] == '1';
  }
  return m;
}

TransformKind kind_from_json(const json& j) {
  const auto k = parse_transform_kind(j.get<std::string>());
  if (!k) throw ParseError("model: unknown transform '" + j.get<std::string>() + "'");
  return *k;
}

std::string crc_hex(const std::string& payload) {
  const uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

}  // namespace

std::string serialize_model(const NetworkModel& model) {
  json layers = json::array();
  for (const auto& l : model.layers) {
    layers.push_back(json{{"transform", to_string(l.transform)},
                          {"in_dim", l.in_dim},
                          {"out_dim", l.out_dim},
                          {"prune_mask", mask_to_string(l.prune_mask)},
                          {"output_matrix_prev", matrix_to_json(l.output_matrix_prev)}});
  }
  json log = json::array();
  for (const auto& e : model.log) {
    log.push_back(json{{"transform", to_string(e.chosen)},
                       {"out_dim", e.out_dim},
                       {"cost", e.cost},
                       {"lfp_kept", e.lfp_kept},
                       {"train_accuracy", e.train_accuracy}});
  }
  json pre{{"mode", to_string(model.preprocessor.mode)}};
  if (model.preprocessor.mode == PreprocessMode::ZScore) {
    pre["mean"] = vector_to_json(model.preprocessor.mean);
    pre["scale"] = vector_to_json(model.preprocessor.scale);
  }
  const json payload{{"p", model.p},
                     {"q", model.q},
                     {"class_names", model.class_names},
                     {"hyperparameters", hyperparams_to_json(model.hp)},
                     {"preprocessing", pre},
                     {"layers", layers},
                     {"final_output", matrix_to_json(model.final_output)},
                     {"cost_trace", model.cost_trace},
                     {"train_accuracy0", model.train_accuracy0},
                     {"log", log},
                     {"warning", model.warning}};
  const std::string body = payload.dump();
  return std::string(kMagic) + " " + std::to_string(kModelFormatVersion) + " " + crc_hex(body) + "\n" + body + "\n";
}

NetworkModel deserialize_model(const std::string& text) {
  const auto nl = text.find('\n');
  if (nl == std::string::npos) throw ParseError("model: missing header line");
  std::istringstream header(text.substr(0, nl));
  std::string magic, crc;
  int version = 0;
  if (!(header >> magic >> version >> crc) || magic != kMagic) throw ParseError("model: not a model container");
  if (version != kModelFormatVersion) {
    throw ParseError("model: unsupported container version " + std::to_string(version));
  }
  std::string body = text.substr(nl + 1);
  if (!body.empty() && body.back() == '\n') body.pop_back();
  if (crc_hex(body) != crc) throw ChecksumError("model: checksum mismatch, the container is corrupted");

  try {
    const json j = json::parse(body);
    NetworkModel m;
    m.p = j.at("p").get<std::size_t>();
    m.q = j.at("q").get<std::size_t>();
    m.class_names = j.at("class_names").get<std::vector<std::string>>();
    m.hp = hyperparams_from_json(j.at("hyperparameters"));
    const json& pre = j.at("preprocessing");
    m.preprocessor.mode = parse_preprocess_mode(pre.at("mode").get<std::string>());
    if (m.preprocessor.mode == PreprocessMode::ZScore) {
      m.preprocessor.mean = vector_from_json(pre.at("mean"));
      m.preprocessor.scale = vector_from_json(pre.at("scale"));
    }
    for (const auto& l : j.at("layers")) {
      LayerRecord rec;
      rec.transform = kind_from_json(l.at("transform"));
      rec.in_dim = l.at("in_dim").get<std::size_t>();
      rec.out_dim = l.at("out_dim").get<std::size_t>();
      rec.prune_mask = mask_from_string(l.at("prune_mask").get<std::string>());
      rec.output_matrix_prev = matrix_from_json(l.at("output_matrix_prev"));
      rec.plan = plan(rec.transform, rec.in_dim);
      try {
        rec.check_consistency();
      } catch (const DimensionError& e) {
        throw ParseError(std::string("model: ") + e.what());
      }
      m.layers.push_back(std::move(rec));
    }
    m.final_output = matrix_from_json(j.at("final_output"));
    m.cost_trace = j.at("cost_trace").get<std::vector<double>>();
    m.train_accuracy0 = j.at("train_accuracy0").get<double>();
    for (const auto& e : j.at("log")) {
      LayerLog entry;
      entry.chosen = kind_from_json(e.at("transform"));
      entry.out_dim = e.at("out_dim").get<std::size_t>();
      entry.cost = e.at("cost").get<double>();
      entry.lfp_kept = e.at("lfp_kept").get<bool>();
      entry.train_accuracy = e.at("train_accuracy").get<double>();
      m.log.push_back(std::move(entry));
    }
    m.warning = j.at("warning").get<std::string>();
    const std::size_t last = m.layers.empty() ? m.p : m.layers.back().out_dim;
    if (static_cast<std::size_t>(m.final_output.rows()) != m.q ||
        static_cast<std::size_t>(m.final_output.cols()) != last) {
      throw ParseError("model: final output matrix has the wrong shape");
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const NetworkModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << serialize_model(model);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

NetworkModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return deserialize_model(s.str());
}

}  // namespace dtssfn
