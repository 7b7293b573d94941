// Copyright 2026 The mrcuts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrcuts/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mrcuts {

using json = nlohmann::json;

bool operator==(const Instance& lhs, const Instance& rhs) {
  if (lhs.n != rhs.n || lhs.a != rhs.a || lhs.c != rhs.c || lhs.d != rhs.d ||
      lhs.sigma0 != rhs.sigma0 || lhs.omega != rhs.omega ||
      lhs.cardinality != rhs.cardinality ||
      lhs.covariance.has_value() != rhs.covariance.has_value()) {
    return false;
  }
  if (lhs.covariance) {
    const auto& l = *lhs.covariance;
    const auto& r = *rhs.covariance;
    if (l.rows() != r.rows() || l.cols() != r.cols()) return false;
    return (l.array() == r.array()).all();
  }
  return true;
}

namespace {

bool covariance_is_psd(const Eigen::MatrixXd& v) {
  const double max_diag = v.diagonal().maxCoeff();
  const double jitter = 1e-8 * std::max(max_diag, 0.0) + 1e-300;
  Eigen::MatrixXd shifted = v;
  shifted.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  return llt.info() == Eigen::Success;
}

}  // namespace

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  const auto n = static_cast<std::size_t>(std::max(inst.n, 0));
  if (inst.n <= 0) out.push_back("n must be positive");
  if (inst.a.size() != n) out.push_back("a must have n entries");
  if (inst.c.size() != n) out.push_back("c must have n entries");
  if (inst.d.size() != n) out.push_back("d must have n entries");
  for (std::size_t k = 0; k < inst.a.size(); ++k) {
    if (!(inst.a[k] > 0.0) || !std::isfinite(inst.a[k])) {
      out.push_back("a[" + std::to_string(k) + "] must be positive");
    }
  }
  for (std::size_t k = 0; k < inst.c.size(); ++k) {
    if (!std::isfinite(inst.c[k])) {
      out.push_back("c[" + std::to_string(k) + "] must be finite");
    }
  }
  for (std::size_t k = 0; k < inst.d.size(); ++k) {
    if (!std::isfinite(inst.d[k])) {
      out.push_back("d[" + std::to_string(k) + "] must be finite");
    }
  }
  if (!(inst.sigma0 >= 0.0) || !std::isfinite(inst.sigma0)) {
    out.push_back("sigma0 must be nonnegative");
  }
  if (!(inst.omega > 0.0) || !std::isfinite(inst.omega)) {
    out.push_back("omega must be positive");
  }
  if (inst.cardinality && (*inst.cardinality < 1 || *inst.cardinality > inst.n)) {
    out.push_back("cardinality out of range");
  }
  if (inst.covariance) {
    const auto& v = *inst.covariance;
    if (v.rows() != inst.n || v.cols() != inst.n) {
      out.push_back("covariance must be n x n");
    } else if (!v.allFinite()) {
      out.push_back("covariance must be finite");
    } else {
      if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        out.push_back("covariance must be symmetric");
      } else if (!covariance_is_psd(v)) {
        out.push_back("covariance must be positive semidefinite");
      }
    }
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += "; ";
    s += p;
  }
  return s;
}

std::vector<double> read_vector(const json& doc, const char* key, int n) {
  const json& v = doc.at(key);
  if (!v.is_array()) {
    throw ParseError(std::string("field '") + key + "': expected an array");
  }
  if (static_cast<int>(v.size()) != n) {
    throw ParseError(std::string("field '") + key + "': expected " +
                     std::to_string(n) + " entries, got " +
                     std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) {
      throw ParseError(std::string("field '") + key + "[" + std::to_string(k) +
                       "]': expected a number");
    }
    out.push_back(v[k].get<double>());
  }
  return out;
}

double read_number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) {
    throw ParseError(std::string("field '") + key + "': expected a number");
  }
  return v.get<double>();
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid instance: " + join(violations)),
      violations_(std::move(violations)) {}

Instance read_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("line 1: expected a JSON object");

  static const std::set<std::string> known = {
      "n", "a", "c", "d", "sigma0", "omega", "cardinality", "covariance",
      "bounds"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ParseError("unknown field '" + key + "'");
  }
  for (const char* key : {"n", "a", "c", "d", "sigma0", "omega"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("missing field '") + key + "'");
    }
  }

  Instance inst;
  if (!doc["n"].is_number_integer()) {
    throw ParseError("field 'n': expected an integer");
  }
  inst.n = doc["n"].get<int>();
  if (inst.n <= 0) throw ParseError("field 'n': must be positive");
  inst.a = read_vector(doc, "a", inst.n);
  inst.c = read_vector(doc, "c", inst.n);
  inst.d = read_vector(doc, "d", inst.n);
  inst.sigma0 = read_number(doc, "sigma0");
  inst.omega = read_number(doc, "omega");
  if (doc.contains("cardinality")) {
    if (!doc["cardinality"].is_number_integer()) {
      throw ParseError("field 'cardinality': expected an integer");
    }
    inst.cardinality = doc["cardinality"].get<int>();
  }
  if (doc.contains("covariance")) {
    const json& rows = doc["covariance"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != inst.n) {
      throw ParseError("field 'covariance': expected n rows");
    }
    Eigen::MatrixXd v(inst.n, inst.n);
    for (int i = 0; i < inst.n; ++i) {
      const std::string key = "covariance[" + std::to_string(i) + "]";
      json wrapper = {{key, rows[i]}};
      const auto row = read_vector(wrapper, key.c_str(), inst.n);
      for (int j = 0; j < inst.n; ++j) v(i, j) = row[j];
    }
    inst.covariance = std::move(v);
  }
  if (doc.contains("bounds")) {
    const auto upper = read_vector(doc, "bounds", inst.n);
    for (std::size_t k = 0; k < upper.size(); ++k) {
      if (!(upper[k] > 0.0)) {
        throw ParseError("field 'bounds[" + std::to_string(k) +
                         "]': must be positive");
      }
    }
    inst = normalize_bounds(std::move(inst), upper);
  }

  auto violations = validate(inst);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return inst;
}

std::string write_instance(const Instance& inst) {
  // nlohmann emits the shortest decimal that round-trips each double.
  json doc;
  doc["n"] = inst.n;
  doc["a"] = inst.a;
  doc["c"] = inst.c;
  doc["d"] = inst.d;
  doc["sigma0"] = inst.sigma0;
  doc["omega"] = inst.omega;
  if (inst.cardinality) doc["cardinality"] = *inst.cardinality;
  if (inst.covariance) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < inst.covariance->rows(); ++i) {
      std::vector<double> row(inst.covariance->cols());
      for (Eigen::Index j = 0; j < inst.covariance->cols(); ++j) {
        row[j] = (*inst.covariance)(i, j);
      }
      rows.push_back(row);
    }
    doc["covariance"] = std::move(rows);
  }
  return doc.dump(1) + "\n";
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return read_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << write_instance(inst);
}

Instance normalize_bounds(Instance inst, const std::vector<double>& upper) {
  if (static_cast<int>(upper.size()) != inst.n) {
    throw std::invalid_argument("bounds must have n entries");
  }
  for (int i = 0; i < inst.n; ++i) {
    inst.a[i] *= upper[i] * upper[i];
    inst.d[i] *= upper[i];
  }
  if (inst.covariance) {
    for (int i = 0; i < inst.n; ++i) {
      for (int j = 0; j < inst.n; ++j) {
        (*inst.covariance)(i, j) *= upper[i] * upper[j];
      }
    }
  }
  return inst;
}

}  // namespace mrcuts
