/*
 * Copyright 2026 The qgpr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qgpr/dataset_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "qgpr/errors.hpp"

namespace qgpr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const std::string t = trim(cell);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size())
      throw InvalidArgument("line " + std::to_string(line_no) + ": cannot parse number '" + t + "'");
    out.push_back(v);
  }
  return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Dataset parse_csv_dataset(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> test;
  bool have_test = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      if (body.rfind("test:", 0) == 0) {
        test = parse_row(body.substr(5), line_no);
        have_test = true;
      }
      continue;
    }
    if (header.empty()) {
      std::stringstream ss(t);
      std::string cell;
      while (std::getline(ss, cell, ',')) header.push_back(trim(cell));
      if (header.size() < 2 || header.back() != "y")
        throw InvalidArgument("CSV header must be x1,...,xN,y");
      continue;
    }
    auto row = parse_row(t, line_no);
    if (row.size() != header.size())
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                            " columns");
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw InvalidArgument("CSV dataset has no header");
  if (!have_test) throw InvalidArgument("CSV dataset lacks a '#test:' directive");
  const auto n = static_cast<Eigen::Index>(header.size() - 1);
  Dataset d;
  d.inputs.resize(static_cast<Eigen::Index>(rows.size()), n);
  d.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index c = 0; c < n; ++c) d.inputs(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    d.targets(static_cast<Eigen::Index>(r)) = rows[r].back();
  }
  d.test_point = to_vector(test);
  d.validate();
  return d;
}

Dataset parse_json_dataset(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("invalid JSON dataset: ") + e.what());
  }
  try {
    const auto inputs = j.at("inputs").get<std::vector<std::vector<double>>>();
    const auto targets = j.at("targets").get<std::vector<double>>();
    const auto test = j.at("test_point").get<std::vector<double>>();
    Dataset d;
    const auto n = inputs.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(inputs.front().size());
    d.inputs.resize(static_cast<Eigen::Index>(inputs.size()), n);
    for (std::size_t r = 0; r < inputs.size(); ++r) {
      if (static_cast<Eigen::Index>(inputs[r].size()) != n) throw InvalidArgument("ragged inputs in JSON dataset");
      for (Eigen::Index c = 0; c < n; ++c) d.inputs(static_cast<Eigen::Index>(r), c) = inputs[r][static_cast<std::size_t>(c)];
    }
    d.targets = to_vector(targets);
    d.test_point = to_vector(test);
    d.validate();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON dataset: ") + e.what());
  }
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open dataset '" + path + "'");
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_dataset(ss.str());
  }
  return parse_csv_dataset(in);
}

void write_csv_dataset(std::ostream& out, const Dataset& d) {
  out << std::setprecision(17);
  for (Eigen::Index c = 0; c < d.dimension(); ++c) out << 'x' << (c + 1) << ',';
  out << "y\n";
  out << "#test: ";
  for (Eigen::Index c = 0; c < d.dimension(); ++c) out << (c ? "," : "") << d.test_point(c);
  out << '\n';
  for (Eigen::Index r = 0; r < d.size(); ++r) {
    for (Eigen::Index c = 0; c < d.dimension(); ++c) out << d.inputs(r, c) << ',';
    out << d.targets(r) << '\n';
  }
}

std::string dataset_to_json(const Dataset& d) {
  nlohmann::ordered_json j;
  j["inputs"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < d.size(); ++r) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < d.dimension(); ++c) row.push_back(d.inputs(r, c));
    j["inputs"].push_back(row);
  }
  j["targets"] = std::vector<double>(d.targets.data(), d.targets.data() + d.targets.size());
  j["test_point"] = std::vector<double>(d.test_point.data(), d.test_point.data() + d.test_point.size());
  return j.dump(2);
}

}  // namespace qgpr
