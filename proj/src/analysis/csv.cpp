/**
 * Copyright 2026 The ffbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ffbench/analysis/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "ffbench/datasets/io.hpp"
#include "ffbench/error.hpp"

namespace ffb {

namespace {

constexpr const char* kHeader = "x,y,label,activity";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw FormatError("embedding csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void Embedding2D::validate() const {
  if (labels.empty() && coords.empty() && (!activity || activity->empty())) return;
  if (coords.rank() != 2 || coords.cols() != 2) throw ShapeError("embedding coords must be [n × 2]");
  if (labels.size() != coords.rows()) throw ShapeError("one label per embedded point required");
  if (activity && activity->size() != coords.rows()) throw ShapeError("one activity per embedded point required");
  if (!coords.all_finite()) throw ValidationError("embedding coords must be finite");
}

std::string embedding_to_csv(const Embedding2D& e) {
  e.validate();
  std::string out = std::string(kHeader) + "\n";
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    out += g17(e.coords.at(i, 0)) + "," + g17(e.coords.at(i, 1)) + "," + std::to_string(e.labels[i]) + ",";
    if (e.activity) out += g17((*e.activity)[i]);
    out += "\n";
  }
  return out;
}

Embedding2D parse_embedding_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_fields(line) != std::vector<std::string>{"x", "y", "label", "activity"}) {
    throw FormatError("embedding csv: missing header '" + std::string(kHeader) + "'");
  }
  std::vector<double> xy;
  std::vector<int> labels;
  std::vector<double> activity;
  std::size_t filled = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) throw FormatError("embedding csv line " + std::to_string(line_no) + ": expected 4 fields");
    xy.push_back(parse_real(f[0], line_no));
    xy.push_back(parse_real(f[1], line_no));
    labels.push_back(static_cast<int>(parse_real(f[2], line_no)));
    if (!f[3].empty()) {
      activity.push_back(parse_real(f[3], line_no));
      ++filled;
    }
  }
  if (filled != 0 && filled != labels.size()) throw FormatError("embedding csv: activity column partially filled");
  Embedding2D e;
  const std::size_t n = labels.size();
  e.coords = n == 0 ? Tensor() : Tensor({n, 2}, std::move(xy));
  e.labels = std::move(labels);
  if (filled != 0) e.activity = std::move(activity);
  return e;
}

void emit_embedding_csv(const Embedding2D& e, const std::filesystem::path& path) {
  const std::string s = embedding_to_csv(e);
  write_file(path, Bytes(s.begin(), s.end()));
}

Embedding2D load_embedding_csv(const std::filesystem::path& path) {
  const Bytes b = read_file(path);
  return parse_embedding_csv(std::string(b.begin(), b.end()));
}

}  // namespace ffb
