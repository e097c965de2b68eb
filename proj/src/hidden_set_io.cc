// Copyright 2026 The setsize Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "setsize/hidden_set_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace setsize {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Index ParseIndex(std::string_view text, int line_number) {
  Index value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw IoError("line " + std::to_string(line_number) +
                  ": expected an integer index, got '" + std::string(text) +
                  "'");
  }
  return value;
}

}  // namespace

LoadedHiddenSet ParseHiddenSet(std::istream& in) {
  LoadedHiddenSet out;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line_number != 1) {
        throw IoError("line " + std::to_string(line_number) +
                      ": header allowed only on the first line");
      }
      std::string_view header = Trim(line.substr(1));
      if (!header.starts_with("n=")) {
        throw IoError("line 1: header must read '# n=<universe size>'");
      }
      out.universe_size = ParseIndex(Trim(header.substr(2)), line_number);
      continue;
    }
    const Index value = ParseIndex(line, line_number);
    if (!out.elements.empty() && value <= out.elements.back()) {
      throw IoError("line " + std::to_string(line_number) +
                    ": indices must be strictly increasing");
    }
    if (value < 1) {
      throw IoError("line " + std::to_string(line_number) +
                    ": indices are 1-based");
    }
    out.elements.push_back(value);
  }
  if (in.bad()) throw IoError("read error");
  return out;
}

LoadedHiddenSet LoadHiddenSetFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return ParseHiddenSet(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void WriteHiddenSet(std::ostream& out, const HiddenSet& set) {
  out << "# n=" << set.universe_size() << '\n';
  for (Index x : set.elements()) out << x << '\n';
}

void SaveHiddenSetFile(const std::filesystem::path& path,
                       const HiddenSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  WriteHiddenSet(out, set);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace setsize
