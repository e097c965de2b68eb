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

// Text format for hidden sets: one integer index per line, strictly
// increasing. The first line may be a header `# n=<universe size>`.

#ifndef SETSIZE_HIDDEN_SET_IO_H_
#define SETSIZE_HIDDEN_SET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "setsize/domain.h"

namespace setsize {

struct LoadedHiddenSet {
  std::vector<Index> elements;
  // From the `# n=` header, when present.
  std::optional<Index> universe_size;
};

// Throws IoError on unreadable input or malformed lines (with line number).
LoadedHiddenSet ParseHiddenSet(std::istream& in);
LoadedHiddenSet LoadHiddenSetFile(const std::filesystem::path& path);

// Writes the header and one index per line.
void WriteHiddenSet(std::ostream& out, const HiddenSet& set);
void SaveHiddenSetFile(const std::filesystem::path& path, const HiddenSet& set);

}  // namespace setsize

#endif  // SETSIZE_HIDDEN_SET_IO_H_
