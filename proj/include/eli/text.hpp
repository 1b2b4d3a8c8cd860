// Copyright 2026 The ELI Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eli {

/// Error raised by the line-oriented file loaders. Carries the 1-based
/// line number of the offending input line (0 when not line specific).
class LoadError : public std::runtime_error {
 public:
  LoadError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with(std::string_view s, std::string_view prefix);
/// Text without its blank lines and `#` comment lines.
std::string drop_comment_lines(std::string_view text);

/// Utterance tokenization: lowercase, drop punctuation, split on whitespace.
/// Apostrophes and hyphens are removed without splitting ("that's" -> "thats").
std::vector<std::string> tokenize(std::string_view text);

/// Same split as tokenize() but keeps the original letter case.
std::vector<std::string> tokenize_keep_case(std::string_view text);

/// Whole-token decimal parse; nullopt for junk, trailing text or non-finite.
std::optional<double> parse_double(std::string_view tok);
/// Shortest text that reads back to the same double.
std::string format_double(double v);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);

/// Reads a whole file; throws LoadError when it cannot be opened.
std::string read_file(const std::string& path);

/// English word for small counts ("two"); digits beyond twelve.
std::string count_word(std::size_t n);

}  // namespace eli
