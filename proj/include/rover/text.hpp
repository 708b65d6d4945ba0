#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "rover/errors.hpp"

namespace rover::text {

// One non-blank, comment-stripped input line split on whitespace.
struct Line {
  std::size_t number = 0;  // 1-indexed
  std::vector<std::string> tokens;
};

// Reads every meaningful line of a line-oriented format. `#` starts a
// comment that runs to the end of the line.
std::vector<Line> read_lines(std::istream& in);

// Reads a whole file; throws ParseError(path, 0, ...) when it cannot be opened.
std::vector<Line> read_file(std::string const& path);

std::vector<std::string> split(std::string_view text, char separator);

// Parses `key=value`; throws ParseError when the token does not match.
std::string key_value(std::string const& file, Line const& line, std::size_t index,
                      std::string_view key);

long long to_int(std::string const& file, Line const& line, std::string const& token);

}  // namespace rover::text
