#include "rover/text.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rover::text {

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string token; words >> token;) {
      line.tokens.push_back(std::move(token));
    }
    if (!line.tokens.empty()) {
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

std::vector<Line> read_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  return read_lines(in);
}

std::vector<std::string> split(std::string_view text, char separator) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(separator, start);
    parts.emplace_back(text.substr(start, end - start));
    if (end == std::string_view::npos) {
      break;
    }
    start = end + 1;
  }
  return parts;
}

std::string key_value(std::string const& file, Line const& line, std::size_t index,
                      std::string_view key) {
  if (index >= line.tokens.size()) {
    throw ParseError(file, line.number, "expected " + std::string(key) + "=<value>");
  }
  std::string const& token = line.tokens[index];
  if (token.size() <= key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
      token[key.size()] != '=') {
    throw ParseError(file, line.number,
                     "expected " + std::string(key) + "=<value>, got '" + token + "'");
  }
  return token.substr(key.size() + 1);
}

long long to_int(std::string const& file, Line const& line, std::string const& token) {
  long long value = 0;
  auto const* begin = token.data();
  auto const* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(file, line.number, "expected an integer, got '" + token + "'");
  }
  return value;
}

}  // namespace rover::text
