#include "pebblechain/textio.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace pebblechain {

std::uint64_t parse_u64(std::string_view text) {
  if (text.empty() || text.size() > 20) throw parse_error("malformed integer");
  if (text.size() > 1 && text[0] == '0') throw parse_error("leading zero in integer");
  std::uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw parse_error("malformed integer");
    std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
      throw parse_error("integer out of range");
    value = value * 10 + digit;
  }
  return value;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.empty() || text.back() != '\n')
    throw parse_error("file must end with a newline");
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw error("cannot replace " + path + ": " + std::strerror(errno));
}

}  // namespace pebblechain
