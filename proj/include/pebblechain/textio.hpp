#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pebblechain/errors.hpp"

namespace pebblechain {

// Strict canonical text primitives shared by the snapshot, ledger and
// disclosure formats. Integers are plain decimal with no sign, no leading
// zeros; any deviation is a parse error so mutated bytes cannot re-encode the
// same value.

std::uint64_t parse_u64(std::string_view text);

std::vector<std::string_view> split_lines(std::string_view text);  // requires trailing \n
std::vector<std::string_view> split_fields(std::string_view line, char sep);

std::string read_file(const std::string &path);
void write_file_atomic(const std::string &path, const std::string &content);

}  // namespace pebblechain
