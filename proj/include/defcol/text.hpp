#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace defcol {

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_on(std::string_view text, char sep);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
int parse_int(std::string_view tok);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace defcol
