#pragma once

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace meshrel::text {

std::vector<std::string_view> split(std::string_view s, char sep);

// Calls fn(line_number, line) for every non-comment, non-blank line.
// Strips a trailing '\r'.
void for_each_record(std::istream& in,
                     const std::function<void(std::size_t, std::string_view)>& fn);

// Shortest decimal representation that round-trips.
std::string format_double(double v);

} // namespace meshrel::text
