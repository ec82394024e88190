#include "meshrel/text.hpp"

#include <fmt/format.h>

namespace meshrel::text {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

void for_each_record(std::istream& in,
                     const std::function<void(std::size_t, std::string_view)>& fn)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (!view.empty() && view.back() == '\r')
            view.remove_suffix(1);
        if (view.empty() || view.front() == '#')
            continue;
        fn(line_no, view);
    }
}

std::string format_double(double v)
{
    return fmt::format("{}", v);
}

} // namespace meshrel::text
