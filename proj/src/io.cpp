#include "bis/io.hpp"

#include "bis/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace bis::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view text, std::size_t line_no) {
    try {
        return parse_extended(text);
    } catch (const Error&) {
        throw Error(ErrorKind::InvalidArgument,
                    "line " + std::to_string(line_no) + ": cannot parse '" + std::string(text) + "'");
    }
}

} // namespace

ExtendedReal parse_extended(std::string_view text) {
    text = trim(text);
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity") return kInf;
    if (lower == "-inf" || lower == "-infinity") return -kInf;
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (body.empty() || ec != std::errc() || end != body.data() + body.size() || std::isnan(value)) {
        throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string format_extended(ExtendedReal x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::vector<double> read_observations(std::istream& in, const std::optional<std::string>& column) {
    std::vector<double> out;
    std::optional<std::size_t> column_index;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (!column) {
            out.push_back(parse_number(line, line_no));
            continue;
        }
        const auto fields = split_csv(line);
        if (!column_index) {
            const auto it = std::find(fields.begin(), fields.end(), *column);
            if (it == fields.end()) {
                throw Error(ErrorKind::InvalidArgument, "column '" + *column + "' not in header");
            }
            column_index = static_cast<std::size_t>(it - fields.begin());
            continue;
        }
        if (*column_index >= fields.size()) {
            throw Error(ErrorKind::InvalidArgument,
                        "line " + std::to_string(line_no) + ": missing column '" + *column + "'");
        }
        out.push_back(parse_number(fields[*column_index], line_no));
    }
    if (column && !column_index) {
        throw Error(ErrorKind::InvalidArgument, "no header row found for column '" + *column + "'");
    }
    return out;
}

std::vector<double> read_observations_file(const std::string& path,
                                           const std::optional<std::string>& column) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    return read_observations(in, column);
}

} // namespace bis::io
