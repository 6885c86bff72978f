#include "sdesign/design_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "sdesign/errors.hpp"

namespace sdesign {
namespace {

constexpr std::string_view kMagic = "# spherical-design";
constexpr std::string_view kRecipePrefix = "# recipe:";
constexpr double kNoNormCheck = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

template <typename T>
std::vector<T> parse_numbers(std::string_view line, int line_number) {
  std::vector<T> values;
  std::size_t pos = 0;
  while (true) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    const std::string_view token = line.substr(pos, end - pos);
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError(fmt::format("line {}: cannot parse '{}'", line_number, token));
    }
    values.push_back(value);
    pos = end;
  }
  return values;
}

DesignMatrix make_design(Matrix points, int t, std::string recipe) {
  try {
    return DesignMatrix(std::move(points), t, std::move(recipe), kNoNormCheck);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

void check_header(long long d, long long n, long long t) {
  if (d < 1 || n < 1 || t < 1 || t > 3) {
    throw ParseError(fmt::format("invalid header d={} n={} t={}", d, n, t));
  }
  if (d > 100000 || n > 100000000) throw ParseError("header dimensions too large");
}

}  // namespace

std::string render_text(const DesignMatrix& design) {
  std::string out;
  out += kMagic;
  out += '\n';
  out += fmt::format("{} {} {}\n", design.dimension(), design.size(), design.strength());
  out += fmt::format("{} {}\n", kRecipePrefix, design.provenance());
  for (int k = 0; k < design.size(); ++k) {
    for (int r = 0; r <= design.dimension(); ++r) {
      if (r > 0) out += ' ';
      out += fmt::format("{:.17g}", design(r, k));
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const DesignMatrix& design) {
  nlohmann::json points = nlohmann::json::array();
  for (int k = 0; k < design.size(); ++k) {
    nlohmann::json p = nlohmann::json::array();
    for (int r = 0; r <= design.dimension(); ++r) p.push_back(design(r, k));
    points.push_back(std::move(p));
  }
  const nlohmann::json doc = {{"format", "spherical-design"}, {"d", design.dimension()},
                              {"n", design.size()},           {"t", design.strength()},
                              {"recipe", design.provenance()}, {"points", std::move(points)}};
  return doc.dump(1) + "\n";
}

std::string render(const DesignMatrix& design, FileFormat format) {
  return format == FileFormat::Json ? render_json(design) : render_text(design);
}

DesignMatrix parse_text(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != kMagic) {
    throw ParseError(fmt::format("line 1: expected '{}'", kMagic));
  }
  if (lines.size() < 3) throw ParseError("truncated header");
  const auto header = parse_numbers<long long>(lines[1], 2);
  if (header.size() != 3) throw ParseError("line 2: expected 'd n t'");
  const long long d = header[0];
  const long long n = header[1];
  const long long t = header[2];
  check_header(d, n, t);
  const std::string_view recipe_line = trim(lines[2]);
  if (!recipe_line.starts_with(kRecipePrefix)) {
    throw ParseError(fmt::format("line 3: expected '{} ...'", kRecipePrefix));
  }
  const std::string recipe(trim(recipe_line.substr(kRecipePrefix.size())));

  if (static_cast<long long>(lines.size()) - 3 != n) {
    throw ParseError(fmt::format("header promises {} points, body has {} lines", n,
                                 lines.size() - 3));
  }
  Matrix points(static_cast<int>(d + 1), static_cast<int>(n));
  for (int k = 0; k < n; ++k) {
    const int line_number = k + 4;
    const auto row = parse_numbers<double>(lines[static_cast<std::size_t>(k) + 3], line_number);
    if (static_cast<long long>(row.size()) != d + 1) {
      throw ParseError(fmt::format("line {}: expected {} coordinates, found {}", line_number,
                                   d + 1, row.size()));
    }
    for (int r = 0; r <= d; ++r) points(r, k) = row[static_cast<std::size_t>(r)];
  }
  return make_design(std::move(points), static_cast<int>(t), recipe);
}

DesignMatrix parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("invalid JSON: {}", e.what()));
  }
  try {
    if (doc.value("format", std::string{}) != "spherical-design") {
      throw ParseError("JSON design lacks \"format\": \"spherical-design\"");
    }
    const long long d = doc.at("d").get<long long>();
    const long long n = doc.at("n").get<long long>();
    const long long t = doc.at("t").get<long long>();
    check_header(d, n, t);
    const auto& pts = doc.at("points");
    if (!pts.is_array() || static_cast<long long>(pts.size()) != n) {
      throw ParseError(fmt::format("header promises {} points, found {}", n,
                                   pts.is_array() ? pts.size() : 0));
    }
    Matrix points(static_cast<int>(d + 1), static_cast<int>(n));
    for (int k = 0; k < n; ++k) {
      const auto& p = pts[static_cast<std::size_t>(k)];
      if (!p.is_array() || static_cast<long long>(p.size()) != d + 1) {
        throw ParseError(fmt::format("point {}: expected {} coordinates", k, d + 1));
      }
      for (int r = 0; r <= d; ++r) points(r, k) = p[static_cast<std::size_t>(r)].get<double>();
    }
    return make_design(std::move(points), static_cast<int>(t),
                       doc.value("recipe", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("malformed design: {}", e.what()));
  }
}

DesignMatrix parse_design(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

DesignMatrix read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_design(buffer.str());
}

void write_design_file(const std::filesystem::path& path, const DesignMatrix& design,
                       FileFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << render(design, format);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("error while writing {}", path.string()));
}

}  // namespace sdesign
