#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sdesign/design_matrix.hpp"

namespace sdesign {

enum class FileFormat { Text, Json };

// Text layout:
//
//   # spherical-design
//   d n t
//   # recipe: <provenance>
//   x_0 x_1 ... x_d        (one line per point, n lines)
//
// Entries are written with 17 significant digits, so parsing the rendered
// text reproduces the matrix bit for bit.
std::string render_text(const DesignMatrix& design);

// {"format": "spherical-design", "d": .., "n": .., "t": .., "recipe": "..",
//  "points": [[x_0, .., x_d], ..]}
std::string render_json(const DesignMatrix& design);

std::string render(const DesignMatrix& design, FileFormat format);

// Both parsers throw ParseError on malformed input or header/body
// mismatch. Column norms are not enforced on load so that verification can
// report them.
DesignMatrix parse_text(std::string_view text);
DesignMatrix parse_json(std::string_view text);

// Picks the parser from the first non-blank character ('{' means JSON).
DesignMatrix parse_design(std::string_view text);

DesignMatrix read_design_file(const std::filesystem::path& path);

// Throws std::runtime_error when the file cannot be written.
void write_design_file(const std::filesystem::path& path, const DesignMatrix& design,
                       FileFormat format);

}  // namespace sdesign
