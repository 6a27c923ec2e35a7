#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "witness/grid.hpp"

namespace witness {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical puzzle text:
///
///     {
///       "rows": 1,
///       "cols": 2,
///       "start": [0, 0],
///       "goal": [2, 1],
///       "constraints": [
///         {"square": [0, 0], "triangles": 1},
///         {"square": [1, 0], "triangles": 2}
///       ]
///     }
///
/// Constraints appear row-major. parse_puzzle accepts any JSON with these
/// fields; serialize_puzzle(parse_puzzle(t)) == t for canonical t.
std::string serialize_puzzle(const Puzzle& p);

/// Throws FormatError on malformed text, InvalidPuzzle on invariant violations.
Puzzle parse_puzzle(std::string_view text);

Puzzle load_puzzle(const std::filesystem::path& file);

/// Writes via a temporary sibling and rename, so the destination is never
/// left half-written.
void write_file_atomic(const std::filesystem::path& file, std::string_view contents);

std::string read_file(const std::filesystem::path& file);

struct NamedPuzzle {
    std::string id;
    Puzzle puzzle;
};

/// All *.json puzzle files in a directory (manifest.json excluded), sorted
/// by file name. The id is the file stem.
std::vector<NamedPuzzle> load_puzzle_dir(const std::filesystem::path& dir);

/// Debug rendering: vertices as '+', path edges as '#', constrained squares
/// show their triangle count.
std::string render_ascii(const Puzzle& p, const Path* path = nullptr);

}  // namespace witness
