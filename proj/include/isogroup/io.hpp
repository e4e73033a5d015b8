#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "isogroup/graphsym.hpp"
#include "isogroup/matrix.hpp"

namespace isogroup {

// Matrix text format: one row per line, entries separated by whitespace
// and/or commas, '#' lines are comments. Blank lines are skipped.

/// Parses a square matrix. Throws InputError naming the offending line for
/// ragged rows, non-numeric tokens, non-square shape or empty input.
Matrix parse_matrix(std::istream& in, std::string_view source = "<input>");
Matrix parse_matrix(std::string_view text);
Matrix read_matrix(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
/// Inverse of parse_matrix: one row per line, space separated.
std::string format_matrix(const Matrix& a);
void write_matrix(const std::filesystem::path& path, const Matrix& a,
                  std::string_view header = {});

/// Comma/whitespace separated list of numbers, e.g. "1,1,1".
Vector parse_vector(std::string_view text);

enum class GraphFormat { Auto, Edges, Matrix };

/// Edge list: "u v" per line, 0-indexed. The vertex count is
/// max index + 1 unless `vertices` is given.
Graph parse_edge_list(std::istream& in, std::optional<std::size_t> vertices = std::nullopt,
                      std::string_view source = "<input>");

/// Auto picks the matrix reading when the rows form an n x n block of 0/1
/// entries and the edge-list reading otherwise.
Graph read_graph(const std::filesystem::path& path, GraphFormat format = GraphFormat::Auto,
                 std::optional<std::size_t> vertices = std::nullopt);
Graph parse_graph(std::string_view text, GraphFormat format = GraphFormat::Auto,
                  std::optional<std::size_t> vertices = std::nullopt);

}  // namespace isogroup
