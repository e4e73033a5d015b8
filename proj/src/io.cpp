#include "isogroup/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "isogroup/error.hpp"

namespace isogroup {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<Line> data_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back({number, split(raw)});
  }
  return lines;
}

double to_double(const std::string& tok, std::string_view source, std::size_t line) {
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw InputError(std::string(source) + ":" + std::to_string(line) +
                     ": not a number: '" + tok + "'");
  return v;
}

Matrix lines_to_matrix(const std::vector<Line>& lines, std::string_view source) {
  if (lines.empty()) throw InputError(std::string(source) + ": empty matrix input");
  const std::size_t cols = lines.front().tokens.size();
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto& line = lines[r];
    if (line.tokens.size() != cols)
      throw InputError(std::string(source) + ":" + std::to_string(line.number) + ": row " +
                       std::to_string(r + 1) + " has " + std::to_string(line.tokens.size()) +
                       " entries, expected " + std::to_string(cols));
    Vector row;
    for (const auto& tok : line.tokens) row.push_back(to_double(tok, source, line.number));
    rows.push_back(std::move(row));
  }
  if (rows.size() != cols)
    throw InputError(std::string(source) + ": matrix is " + std::to_string(rows.size()) +
                     "x" + std::to_string(cols) + ", expected square");
  return Matrix::from_rows(rows);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

Graph lines_to_edges(const std::vector<Line>& lines, std::optional<std::size_t> vertices,
                     std::string_view source) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t n = 0;
  for (const auto& line : lines) {
    if (line.tokens.size() != 2)
      throw InputError(std::string(source) + ":" + std::to_string(line.number) +
                       ": expected 'u v'");
    std::size_t uv[2];
    for (int k = 0; k < 2; ++k) {
      const auto& tok = line.tokens[k];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), uv[k]);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw InputError(std::string(source) + ":" + std::to_string(line.number) +
                         ": not a vertex index: '" + tok + "'");
    }
    edges.emplace_back(uv[0], uv[1]);
    n = std::max({n, uv[0] + 1, uv[1] + 1});
  }
  return Graph::from_edges(vertices ? *vertices : n, edges);
}

bool looks_like_adjacency(const std::vector<Line>& lines) {
  const std::size_t n = lines.size();
  for (const auto& line : lines) {
    if (line.tokens.size() != n) return false;
    for (const auto& tok : line.tokens)
      if (tok != "0" && tok != "1") return false;
  }
  return n > 0;
}

Graph graph_from_lines(const std::vector<Line>& lines, GraphFormat format,
                       std::optional<std::size_t> vertices, std::string_view source) {
  if (format == GraphFormat::Matrix) return Graph::from_adjacency(lines_to_matrix(lines, source));
  if (format == GraphFormat::Auto && looks_like_adjacency(lines)) {
    try {
      return Graph::from_adjacency(lines_to_matrix(lines, source));
    } catch (const InputError&) {
      // not a valid adjacency matrix, e.g. "0 1 / 0 1"; read as edges
    }
  }
  return lines_to_edges(lines, vertices, source);
}

}  // namespace

Matrix parse_matrix(std::istream& in, std::string_view source) {
  return lines_to_matrix(data_lines(in), source);
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

Matrix read_matrix(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_matrix(in, path.string());
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_matrix(const Matrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ' ';
      out += format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const std::filesystem::path& path, const Matrix& a, std::string_view header) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  if (!header.empty()) {
    std::istringstream h{std::string(header)};
    std::string line;
    while (std::getline(h, line)) out << "# " << line << '\n';
  }
  out << format_matrix(a);
}

Vector parse_vector(std::string_view text) {
  Vector v;
  for (const auto& tok : split(text)) v.push_back(to_double(tok, "<vector>", 1));
  if (v.empty()) throw InputError("empty vector '" + std::string(text) + "'");
  return v;
}

Graph parse_edge_list(std::istream& in, std::optional<std::size_t> vertices,
                      std::string_view source) {
  return lines_to_edges(data_lines(in), vertices, source);
}

Graph read_graph(const std::filesystem::path& path, GraphFormat format,
                 std::optional<std::size_t> vertices) {
  auto in = open(path);
  return graph_from_lines(data_lines(in), format, vertices, path.string());
}

Graph parse_graph(std::string_view text, GraphFormat format,
                  std::optional<std::size_t> vertices) {
  std::istringstream in{std::string(text)};
  return graph_from_lines(data_lines(in), format, vertices, "<input>");
}

}  // namespace isogroup
