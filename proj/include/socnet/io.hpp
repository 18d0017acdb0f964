#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "socnet/generators.hpp"
#include "socnet/graph.hpp"

namespace socnet::io {

/// Malformed input file; the message names the file and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Filesystem failure; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `<prefix>.nodes.csv` (header `id,class`) and `<prefix>.edges.csv`
/// (header `source,target`).
std::filesystem::path nodes_path(const std::filesystem::path& prefix);
std::filesystem::path edges_path(const std::filesystem::path& prefix);

/// Nodes by ascending id, edges sorted (undirected as source < target),
/// LF line endings, trailing newline.
void write_network(const AttributedGraph& g, const std::filesystem::path& prefix);
AttributedGraph read_network(const std::filesystem::path& prefix, bool directed);

/// Trace file: header `source,target,kind`, one event per line.
void write_trace(const GrowthTrace& trace, const std::filesystem::path& path);
/// Node count, labels and directedness come from the network.
GrowthTrace read_trace(const std::filesystem::path& path, const AttributedGraph& network);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);

/// Writes `contents` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, std::string_view contents);
std::string read_text(const std::filesystem::path& path);

/// Splits on `sep`, no quoting.
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace socnet::io
