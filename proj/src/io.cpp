#include "socnet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace socnet::io {

namespace {

struct Lines {
  std::vector<std::string> lines;
};

Lines read_lines(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  Lines out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.lines.push_back(std::move(line));
    start = end + 1;
  }
  while (!out.lines.empty() && out.lines.back().empty()) out.lines.pop_back();
  return out;
}

std::uint64_t parse_uint(std::string_view field, const std::filesystem::path& path,
                         std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(path, line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& row,
                                                   const std::filesystem::path& path,
                                                   std::size_t line, const char* a, const char* b) {
  const auto fields = split(row, ',');
  if (fields.size() != 2) throw ParseError(path, line, "expected 2 comma-separated fields");
  return {parse_uint(fields[0], path, line, a), parse_uint(fields[1], path, line, b)};
}

void expect_header(const Lines& lines, std::string_view header, const std::filesystem::path& path) {
  if (lines.lines.empty() || lines.lines.front() != header) {
    throw ParseError(path, 1, "missing header '" + std::string(header) + "'");
  }
}

}  // namespace

ParseError::ParseError(const std::filesystem::path& path, std::size_t line,
                       const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::filesystem::path nodes_path(const std::filesystem::path& prefix) {
  return std::filesystem::path(prefix.string() + ".nodes.csv");
}

std::filesystem::path edges_path(const std::filesystem::path& prefix) {
  return std::filesystem::path(prefix.string() + ".edges.csv");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

void write_network(const AttributedGraph& g, const std::filesystem::path& prefix) {
  std::string nodes = "id,class\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    nodes += std::to_string(v);
    nodes += ',';
    nodes += std::to_string(static_cast<int>(g.label(v)));
    nodes += '\n';
  }
  std::string edges = "source,target\n";
  for (const Edge& e : g.sorted_edges()) {
    edges += std::to_string(e.source);
    edges += ',';
    edges += std::to_string(e.target);
    edges += '\n';
  }
  write_text(nodes_path(prefix), nodes);
  write_text(edges_path(prefix), edges);
}

AttributedGraph read_network(const std::filesystem::path& prefix, bool directed) {
  const auto npath = nodes_path(prefix);
  const Lines nodes = read_lines(npath);
  expect_header(nodes, "id,class", npath);
  const std::size_t n = nodes.lines.size() - 1;
  if (n == 0) throw ParseError(npath, 1, "no nodes");
  std::vector<ClassLabel> labels(n, 0);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 1; i < nodes.lines.size(); ++i) {
    const auto [id, cls] = parse_pair(nodes.lines[i], npath, i + 1, "node id", "class");
    if (id >= n) throw ParseError(npath, i + 1, "node ids must be dense 0.." + std::to_string(n - 1));
    if (seen[id]) throw ParseError(npath, i + 1, "duplicate node id " + std::to_string(id));
    if (cls > 1) throw ParseError(npath, i + 1, "class must be 0 or 1, got " + std::to_string(cls));
    seen[id] = 1;
    labels[id] = static_cast<ClassLabel>(cls);
  }

  AttributedGraph g(directed, std::move(labels));
  const auto epath = edges_path(prefix);
  const Lines edges = read_lines(epath);
  expect_header(edges, "source,target", epath);
  for (std::size_t i = 1; i < edges.lines.size(); ++i) {
    const auto [u, v] = parse_pair(edges.lines[i], epath, i + 1, "source", "target");
    if (u >= n || v >= n) throw ParseError(epath, i + 1, "edge references an unknown node");
    if (u == v) throw ParseError(epath, i + 1, "self-loop on node " + std::to_string(u));
    if (!g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v))) {
      throw ParseError(epath, i + 1, "duplicate edge " + std::to_string(u) + "," + std::to_string(v));
    }
  }
  return g;
}

void write_trace(const GrowthTrace& trace, const std::filesystem::path& path) {
  std::string out = "source,target,kind\n";
  for (const EdgeEvent& e : trace.events) {
    out += std::to_string(e.source);
    out += ',';
    out += std::to_string(e.target);
    out += ',';
    out += event_kind_name(e.kind);
    out += '\n';
  }
  write_text(path, out);
}

GrowthTrace read_trace(const std::filesystem::path& path, const AttributedGraph& network) {
  const Lines lines = read_lines(path);
  expect_header(lines, "source,target,kind", path);
  GrowthTrace trace;
  trace.directed = network.directed();
  trace.labels.assign(network.labels().begin(), network.labels().end());
  for (std::size_t i = 1; i < lines.lines.size(); ++i) {
    const auto fields = split(lines.lines[i], ',');
    if (fields.size() != 3) throw ParseError(path, i + 1, "expected source,target,kind");
    EdgeEvent e;
    const auto s = parse_uint(fields[0], path, i + 1, "source");
    const auto t = parse_uint(fields[1], path, i + 1, "target");
    if (s >= network.num_nodes() || t >= network.num_nodes()) {
      throw ParseError(path, i + 1, "event references an unknown node");
    }
    e.source = static_cast<NodeId>(s);
    e.target = static_cast<NodeId>(t);
    try {
      e.kind = parse_event_kind(fields[2]);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(path, i + 1, ex.what());
    }
    trace.events.push_back(e);
  }
  return trace;
}

}  // namespace socnet::io
