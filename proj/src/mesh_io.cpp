#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stpnp/error.hpp"
#include "stpnp/mesh.hpp"

namespace stpnp {
namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "mesh line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T number_of(const Line& line, std::size_t i) {
  if (i >= line.tokens.size()) parse_fail(line.number, "missing field");
  const std::string& tok = line.tokens[i];
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    parse_fail(line.number, "cannot parse '" + tok + "'");
  return value;
}

void expect_fields(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    parse_fail(line.number, "expected " + std::to_string(n) + " fields, found " +
                                std::to_string(line.tokens.size()));
}

}  // namespace

Mesh load_mesh(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorKind::Parse, "mesh line 1: empty mesh file");
  const Line& header = lines[0];
  expect_fields(header, 4);
  Mesh mesh;
  mesh.dim = number_of<int>(header, 0);
  const long nv = number_of<long>(header, 1);
  const long ne = number_of<long>(header, 2);
  const long nb = number_of<long>(header, 3);
  if (mesh.dim != 1 && mesh.dim != 2) parse_fail(header.number, "dim must be 1 or 2");
  if (nv < 0 || ne < 0 || nb < 0) parse_fail(header.number, "negative count");
  const std::size_t expected = 1 + static_cast<std::size_t>(nv + ne + nb);
  if (lines.size() < expected)
    parse_fail(lines.back().number, "unexpected end of file");
  if (lines.size() > expected) parse_fail(lines[expected].number, "trailing data");

  std::size_t li = 1;
  for (long v = 0; v < nv; ++v, ++li) {
    const Line& line = lines[li];
    expect_fields(line, static_cast<std::size_t>(mesh.dim));
    Point p{number_of<double>(line, 0), mesh.dim == 2 ? number_of<double>(line, 1) : 0.0};
    mesh.vertices.push_back(p);
  }
  for (long e = 0; e < ne; ++e, ++li) {
    const Line& line = lines[li];
    expect_fields(line, static_cast<std::size_t>(mesh.dim + 2));
    mesh.region.push_back(number_of<int>(line, 0));
    std::array<int, 3> el{-1, -1, -1};
    for (int a = 0; a <= mesh.dim; ++a) el[a] = number_of<int>(line, 1 + a);
    mesh.elements.push_back(el);
  }
  for (long f = 0; f < nb; ++f, ++li) {
    const Line& line = lines[li];
    expect_fields(line, static_cast<std::size_t>(mesh.dim + 1));
    BoundaryFacet bf;
    bf.marker = number_of<int>(line, 0);
    for (int a = 0; a < mesh.dim; ++a) bf.vertices[a] = number_of<int>(line, 1 + a);
    mesh.boundary.push_back(bf);
  }
  mesh.validate();
  return mesh;
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open mesh file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_mesh(ss.str());
}

std::string serialize_mesh(const Mesh& mesh) {
  std::string out;
  char buf[64];
  auto put_double = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
  };
  out += std::to_string(mesh.dim) + " " + std::to_string(mesh.vertices.size()) + " " +
         std::to_string(mesh.elements.size()) + " " + std::to_string(mesh.boundary.size()) + "\n";
  for (const Point& p : mesh.vertices) {
    put_double(p[0]);
    if (mesh.dim == 2) {
      out += ' ';
      put_double(p[1]);
    }
    out += '\n';
  }
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    out += std::to_string(mesh.region[e]);
    for (int a = 0; a <= mesh.dim; ++a) out += " " + std::to_string(mesh.elements[e][a]);
    out += '\n';
  }
  for (const auto& bf : mesh.boundary) {
    out += std::to_string(bf.marker);
    for (int a = 0; a < mesh.dim; ++a) out += " " + std::to_string(bf.vertices[a]);
    out += '\n';
  }
  return out;
}

}  // namespace stpnp
