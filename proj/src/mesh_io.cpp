#include "radcov/mesh_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "radcov/numeric_text.hpp"

namespace radcov {

namespace {

std::string describe(const std::string& path, std::size_t offset,
                     const std::string& message) {
  return path + ": byte " + std::to_string(offset) + ": " + message;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

/// Whitespace-separated token scanner that remembers where each token
/// starts, so errors can point at the exact byte.
struct Scanner {
  const std::string& text;
  const std::string& path;
  std::size_t pos{0};

  void skip_space() {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  }

  bool eof() {
    skip_space();
    return pos >= text.size();
  }

  std::size_t next_offset() {
    skip_space();
    return pos;
  }

  std::string token() {
    skip_space();
    if (pos >= text.size())
      throw ParseError(path, text.size(), "unexpected end of file");
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  void expect(const char* keyword) {
    const std::size_t at = next_offset();
    const std::string tok = token();
    if (tok != keyword)
      throw ParseError(path, at,
                       "expected '" + std::string(keyword) + "', got '" + tok +
                           "'");
  }

  double number(const char* what) {
    const std::size_t at = next_offset();
    if (at >= text.size())
      throw ParseError(path, text.size(), "unexpected end of file");
    const char* begin = text.c_str() + at;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin)
      throw ParseError(path, at, std::string("expected a number for ") + what);
    if (!std::isfinite(v))
      throw ParseError(path, at, std::string(what) + " is not finite");
    pos = at + static_cast<std::size_t>(end - begin);
    return v;
  }

  void skip_line() {
    while (pos < text.size() && text[pos] != '\n') ++pos;
  }

  void skip_space_on_line() {
    while (pos < text.size() && text[pos] != '\n' && is_space(text[pos])) ++pos;
  }

  std::string token_on_line() {
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
};

std::vector<Triangle> parse_ascii_stl(const std::string& text,
                                      const std::string& path) {
  Scanner s{text, path};
  std::vector<Triangle> out;
  while (!s.eof()) {
    s.expect("solid");
    s.skip_line();
    for (;;) {
      const std::size_t at = s.next_offset();
      const std::string tok = s.token();
      if (tok == "endsolid") {
        s.skip_line();
        break;
      }
      if (tok != "facet")
        throw ParseError(path, at,
                         "expected 'facet' or 'endsolid', got '" + tok + "'");
      s.expect("normal");
      s.number("normal x");
      s.number("normal y");
      s.number("normal z");
      s.expect("outer");
      s.expect("loop");
      Triangle tri;
      for (Vec3* v : {&tri.a, &tri.b, &tri.c}) {
        s.expect("vertex");
        const double x = s.number("vertex x");
        const double y = s.number("vertex y");
        const double z = s.number("vertex z");
        *v = Vec3(x, y, z);
      }
      s.expect("endloop");
      s.expect("endfacet");
      out.push_back(tri);
    }
  }
  return out;
}

float le_float(const std::string& text, std::size_t at) {
  std::uint32_t bits = 0;
  std::memcpy(&bits, text.data() + at, 4);
  float v = 0.0f;
  std::memcpy(&v, &bits, 4);
  return v;
}

std::vector<Triangle> parse_binary_stl(const std::string& text,
                                       const std::string& path) {
  if (text.size() < 84)
    throw ParseError(path, text.size(),
                     "binary stl truncated before the facet count");
  std::uint32_t count = 0;
  std::memcpy(&count, text.data() + 80, 4);
  const std::size_t expected = 84 + 50 * static_cast<std::size_t>(count);
  if (text.size() != expected)
    throw ParseError(path, std::min(text.size(), expected),
                     "binary stl declares " + std::to_string(count) +
                         " facets (" + std::to_string(expected) +
                         " bytes) but the file holds " +
                         std::to_string(text.size()));
  std::vector<Triangle> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t base = 84 + 50 * static_cast<std::size_t>(i) + 12;
    Triangle tri;
    Vec3* corners[3] = {&tri.a, &tri.b, &tri.c};
    for (int v = 0; v < 3; ++v) {
      const std::size_t at = base + 12 * static_cast<std::size_t>(v);
      *corners[v] = Vec3(le_float(text, at), le_float(text, at + 4),
                         le_float(text, at + 8));
    }
    out.push_back(tri);
  }
  return out;
}

std::string lower_extension(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  const std::size_t slash = path.rfind('/');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return "";
  }
  std::string ext = path.substr(dot);
  for (char& c : ext) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return ext;
}

}  // namespace

ParseError::ParseError(const std::string& path, std::size_t byte_offset,
                       const std::string& message)
    : std::runtime_error(describe(path, byte_offset, message)),
      offset_(byte_offset) {}

std::vector<Triangle> read_stl(const std::string& path) {
  const std::string text = read_file(path);
  std::size_t head = 0;
  while (head < text.size() && is_space(text[head])) ++head;
  // Binary headers may open with "solid" too, so the keyword alone is not
  // enough; a real ASCII body always carries facet or endsolid tokens.
  if (text.compare(head, 5, "solid") == 0 &&
      (text.find("facet") != std::string::npos ||
       text.find("endsolid") != std::string::npos)) {
    return parse_ascii_stl(text, path);
  }
  return parse_binary_stl(text, path);
}

std::vector<Triangle> read_obj(const std::string& path) {
  const std::string text = read_file(path);
  Scanner s{text, path};
  std::vector<Vec3> vertices;
  std::vector<Triangle> out;
  int face_ordinal = 0;
  std::vector<int> non_triangles;
  std::size_t first_bad = 0;

  auto resolve = [&](const std::string& ref, std::size_t at) -> const Vec3& {
    const std::size_t cut = ref.find('/');
    const std::string head = cut == std::string::npos ? ref : ref.substr(0, cut);
    char* end = nullptr;
    const long idx = std::strtol(head.c_str(), &end, 10);
    if (end == head.c_str() || *end != '\0' || idx == 0)
      throw ParseError(path, at, "bad vertex reference '" + ref + "'");
    const long n = static_cast<long>(vertices.size());
    const long zero_based = idx > 0 ? idx - 1 : n + idx;
    if (zero_based < 0 || zero_based >= n)
      throw ParseError(path, at,
                       "face references vertex " + std::to_string(idx) +
                           " but only " + std::to_string(n) + " are defined");
    return vertices[static_cast<std::size_t>(zero_based)];
  };

  while (!s.eof()) {
    const std::size_t line_at = s.next_offset();
    const std::string key = s.token();
    if (key == "v") {
      const double x = s.number("vertex x");
      const double y = s.number("vertex y");
      const double z = s.number("vertex z");
      vertices.emplace_back(x, y, z);
      s.skip_line();
    } else if (key == "f") {
      ++face_ordinal;
      std::vector<std::pair<std::string, std::size_t>> refs;
      for (;;) {
        s.skip_space_on_line();
        if (s.pos >= text.size() || text[s.pos] == '\n') break;
        const std::size_t at = s.pos;
        refs.emplace_back(s.token_on_line(), at);
      }
      if (refs.size() != 3) {
        if (non_triangles.empty()) first_bad = line_at;
        non_triangles.push_back(face_ordinal);
        continue;
      }
      Triangle tri;
      tri.a = resolve(refs[0].first, refs[0].second);
      tri.b = resolve(refs[1].first, refs[1].second);
      tri.c = resolve(refs[2].first, refs[2].second);
      out.push_back(tri);
    } else if (key[0] == '#') {
      s.skip_line();
    } else {
      // vt, vn, vp, g, o, s, usemtl, mtllib and friends carry nothing we use.
      s.skip_line();
    }
  }

  if (!non_triangles.empty()) {
    std::string list;
    for (std::size_t i = 0; i < non_triangles.size(); ++i) {
      if (i) list += ", ";
      list += std::to_string(non_triangles[i]);
    }
    throw ParseError(path, first_bad,
                     "only triangular faces are supported; offending face "
                     "indices: " +
                         list);
  }
  return out;
}

std::vector<Triangle> read_mesh_file(const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".stl") return read_stl(path);
  if (ext == ".obj") return read_obj(path);
  throw ParseError(path, 0,
                   "unsupported mesh extension '" + ext +
                       "' (expected .stl or .obj)");
}

void write_ply(const std::string& path, const std::vector<Triangle>& faces,
               const std::vector<FaceColor>& colors) {
  if (faces.size() != colors.size())
    throw std::invalid_argument("write_ply: " + std::to_string(faces.size()) +
                                " faces but " + std::to_string(colors.size()) +
                                " colors");
  std::string body;
  body += "ply\nformat ascii 1.0\ncomment per-face fused coverage strength\n";
  body += "element vertex " + std::to_string(3 * faces.size()) + "\n";
  body += "property double x\nproperty double y\nproperty double z\n";
  body += "element face " + std::to_string(faces.size()) + "\n";
  body += "property list uchar int vertex_indices\n";
  body += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  body += "end_header\n";
  for (const Triangle& tri : faces) {
    for (const Vec3* v : {&tri.a, &tri.b, &tri.c}) {
      body += number_text(v->x()) + " " + number_text(v->y()) + " " +
              number_text(v->z()) + "\n";
    }
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::size_t base = 3 * i;
    body += "3 " + std::to_string(base) + " " + std::to_string(base + 1) +
            " " + std::to_string(base + 2) + " " + std::to_string(colors[i].r) +
            " " + std::to_string(colors[i].g) + " " +
            std::to_string(colors[i].b) + "\n";
  }
  write_file(path, body);
}

ColoredMesh read_ply(const std::string& path) {
  const std::string text = read_file(path);
  Scanner s{text, path};
  s.expect("ply");
  s.expect("format");
  s.expect("ascii");
  s.expect("1.0");

  long vertex_count = -1;
  long face_count = -1;
  // Header walk. Only the layout write_ply produces is accepted: xyz vertex
  // properties, then an index list plus red/green/blue per face.
  std::vector<std::string> vertex_props;
  bool face_has_list = false;
  std::vector<std::string> face_colors;
  enum class Section { kNone, kVertex, kFace } section = Section::kNone;
  for (;;) {
    const std::size_t at = s.next_offset();
    const std::string tok = s.token();
    if (tok == "end_header") {
      s.skip_line();
      break;
    }
    if (tok == "comment" || tok == "obj_info") {
      s.skip_line();
    } else if (tok == "element") {
      const std::string kind = s.token();
      const double n = s.number("element count");
      if (kind == "vertex") {
        vertex_count = static_cast<long>(n);
        section = Section::kVertex;
      } else if (kind == "face") {
        face_count = static_cast<long>(n);
        section = Section::kFace;
      } else {
        throw ParseError(path, at, "unsupported element '" + kind + "'");
      }
    } else if (tok == "property") {
      const std::string type = s.token();
      if (type == "list") {
        if (section != Section::kFace)
          throw ParseError(path, at, "list property outside the face element");
        s.token();  // count type
        s.token();  // index type
        s.token();  // name
        face_has_list = true;
      } else {
        const std::string name = s.token();
        if (section == Section::kVertex) {
          if (type != "double" && type != "float")
            throw ParseError(path, at,
                             "vertex property '" + name + "' must be float "
                             "or double");
          vertex_props.push_back(name);
        } else if (section == Section::kFace) {
          if (type != "uchar" && type != "uint8")
            throw ParseError(path, at,
                             "face property '" + name + "' must be uchar");
          face_colors.push_back(name);
        } else {
          throw ParseError(path, at, "property before any element");
        }
      }
    } else {
      throw ParseError(path, at, "unexpected header token '" + tok + "'");
    }
  }
  if (vertex_count < 0 || face_count < 0)
    throw ParseError(path, s.pos, "header misses vertex or face element");
  if (vertex_props != std::vector<std::string>{"x", "y", "z"})
    throw ParseError(path, s.pos, "vertex element must carry exactly x, y, z");
  if (!face_has_list ||
      face_colors != std::vector<std::string>{"red", "green", "blue"})
    throw ParseError(path, s.pos,
                     "face element must carry an index list plus red, green, "
                     "blue");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(vertex_count));
  for (long i = 0; i < vertex_count; ++i) {
    const double x = s.number("vertex x");
    const double y = s.number("vertex y");
    const double z = s.number("vertex z");
    vertices.emplace_back(x, y, z);
  }

  auto vertex_at = [&](double raw, std::size_t at) -> const Vec3& {
    const long idx = static_cast<long>(raw);
    if (idx < 0 || idx >= vertex_count)
      throw ParseError(path, at, "face index " + std::to_string(idx) +
                                     " out of range");
    return vertices[static_cast<std::size_t>(idx)];
  };
  auto channel = [&](const char* what) -> unsigned char {
    const std::size_t at = s.next_offset();
    const double v = s.number(what);
    if (v < 0 || v > 255 || v != static_cast<double>(static_cast<int>(v)))
      throw ParseError(path, at, std::string(what) + " outside 0..255");
    return static_cast<unsigned char>(v);
  };

  ColoredMesh mesh;
  mesh.faces.reserve(static_cast<std::size_t>(face_count));
  mesh.colors.reserve(static_cast<std::size_t>(face_count));
  for (long i = 0; i < face_count; ++i) {
    const std::size_t at = s.next_offset();
    const double n = s.number("face vertex count");
    if (n != 3.0)
      throw ParseError(path, at, "face must reference exactly 3 vertices");
    Triangle tri;
    tri.a = vertex_at(s.number("face index"), s.pos);
    tri.b = vertex_at(s.number("face index"), s.pos);
    tri.c = vertex_at(s.number("face index"), s.pos);
    mesh.faces.push_back(tri);
    FaceColor color;
    color.r = channel("red");
    color.g = channel("green");
    color.b = channel("blue");
    mesh.colors.push_back(color);
  }
  return mesh;
}

}  // namespace radcov
