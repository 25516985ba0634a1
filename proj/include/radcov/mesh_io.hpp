#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "radcov/geometry.hpp"

namespace radcov {

/// Malformed-file failure. what() embeds the path, the byte offset where
/// reading stopped making sense, and the reason.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t byte_offset,
             const std::string& message);
  std::size_t byte_offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Reads an STL file, ASCII or binary, detected from the content. Stored
/// facet normals are ignored; the front face follows the vertex winding.
std::vector<Triangle> read_stl(const std::string& path);

/// Reads a Wavefront OBJ restricted to triangular faces. Position indices
/// may be 1-based or negative (counted back from the vertices defined so
/// far); texture and normal references are ignored. Faces with a vertex
/// count other than three fail as a group, listing their 1-based indices.
std::vector<Triangle> read_obj(const std::string& path);

/// Dispatches on the case-insensitive file extension: .stl or .obj.
std::vector<Triangle> read_mesh_file(const std::string& path);

struct FaceColor {
  unsigned char r{0};
  unsigned char g{0};
  unsigned char b{0};
};

struct ColoredMesh {
  std::vector<Triangle> faces;
  std::vector<FaceColor> colors;
};

/// Writes an ASCII polygon file with one RGB color per face. Vertices are
/// left unshared: face i references vertices 3i..3i+2. Color and face counts
/// must match (throws std::invalid_argument otherwise).
void write_ply(const std::string& path, const std::vector<Triangle>& faces,
               const std::vector<FaceColor>& colors);

/// Reads back the layout produced by write_ply.
ColoredMesh read_ply(const std::string& path);

}  // namespace radcov
