#pragma once

#include <string>
#include <vector>

#include "skewhowe/partition.hpp"
#include "skewhowe/sampler.hpp"

namespace skewhowe {

// rows[l - 1] is the shape of the entries <= l, padded with zeros to l parts.
struct GTPattern {
  int n = 0;
  std::vector<std::vector<int>> rows;
};
GTPattern gt_pattern(const Tableau& t, int n);

enum class TilingKind { Lozenge, Aztec };

// Lozenge: H crosses vertical line x at slot s; U and D join the right-pointing triangle at slot s of
// line x - 1 to a left-pointing one on line x; HalfL / HalfR are the cut halves on the gluing line x = n.
// Aztec: a domino joins column x (slot s) to column x + 1; N, S horizontal, E, W vertical, the first
// of each pair with its left (or bottom) cell black.
enum class TileType { H, U, D, HalfL, HalfR, N, S, E, W };
const char* tile_name(TileType t);

struct Tile {
  TileType type;
  int x = 0, s = 0;
  friend bool operator==(const Tile&, const Tile&) = default;
};

struct TilingScene {
  TilingKind kind = TilingKind::Lozenge;
  int n = 0, k = 0;
  std::vector<Tile> tiles;
};

// Throws ShapeMismatch unless P and Q are semistandard with entries <= n and <= k and
// shape(Q) = shape(P)'.
TilingScene lozenge_scene(const TableauPair& pair, int n, int k);
TilingScene aztec_scene(const TableauPair& pair, int n, int k);

// Maya diagram (doubled, decreasing) read off the gluing line.
std::vector<int> gluing_maya(const TilingScene& scene);

struct TilingCheck {
  bool exact_cover = false;
  bool three_of_four = true;  // Aztec only
  bool gluing_maya = false;
  std::string message;
  bool ok() const { return exact_cover && three_of_four && gluing_maya; }
};
TilingCheck check_scene(const TilingScene& scene, const Partition& shape);

struct Polygon {
  TileType type;
  std::vector<std::pair<double, double>> points;  // counterclockwise
  double area() const;
};
std::vector<Polygon> scene_polygons(const TilingScene& scene);
double region_area(const TilingScene& scene);

std::string render_svg(const TilingScene& scene);

}  // namespace skewhowe
