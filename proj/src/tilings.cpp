#include "skewhowe/tilings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace skewhowe {

namespace {

using Parts = std::vector<int>;

Parts padded(const Partition& p, int len) {
  Parts out(len, 0);
  for (int i = 0; i < std::min(len, p.length()); ++i) out[i] = p[i];
  return out;
}

// Slots a_i = part_i - i + len (i from 1) of a partition padded to len parts.
std::vector<int> slots(const Parts& parts) {
  const int len = static_cast<int>(parts.size());
  std::vector<int> out(len);
  for (int i = 0; i < len; ++i) out[i] = parts[i] - i - 1 + len;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> complement(const std::vector<int>& taken, int count) {
  std::vector<int> out;
  std::size_t j = 0;
  for (int s = 0; s < count; ++s) {
    while (j < taken.size() && taken[j] < s) ++j;
    if (j == taken.size() || taken[j] != s) out.push_back(s);
  }
  return out;
}

void validate_pair(const TableauPair& pair, int n, int k) {
  if (n < 1 || k < 1) throw Error(Errc::InvalidArgument, "n and k must be positive");
  auto entries_ok = [](const Tableau& t, int bound) {
    for (const auto& r : t.rows)
      for (int v : r)
        if (v < 1 || v > bound) return false;
    return true;
  };
  if (!pair.P.semistandard() || !pair.Q.semistandard())
    throw Error(Errc::ShapeMismatch, "tableaux must be semistandard");
  if (!entries_ok(pair.P, n) || !entries_ok(pair.Q, k))
    throw Error(Errc::ShapeMismatch, "tableau entries exceed the box");
  if (pair.Q.shape() != conjugate(pair.P.shape()))
    throw Error(Errc::ShapeMismatch, "shape(Q) must be the conjugate of shape(P)");
}

// Pair sorted free cells in order; the partner offset must be one of two values.
template <class Emit>
void match_strip(const std::vector<int>& left, const std::vector<int>& right, int lo, int hi, Emit emit) {
  if (left.size() != right.size()) throw Error(Errc::ShapeMismatch, "tableaux do not interlace");
  for (std::size_t i = 0; i < left.size(); ++i) {
    int d = right[i] - left[i];
    if (d != lo && d != hi) throw Error(Errc::ShapeMismatch, "tableaux do not interlace");
    emit(left[i], d == hi);
  }
}

// Lozenge lattice: line x has count(x) unit slots starting at height base(x).
struct LozengeGeom {
  int n, k;
  int count(int x) const { return x <= n ? k + x : 2 * n + k - x; }
  double base(int x) const { return x <= n ? -x / 2.0 : x / 2.0 - n; }
};

// Aztec columns alternate N and N + 1 cells.
struct AztecGeom {
  int n, k;
  int order() const { return n + k; }
  int count(int c) const { return c % 2 == 0 ? order() : order() + 1; }
  int partner(const Tile& t) const {
    bool horizontal = t.type == TileType::N || t.type == TileType::S;
    if (t.x % 2 == 0) return horizontal ? t.s : t.s + 1;
    return horizontal ? t.s - 1 : t.s;
  }
  // Rotated cell (p, q) to the center (a, b) of a unit square.
  std::pair<double, double> center(int c, int s) const {
    const int N = order();
    int p = c - N, q = c % 2 == 0 ? -N + 1 + 2 * s : -N + 2 * s;
    return {(p - q) / 2.0, (p + q) / 2.0};
  }
};

struct Cell {
  int x, o, s;  // lozenge: strip, 0 right-pointing / 1 left-pointing, slot; aztec: column, 0, slot
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

bool is_lozenge_type(TileType t) { return t <= TileType::HalfR; }

std::vector<Cell> cells_of(const TilingScene& sc, const Tile& t) {
  if (sc.kind == TilingKind::Aztec) return {{t.x, 0, t.s}, {t.x + 1, 0, AztecGeom{sc.n, sc.k}.partner(t)}};
  const bool left_part = t.x <= sc.n;
  switch (t.type) {
    case TileType::H: return {{t.x, 1, t.s}, {t.x + 1, 0, t.s}};
    case TileType::HalfL: return {{t.x, 1, t.s}};
    case TileType::HalfR: return {{t.x + 1, 0, t.s}};
    case TileType::U: return {{t.x, 0, t.s}, {t.x, 1, left_part ? t.s + 1 : t.s}};
    case TileType::D: return {{t.x, 0, t.s}, {t.x, 1, left_part ? t.s : t.s - 1}};
    default: return {};
  }
}

std::vector<std::pair<double, double>> cell_points(const TilingScene& sc, const Cell& c) {
  if (sc.kind == TilingKind::Aztec) {
    auto [a, b] = AztecGeom{sc.n, sc.k}.center(c.x, c.s);
    return {{a - 0.5, b - 0.5}, {a + 0.5, b - 0.5}, {a + 0.5, b + 0.5}, {a - 0.5, b + 0.5}};
  }
  LozengeGeom g{sc.n, sc.k};
  const double w = std::sqrt(3.0) / 2;
  if (c.o == 0) {
    double y0 = g.base(c.x - 1) + c.s;
    return {{w * (c.x - 1), y0}, {w * c.x, y0 + 0.5}, {w * (c.x - 1), y0 + 1}};
  }
  double y0 = g.base(c.x) + c.s;
  return {{w * c.x, y0}, {w * c.x, y0 + 1}, {w * (c.x - 1), y0 + 0.5}};
}

std::set<Cell> region(const TilingScene& sc) {
  std::set<Cell> out;
  if (sc.kind == TilingKind::Aztec) {
    AztecGeom g{sc.n, sc.k};
    for (int c = 0; c <= 2 * g.order(); ++c)
      for (int s = 0; s < g.count(c); ++s) out.insert({c, 0, s});
    return out;
  }
  LozengeGeom g{sc.n, sc.k};
  for (int x = 1; x <= sc.n + sc.k; ++x) {
    for (int s = 0; s < g.count(x - 1); ++s) out.insert({x, 0, s});
    for (int s = 0; s < g.count(x); ++s) out.insert({x, 1, s});
  }
  return out;
}

}  // namespace

const char* tile_name(TileType t) {
  switch (t) {
    case TileType::H: return "H";
    case TileType::U: return "U";
    case TileType::D: return "D";
    case TileType::HalfL: return "half_left";
    case TileType::HalfR: return "half_right";
    case TileType::N: return "N";
    case TileType::S: return "S";
    case TileType::E: return "E";
    case TileType::W: return "W";
  }
  return "?";
}

GTPattern gt_pattern(const Tableau& t, int n) {
  GTPattern g;
  g.n = n;
  for (const auto& r : t.rows)
    for (int v : r)
      if (v < 1 || v > n) throw Error(Errc::InvalidArgument, "tableau entry outside 1..n");
  for (int l = 1; l <= n; ++l) {
    std::vector<int> row(l, 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      int cnt = static_cast<int>(std::count_if(t.rows[i].begin(), t.rows[i].end(), [&](int v) { return v <= l; }));
      if (cnt == 0) break;
      if (static_cast<int>(i) >= l) throw Error(Errc::InvalidArgument, "tableau columns are not strict");
      row[i] = cnt;
    }
    g.rows.push_back(std::move(row));
  }
  return g;
}

TilingScene lozenge_scene(const TableauPair& pair, int n, int k) {
  validate_pair(pair, n, k);
  const int N = n + k;
  LozengeGeom g{n, k};
  GTPattern gp = gt_pattern(pair.P, n), gq = gt_pattern(pair.Q, k);
  // particles[x]: horizontal lozenges crossing line x; at x = n the left part's, with the right part's in
  // right_glue.
  std::vector<std::vector<int>> particles(N + 1);
  for (int x = 1; x <= n; ++x) particles[x] = slots(gp.rows[x - 1]);
  std::vector<int> right_glue;
  for (int x = n; x < N; ++x) {
    const int l = N - x;
    std::vector<int> flipped;
    for (int b : slots(gq.rows[l - 1])) flipped.push_back(n + l - 1 - b);
    std::sort(flipped.begin(), flipped.end());
    (x == n ? right_glue : particles[x]) = flipped;
  }

  TilingScene sc;
  sc.kind = TilingKind::Lozenge;
  sc.n = n;
  sc.k = k;
  for (int x = 1; x < N; ++x)
    for (int s : particles[x]) sc.tiles.push_back({x == n ? TileType::HalfL : TileType::H, x, s});
  for (int s : right_glue) sc.tiles.push_back({TileType::HalfR, n, s});
  for (int x = 1; x <= N; ++x) {
    auto free_r = complement(x - 1 == n ? right_glue : particles[x - 1], g.count(x - 1));
    auto free_l = complement(particles[x], g.count(x));
    const int lo = x <= n ? 0 : -1;
    match_strip(free_r, free_l, lo, lo + 1,
                [&](int s, bool up) { sc.tiles.push_back({up ? TileType::U : TileType::D, x, s}); });
  }
  return sc;
}

TilingScene aztec_scene(const TableauPair& pair, int n, int k) {
  validate_pair(pair, n, k);
  const int N = n + k;
  AztecGeom g{n, k};
  GTPattern gp = gt_pattern(pair.P, n), gq = gt_pattern(pair.Q, k);
  // lam[l] is added by a horizontal strip, mu[l] left after removing a vertical strip; both have l parts.
  std::vector<Parts> lam(N + 1), mu(N + 1);
  for (int l = 1; l <= n; ++l) lam[l] = mu[l] = gp.rows[l - 1];
  for (int l = n + 1; l <= N; ++l) {
    lam[l] = padded(Partition(mu[l - 1]), l);
    Partition rest = N - l == 0 ? Partition() : conjugate(Partition(gq.rows[N - l - 1]));
    mu[l] = padded(rest, l);
  }
  // Cells matched to the right (R) and to the left (L) in every column.
  auto right_set = [&](int c) {
    if (c % 2 == 1) return slots(lam[(c + 1) / 2]);
    return complement(slots(mu[c / 2]), g.count(c));
  };
  auto left_set = [&](int c) {
    if (c % 2 == 0) return slots(mu[c / 2]);
    return complement(slots(lam[(c + 1) / 2]), g.count(c));
  };

  TilingScene sc;
  sc.kind = TilingKind::Aztec;
  sc.n = n;
  sc.k = k;
  for (int c = 0; c < 2 * N; ++c) {
    const bool black = (c - N) % 2 == 0;
    const int lo = c % 2 == 0 ? 0 : -1;
    match_strip(right_set(c), left_set(c + 1), lo, lo + 1, [&](int s, bool vertical) {
      TileType t = vertical ? (black ? TileType::E : TileType::W) : (black ? TileType::N : TileType::S);
      sc.tiles.push_back({t, c, s});
    });
  }
  return sc;
}

std::vector<int> gluing_maya(const TilingScene& sc) {
  std::vector<int> out;
  for (const Tile& t : sc.tiles) {
    if (sc.kind == TilingKind::Lozenge && t.type == TileType::HalfL) out.push_back(2 * (t.s - sc.n) + 1);
    if (sc.kind == TilingKind::Aztec && t.x == 2 * sc.n - 1)
      out.push_back(2 * (AztecGeom{sc.n, sc.k}.partner(t) - sc.n) + 1);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

TilingCheck check_scene(const TilingScene& sc, const Partition& shape) {
  TilingCheck r;
  std::set<Cell> todo = region(sc);
  const std::size_t area = todo.size();
  std::size_t covered = 0;
  std::ostringstream msg;
  for (const Tile& t : sc.tiles) {
    if (is_lozenge_type(t.type) != (sc.kind == TilingKind::Lozenge)) {
      msg << "tile " << tile_name(t.type) << " does not belong to this kind; ";
      continue;
    }
    for (const Cell& c : cells_of(sc, t)) {
      if (todo.erase(c) == 1) {
        ++covered;
      } else {
        msg << "cell (" << c.x << "," << c.o << "," << c.s << ") covered twice or outside; ";
      }
    }
  }
  r.exact_cover = covered == area && todo.empty() && msg.tellp() == 0;
  if (!todo.empty()) msg << todo.size() << " cells uncovered; ";

  if (sc.kind == TilingKind::Aztec) {
    std::set<TileType> left, right;
    for (const Tile& t : sc.tiles) (t.x < 2 * sc.n ? left : right).insert(t.type);
    r.three_of_four = left.size() <= 3 && right.size() <= 3;
    if (!r.three_of_four) msg << "a part uses all four domino types; ";
  }
  try {
    r.gluing_maya = gluing_maya(sc) == maya(shape, sc.n, sc.k).doubled;
  } catch (const Error&) {
    r.gluing_maya = false;
  }
  if (!r.gluing_maya) msg << "gluing line does not match the Maya diagram; ";
  r.message = msg.str();
  return r;
}

double Polygon::area() const {
  double a = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const auto& q = points[(i + 1) % points.size()];
    a += p.first * q.second - q.first * p.second;
  }
  return std::abs(a) / 2;
}

std::vector<Polygon> scene_polygons(const TilingScene& sc) {
  std::vector<Polygon> out;
  out.reserve(sc.tiles.size());
  for (const Tile& t : sc.tiles) {
    std::vector<std::pair<double, double>> pts;
    for (const Cell& c : cells_of(sc, t))
      for (auto p : cell_points(sc, c)) {
        bool dup = std::any_of(pts.begin(), pts.end(), [&](const auto& q) {
          return std::abs(q.first - p.first) < 1e-9 && std::abs(q.second - p.second) < 1e-9;
        });
        if (!dup) pts.push_back(p);
      }
    // Two unit squares share two corners and leave a 2x1 rectangle with its edge midpoints.
    if (sc.kind == TilingKind::Aztec) {
      double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
      for (auto [x, y] : pts) {
        x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
      }
      pts = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    } else {
      double cx = 0, cy = 0;
      for (auto [x, y] : pts) cx += x, cy += y;
      cx /= pts.size();
      cy /= pts.size();
      std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
      });
    }
    out.push_back({t.type, std::move(pts)});
  }
  return out;
}

double region_area(const TilingScene& sc) {
  const double cells = static_cast<double>(region(sc).size());
  return sc.kind == TilingKind::Aztec ? cells : cells * std::sqrt(3.0) / 4;
}

std::string render_svg(const TilingScene& sc) {
  static const std::map<TileType, const char*> palette = {
      {TileType::H, "#e4572e"},     {TileType::U, "#29335c"},     {TileType::D, "#f3a712"},
      {TileType::HalfL, "#a8c686"}, {TileType::HalfR, "#669bbc"}, {TileType::N, "#e4572e"},
      {TileType::S, "#29335c"},     {TileType::E, "#f3a712"},     {TileType::W, "#669bbc"},
  };
  auto polys = scene_polygons(sc);
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& p : polys)
    for (auto [x, y] : p.points) {
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, -y), y1 = std::max(y1, -y);
    }
  if (polys.empty()) x0 = x1 = y0 = y1 = 0;
  const double pad = 0.5, scale = 20;
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.4f %.4f %.4f %.4f\" width=\"%.0f\" "
                "height=\"%.0f\">\n",
                x0 - pad, y0 - pad, x1 - x0 + 2 * pad, y1 - y0 + 2 * pad, (x1 - x0 + 2 * pad) * scale,
                (y1 - y0 + 2 * pad) * scale);
  out += buf;
  out += "<g stroke=\"#222222\" stroke-width=\"0.04\" stroke-linejoin=\"round\">\n";
  for (const auto& p : polys) {
    out += "<polygon fill=\"";
    out += palette.at(p.type);
    out += "\" points=\"";
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", i ? " " : "", p.points[i].first, -p.points[i].second);
      out += buf;
    }
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace skewhowe
