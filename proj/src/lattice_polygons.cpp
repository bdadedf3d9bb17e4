#include "snl/lattice_polygons.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "snl/errors.hpp"
#include "snl/parallel.hpp"

namespace snl {
namespace {

// 0 for angles in [0, pi), 1 for [pi, 2 pi).
int half(IntVec v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

// Strict order of polar angle in [0, 2 pi); parallel same-direction vectors compare equal.
bool angle_less(IntVec a, IntVec b) {
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

LatticePolygon ccw_copy(const LatticePolygon& p) {
  LatticePolygon q = p;
  if (doubled_area(q) < 0) std::reverse(q.vertices.begin(), q.vertices.end());
  return q;
}

class NodeCounter {
 public:
  NodeCounter(std::size_t budget, std::string what) : budget_(budget), what_(std::move(what)) {}
  void tick(const std::string& best) {
    if (count_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
      throw SearchLimitError(what_ + " exceeded the node budget of " + std::to_string(budget_), best);
    }
  }
  std::size_t count() const { return count_.load(); }

 private:
  std::atomic<std::size_t> count_{0};
  std::size_t budget_;
  std::string what_;
};

std::vector<LatticePoint> vertices_from_edges(LatticePoint start, const std::vector<IntVec>& edges) {
  std::vector<LatticePoint> v;
  LatticePoint p = start;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    v.push_back(p);
    p = p + edges[i];
  }
  v.push_back(p);
  return v;
}

// Most compact first: largest coordinate, then sum of squared vertex norms.
std::pair<std::int64_t, std::int64_t> spread(const LatticePolygon& p) {
  std::int64_t reach = 0;
  std::int64_t squares = 0;
  for (const auto& v : p.vertices) {
    reach = std::max<std::int64_t>({reach, std::llabs(v.x), std::llabs(v.y)});
    squares += v.x * v.x + v.y * v.y;
  }
  return {reach, squares};
}

// Keeps the most compact canonical polygon seen, ties broken lexicographically.
struct WitnessSlot {
  std::mutex mutex;
  std::optional<LatticePolygon> best;
  void offer(const LatticePolygon& p, bool translate) {
    LatticePolygon c = canonical_position(p, translate);
    const auto key = std::make_pair(spread(c), c.vertices);
    std::lock_guard lock(mutex);
    if (!best || key < std::make_pair(spread(*best), best->vertices)) best = std::move(c);
  }
};

std::int64_t default_bound(int k) { return k <= 8 ? 6 : 10; }

// Edge vectors with coordinates in [-bound, bound], sorted by angle then length.
// Only vectors in the upper half [0, pi) when half_plane is set.
struct EdgeCatalog {
  std::vector<IntVec> vectors;
  std::vector<int> rank;        // direction rank, equal for parallel vectors
  std::vector<std::size_t> after;  // after[r]: first index whose rank exceeds r
  std::map<IntVec, int> rank_of_direction;

  EdgeCatalog(std::int64_t bound, bool half_plane) {
    for (std::int64_t x = -bound; x <= bound; ++x) {
      for (std::int64_t y = -bound; y <= bound; ++y) {
        const IntVec v{x, y};
        if (x == 0 && y == 0) continue;
        if (half_plane && half(v) != 0) continue;
        vectors.push_back(v);
      }
    }
    std::sort(vectors.begin(), vectors.end(), [](IntVec a, IntVec b) {
      if (angle_less(a, b)) return true;
      if (angle_less(b, a)) return false;
      return gcd_abs(a) < gcd_abs(b);
    });
    int r = -1;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (i == 0 || angle_less(vectors[i - 1], vectors[i])) ++r;
      rank.push_back(r);
      const std::int64_t g = gcd_abs(vectors[i]);
      rank_of_direction.emplace(IntVec{vectors[i].x / g, vectors[i].y / g}, r);
    }
    after.assign(static_cast<std::size_t>(r + 2), vectors.size());
    for (std::size_t i = vectors.size(); i-- > 0;) after[static_cast<std::size_t>(rank[i])] = i + 1;
    // after[r] must point past every vector of rank r.
    for (std::size_t i = 0; i < vectors.size(); ++i) after[static_cast<std::size_t>(rank[i])] = i + 1;
  }

  std::optional<int> rank_of(IntVec v) const {
    const std::int64_t g = gcd_abs(v);
    if (g == 0) return std::nullopt;
    const auto it = rank_of_direction.find({v.x / g, v.y / g});
    if (it == rank_of_direction.end()) return std::nullopt;
    return it->second;
  }
};

// Lower bound on twice the area of a convex lattice polygon with n corners.
std::int64_t cap_floor(int n);

// Convex k-gons with edge coordinates <= bound and doubled area <= limit.
// Each polygon appears once: first vertex at the origin, edges in increasing angle.
class BoundedKgonSearch {
 public:
  BoundedKgonSearch(int k, std::int64_t bound, std::int64_t limit, NodeCounter& nodes, WitnessSlot& slot)
      : k_(k), bound_(bound), limit_(limit), catalog_(bound, false), nodes_(nodes), slot_(slot) {
    for (int n = 0; n < k; ++n) cap_.push_back(cap_floor(n));
  }

  std::size_t first_edge_count() const { return catalog_.vectors.size(); }

  bool run_first(std::size_t i) {
    found_ = false;
    edges_.assign(1, catalog_.vectors[i]);
    extend(catalog_.vectors[i], 0, catalog_.rank[i]);
    return found_;
  }

 private:
  void extend(IntVec s, std::int64_t area2, int last_rank) {
    nodes_.tick("none");
    const int depth = static_cast<int>(edges_.size());
    if (depth == k_ - 1) {
      const IntVec e = -s;
      if (std::max(std::llabs(e.x), std::llabs(e.y)) > bound_) return;
      const auto r = catalog_.rank_of(e);
      if (!r || *r <= last_rank) return;
      edges_.push_back(e);
      found_ = true;
      slot_.offer(LatticePolygon{vertices_from_edges({0, 0}, edges_)}, true);
      edges_.pop_back();
      return;
    }
    const std::int64_t remaining = k_ - depth - 1;  // edges after the next one
    // The chord from the origin to the next vertex cuts off a convex (k - depth)-gon.
    const std::int64_t positive_terms = cap_[static_cast<std::size_t>(k_ - depth)];
    for (std::size_t i = catalog_.after[static_cast<std::size_t>(last_rank)]; i < catalog_.vectors.size(); ++i) {
      const IntVec e = catalog_.vectors[i];
      const IntVec next = s + e;
      const std::int64_t a2 = area2 + cross(s, e);
      if (a2 + positive_terms > limit_) continue;
      if (std::llabs(next.x) > remaining * bound_ || std::llabs(next.y) > remaining * bound_) continue;
      edges_.push_back(e);
      extend(next, a2, catalog_.rank[i]);
      edges_.pop_back();
    }
  }

  int k_;
  std::int64_t bound_;
  std::int64_t limit_;
  EdgeCatalog catalog_;
  NodeCounter& nodes_;
  WitnessSlot& slot_;
  std::vector<IntVec> edges_;
  std::vector<std::int64_t> cap_;
  bool found_ = false;
};

// Exhaustive search up to lattice equivalence: first edge (g, 0), second edge
// (x2, y2) with 0 <= x2 < y2. Returns a k-gon of doubled area <= limit, if any.
std::optional<LatticePolygon> frame_kgon_search(int k, std::int64_t limit, NodeCounter& nodes) {
  if (limit < k - 2) return std::nullopt;
  std::vector<std::int64_t> cap;
  for (int n = 0; n < k; ++n) cap.push_back(cap_floor(n));
  std::vector<LatticePoint> verts;
  std::optional<LatticePolygon> hit;

  for (std::int64_t g = 1; g <= limit && !hit; ++g) {
    const std::int64_t ymax = limit / g;
    for (std::int64_t y2 = 1; y2 <= ymax && !hit; ++y2) {
      for (std::int64_t x2 = 0; x2 < y2 && !hit; ++x2) {
        const IntVec e1{g, 0};
        const IntVec e2{x2, y2};
        verts = {{0, 0}, {g, 0}, {g + x2, y2}};
        std::function<void(IntVec, std::int64_t)> extend = [&](IntVec last, std::int64_t area2) {
          nodes.tick("none");
          const LatticePoint s = verts.back();
          const int nv = static_cast<int>(verts.size());
          if (nv == k) {
            const IntVec e = -s;
            if (cross(last, e) > 0 && angle_less(last, e) && cross(e, e1) > 0) hit = LatticePolygon{verts};
            return;
          }
          const std::int64_t positive_terms = cap[static_cast<std::size_t>(k - nv + 1)];
          for (std::int64_t vy = 1; vy <= ymax && !hit; ++vy) {
            const std::int64_t lo = g + ceil_div(x2 * vy - limit, y2);
            const std::int64_t hi = g + floor_div(x2 * vy + limit, y2);
            for (std::int64_t vx = lo; vx <= hi && !hit; ++vx) {
              const LatticePoint v{vx, vy};
              const IntVec e = v - s;
              if (cross(last, e) <= 0 || !angle_less(last, e)) continue;
              const std::int64_t t = cross(s, v);
              if (t <= 0 || area2 + t + positive_terms > limit) continue;
              verts.push_back(v);
              extend(e, area2 + t);
              verts.pop_back();
            }
          }
        };
        if (!angle_less(e1, e2)) continue;
        extend(e2, g * y2);
      }
    }
  }
  return hit;
}

// Origin-symmetric 2m-gons from m half-edges in [0, pi): interior = A - sum g + 1.
class BoundedSymmetricSearch {
 public:
  BoundedSymmetricSearch(int m, std::int64_t bound, std::int64_t limit, NodeCounter& nodes, WitnessSlot& slot)
      : m_(m), limit_(limit), catalog_(bound, true), nodes_(nodes), slot_(slot) {}

  std::size_t first_edge_count() const { return catalog_.vectors.size(); }

  void run_first(std::size_t i) {
    edges_.assign(1, catalog_.vectors[i]);
    const IntVec e = catalog_.vectors[i];
    extend(e, 0, gcd_abs(e), catalog_.rank[i]);
  }

 private:
  // Interior added by edge t (1-based, t >= 2) is at least t - 2.
  std::int64_t future_lower_bound(int placed) const {
    std::int64_t lb = 0;
    for (int t = placed + 1; t <= m_; ++t) lb += t - 2;
    return lb;
  }

  void extend(IntVec sum, std::int64_t area, std::int64_t gsum, int last_rank) {
    nodes_.tick("none");
    const int placed = static_cast<int>(edges_.size());
    if (placed == m_) {
      if (sum.x % 2 != 0 || sum.y % 2 != 0) return;
      if (area - gsum + 1 > limit_) return;
      slot_.offer(symmetric_polygon(edges_), false);
      return;
    }
    for (std::size_t i = catalog_.after[static_cast<std::size_t>(last_rank)]; i < catalog_.vectors.size(); ++i) {
      const IntVec e = catalog_.vectors[i];
      const std::int64_t a = area + cross(sum, e);
      const std::int64_t g = gsum + gcd_abs(e);
      if (a - g + 1 + future_lower_bound(placed + 1) > limit_) continue;
      edges_.push_back(e);
      extend(sum + e, a, g, catalog_.rank[i]);
      edges_.pop_back();
    }
  }

 public:
  static LatticePolygon symmetric_polygon(const std::vector<IntVec>& half_edges) {
    IntVec sum{0, 0};
    for (const IntVec e : half_edges) sum = sum + e;
    LatticePoint p{-sum.x / 2, -sum.y / 2};
    std::vector<LatticePoint> verts;
    for (const IntVec e : half_edges) {
      verts.push_back(p);
      p = p + e;
    }
    for (const IntVec e : half_edges) {
      verts.push_back(p);
      p = p - e;
    }
    return LatticePolygon{verts};
  }

 private:
  int m_;
  std::int64_t limit_;
  EdgeCatalog catalog_;
  NodeCounter& nodes_;
  WitnessSlot& slot_;
  std::vector<IntVec> edges_;
};

// Exhaustive symmetric search up to lattice equivalence: half-edges (g,0),
// (x2,y2) with 0 <= x2 < y2, area <= area_limit, interior <= interior_limit.
std::optional<LatticePolygon> frame_symmetric_search(int m, std::int64_t area_limit, std::int64_t interior_limit,
                                                     NodeCounter& nodes) {
  std::optional<LatticePolygon> hit;
  std::vector<IntVec> edges;
  for (std::int64_t g = 1; g <= area_limit && !hit; ++g) {
    const std::int64_t ymax = area_limit / g;
    for (std::int64_t y2 = 1; y2 <= ymax && !hit; ++y2) {
      for (std::int64_t x2 = 0; x2 < y2 && !hit; ++x2) {
        edges = {{g, 0}, {x2, y2}};
        std::function<void(IntVec, std::int64_t, std::int64_t)> extend = [&](IntVec sum, std::int64_t area,
                                                                             std::int64_t gsum) {
          nodes.tick("none");
          const int placed = static_cast<int>(edges.size());
          if (placed == m) {
            if (sum.x % 2 == 0 && sum.y % 2 == 0 && area - gsum + 1 <= interior_limit) {
              hit = BoundedSymmetricSearch::symmetric_polygon(edges);
            }
            return;
          }
          std::int64_t future = 0;
          for (int t = placed + 2; t <= m; ++t) future += t - 2;
          const IntVec last = edges.back();
          for (std::int64_t y = 1; y <= ymax && !hit; ++y) {
            const std::int64_t lo = ceil_div(x2 * y - area_limit, y2);
            const std::int64_t hi = floor_div(x2 * y - 1, y2);
            for (std::int64_t x = lo; x <= hi && !hit; ++x) {
              const IntVec e{x, y};
              if (cross(last, e) <= 0) continue;
              const std::int64_t a = area + cross(sum, e);
              const std::int64_t gs = gsum + gcd_abs(e);
              if (a > area_limit || a - gs + 1 + future > interior_limit) continue;
              edges.push_back(e);
              extend(sum + e, a, gs);
              edges.pop_back();
            }
          }
        };
        const IntVec e2{x2, y2};
        extend(IntVec{g, 0} + e2, g * y2, g + gcd_abs(e2));
      }
    }
  }
  return hit;
}

struct CapCache {
  std::mutex mutex;
  std::map<int, std::int64_t> values;  // certified 2 A(n)
};

CapCache& cap_cache() {
  static CapCache cache;
  return cache;
}

std::int64_t cap_floor(int n) {
  if (n < 3) return 0;
  CapCache& cache = cap_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (const auto it = cache.values.find(n); it != cache.values.end()) return it->second;
  }
  // Fills the cache on the way out.
  return (2 * min_area_convex_kgon(n).area).num();
}

void remember_cap(int n, std::int64_t doubled) {
  CapCache& cache = cap_cache();
  std::lock_guard lock(cache.mutex);
  cache.values[n] = doubled;
}

}  // namespace

std::int64_t doubled_area(const LatticePolygon& p) {
  std::int64_t a = 0;
  const std::size_t n = p.vertices.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(p.vertices[i], p.vertices[(i + 1) % n]);
  return a;
}

bool is_strictly_convex(const LatticePolygon& p) {
  const std::size_t n = p.vertices.size();
  if (n < 3) return false;
  int wraps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const IntVec e0 = p.vertices[(i + 1) % n] - p.vertices[i];
    const IntVec e1 = p.vertices[(i + 2) % n] - p.vertices[(i + 1) % n];
    if (e0 == IntVec{0, 0} || cross(e0, e1) <= 0) return false;
    if (!angle_less(e0, e1)) ++wraps;
  }
  return wraps == 1;
}

bool is_centrally_symmetric_about_origin(const LatticePolygon& p) {
  std::vector<LatticePoint> a = p.vertices;
  std::vector<LatticePoint> b;
  for (const auto& v : p.vertices) b.push_back(-v);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

PickCounts scan_counts(const LatticePolygon& poly) {
  const LatticePolygon p = ccw_copy(poly);
  std::int64_t xmin = p.vertices[0].x, xmax = xmin, ymin = p.vertices[0].y, ymax = ymin;
  for (const auto& v : p.vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  PickCounts c;
  c.area = Rational(doubled_area(p), 2);
  const std::size_t n = p.vertices.size();
  for (std::int64_t x = xmin; x <= xmax; ++x) {
    for (std::int64_t y = ymin; y <= ymax; ++y) {
      bool inside = true;
      bool on_edge = false;
      for (std::size_t i = 0; i < n && inside; ++i) {
        const std::int64_t s = cross(p.vertices[(i + 1) % n] - p.vertices[i], LatticePoint{x, y} - p.vertices[i]);
        if (s < 0) inside = false;
        if (s == 0) on_edge = true;
      }
      if (!inside) continue;
      if (on_edge) {
        ++c.boundary;
      } else {
        ++c.interior;
      }
    }
  }
  return c;
}

PickCounts pick_counts(const LatticePolygon& poly, bool self_check) {
  const LatticePolygon p = ccw_copy(poly);
  if (!is_strictly_convex(p)) throw ValidationError("polygon is not strictly convex (or is degenerate)");
  PickCounts c;
  const std::int64_t a2 = doubled_area(p);
  c.area = Rational(a2, 2);
  const std::size_t n = p.vertices.size();
  for (std::size_t i = 0; i < n; ++i) c.boundary += gcd_abs(p.vertices[(i + 1) % n] - p.vertices[i]);
  // Pick: 2A = 2i + b - 2.
  c.interior = (a2 - c.boundary + 2) / 2;
  if (self_check && scan_counts(p) != c) throw std::logic_error("Pick counts disagree with the lattice scan");
  return c;
}

LatticePolygon convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return LatticePolygon{pts};
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return LatticePolygon{hull};
}

LatticePolygon canonical_position(const LatticePolygon& p, bool translate) {
  static constexpr int kMaps[8][4] = {{1, 0, 0, 1},  {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
                                      {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0},   {0, -1, -1, 0}};
  std::optional<LatticePolygon> best;
  for (const auto& m : kMaps) {
    std::vector<LatticePoint> v;
    for (const auto& q : p.vertices) v.push_back({m[0] * q.x + m[1] * q.y, m[2] * q.x + m[3] * q.y});
    if (m[0] * m[3] - m[1] * m[2] < 0) std::reverse(v.begin(), v.end());
    if (translate && !v.empty()) {
      std::int64_t xmin = v[0].x, ymin = v[0].y;
      for (const auto& q : v) {
        xmin = std::min(xmin, q.x);
        ymin = std::min(ymin, q.y);
      }
      for (auto& q : v) q = q - IntVec{xmin, ymin};
    }
    std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
    if (!best || v < best->vertices) best = LatticePolygon{v};
  }
  return best.value_or(LatticePolygon{});
}

MinAreaResult min_area_convex_kgon(int k, const PolygonSearchOptions& options) {
  if (k < 3 || k > 12) throw ValidationError("k must lie in [3, 12]");
  MinAreaResult result;
  result.k = k;
  result.coordinate_bound = options.coordinate_bound.value_or(default_bound(k));
  if (result.coordinate_bound < 1) throw ValidationError("coordinate bound must be positive");
  NodeCounter nodes(options.node_budget, "minimal-area search");

  // Iterative deepening on the doubled area; the first feasible bound is the minimum.
  std::optional<LatticePolygon> witness;
  // Dropping a corner removes a triangle of doubled area >= 1.
  std::int64_t limit = std::max<std::int64_t>(k - 2, cap_floor(k - 1) + 1);
  try {
    for (;; ++limit) {
      WitnessSlot slot;
      BoundedKgonSearch probe(k, result.coordinate_bound, limit, nodes, slot);
      parallel_for(probe.first_edge_count(), [&](std::size_t i) {
        BoundedKgonSearch search(k, result.coordinate_bound, limit, nodes, slot);
        search.run_first(i);
      });
      if (slot.best) {
        witness = slot.best;
        break;
      }
      if (limit > 4 * k * k * k) throw SearchLimitError("no convex k-gon found within the coordinate bound");
    }
  } catch (const SearchLimitError& e) {
    throw SearchLimitError(e.what(), "area >= " + Rational(limit, 2).to_string() + " (no witness yet)");
  }

  if (options.certify) {
    // Anything strictly smaller, at any coordinates, would show up in the normalized frame.
    try {
      while (auto smaller = frame_kgon_search(k, limit - 1, nodes)) {
        limit = doubled_area(*smaller);
        witness = canonical_position(*smaller, true);
      }
    } catch (const SearchLimitError& e) {
      throw SearchLimitError(e.what(), "area <= " + Rational(limit, 2).to_string() + " (not certified)");
    }
    result.certified = true;
    remember_cap(k, limit);
  }
  result.area = Rational(limit, 2);
  result.witness = *witness;
  result.nodes = nodes.count();
  return result;
}

std::int64_t i_of_k(const MinAreaResult& result) {
  const Rational i = result.area + Rational(2 - result.k, 2);
  if (!i.is_integer()) throw std::logic_error("A(k) + (2-k)/2 is not an integer");
  if (pick_counts(result.witness).interior != i.num()) {
    throw std::logic_error("i(k) disagrees with the witness interior count");
  }
  return i.num();
}

SymmetricResult min_interior_symmetric(int two_m, const PolygonSearchOptions& options) {
  if (two_m % 2 != 0) throw ValidationError("two_m must be even");
  if (two_m < 2 || two_m > 16) throw ValidationError("two_m must lie in [2, 16]");
  const int m = two_m / 2;
  SymmetricResult result;
  result.two_m = two_m;
  if (m == 1) {
    // Degenerate segment [-(1,0), (1,0)]: its relative interior holds the origin only.
    result.interior = 1;
    result.witness = LatticePolygon{{{-1, 0}, {1, 0}}};
    result.certified = true;
    return result;
  }
  const std::int64_t bound = options.coordinate_bound.value_or(default_bound(two_m));
  NodeCounter nodes(options.node_budget, "symmetric search");
  std::optional<LatticePolygon> witness;
  std::int64_t limit = 1;
  try {
    for (;; limit += 2) {
      WitnessSlot slot;
      BoundedSymmetricSearch probe(m, bound, limit, nodes, slot);
      parallel_for(probe.first_edge_count(), [&](std::size_t i) {
        BoundedSymmetricSearch search(m, bound, limit, nodes, slot);
        search.run_first(i);
      });
      if (slot.best) {
        witness = slot.best;
        break;
      }
      if (limit > 64 * m * m * m) throw SearchLimitError("no symmetric polygon found within the coordinate bound");
    }
  } catch (const SearchLimitError& e) {
    throw SearchLimitError(e.what(), "interior >= " + std::to_string(limit) + " (no witness yet)");
  }
  if (options.certify) {
    // The origin is interior, so 1 is optimal. Otherwise a better polygon has
    // interior <= limit - 2 and, by Scott's inequality b <= 2 i + 6 (the one
    // exception is not symmetric), area <= 2 i + 2.
    try {
      while (limit > 1) {
        const std::int64_t better = limit - 2;
        const auto smaller = frame_symmetric_search(m, 2 * better + 2, better, nodes);
        if (!smaller) break;
        limit = pick_counts(*smaller).interior;
        witness = canonical_position(*smaller, false);
      }
    } catch (const SearchLimitError& e) {
      throw SearchLimitError(e.what(), "interior <= " + std::to_string(limit) + " (not certified)");
    }
    result.certified = true;
  }
  result.interior = limit;
  result.witness = *witness;
  result.nodes = nodes.count();
  return result;
}

std::int64_t f_of_m(int m) {
  if (m < 1 || m > 8) throw ValidationError("f(m) is available for 1 <= m <= 8");
  static std::mutex mutex;
  static std::map<int, std::int64_t> cache;
  {
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(m); it != cache.end()) return it->second;
  }
  const std::int64_t value = (min_interior_symmetric(2 * m).interior + 1) / 2;
  std::lock_guard lock(mutex);
  cache[m] = value;
  return value;
}

bool rabinowitz_lower_bound_holds(const Rational& area, int k) {
  if (k < 3) throw ValidationError("k must be at least 3");
  // area * 8 pi^2 > k^3  <=  area * 8 * 3.14159^2 > k^3.
  const __int128 lhs = static_cast<__int128>(area.num()) * 8 * 314159 * 314159;
  const __int128 rhs = static_cast<__int128>(k) * k * k * 10'000'000'000LL * area.den();
  return lhs > rhs;
}

}  // namespace snl
