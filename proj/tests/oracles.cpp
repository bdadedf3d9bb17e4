#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <tuple>

namespace oracle {
namespace {

std::int64_t orient(IntVec a, IntVec b, IntVec p) { return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x); }

// Upper half-plane first, then counter-clockwise.
bool angle_before(IntVec a, IntVec b) {
  const auto upper = [](IntVec v) { return v.y > 0 || (v.y == 0 && v.x > 0); };
  if (upper(a) != upper(b)) return upper(a);
  return snl::cross(a, b) > 0;
}

std::vector<IntVec> hull(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IntVec> h(2 * pts.size());
  std::size_t n = 0;
  for (const IntVec p : pts) {
    while (n >= 2 && orient(h[n - 2], h[n - 1], p) <= 0) --n;
    h[n++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = n + 1; i-- > 0;) {
    while (n >= lo && orient(h[n - 2], h[n - 1], pts[i]) <= 0) --n;
    h[n++] = pts[i];
  }
  h.resize(n - 1);
  return h;
}

}  // namespace

Scan scan_polygon(const std::vector<IntVec>& ccw) {
  Scan s;
  std::int64_t x0 = ccw[0].x, x1 = x0, y0 = ccw[0].y, y1 = y0;
  for (const IntVec v : ccw) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  for (std::size_t i = 0; i < ccw.size(); ++i) s.doubled_area += snl::cross(ccw[i], ccw[(i + 1) % ccw.size()]);
  for (std::int64_t x = x0; x <= x1; ++x) {
    for (std::int64_t y = y0; y <= y1; ++y) {
      bool inside = true;
      bool on_edge = false;
      for (std::size_t i = 0; i < ccw.size(); ++i) {
        const std::int64_t o = orient(ccw[i], ccw[(i + 1) % ccw.size()], {x, y});
        if (o < 0) inside = false;
        if (o == 0) on_edge = true;
      }
      if (!inside) continue;
      if (on_edge) {
        ++s.boundary;
      } else {
        ++s.interior;
      }
    }
  }
  return s;
}

std::int64_t min_doubled_area(int k, std::int64_t bound) {
  std::vector<IntVec> vecs;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    for (std::int64_t y = -bound; y <= bound; ++y) {
      if (x != 0 || y != 0) vecs.push_back({x, y});
    }
  }
  std::stable_sort(vecs.begin(), vecs.end(), angle_before);

  // dp[c][sum] = least fan sum of cross(S_{j-1}, e_j) using c edges so far.
  const std::int64_t reach = k * bound;
  const std::int64_t side = 2 * reach + 1;
  const auto at = [&](IntVec s) { return static_cast<std::size_t>((s.x + reach) * side + (s.y + reach)); };
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> dp(k + 1, std::vector<std::int64_t>(side * side, kInf));
  dp[0][at({0, 0})] = 0;

  for (std::size_t i = 0; i < vecs.size();) {
    // One direction at a time: at most one edge per direction.
    std::size_t j = i;
    while (j < vecs.size() && snl::cross(vecs[i], vecs[j]) == 0 && !angle_before(vecs[i], vecs[j])) ++j;
    auto next = dp;
    for (std::size_t t = i; t < j; ++t) {
      const IntVec v = vecs[t];
      for (int c = 0; c < k; ++c) {
        for (std::int64_t sx = -reach; sx <= reach; ++sx) {
          for (std::int64_t sy = -reach; sy <= reach; ++sy) {
            const std::int64_t cur = dp[c][at({sx, sy})];
            if (cur == kInf) continue;
            const IntVec s2{sx + v.x, sy + v.y};
            if (s2.x < -reach || s2.x > reach || s2.y < -reach || s2.y > reach) continue;
            std::int64_t& slot = next[c + 1][at(s2)];
            slot = std::min(slot, cur + snl::cross(IntVec{sx, sy}, v));
          }
        }
      }
    }
    dp = std::move(next);
    i = j;
  }
  return dp[k][at({0, 0})];
}

std::optional<std::int64_t> min_symmetric_interior(int m, std::int64_t box) {
  std::vector<IntVec> reps;
  for (std::int64_t x = 0; x <= box; ++x) {
    for (std::int64_t y = -box; y <= box; ++y) {
      if (x > 0 || y > 0) reps.push_back({x, y});
    }
  }
  if (m == 1) {
    std::optional<std::int64_t> best;
    for (const IntVec v : reps) {
      const std::int64_t inner = 2 * snl::gcd_abs(v) - 1;
      if (!best || inner < *best) best = inner;
    }
    return best;
  }
  std::optional<std::int64_t> best;
  std::vector<std::size_t> pick(m);
  const std::function<void(std::size_t, int)> choose = [&](std::size_t from, int depth) {
    if (depth == m) {
      std::vector<IntVec> pts;
      for (const std::size_t i : pick) {
        pts.push_back(reps[i]);
        pts.push_back(-reps[i]);
      }
      const auto h = hull(pts);
      if (h.size() != static_cast<std::size_t>(2 * m)) return;
      const std::int64_t inner = scan_polygon(h).interior;
      if (!best || inner < *best) best = inner;
      return;
    }
    for (std::size_t i = from; i < reps.size(); ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  return best;
}

GapResult min_cycle_gap(const snl::ToralGeodesicGraph& g, const snl::NormSpec& norm, std::size_t max_edges) {
  struct Step {
    std::size_t edge;
    int dir;
  };
  const auto& edges = g.edges();
  const auto tail = [&](Step s) { return s.dir > 0 ? edges[s.edge].tail : edges[s.edge].head; };
  const auto head = [&](Step s) { return s.dir > 0 ? edges[s.edge].head : edges[s.edge].tail; };

  GapResult r;
  std::vector<Step> walk;
  snl::RationalPoint sum;
  double len = 0.0;
  const std::function<void()> extend = [&]() {
    const Step first = walk.front();
    const Step last = walk.back();
    if (head(last) == tail(first) && !(last.edge == first.edge && last.dir == -first.dir)) {
      const bool iterate = std::all_of(walk.begin(), walk.end(), [&](Step s) {
        return edges[s.edge].class_index == edges[first.edge].class_index && s.dir == first.dir;
      });
      if (!iterate) {
        ++r.walks;
        const snl::IntegralClass h{sum.x.num(), sum.y.num()};
        r.min_gap = std::min(r.min_gap, len - norm(h));
      }
    }
    if (walk.size() == max_edges) return;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      for (const int dir : {1, -1}) {
        const Step s{e, dir};
        if (tail(s) != head(last) || (e == last.edge && dir == -last.dir)) continue;
        const snl::RationalPoint d = edges[e].displacement;
        walk.push_back(s);
        sum = dir > 0 ? sum + d : sum - d;
        len += edges[e].length;
        extend();
        len -= edges[e].length;
        sum = dir > 0 ? sum - d : sum + d;
        walk.pop_back();
      }
    }
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (const int dir : {1, -1}) {
      walk = {Step{e, dir}};
      sum = dir > 0 ? edges[e].displacement : snl::RationalPoint{} - edges[e].displacement;
      len = edges[e].length;
      extend();
    }
  }
  return r;
}

std::vector<snl::ClassLength> lattice_scan(const snl::NormSpec& norm, double bound, std::int64_t half_width) {
  std::vector<snl::ClassLength> out;
  for (std::int64_t a = 0; a <= half_width; ++a) {
    for (std::int64_t b = -half_width; b <= half_width; ++b) {
      const snl::IntegralClass h{a, b};
      if (!h.is_canonical()) continue;
      const double v = norm(h);
      if (v <= bound) out.push_back({h, v});
    }
  }
  std::sort(out.begin(), out.end(), [](const snl::ClassLength& x, const snl::ClassLength& y) {
    return x.length != y.length ? x.length < y.length : x.cls < y.cls;
  });
  return out;
}

double min_class_length(std::size_t nodes, const std::vector<CoverEdge>& edges, IntVec h, std::int64_t window) {
  struct Arc {
    std::size_t to;
    double weight;
    IntVec period;
  };
  std::vector<std::vector<Arc>> adj(nodes);
  for (const CoverEdge& e : edges) {
    adj[e.u].push_back({e.v, e.weight, e.period});
    adj[e.v].push_back({e.u, e.weight, -e.period});
  }
  using State = std::tuple<std::size_t, std::int64_t, std::int64_t>;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < nodes; ++s) {
    std::map<State, double> dist;
    using Item = std::pair<double, State>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[{s, 0, 0}] = 0.0;
    heap.push({0.0, {s, 0, 0}});
    while (!heap.empty()) {
      const auto [d, st] = heap.top();
      heap.pop();
      if (d > dist[st]) continue;
      const auto [v, x, y] = st;
      if (v == s && ((x == h.x && y == h.y) || (x == -h.x && y == -h.y))) {
        best = std::min(best, d);
        break;
      }
      for (const Arc& a : adj[v]) {
        const std::int64_t nx = x + a.period.x;
        const std::int64_t ny = y + a.period.y;
        if (std::abs(nx) > window || std::abs(ny) > window) continue;
        const State next{a.to, nx, ny};
        const auto it = dist.find(next);
        if (it == dist.end() || d + a.weight < it->second) {
          dist[next] = d + a.weight;
          heap.push({d + a.weight, next});
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
