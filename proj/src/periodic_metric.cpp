#include "snl/periodic_metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <string>
#include <tuple>

#include "snl/errors.hpp"
#include "snl/parallel.hpp"

namespace snl {
namespace {

constexpr std::uint32_t kNoState = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kEmptyKey = std::numeric_limits<std::uint64_t>::max();

std::uint64_t state_key(std::size_t node, std::int64_t ox, std::int64_t oy) {
  if (ox < -32767 || ox > 32767 || oy < -32767 || oy > 32767) {
    throw ValidationError("cover offset exceeds the 16-bit range");
  }
  return (static_cast<std::uint64_t>(node) << 32) | (static_cast<std::uint64_t>(static_cast<std::uint16_t>(ox)) << 16) |
         static_cast<std::uint64_t>(static_cast<std::uint16_t>(oy));
}

// Dijkstra over the Z^2 cover. States live in flat arrays; an open-addressing
// table maps (node, offset) to a state and is reset through its touched slots.
class CoverSearch {
 public:
  explicit CoverSearch(const PeriodicWeightedGraph& g) : g_(g) { resize_table(1u << 12); }

  template <typename Skip, typename OnPop>
  void run(std::size_t start, std::optional<long long> window, double radius, Skip&& skip, OnPop&& on_pop) {
    run(start, window, radius, skip, on_pop, [](std::size_t, std::int64_t, std::int64_t) { return 0.0; });
  }

  /// `remaining(node, ox, oy)` is a lower bound on the distance still needed
  /// from that state; states that cannot finish within the radius are dropped.
  /// With `guided` the heap is ordered by distance plus that bound (A*), which
  /// requires the bound to be consistent; popped distances are still final.
  template <typename Skip, typename OnPop, typename Remaining>
  void run(std::size_t start, std::optional<long long> window, double radius, Skip&& skip, OnPop&& on_pop,
           Remaining&& remaining, bool guided = false) {
    reset();
    using Item = std::tuple<double, double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, 0.0, insert(start, 0, 0, 0.0, kNoState)});
    while (!heap.empty()) {
      const auto [key, d, s] = heap.top();
      heap.pop();
      if (d > dist_[s]) continue;
      if (d > radius) {
        if (guided) continue;
        return;
      }
      if (on_pop(s)) return;
      const std::size_t u = node_[s];
      const std::int64_t ox = ox_[s];
      const std::int64_t oy = oy_[s];
      for (const auto& arc : g_.arcs(u)) {
        if (skip(arc.to)) continue;
        const std::int64_t nx = ox + arc.period.x;
        const std::int64_t ny = oy + arc.period.y;
        if (window && (std::llabs(nx) > *window || std::llabs(ny) > *window)) continue;
        const double nd = d + arc.weight;
        if (nd > radius) continue;
        const double rest = remaining(arc.to, nx, ny);
        if (nd + rest > radius) continue;
        const double priority = guided ? nd + rest : nd;
        const std::uint64_t skey = state_key(arc.to, nx, ny);
        std::size_t slot = find_slot(skey);
        if (keys_[slot] == kEmptyKey) {
          const std::uint32_t t = insert_at(slot, skey, arc.to, nx, ny, nd, s);
          heap.push({priority, nd, t});
        } else {
          const std::uint32_t t = slots_[slot];
          if (nd < dist_[t]) {
            dist_[t] = nd;
            pred_[t] = s;
            heap.push({priority, nd, t});
          }
        }
      }
    }
  }

  std::size_t node(std::uint32_t s) const { return node_[s]; }
  IntVec offset(std::uint32_t s) const { return {ox_[s], oy_[s]}; }
  double dist(std::uint32_t s) const { return dist_[s]; }

  std::vector<std::size_t> path(std::uint32_t s) const {
    std::vector<std::size_t> nodes;
    for (std::uint32_t t = s; t != kNoState; t = pred_[t]) nodes.push_back(node_[t]);
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  }

 private:
  void resize_table(std::size_t capacity) {
    keys_.assign(capacity, kEmptyKey);
    slots_.assign(capacity, 0);
    mask_ = capacity - 1;
    touched_.clear();
    for (std::uint32_t t = 0; t < node_.size(); ++t) {
      const std::uint64_t key = state_key(node_[t], ox_[t], oy_[t]);
      const std::size_t slot = find_slot(key);
      keys_[slot] = key;
      slots_[slot] = t;
      touched_.push_back(slot);
    }
  }

  void reset() {
    for (const std::size_t slot : touched_) keys_[slot] = kEmptyKey;
    touched_.clear();
    node_.clear();
    ox_.clear();
    oy_.clear();
    dist_.clear();
    pred_.clear();
  }

  std::size_t find_slot(std::uint64_t key) const {
    std::size_t slot = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 17) & mask_;
    while (keys_[slot] != kEmptyKey && keys_[slot] != key) slot = (slot + 1) & mask_;
    return slot;
  }

  std::uint32_t insert(std::size_t node, std::int64_t ox, std::int64_t oy, double d, std::uint32_t pred) {
    const std::uint64_t key = state_key(node, ox, oy);
    return insert_at(find_slot(key), key, node, ox, oy, d, pred);
  }

  std::uint32_t insert_at(std::size_t slot, std::uint64_t key, std::size_t node, std::int64_t ox, std::int64_t oy,
                          double d, std::uint32_t pred) {
    const auto t = static_cast<std::uint32_t>(node_.size());
    node_.push_back(static_cast<std::uint32_t>(node));
    ox_.push_back(static_cast<std::int32_t>(ox));
    oy_.push_back(static_cast<std::int32_t>(oy));
    dist_.push_back(d);
    pred_.push_back(pred);
    keys_[slot] = key;
    slots_[slot] = t;
    touched_.push_back(slot);
    if (2 * node_.size() > keys_.size()) resize_table(2 * keys_.size());
    return t;
  }

  const PeriodicWeightedGraph& g_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::vector<std::size_t> touched_;
  std::vector<std::uint32_t> node_;
  std::vector<std::int32_t> ox_;
  std::vector<std::int32_t> oy_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> pred_;
};

// Hands one CoverSearch to each concurrent task.
class SearchPool {
 public:
  explicit SearchPool(const PeriodicWeightedGraph& g) : g_(g) {}
  std::unique_ptr<CoverSearch> acquire() {
    std::lock_guard lock(mutex_);
    if (free_.empty()) return std::make_unique<CoverSearch>(g_);
    auto s = std::move(free_.back());
    free_.pop_back();
    return s;
  }
  void release(std::unique_ptr<CoverSearch> s) {
    std::lock_guard lock(mutex_);
    free_.push_back(std::move(s));
  }

 private:
  const PeriodicWeightedGraph& g_;
  std::mutex mutex_;
  std::vector<std::unique_ptr<CoverSearch>> free_;
};

// One endpoint of every edge whose period has a nonzero x (axis 0) or y
// (axis 1) part. A cycle that uses such an edge passes through the endpoint.
std::vector<std::size_t> seam_nodes(const PeriodicWeightedGraph& g, bool x_axis, bool y_axis) {
  std::vector<std::size_t> out;
  for (const auto& e : g.edges()) {
    if ((x_axis && e.period.x != 0) || (y_axis && e.period.y != 0)) out.push_back(e.u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> ranks_of(std::size_t n, const std::vector<std::size_t>& seam) {
  std::vector<std::size_t> rank(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < seam.size(); ++r) rank[seam[r]] = r;
  return rank;
}

// Euclidean distance from d to the nearest nonzero integer point.
double distance_to_nonzero_lattice(Vec2 d) {
  const auto fx = static_cast<std::int64_t>(std::floor(d.x));
  const auto fy = static_cast<std::int64_t>(std::floor(d.y));
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t i = fx - 1; i <= fx + 2; ++i) {
    for (std::int64_t j = fy - 1; j <= fy + 2; ++j) {
      if (i == 0 && j == 0) continue;
      const double dx = d.x - static_cast<double>(i);
      const double dy = d.y - static_cast<double>(j);
      best = std::min(best, dx * dx + dy * dy);
    }
  }
  return std::sqrt(best);
}

// A calibration c, psi: c . disp + psi(to) - psi(from) <= weight on every arc,
// so c . (y - x) + psi(y) - psi(x) bounds the cover distance from x to y.
struct Calibration {
  Vec2 c;
  std::vector<double> psi;
};

// Bellman-Ford (queue form) on the reduced weights weight - c . disp. Gives up
// on a negative cycle or once the work cap is spent; either way c is rejected.
std::optional<std::vector<double>> potential_for(const PeriodicWeightedGraph& g, Vec2 c) {
  const std::size_t n = g.node_count();
  const auto& pos = g.positions();
  std::vector<double> psi(n, 0.0);
  std::vector<std::size_t> relaxed(n, 0);
  std::vector<char> queued(n, 1);
  std::queue<std::size_t> q;
  for (std::size_t v = 0; v < n; ++v) q.push(v);
  std::size_t work = 0;
  const std::size_t cap = 64 * (g.edges().size() + n);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    queued[u] = 0;
    for (const auto& arc : g.arcs(u)) {
      if (++work > cap) return std::nullopt;
      const Vec2 disp = pos[arc.to] + Vec2{static_cast<double>(arc.period.x), static_cast<double>(arc.period.y)} - pos[u];
      const double cand = psi[u] + arc.weight - dot(c, disp);
      if (cand < psi[arc.to]) {
        psi[arc.to] = cand;
        if (++relaxed[arc.to] > n) return std::nullopt;
        if (!queued[arc.to]) {
          queued[arc.to] = 1;
          q.push(arc.to);
        }
      }
    }
  }
  return psi;
}

// Largest multiple of the unit vector `dir` (to bisection precision) that
// admits a potential. speed * dir always does, with psi = 0.
Calibration calibrate(const PeriodicWeightedGraph& g, Vec2 dir) {
  double lo = g.speed() * (1.0 - 1e-12);
  Calibration best{lo * dir, std::vector<double>(g.node_count(), 0.0)};
  double hi = 0.0;
  for (double trial = 2.0 * lo; trial < 64.0 * lo; trial *= 2.0) {
    auto psi = potential_for(g, trial * dir);
    if (!psi) {
      hi = trial;
      break;
    }
    lo = trial;
    best = {trial * dir, std::move(*psi)};
  }
  if (hi == 0.0) return best;
  for (int step = 0; step < 12; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (auto psi = potential_for(g, mid * dir)) {
      lo = mid;
      best = {mid * dir, std::move(*psi)};
    } else {
      hi = mid;
    }
  }
  return best;
}

long long certified_window(double length, double speed) {
  return static_cast<long long>(std::ceil(length / speed)) + 1;
}

}  // namespace

PeriodicWeightedGraph::PeriodicWeightedGraph(std::vector<Vec2> positions, std::vector<PeriodicEdge> edges)
    : positions_(std::move(positions)), edges_(std::move(edges)) {
  const std::size_t n = positions_.size();
  if (n == 0) throw ValidationError("periodic graph needs at least one node");
  if (n >= (std::size_t{1} << 31)) throw ValidationError("periodic graph too large");
  for (const Vec2 p : positions_) {
    if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0)) {
      throw ValidationError("node positions must lie in [0,1)^2");
    }
  }
  std::vector<std::size_t> degree(n + 1, 0);
  speed_ = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw ValidationError("edge endpoint out of range");
    if (!(std::isfinite(e.weight) && e.weight > 0.0)) throw ValidationError("edge weights must be positive");
    ++degree[e.u];
    ++degree[e.v];
    const double len = length(positions_[e.v] + to_vec2(e.period) - positions_[e.u]);
    if (len > 1e-15) speed_ = std::min(speed_, e.weight / len);
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  arcs_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    arcs_[fill[e.u]++] = {e.v, e.weight, e.period};
    arcs_[fill[e.v]++] = {e.u, e.weight, -e.period};
  }

  // Spanning-tree offsets; every edge then closes a cycle of known class.
  std::vector<std::optional<IntVec>> off(n);
  off[0] = IntVec{0, 0};
  std::vector<std::size_t> stack{0};
  std::size_t seen = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const auto& a : arcs(u)) {
      if (!off[a.to]) {
        off[a.to] = *off[u] + a.period;
        stack.push_back(a.to);
        ++seen;
      }
    }
  }
  if (seen != n) throw ValidationError("periodic graph is not connected");
  for (const auto& e : edges_) cycle_lattice_.add(*off[e.u] + e.period - *off[e.v]);
}

bool PeriodicWeightedGraph::represents(IntegralClass h) const { return cycle_lattice_.contains(h.vec()); }

PeriodicWeightedGraph uniform_grid(std::size_t n, double weight) {
  if (n < 1) throw ValidationError("grid resolution must be positive");
  std::vector<Vec2> pos;
  std::vector<PeriodicEdge> edges;
  const double step = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) pos.push_back({static_cast<double>(i) * step, static_cast<double>(j) * step});
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t u = j * n + i;
      edges.push_back({u, j * n + (i + 1) % n, weight, {i + 1 == n ? 1 : 0, 0}});
      edges.push_back({u, ((j + 1) % n) * n + i, weight, {0, j + 1 == n ? 1 : 0}});
    }
  }
  return PeriodicWeightedGraph(std::move(pos), std::move(edges));
}

CanyonGraph build_canyon_graph(const ToralGeodesicGraph& tg, double theta, const CanyonOptions& options) {
  const std::size_t n = options.resolution;
  const double b = options.background;
  if (!(std::isfinite(theta) && theta > 0.0)) throw ValidationError("theta must be positive");
  if (n < 64) throw ValidationError("grid resolution must be at least 64");
  double ell_k = 0.0;
  for (const auto& c : tg.classes()) ell_k = std::max(ell_k, c.length);
  if (options.ell_k) ell_k = *options.ell_k;
  if (!(std::isfinite(b) && b >= ell_k)) throw ValidationError("background systole B must be at least ell_k");

  const double step = 1.0 / static_cast<double>(n);
  std::vector<Vec2> pos;
  std::vector<PeriodicEdge> edges;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) pos.push_back({static_cast<double>(i) * step, static_cast<double>(j) * step});
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t u = j * n + i;
      edges.push_back({u, j * n + (i + 1) % n, b * step, {i + 1 == n ? 1 : 0, 0}});
      edges.push_back({u, ((j + 1) % n) * n + i, b * step, {0, j + 1 == n ? 1 : 0}});
    }
  }
  CanyonGraph out{PeriodicWeightedGraph({{0, 0}}, {}), n * n, {}, 0.0, 0.0};
  if (!options.include_corridors) {
    out.graph = PeriodicWeightedGraph(std::move(pos), std::move(edges));
    return out;
  }

  const auto& verts = tg.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      double dx = std::abs(verts[i].x.to_double() - verts[j].x.to_double());
      double dy = std::abs(verts[i].y.to_double() - verts[j].y.to_double());
      dx = std::min(dx, 1.0 - dx);
      dy = std::min(dy, 1.0 - dy);
      if (std::hypot(dx, dy) <= 2.0 * step) {
        throw ValidationError("grid resolution too small to separate hubs; need N > " +
                              std::to_string(static_cast<long long>(std::ceil(2.0 / std::hypot(dx, dy)))));
      }
    }
  }

  const double savings = std::min(theta, 0.5 * zeta_of(tg));
  const double delta = savings;
  out.savings = savings;
  out.hub_radius = delta;

  auto add_node = [&](Vec2 p) {
    pos.push_back(p);
    return pos.size() - 1;
  };
  auto connect_to_grid = [&](std::size_t node) {
    const Vec2 p = pos[node];
    auto gi = static_cast<long long>(std::llround(p.x * static_cast<double>(n)));
    auto gj = static_cast<long long>(std::llround(p.y * static_cast<double>(n)));
    IntVec period{0, 0};
    if (gi == static_cast<long long>(n)) {
      gi = 0;
      period.x = 1;
    }
    if (gj == static_cast<long long>(n)) {
      gj = 0;
      period.y = 1;
    }
    edges.push_back({node, static_cast<std::size_t>(gj) * n + static_cast<std::size_t>(gi), 0.5 * b, period});
  };

  for (const auto& v : verts) {
    out.hub_nodes.push_back(add_node(to_vec2(v)));
    connect_to_grid(out.hub_nodes.back());
  }

  struct Port {
    std::size_t node;
    std::size_t class_index;
  };
  std::vector<std::vector<Port>> ports(verts.size());
  for (const auto& e : tg.edges()) {
    const Vec2 start = to_vec2(verts[e.tail]);
    const Vec2 disp = to_vec2(e.displacement);
    const std::size_t port_tail = add_node(start);
    const std::size_t port_head = add_node(to_vec2(verts[e.head]));
    edges.push_back({out.hub_nodes[e.tail], port_tail, delta, {0, 0}});
    edges.push_back({port_head, out.hub_nodes[e.head], delta, {0, 0}});
    ports[e.tail].push_back({port_tail, e.class_index});
    ports[e.head].push_back({port_head, e.class_index});

    const auto pieces = static_cast<std::size_t>(
        std::max(1.0, std::ceil(e.q.to_double() * length(tg.classes()[e.class_index].h.real()) * static_cast<double>(n))));
    const double w = (e.length - 2.0 * delta) / static_cast<double>(pieces);
    std::size_t prev = port_tail;
    IntVec prev_floor{0, 0};
    for (std::size_t s = 1; s < pieces; ++s) {
      const double t = static_cast<double>(s) / static_cast<double>(pieces);
      const Vec2 lift = start + t * disp;
      IntVec fl{static_cast<std::int64_t>(std::floor(lift.x)), static_cast<std::int64_t>(std::floor(lift.y))};
      Vec2 p = lift - to_vec2(fl);
      if (p.x >= 1.0) {
        p.x = 0.0;
        ++fl.x;
      }
      if (p.y >= 1.0) {
        p.y = 0.0;
        ++fl.y;
      }
      const std::size_t node = add_node(p);
      edges.push_back({prev, node, w, fl - prev_floor});
      connect_to_grid(node);
      prev = node;
      prev_floor = fl;
    }
    edges.push_back({prev, port_head, w, e.period - prev_floor});
  }

  // Turning between different geodesics may cut the corner at the hub.
  for (const auto& hub : ports) {
    for (std::size_t i = 0; i < hub.size(); ++i) {
      for (std::size_t j = i + 1; j < hub.size(); ++j) {
        if (hub[i].class_index != hub[j].class_index) edges.push_back({hub[i].node, hub[j].node, savings, {0, 0}});
      }
    }
  }
  out.graph = PeriodicWeightedGraph(std::move(pos), std::move(edges));
  return out;
}

SpectrumEntry marked_min_length(const PeriodicWeightedGraph& pg, IntegralClass h, std::optional<long long> window) {
  SpectrumEntry entry{h, 0.0, {}};
  if (h.is_trivial()) return entry;
  if (!pg.represents(h)) throw ValidationError("class is not represented by any cycle of the graph");
  const long long reach = std::max(std::llabs(h.a), std::llabs(h.b));
  if (window && *window < reach) throw WindowError("cover window smaller than the target class", reach);

  const IntVec target = h.vec();
  const Vec2 dir = (1.0 / length(h.real())) * h.real();
  const Calibration cal = calibrate(pg, dir);
  const auto& pos = pg.positions();
  // Any seam order is valid; starting where the calibration is tight finds a
  // short cycle first and prunes the remaining starts hardest.
  auto seam = seam_nodes(pg, h.a != 0, h.a == 0);
  std::vector<double> waste(pg.node_count(), std::numeric_limits<double>::infinity());
  for (const std::size_t u : seam) {
    for (const auto& arc : pg.arcs(u)) {
      if ((h.a != 0 ? arc.period.x : arc.period.y) == 0) continue;
      const Vec2 disp = pos[arc.to] + Vec2{static_cast<double>(arc.period.x), static_cast<double>(arc.period.y)} - pos[u];
      const double slack = arc.weight - std::abs(dot(cal.c, disp) + cal.psi[arc.to] - cal.psi[u]);
      waste[u] = std::min(waste[u], slack);
    }
  }
  std::stable_sort(seam.begin(), seam.end(), [&](std::size_t a, std::size_t b) { return waste[a] < waste[b]; });
  const auto rank = ranks_of(pg.node_count(), seam);
  SearchPool pool(pg);
  std::mutex best_mutex;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_start = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best_path;

  const double speed = pg.speed() * (1.0 - 1e-12);
  auto search_from = [&](std::size_t r) {
    auto search = pool.acquire();
    const std::size_t s = seam[r];
    const Vec2 origin = pg.positions()[s];
    double bound;
    {
      std::lock_guard lock(best_mutex);
      bound = best;
    }
    // A cycle through s that avoids lower-ranked seam nodes; the cycle's
    // lowest-ranked seam node is always one of the starts.
    search->run(
        s, window, bound, [&](std::size_t v) { return rank[v] < r; },
        [&](std::uint32_t t) {
          if (search->node(t) != s) return false;
          const IntVec off = search->offset(t);
          if (off != target && off != -target) return false;
          std::lock_guard lock(best_mutex);
          const double d = search->dist(t);
          if (d < best || (d == best && s < best_start)) {
            best = d;
            best_start = s;
            best_path = search->path(t);
          }
          return true;
        },
        [&](std::size_t v, std::int64_t ox, std::int64_t oy) {
          // Cycle length >= speed * displacement still to cover, and >= the
          // calibration gap to each target copy (-c, -psi calibrate too).
          const Vec2 here = pos[v] + Vec2{static_cast<double>(ox), static_cast<double>(oy)} - origin;
          const double gap = dot(cal.c, h.real() - here) + cal.psi[s] - cal.psi[v];
          const double back = dot(cal.c, h.real() + here) - cal.psi[s] + cal.psi[v];
          const double to_plus = std::max(speed * length(here - h.real()), gap);
          const double to_minus = std::max(speed * length(here + h.real()), back);
          return std::max(0.0, std::min(to_plus, to_minus) * (1.0 - 1e-12) - 1e-9);
        },
        true);
    pool.release(std::move(search));
  };

  if (!seam.empty()) {
    // The unrestricted first start always succeeds when the window allows, bounding the rest.
    search_from(0);
    parallel_for(seam.size() - 1, [&](std::size_t i) { search_from(i + 1); });
  }
  if (!std::isfinite(best)) {
    if (!window) throw ValidationError("no cycle found for the class");
    const auto free = marked_min_length(pg, h, std::nullopt);
    throw WindowError("cover window too small to reach the class; enlarge it", certified_window(free.length, pg.speed()));
  }
  if (window && certified_window(best, pg.speed()) > *window) {
    throw WindowError("cover window cannot certify the shortest cycle; enlarge it", certified_window(best, pg.speed()));
  }
  entry.length = best;
  entry.witness = std::move(best_path);
  return entry;
}

StableNormEstimate stable_norm_estimate(const PeriodicWeightedGraph& pg, IntegralClass h, std::size_t n_max,
                                        std::optional<long long> window) {
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  if (h.is_trivial()) throw ValidationError("stable norm estimate needs a nontrivial class");
  StableNormEstimate est;
  std::vector<double> f;
  for (std::size_t n = 1; n <= n_max; ++n) {
    f.push_back(marked_min_length(pg, static_cast<std::int64_t>(n) * h, window).length);
    est.sequence.push_back(f.back() / static_cast<double>(n));
  }
  const auto it = std::min_element(est.sequence.begin(), est.sequence.end());
  est.estimate = *it;
  est.minimum_at = static_cast<std::size_t>(it - est.sequence.begin()) + 1;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double linear = static_cast<double>(n) * f[0];
    if (std::abs(f[n - 1] - linear) <= 1e-9 * linear) est.stable = true;
  }
  return est;
}

std::vector<SpectrumGroup> group_lengths(std::span<const ClassLength> sorted, double tolerance) {
  std::vector<SpectrumGroup> groups;
  std::size_t before = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    SpectrumGroup g;
    g.length = sorted[i].length;
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].length - g.length <= tolerance * g.length) {
      g.classes.push_back(sorted[j].cls);
      ++j;
    }
    g.m = j - i;
    g.n = before;
    before += g.m;
    groups.push_back(std::move(g));
    i = j;
  }
  return groups;
}

Spectrum spectrum(const PeriodicWeightedGraph& pg, double norm_bound, std::optional<long long> window,
                  double tolerance, bool with_witnesses) {
  if (!(norm_bound > 0.0)) throw ValidationError("norm bound must be positive");
  if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be nonnegative");
  const double radius = norm_bound * (1.0 + 1e-12);
  if (window && certified_window(radius, pg.speed()) > *window) {
    throw WindowError("cover window cannot certify the spectrum bound; enlarge it",
                      certified_window(radius, pg.speed()));
  }
  const auto seam = seam_nodes(pg, true, true);
  const auto rank = ranks_of(pg.node_count(), seam);
  const double speed = pg.speed() * (1.0 - 1e-12);

  struct Hit {
    double length;
    std::size_t start;
    std::vector<std::size_t> witness;
  };
  std::map<IntegralClass, Hit> found;
  std::mutex found_mutex;
  SearchPool pool(pg);

  parallel_for(seam.size(), [&](std::size_t r) {
    auto search = pool.acquire();
    const std::size_t s = seam[r];
    const Vec2 origin = pg.positions()[s];
    std::map<IntegralClass, std::pair<double, std::uint32_t>> local;
    search->run(
        s, window, radius, [&](std::size_t v) { return rank[v] < r; },
        [&](std::uint32_t t) {
          if (search->node(t) != s) return false;
          const IntVec off = search->offset(t);
          if (off == IntVec{0, 0}) return false;
          const IntegralClass h = to_class(off).canonical();
          const auto it = local.find(h);
          if (it == local.end() || search->dist(t) < it->second.first) local[h] = {search->dist(t), t};
          return false;
        },
        [&](std::size_t v, std::int64_t ox, std::int64_t oy) {
          const Vec2 here = pg.positions()[v] + Vec2{static_cast<double>(ox), static_cast<double>(oy)} - origin;
          return speed * distance_to_nonzero_lattice(here);
        });
    {
      std::lock_guard lock(found_mutex);
      for (const auto& [h, hit] : local) {
        auto it = found.find(h);
        if (it == found.end() || hit.first < it->second.length ||
            (hit.first == it->second.length && s < it->second.start)) {
          found[h] = Hit{hit.first, s, with_witnesses ? search->path(hit.second) : std::vector<std::size_t>{}};
        }
      }
    }
    pool.release(std::move(search));
  });

  Spectrum out;
  out.tolerance = tolerance;
  out.entries.push_back({IntegralClass{0, 0}, 0.0, {}});
  for (auto& [h, hit] : found) out.entries.push_back({h, hit.length, std::move(hit.witness)});
  std::sort(out.entries.begin(), out.entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    return x.length != y.length ? x.length < y.length : x.cls < y.cls;
  });
  std::vector<ClassLength> flat;
  for (const auto& e : out.entries) flat.push_back({e.cls, e.length});
  out.groups = group_lengths(flat, tolerance);
  return out;
}

StableNormField stable_norm_field(const PeriodicWeightedGraph& pg, std::span<const IntegralClass> classes,
                                  std::size_t n_max) {
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  if (classes.empty()) throw ValidationError("stable norm field needs at least one class");
  double reach = 0.0;
  for (const IntegralClass h : classes) {
    if (h.is_trivial()) throw ValidationError("stable norm field classes must be nontrivial");
    reach = std::max(reach, marked_min_length(pg, h).length);
  }
  // One sweep covers every multiple n h with f(n h) <= n f(h) <= n_max * reach.
  const Spectrum sweep = spectrum(pg, static_cast<double>(n_max) * reach * (1.0 + 1e-9));
  std::map<IntegralClass, double> f;
  for (const auto& e : sweep.entries) f[e.cls] = e.length;

  std::vector<double> estimates;
  std::vector<Vec2> points;
  for (const IntegralClass h : classes) {
    double est = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= n_max; ++n) {
      const auto it = f.find((static_cast<std::int64_t>(n) * h).canonical());
      if (it != f.end()) est = std::min(est, it->second / static_cast<double>(n));
    }
    estimates.push_back(est);
    points.push_back((1.0 / est) * h.real());
  }
  return {std::vector<IntegralClass>(classes.begin(), classes.end()), std::move(estimates), HullGauge(points)};
}

}  // namespace snl
