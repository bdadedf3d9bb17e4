#include "snl/toral_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>

#include "snl/errors.hpp"
#include "snl/lattice_span.hpp"

namespace snl {
namespace {

// Oriented edge ids: 2e for forward, 2e+1 for backward; id ^ 1 reverses.
OrientedEdge from_id(std::size_t id) { return {id / 2, (id & 1) ? -1 : 1}; }

std::vector<std::vector<std::size_t>> out_steps(const ToralGeodesicGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertices().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    adj[g.edges()[e].tail].push_back(2 * e);
    adj[g.edges()[e].head].push_back(2 * e + 1);
  }
  return adj;
}

IntVec step_period(const ToralGeodesicGraph& g, std::size_t id) {
  const IntVec p = g.edges()[id / 2].period;
  return (id & 1) ? -p : p;
}

std::size_t head_of(const ToralGeodesicGraph& g, std::size_t id) {
  const auto& e = g.edges()[id / 2];
  return (id & 1) ? e.tail : e.head;
}

std::uint64_t cover_key(std::size_t vertex, IntVec off) {
  constexpr std::int64_t kBias = 1 << 19;
  if (off.x <= -kBias || off.x >= kBias || off.y <= -kBias || off.y >= kBias) {
    throw ValidationError("cover offset exceeds the supported range");
  }
  return (static_cast<std::uint64_t>(vertex) << 40) | (static_cast<std::uint64_t>(off.x + kBias) << 20) |
         static_cast<std::uint64_t>(off.y + kBias);
}

struct CoverNode {
  std::size_t vertex;
  IntVec off;
  double dist;
  std::size_t pred;  // index into nodes, or npos for the root
  std::size_t step;  // oriented id used to arrive
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dijkstra in the Z^2 cover from (start, 0). on_pop(node_index) returns true to stop.
// Nodes farther than `radius` or outside the window are not expanded.
class CoverDijkstra {
 public:
  CoverDijkstra(const ToralGeodesicGraph& g, const std::vector<std::vector<std::size_t>>& adj)
      : g_(g), adj_(adj) {}

  template <typename OnPop>
  void run(std::size_t start, std::optional<long long> window, double radius, OnPop&& on_pop) {
    nodes_.clear();
    index_.clear();
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    nodes_.push_back({start, {0, 0}, 0.0, kNone, kNone});
    index_[cover_key(start, {0, 0})] = 0;
    heap.push({0.0, 0});
    while (!heap.empty()) {
      const auto [d, n] = heap.top();
      heap.pop();
      if (d > nodes_[n].dist) continue;
      if (d > radius) return;
      if (on_pop(n)) return;
      const CoverNode cur = nodes_[n];
      for (const std::size_t id : adj_[cur.vertex]) {
        if (cur.step != kNone && id == (cur.step ^ 1)) continue;  // shortest paths never backtrack
        const IntVec off = cur.off + step_period(g_, id);
        if (window && (std::llabs(off.x) > *window || std::llabs(off.y) > *window)) continue;
        const std::size_t v = head_of(g_, id);
        const double nd = d + g_.edges()[id / 2].length;
        const auto key = cover_key(v, off);
        auto [it, inserted] = index_.try_emplace(key, nodes_.size());
        if (inserted) {
          nodes_.push_back({v, off, nd, n, id});
          heap.push({nd, it->second});
        } else if (nd < nodes_[it->second].dist) {
          nodes_[it->second].dist = nd;
          nodes_[it->second].pred = n;
          nodes_[it->second].step = id;
          heap.push({nd, it->second});
        }
      }
    }
  }

  const CoverNode& node(std::size_t i) const { return nodes_[i]; }

  Cycle path_to(std::size_t i) const {
    Cycle c;
    for (std::size_t n = i; nodes_[n].pred != kNone; n = nodes_[n].pred) c.steps.push_back(from_id(nodes_[n].step));
    std::reverse(c.steps.begin(), c.steps.end());
    return c;
  }

 private:
  const ToralGeodesicGraph& g_;
  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<CoverNode> nodes_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace

ToralGeodesicGraph ToralGeodesicGraph::build(std::vector<GeodesicClass> classes) {
  if (classes.empty()) throw ValidationError("geodesic graph needs at least one class");
  for (const auto& c : classes) {
    if (!c.h.is_primitive()) {
      std::ostringstream os;
      os << "class " << c.h << " is not primitive";
      throw ValidationError(os.str());
    }
    if (!std::isfinite(c.length) || c.length <= 0.0) throw ValidationError("geodesic lengths must be positive");
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (cross(classes[i].h.vec(), classes[j].h.vec()) == 0) {
        std::ostringstream os;
        os << "classes " << classes[i].h << " and " << classes[j].h << " are proportional";
        throw ValidationError(os.str());
      }
    }
  }

  ToralGeodesicGraph g;
  g.classes_ = std::move(classes);
  const std::size_t k = g.classes_.size();

  // On gamma_i the parameter t in [0,1) meets gamma_j exactly at t in (1/|det|) Z.
  std::vector<std::vector<Rational>> breaks(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational>& t = breaks[i];
    t.emplace_back(0);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const std::int64_t d = std::llabs(cross(g.classes_[i].h.vec(), g.classes_[j].h.vec()));
      for (std::int64_t n = 1; n < d; ++n) t.emplace_back(n, d);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  auto point_at = [&](std::size_t i, const Rational& t) {
    const IntegralClass h = g.classes_[i].h;
    return RationalPoint{frac(t * Rational(h.a)), frac(t * Rational(h.b))};
  };

  std::vector<RationalPoint> pts;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : breaks[i]) pts.push_back(point_at(i, t));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  g.vertices_ = pts;
  auto vertex_id = [&](const RationalPoint& p) {
    return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
  };
  g.base_ = vertex_id(RationalPoint{Rational(0), Rational(0)});

  g.speed_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const IntegralClass h = g.classes_[i].h;
    const double ell = g.classes_[i].length;
    g.speed_ = std::min(g.speed_, ell / length(h.real()));
    const auto& t = breaks[i];
    for (std::size_t s = 0; s < t.size(); ++s) {
      const Rational t0 = t[s];
      const Rational t1 = (s + 1 < t.size()) ? t[s + 1] : Rational(1);
      GraphEdge e;
      e.tail = vertex_id(point_at(i, t0));
      e.head = vertex_id(point_at(i, t1));
      e.class_index = i;
      e.q = t1 - t0;
      e.displacement = {e.q * Rational(h.a), e.q * Rational(h.b)};
      const RationalPoint end = g.vertices_[e.tail] + e.displacement;
      e.period = {end.x.floor(), end.y.floor()};
      e.length = e.q.to_double() * ell;
      g.edges_.push_back(e);
    }
  }
  return g;
}

std::size_t step_tail(const ToralGeodesicGraph& g, OrientedEdge s) {
  const auto& e = g.edges().at(s.edge);
  return s.dir > 0 ? e.tail : e.head;
}

std::size_t step_head(const ToralGeodesicGraph& g, OrientedEdge s) {
  const auto& e = g.edges().at(s.edge);
  return s.dir > 0 ? e.head : e.tail;
}

bool is_closed(const ToralGeodesicGraph& g, const Cycle& c) {
  if (c.steps.empty()) return false;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    if (step_head(g, c.steps[i]) != step_tail(g, c.steps[(i + 1) % c.steps.size()])) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Cycle& c) {
  const std::size_t n = c.steps.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const OrientedEdge a = c.steps[i];
    const OrientedEdge b = c.steps[(i + 1) % n];
    if (a.edge == b.edge && a.dir == -b.dir) return false;
  }
  return true;
}

bool is_single_class_iterate(const ToralGeodesicGraph& g, const Cycle& c) {
  if (c.steps.empty()) return false;
  const std::size_t cls = g.edges()[c.steps[0].edge].class_index;
  const int dir = c.steps[0].dir;
  return std::all_of(c.steps.begin(), c.steps.end(), [&](OrientedEdge s) {
    return g.edges()[s.edge].class_index == cls && s.dir == dir;
  });
}

IntegralClass homology_by_displacement(const ToralGeodesicGraph& g, const Cycle& c) {
  RationalPoint sum{Rational(0), Rational(0)};
  for (const OrientedEdge s : c.steps) {
    const auto& d = g.edges().at(s.edge).displacement;
    sum = s.dir > 0 ? sum + d : sum - d;
  }
  if (!sum.x.is_integer() || !sum.y.is_integer()) {
    throw ValidationError("cycle displacement is not integral; the walk is not closed");
  }
  return {sum.x.num(), sum.y.num()};
}

IntegralClass homology_by_intersection(const ToralGeodesicGraph& g, const Cycle& c) {
  // Basis curves x = x0 and y = y0 (mod 1) strictly between 0 and the next vertex coordinate.
  Rational x0(1, 2);
  Rational y0(1, 2);
  for (const auto& p : g.vertices()) {
    if (p.x > Rational(0) && p.x / Rational(2) < x0) x0 = p.x / Rational(2);
    if (p.y > Rational(0) && p.y / Rational(2) < y0) y0 = p.y / Rational(2);
  }
  std::int64_t a = 0;
  std::int64_t b = 0;
  IntVec off{0, 0};
  for (const OrientedEdge s : c.steps) {
    const auto& e = g.edges().at(s.edge);
    const RationalPoint from = g.vertices()[step_tail(g, s)];
    const RationalPoint to = g.vertices()[step_head(g, s)];
    const IntVec next = s.dir > 0 ? off + e.period : off - e.period;
    // Segment from off + from to next + to; straight, so crossings are monotone.
    const Rational sx = Rational(off.x) + from.x - x0;
    const Rational ex = Rational(next.x) + to.x - x0;
    const Rational sy = Rational(off.y) + from.y - y0;
    const Rational ey = Rational(next.y) + to.y - y0;
    a += ex.floor() - sx.floor();
    b += ey.floor() - sy.floor();
    off = next;
  }
  return {a, b};
}

double cycle_length(const ToralGeodesicGraph& g, const Cycle& c) {
  std::vector<Rational> per_class(g.classes().size(), Rational(0));
  for (const OrientedEdge s : c.steps) {
    const auto& e = g.edges().at(s.edge);
    per_class[e.class_index] += e.q;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < per_class.size(); ++i) {
    if (per_class[i] == Rational(0)) continue;
    total += per_class[i].is_integer() ? static_cast<double>(per_class[i].num()) * g.classes()[i].length
                                       : per_class[i].to_double() * g.classes()[i].length;
  }
  return total;
}

bool class_reachable(const ToralGeodesicGraph& g, IntegralClass h) {
  // Spanning tree offsets from the base vertex; each non-tree edge closes a fundamental cycle.
  const std::size_t nv = g.vertices().size();
  const auto adj = out_steps(g);
  std::vector<std::optional<IntVec>> off(nv);
  off[g.base_vertex()] = IntVec{0, 0};
  std::queue<std::size_t> todo;
  todo.push(g.base_vertex());
  while (!todo.empty()) {
    const std::size_t v = todo.front();
    todo.pop();
    for (const std::size_t id : adj[v]) {
      const std::size_t w = head_of(g, id);
      if (!off[w]) {
        off[w] = *off[v] + step_period(g, id);
        todo.push(w);
      }
    }
  }
  LatticeSpan lattice;
  for (const auto& e : g.edges()) lattice.add(*off[e.tail] + e.period - *off[e.head]);
  return lattice.contains(h.vec());
}

std::optional<CycleResult> minimal_cycle(const ToralGeodesicGraph& g, IntegralClass h,
                                         std::optional<long long> window) {
  if (h.is_trivial()) return CycleResult{};
  if (!class_reachable(g, h)) return std::nullopt;
  if (window && (*window < std::llabs(h.a) || *window < std::llabs(h.b))) {
    throw WindowError("cover window smaller than the target class", std::max(std::llabs(h.a), std::llabs(h.b)));
  }
  const auto adj = out_steps(g);
  CoverDijkstra search(g, adj);

  auto solve = [&](std::optional<long long> w) -> std::optional<CycleResult> {
    double best = std::numeric_limits<double>::infinity();
    std::optional<Cycle> best_cycle;
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
      search.run(v, w, std::numeric_limits<double>::infinity(), [&](std::size_t n) {
        const CoverNode& node = search.node(n);
        if (node.dist >= best) return true;
        if (node.vertex == v && node.off == h.vec()) {
          best = node.dist;
          best_cycle = search.path_to(n);
          return true;
        }
        return false;
      });
    }
    if (!best_cycle) return std::nullopt;
    return CycleResult{*best_cycle, cycle_length(g, *best_cycle)};
  };

  auto result = solve(window);
  if (!window) return result;
  auto required_for = [&](double len) { return static_cast<long long>(std::floor(len / g.speed())) + 1; };
  if (!result) {
    const auto free = solve(std::nullopt);
    throw WindowError("cover window too small to reach the class; enlarge it", required_for(free->length));
  }
  if (required_for(result->length) > *window) {
    throw WindowError("cover window cannot certify the shortest cycle; enlarge it", required_for(result->length));
  }
  return result;
}

std::size_t for_each_reduced_cycle(const ToralGeodesicGraph& g, std::size_t max_edges, std::size_t node_budget,
                                   const std::function<void(const Cycle&)>& visit) {
  const std::size_t nv = g.vertices().size();
  const auto adj = out_steps(g);
  std::size_t expanded = 0;
  std::vector<std::size_t> seq;
  std::vector<std::size_t> hops(nv);

  auto rotation_less = [](const std::vector<std::size_t>& s, std::size_t r, const std::vector<std::size_t>& t) {
    // Compares rotation r of s with t lexicographically (same length).
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = s[(r + i) % n];
      if (a != t[i]) return a < t[i] ? -1 : 1;
    }
    return 0;
  };

  auto canonical = [&](const std::vector<std::size_t>& s) {
    const std::size_t n = s.size();
    for (std::size_t r = 1; r < n; ++r) {
      if (s[r] == s[0] && rotation_less(s, r, s) < 0) return false;
    }
    std::vector<std::size_t> rev(n);
    for (std::size_t i = 0; i < n; ++i) rev[i] = s[n - 1 - i] ^ 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (rotation_less(rev, r, s) < 0) return false;
    }
    return true;
  };

  Cycle cycle;
  std::size_t start_vertex = 0;
  std::size_t first = 0;
  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    if (++expanded > node_budget) {
      throw SearchLimitError("cycle enumeration exceeded the node budget of " + std::to_string(node_budget) +
                             " partial walks");
    }
    for (const std::size_t id : adj[v]) {
      if (id < first) continue;
      if (id == (seq.back() ^ 1)) continue;
      const std::size_t w = head_of(g, id);
      if (seq.size() + 1 + hops[w] > max_edges) continue;
      seq.push_back(id);
      if (w == start_vertex && id != (first ^ 1) && canonical(seq)) {
        cycle.steps.clear();
        for (const std::size_t s : seq) cycle.steps.push_back(from_id(s));
        visit(cycle);
      }
      if (seq.size() < max_edges) extend(w);
      seq.pop_back();
    }
  };

  for (std::size_t v = 0; v < nv; ++v) {
    // Hop distances back to v bound how far a closed walk may wander.
    std::fill(hops.begin(), hops.end(), max_edges + 1);
    hops[v] = 0;
    std::queue<std::size_t> todo;
    todo.push(v);
    while (!todo.empty()) {
      const std::size_t u = todo.front();
      todo.pop();
      for (const std::size_t id : adj[u]) {
        const std::size_t w = head_of(g, id);
        if (hops[w] > hops[u] + 1) {
          hops[w] = hops[u] + 1;
          todo.push(w);
        }
      }
    }
    start_vertex = v;
    for (const std::size_t id : adj[v]) {
      first = id;
      seq.assign(1, id);
      const std::size_t w = head_of(g, id);
      if (1 + hops[w] > max_edges) continue;
      if (w == v && canonical(seq)) {
        cycle.steps.assign(1, from_id(id));
        visit(cycle);
      }
      if (max_edges > 1) extend(w);
    }
  }
  return expanded;
}

double zeta_of(const ToralGeodesicGraph& g) {
  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) shortest = std::min(shortest, e.length);
  return 0.5 * shortest;
}

std::size_t edge_bound_of(const ToralGeodesicGraph& g, double ell_k) {
  if (!(ell_k > 0.0)) throw ValidationError("ell_k must be positive");
  const double ratio = ell_k / zeta_of(g);
  // Absorb rounding when the ratio is an integer in exact arithmetic.
  return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12)));
}

EpsilonResult compute_zeta_epsilon_theta(const ToralGeodesicGraph& g, const NormSpec& norm, double ell_k,
                                         const EpsilonOptions& options) {
  EpsilonResult r;
  r.zeta = zeta_of(g);
  r.edge_bound = edge_bound_of(g, ell_k);
  const std::size_t nv = g.vertices().size();
  const std::size_t ids = 2 * g.edges().size();
  if (ids >= (std::size_t{1} << 14)) throw ValidationError("geodesic graph too large for the epsilon search");
  const auto adj = out_steps(g);
  auto tail_of = [&](std::size_t id) { return head_of(g, id ^ 1); };
  auto class_of = [&](std::size_t id) { return g.edges()[id / 2].class_index; };

  // hops[u][v]: fewest steps from u to v.
  std::vector<std::vector<std::size_t>> hops(nv, std::vector<std::size_t>(nv, r.edge_bound + 1));
  for (std::size_t u = 0; u < nv; ++u) {
    hops[u][u] = 0;
    std::queue<std::size_t> todo;
    todo.push(u);
    while (!todo.empty()) {
      const std::size_t a = todo.front();
      todo.pop();
      for (const std::size_t id : adj[a]) {
        const std::size_t b = head_of(g, id);
        if (hops[u][b] > hops[u][a] + 1) {
          hops[u][b] = hops[u][a] + 1;
          todo.push(b);
        }
      }
    }
  }

  // State: first step, last step, summed periods, and whether every step so
  // far repeats the first step's class and direction.
  constexpr std::int64_t kBias = 1 << 15;
  auto key_of = [&](std::size_t first, std::size_t last, IntVec p, bool pure) {
    if (p.x <= -kBias || p.x >= kBias || p.y <= -kBias || p.y >= kBias) {
      throw ValidationError("walk class exceeds the supported range");
    }
    return (static_cast<std::uint64_t>(first) << 50) | (static_cast<std::uint64_t>(last) << 36) |
           (static_cast<std::uint64_t>(p.x + kBias) << 20) | (static_cast<std::uint64_t>(p.y + kBias) << 4) |
           (pure ? 1u : 0u);
  };
  struct State {
    std::size_t first;
    std::size_t last;
    IntVec period;
    bool pure;
    double length;
    std::uint64_t pred;  // key in the previous layer
  };
  std::vector<std::unordered_map<std::uint64_t, State>> layers(1);
  for (std::size_t id = 0; id < ids; ++id) {
    const State st{id, id, step_period(g, id), true, g.edges()[id / 2].length, 0};
    layers[0].emplace(key_of(id, id, st.period, true), st);
  }

  struct Best {
    double gap;
    std::size_t layer;
    std::uint64_t key;
  };
  std::optional<Best> best;
  auto close = [&](std::size_t layer, std::uint64_t key, const State& st) {
    if (st.pure || head_of(g, st.last) != tail_of(st.first)) return;
    if (layer > 0 && st.last == (st.first ^ 1)) return;
    ++r.closing_states;
    const double gap = st.length - norm(to_class(st.period));
    const Best cand{gap, layer, key};
    if (!best || std::tie(cand.gap, cand.layer, cand.key) < std::tie(best->gap, best->layer, best->key)) best = cand;
  };
  for (const auto& [key, st] : layers[0]) close(0, key, st);

  r.nodes_expanded = layers[0].size();
  for (std::size_t layer = 1; layer < r.edge_bound; ++layer) {
    std::unordered_map<std::uint64_t, State> next;
    for (const auto& [key, st] : layers[layer - 1]) {
      const std::size_t start = tail_of(st.first);
      for (const std::size_t id : adj[head_of(g, st.last)]) {
        if (id == (st.last ^ 1)) continue;
        if (layer + 1 + hops[head_of(g, id)][start] > r.edge_bound) continue;
        const bool pure = st.pure && class_of(id) == class_of(st.first) && (id & 1) == (st.first & 1);
        const IntVec period = st.period + step_period(g, id);
        const double len = st.length + g.edges()[id / 2].length;
        const std::uint64_t k = key_of(st.first, id, period, pure);
        const auto [it, fresh] = next.try_emplace(k, State{st.first, id, period, pure, len, key});
        if (!fresh && (len < it->second.length || (len == it->second.length && key < it->second.pred))) {
          it->second.length = len;
          it->second.pred = key;
        }
      }
    }
    r.nodes_expanded += next.size();
    if (r.nodes_expanded > options.node_budget) {
      throw SearchLimitError("epsilon search exceeded the budget of " + std::to_string(options.node_budget) +
                                 " walk states",
                             best ? "epsilon <= " + std::to_string(best->gap) : std::string{});
    }
    for (const auto& [key, st] : next) close(layer, key, st);
    layers.push_back(std::move(next));
  }

  if (best) {
    r.epsilon = best->gap;
    Cycle c;
    std::uint64_t key = best->key;
    for (std::size_t layer = best->layer + 1; layer-- > 0;) {
      const State& st = layers[layer].at(key);
      c.steps.push_back(from_id(st.last));
      key = st.pred;
    }
    std::reverse(c.steps.begin(), c.steps.end());
    r.witness_class = homology_by_displacement(g, c);
    r.witness = std::move(c);
  }
  r.theta = r.witness ? r.epsilon / (2.0 * static_cast<double>(r.edge_bound)) : options.theta_default;
  return r;
}

InequalityReport verify_strict_inequality(const ToralGeodesicGraph& g, const NormSpec& norm, std::size_t edge_bound,
                                          std::size_t node_budget) {
  InequalityReport rep;
  std::vector<double> gaps;
  for_each_reduced_cycle(g, edge_bound, node_budget, [&](const Cycle& c) {
    if (is_single_class_iterate(g, c)) return;
    const IntegralClass h = homology_by_displacement(g, c);
    if (h != homology_by_intersection(g, c)) rep.homology_agrees = false;
    double len = 0.0;
    for (const OrientedEdge s : c.steps) len += g.edges()[s.edge].length;
    const double gap = len - norm(h);
    gaps.push_back(gap);
    if (gap <= 0.0 && !rep.violation) rep.violation = c;
  });
  rep.cycle_count = gaps.size();
  rep.pass = !rep.violation && rep.homology_agrees;
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    rep.min_gap = gaps.front();
    rep.max_gap = gaps.back();
    rep.mean_gap = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    for (int d = 0; d <= 10; ++d) {
      rep.deciles.push_back(gaps[static_cast<std::size_t>(d) * (gaps.size() - 1) / 10]);
    }
  }
  return rep;
}

PinnedGraph graph_from_norm(const NormSpec& norm, std::size_t k) {
  auto entries = enumerate_classes(norm, k).entries;
  std::vector<GeodesicClass> classes;
  for (const auto& e : entries) {
    if (e.cls.is_primitive()) classes.push_back({e.cls, e.length});
  }
  if (classes.empty()) throw ValidationError("k must include at least one primitive class (k >= 2)");
  const double ell_k = entries.back().length;
  return {ToralGeodesicGraph::build(std::move(classes)), std::move(entries), ell_k};
}

PinnedGraph graph_from_norm_primitive(const NormSpec& norm, std::size_t count) {
  if (count < 1) throw ValidationError("need at least one pinned class");
  for (std::size_t n = 2 * count + 2;; n *= 2) {
    auto entries = enumerate_classes(norm, n).entries;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].cls.is_primitive() && ++seen == count) {
        entries.resize(i + 1);
        std::vector<GeodesicClass> classes;
        for (const auto& e : entries) {
          if (e.cls.is_primitive()) classes.push_back({e.cls, e.length});
        }
        const double ell_k = entries.back().length;
        return {ToralGeodesicGraph::build(std::move(classes)), std::move(entries), ell_k};
      }
    }
  }
}

std::vector<ClassLength> graph_spectrum(const ToralGeodesicGraph& g, double bound) {
  if (!(bound >= 0.0)) throw ValidationError("spectrum bound must be nonnegative");
  const auto adj = out_steps(g);
  CoverDijkstra search(g, adj);
  std::map<IntegralClass, double> best;  // canonical class -> length
  const double radius = bound * (1.0 + 1e-12);
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    std::map<IntegralClass, std::pair<double, std::size_t>> found;
    search.run(v, std::nullopt, radius, [&](std::size_t n) {
      const CoverNode& node = search.node(n);
      if (node.vertex != v || (node.off == IntVec{0, 0})) return false;
      const IntegralClass h = to_class(node.off).canonical();
      auto it = found.find(h);
      if (it == found.end() || node.dist < it->second.first) found[h] = {node.dist, n};
      return false;
    });
    for (const auto& [h, hit] : found) {
      const double len = cycle_length(g, search.path_to(hit.second));
      auto it = best.find(h);
      if (it == best.end() || len < it->second) best[h] = len;
    }
  }
  std::vector<ClassLength> out{{IntegralClass{0, 0}, 0.0}};
  for (const auto& [h, len] : best) {
    if (len <= radius) out.push_back({h, len});
  }
  std::sort(out.begin(), out.end(), [](const ClassLength& x, const ClassLength& y) {
    return x.length != y.length ? x.length < y.length : x.cls < y.cls;
  });
  return out;
}

}  // namespace snl
