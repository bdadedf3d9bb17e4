#include "snl/serialize.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "snl/errors.hpp"

namespace snl {
namespace {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

Json points(const std::vector<LatticePoint>& v) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back({p.x, p.y});
  return out;
}

Json classes(const std::vector<IntegralClass>& v) {
  Json out = Json::array();
  for (const auto h : v) out.push_back(to_json(h));
  return out;
}

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string piece(text.substr(0, comma));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw ValidationError("not a number: '" + piece + "'");
    }
    if (used != piece.size()) throw ValidationError("not a number: '" + piece + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, res.ptr);
}

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(IntegralClass h) { return Json::array({h.a, h.b}); }

Json to_json(const LatticePolygon& p) { return points(p.vertices); }

Json to_json(const NormSpec& norm) {
  Json j;
  if (const auto* e = std::get_if<Ellipse>(&norm.variant())) {
    j["variant"] = "ellipse";
    j["q"] = {e->q11, e->q12, e->q22};
  } else if (const auto* p = std::get_if<PNorm>(&norm.variant())) {
    j["variant"] = "pnorm";
    j["p"] = p->p;
  } else {
    const auto& a = std::get<ArcPolygon>(norm.variant());
    j["variant"] = "arcpolygon";
    j["vertices"] = points(a.vertices);
    j["radius"] = number(a.radius);
    j["level"] = a.level;
  }
  j["scale"] = norm.scale();
  return j;
}

Json to_json(const ClassEnumeration& e) {
  Json entries = Json::array();
  for (const auto& c : e.entries) entries.push_back({{"class", to_json(c.cls)}, {"length", c.length}});
  return {{"entries", entries}, {"non_strict_warning", e.non_strict_warning}};
}

Json to_json(const ToralGeodesicGraph& g) {
  Json cls = Json::array();
  for (const auto& c : g.classes()) cls.push_back({{"class", to_json(c.h)}, {"length", c.length}});
  Json verts = Json::array();
  for (const auto& v : g.vertices()) verts.push_back({to_json(v.x), to_json(v.y)});
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"tail", e.tail},
                     {"head", e.head},
                     {"class_index", e.class_index},
                     {"q", to_json(e.q)},
                     {"displacement", {to_json(e.displacement.x), to_json(e.displacement.y)}},
                     {"period", {e.period.x, e.period.y}},
                     {"length", e.length}});
  }
  return {{"classes", cls}, {"vertices", verts}, {"edges", edges}, {"base_vertex", g.base_vertex()}};
}

Json to_json(const ToralGeodesicGraph& g, const Cycle& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back({s.edge, s.dir});
  return {{"steps", steps},
          {"class", to_json(homology_by_displacement(g, c))},
          {"length", cycle_length(g, c)}};
}

Json to_json(const ToralGeodesicGraph& g, const EpsilonResult& r) {
  Json j;
  j["zeta"] = r.zeta;
  j["edge_bound"] = r.edge_bound;
  j["epsilon"] = number(r.epsilon);
  j["theta"] = r.theta;
  j["closing_states"] = r.closing_states;
  j["nodes_expanded"] = r.nodes_expanded;
  j["witness"] = r.witness ? to_json(g, *r.witness) : Json(nullptr);
  return j;
}

Json to_json(const Spectrum& s, bool with_witnesses) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    Json j{{"class", to_json(e.cls)}, {"length", e.length}};
    if (with_witnesses) j["witness"] = e.witness;
    entries.push_back(std::move(j));
  }
  Json groups = Json::array();
  for (const auto& g : s.groups) {
    groups.push_back({{"length", g.length}, {"m", g.m}, {"n", g.n}, {"classes", classes(g.classes)}});
  }
  return {{"tolerance", s.tolerance}, {"entries", entries}, {"groups", groups}};
}

Json to_json(const MinAreaResult& r) {
  return {{"k", r.k},
          {"area", to_json(r.area)},
          {"witness", to_json(r.witness)},
          {"certified", r.certified}};
}

Json to_json(const SymmetricResult& r) {
  return {{"two_m", r.two_m},
          {"interior", r.interior},
          {"witness", to_json(r.witness)},
          {"certified", r.certified}};
}

Json to_json(const MultiplicityProfile& p) {
  Json groups = Json::array();
  for (const auto& g : p.groups) {
    Json j{{"length", g.length}, {"m", g.m}, {"n", g.n}, {"classes", classes(g.classes)}};
    j["f_of_m"] = g.f_of_m ? Json(*g.f_of_m) : Json(nullptr);
    j["bound_holds"] = g.bound_holds;
    j["truncated"] = g.truncated;
    groups.push_back(std::move(j));
  }
  return {{"tie_tolerance", p.tie_tolerance},
          {"bound_holds", p.bound_holds},
          {"warnings", p.warnings},
          {"groups", groups}};
}

Json to_json(const SharpnessReport& r) {
  Json below = Json::array();
  for (const auto& c : r.below_level) below.push_back({{"class", to_json(c.cls)}, {"length", c.length}});
  Json group = nullptr;
  if (r.group) {
    group = {{"length", r.group->length}, {"m", r.group->m}, {"n", r.group->n}, {"classes", classes(r.group->classes)}};
  }
  return {{"m", r.m},
          {"f", r.f},
          {"pass", r.pass},
          {"strictly_convex", r.strictly_convex},
          {"boundary_points", r.boundary_points},
          {"group", group},
          {"below_level", below},
          {"failures", r.failures}};
}

NormSpec norm_from_json(const Json& j) {
  if (j.is_string()) return norm_from_text(j.get<std::string>());
  if (!j.is_object() || !j.contains("variant")) throw ValidationError("norm must be a string or an object with a variant");
  try {
    const double scale = j.value("scale", 1.0);
    const std::string type = j.at("variant").get<std::string>();
    if (type == "ellipse") {
      const auto q = j.at("q").get<std::vector<double>>();
      if (q.size() != 3) throw ValidationError("ellipse q must hold [q11, q12, q22]");
      return NormSpec(Ellipse{q[0], q[1], q[2]}, scale);
    }
    if (type == "pnorm") return NormSpec(PNorm{j.at("p").get<double>()}, scale);
    if (type == "arcpolygon") {
      ArcPolygon a;
      for (const auto& v : j.at("vertices")) a.vertices.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()});
      if (j.contains("radius")) a.radius = j.at("radius").get<double>();
      a.level = j.value("level", 1.0);
      return NormSpec(std::move(a), scale);
    }
    throw ValidationError("unknown norm variant '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed norm: ") + e.what());
  }
}

NormSpec norm_from_text(std::string_view text) {
  if (text == "euclidean") return NormSpec::euclidean();
  if (text == "hexagonal") return NormSpec::hexagonal();
  if (text.starts_with("ellipse:")) {
    const auto q = parse_doubles(text.substr(8));
    if (q.size() != 3) throw ValidationError("ellipse needs three entries q11,q12,q22");
    return NormSpec(Ellipse{q[0], q[1], q[2]});
  }
  if (text.starts_with("pnorm:")) {
    const auto p = parse_doubles(text.substr(6));
    if (p.size() != 1) throw ValidationError("pnorm needs one exponent");
    return NormSpec(PNorm{p[0]});
  }
  throw ValidationError("unknown norm '" + std::string(text) + "'");
}

void CsvTable::write(std::ostream& out) const {
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        out << c;
      } else {
        out << '"';
        for (const char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
        out << '"';
      }
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace snl
