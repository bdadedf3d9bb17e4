#pragma once

// JSON and CSV renderings of results. Rationals are "p/q" strings.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "snl/lattice_polygons.hpp"
#include "snl/multiplicity.hpp"
#include "snl/norms.hpp"
#include "snl/periodic_metric.hpp"
#include "snl/toral_graph.hpp"

namespace snl {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(IntegralClass h);
Json to_json(const LatticePolygon& p);
Json to_json(const NormSpec& norm);
Json to_json(const ClassEnumeration& e);
Json to_json(const ToralGeodesicGraph& g);
Json to_json(const ToralGeodesicGraph& g, const Cycle& c);
Json to_json(const ToralGeodesicGraph& g, const EpsilonResult& r);
Json to_json(const Spectrum& s, bool with_witnesses);
Json to_json(const MinAreaResult& r);
Json to_json(const SymmetricResult& r);
Json to_json(const MultiplicityProfile& p);
Json to_json(const SharpnessReport& r);

/// Norm from JSON: {"type": "ellipse", "q": [q11, q12, q22]}, {"type": "pnorm", "p": p},
/// {"type": "arc_polygon", "vertices": [[x, y], ...], "radius": R, "level": l},
/// each with an optional "scale"; or one of the strings "euclidean", "hexagonal".
NormSpec norm_from_json(const Json& j);

/// Norm from a command-line word: "euclidean", "hexagonal", "ellipse:q11,q12,q22", "pnorm:p".
NormSpec norm_from_text(std::string_view text);

/// Comma-separated, LF line ends, header row first.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void write(std::ostream& out) const;
};

/// Shortest round-trip decimal text of a double.
std::string format_double(double x);

}  // namespace snl
