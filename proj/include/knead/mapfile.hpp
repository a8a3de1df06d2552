#ifndef KNEAD_MAPFILE_HPP
#define KNEAD_MAPFILE_HPP

#include <optional>
#include <string>
#include <vector>

#include "knead/graph.hpp"
#include "knead/pm_map.hpp"

namespace knead {

// Optional regression block carried by a map file.
struct ExpectedValues {
  std::optional<double> entropy;
  std::optional<double> h_hom;
  std::optional<double> h_per_neg;
  std::vector<long> fix_neg;                      // graph counts, n = 1..size
  std::vector<Rational> kneading_determinant;     // polynomial coefficients
  std::vector<Rational> homological_determinant;  // polynomial coefficients
  std::optional<std::string> invalid;             // expected validation error name
};

struct MapDefinition {
  std::string name;
  std::string description;
  std::vector<Interval> intervals;
  std::vector<Rational> critical_points;
  std::vector<std::pair<Rational, Rational>> branches;  // (slope, intercept)
  Gluing gluing;
  ExpectedValues expected;

  PMMap build_map() const;
  InducedMap build_induced() const;
};

MapDefinition parse_map_json(const std::string& text, const std::string& origin);
MapDefinition parse_map_file(const std::string& path);
std::string dump_map(const MapDefinition& def);

}  // namespace knead

#endif
