#include "knead/mapfile.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "knead/error.hpp"

namespace knead {

using nlohmann::ordered_json;

PMMap MapDefinition::build_map() const {
  return PMMap::validate(Omega(intervals), critical_points, branches);
}

InducedMap MapDefinition::build_induced() const { return validate_induced(build_map(), gluing); }

namespace {

Rational rational_field(const ordered_json& j, const std::string& key) {
  if (!j.is_string())
    raise(Errc::parse_error, key + ": rational values must be strings like \"1/2\"");
  return parse_rational(j.get<std::string>());
}

std::vector<Rational> rational_list(const ordered_json& j, const std::string& key) {
  if (!j.is_array()) raise(Errc::parse_error, key + " must be an array");
  std::vector<Rational> out;
  for (const auto& item : j) out.push_back(rational_field(item, key));
  return out;
}

}  // namespace

MapDefinition parse_map_json(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    raise(Errc::parse_error, origin + ": " + err.what());
  }
  if (!j.is_object()) raise(Errc::parse_error, origin + ": map definition must be a JSON object");

  MapDefinition def;
  def.name = j.value("name", origin);
  def.description = j.value("description", "");

  if (!j.contains("intervals")) raise(Errc::parse_error, origin + ": missing 'intervals'");
  for (const auto& pair : j["intervals"]) {
    if (!pair.is_array() || pair.size() != 2)
      raise(Errc::parse_error, origin + ": each interval is a pair of rational strings");
    def.intervals.push_back(Interval{rational_field(pair[0], "interval"), rational_field(pair[1], "interval")});
  }
  if (!j.contains("critical_points")) raise(Errc::parse_error, origin + ": missing 'critical_points'");
  def.critical_points = rational_list(j["critical_points"], "critical_points");

  if (!j.contains("branches")) raise(Errc::parse_error, origin + ": missing 'branches'");
  for (const auto& br : j["branches"]) {
    if (!br.is_object() || !br.contains("slope") || !br.contains("intercept"))
      raise(Errc::parse_error, origin + ": each branch needs 'slope' and 'intercept'");
    def.branches.emplace_back(rational_field(br["slope"], "slope"), rational_field(br["intercept"], "intercept"));
  }

  if (j.contains("gluing"))
    for (const auto& cls : j["gluing"]) def.gluing.classes.push_back(rational_list(cls, "gluing"));

  if (j.contains("expected")) {
    const auto& e = j["expected"];
    if (e.contains("entropy")) def.expected.entropy = e["entropy"].get<double>();
    if (e.contains("h_hom")) def.expected.h_hom = e["h_hom"].get<double>();
    if (e.contains("h_per_neg")) def.expected.h_per_neg = e["h_per_neg"].get<double>();
    if (e.contains("fix_neg"))
      for (const auto& v : e["fix_neg"]) def.expected.fix_neg.push_back(v.get<long>());
    if (e.contains("kneading_determinant"))
      def.expected.kneading_determinant = rational_list(e["kneading_determinant"], "kneading_determinant");
    if (e.contains("homological_determinant"))
      def.expected.homological_determinant =
          rational_list(e["homological_determinant"], "homological_determinant");
    if (e.contains("invalid")) def.expected.invalid = e["invalid"].get<std::string>();
  }
  return def;
}

MapDefinition parse_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::parse_error, "cannot open map file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map_json(buf.str(), path);
}

std::string dump_map(const MapDefinition& def) {
  ordered_json j;
  j["name"] = def.name;
  if (!def.description.empty()) j["description"] = def.description;
  j["intervals"] = ordered_json::array();
  for (const auto& iv : def.intervals) j["intervals"].push_back({to_string(iv.lo), to_string(iv.hi)});
  j["critical_points"] = to_strings(def.critical_points);
  j["branches"] = ordered_json::array();
  for (const auto& [slope, intercept] : def.branches)
    j["branches"].push_back({{"slope", to_string(slope)}, {"intercept", to_string(intercept)}});
  if (!def.gluing.classes.empty()) {
    j["gluing"] = ordered_json::array();
    for (const auto& cls : def.gluing.classes) j["gluing"].push_back(to_strings(cls));
  }
  ordered_json e = ordered_json::object();
  if (def.expected.entropy) e["entropy"] = *def.expected.entropy;
  if (def.expected.h_hom) e["h_hom"] = *def.expected.h_hom;
  if (def.expected.h_per_neg) e["h_per_neg"] = *def.expected.h_per_neg;
  if (!def.expected.fix_neg.empty()) e["fix_neg"] = def.expected.fix_neg;
  if (!def.expected.kneading_determinant.empty())
    e["kneading_determinant"] = to_strings(def.expected.kneading_determinant);
  if (!def.expected.homological_determinant.empty())
    e["homological_determinant"] = to_strings(def.expected.homological_determinant);
  if (def.expected.invalid) e["invalid"] = *def.expected.invalid;
  if (!e.empty()) j["expected"] = e;
  return j.dump(2);
}

}  // namespace knead
