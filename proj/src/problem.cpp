#include <json.hpp>

#include "eqd/cli.hpp"

namespace eqd {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(field, "expected a rational string \"p/q\" or an integer string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(field, e.what());
  }
}

int int_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<int>();
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(field.empty() ? key : field + "." + key, "missing field");
  return j.at(key);
}

const char* symmetry_name(BoundarySymmetry s) {
  switch (s) {
    case BoundarySymmetry::none: return "none";
    case BoundarySymmetry::rotations: return "rotations";
    case BoundarySymmetry::dihedral: return "dihedral";
  }
  return "none";
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "top level must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "polygon" && key != "type" && key != "areas" && key != "square_faces" && key != "symmetry")
      throw ParseError(key, "unknown field");

  ProblemFile pf;
  const json& poly = require(doc, "polygon", "");
  if (!poly.is_array()) throw ParseError("polygon", "expected a list of coordinate pairs");
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const std::string field = "polygon[" + std::to_string(k) + "]";
    if (!poly[k].is_array() || poly[k].size() != 2) throw ParseError(field, "expected a pair [x, y]");
    pf.polygon.emplace_back(rational_field(poly[k][0], field + "[0]"), rational_field(poly[k][1], field + "[1]"));
  }
  if (auto reason = Polygon::check(pf.polygon); !reason.empty()) throw ParseError("polygon", reason);
  const int n = static_cast<int>(pf.polygon.size());

  const json& type = require(doc, "type", "");
  if (type.is_object() && type.contains("enumerate")) {
    const json& e = type.at("enumerate");
    const int en = int_field(require(e, "n", "type.enumerate"), "type.enumerate.n");
    const int ei = int_field(require(e, "i", "type.enumerate"), "type.enumerate.i");
    if (en != n) throw ParseError("type.enumerate.n", "does not match the polygon's " + std::to_string(n) + " vertices");
    if (ei < 0) throw ParseError("type.enumerate.i", "must be non-negative");
    pf.enumerate = std::make_pair(en, ei);
  } else {
    CombinatorialType t;
    t.n = int_field(require(type, "n", "type"), "type.n");
    t.N = int_field(require(type, "N", "type"), "type.N");
    if (t.n != n) throw ParseError("type.n", "does not match the polygon's " + std::to_string(n) + " vertices");
    const json& faces = require(type, "faces", "type");
    if (!faces.is_array()) throw ParseError("type.faces", "expected a list of vertex triples");
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const std::string field = "type.faces[" + std::to_string(k) + "]";
      if (!faces[k].is_array() || faces[k].size() != 3) throw ParseError(field, "expected a vertex triple");
      Face f{};
      for (int j = 0; j < 3; ++j) f[static_cast<std::size_t>(j)] = int_field(faces[k][j], field) - 1;
      t.faces.push_back(f);
    }
    if (auto errors = validate(t); !errors.empty()) throw ParseError("type", errors.front());
    pf.type = std::move(t);
  }

  const json& areas = require(doc, "areas", "");
  if (areas.is_object()) {
    const json& eq = require(areas, "equal", "areas");
    if (!eq.is_boolean() || !eq.get<bool>()) throw ParseError("areas.equal", "expected true");
    pf.equal_areas = true;
  } else if (areas.is_array()) {
    for (std::size_t k = 0; k < areas.size(); ++k)
      pf.areas.push_back(rational_field(areas[k], "areas[" + std::to_string(k) + "]"));
    const int expected = pf.type ? static_cast<int>(pf.type->faces.size())
                                 : expected_face_count(n, pf.enumerate->second);
    if (static_cast<int>(pf.areas.size()) != expected)
      throw ParseError("areas", "expected " + std::to_string(expected) + " areas, got " +
                                    std::to_string(pf.areas.size()));
  } else {
    throw ParseError("areas", "expected a list of rationals or {\"equal\": true}");
  }

  if (doc.contains("square_faces")) {
    const json& sq = doc.at("square_faces");
    if (!sq.is_array()) throw ParseError("square_faces", "expected a list of face numbers");
    if (!pf.type) throw ParseError("square_faces", "requires an inline type");
    std::vector<int> faces;
    for (std::size_t k = 0; k < sq.size(); ++k) {
      const std::string field = "square_faces[" + std::to_string(k) + "]";
      const int f = int_field(sq[k], field);
      if (f < 1 || f > static_cast<int>(pf.type->faces.size())) throw ParseError(field, "face number out of range");
      faces.push_back(f);
    }
    pf.square_faces = std::move(faces);
  }

  if (doc.contains("symmetry")) {
    const json& s = doc.at("symmetry");
    const std::string name = s.is_string() ? s.get<std::string>() : "";
    if (name == "none") pf.symmetry = BoundarySymmetry::none;
    else if (name == "rotations") pf.symmetry = BoundarySymmetry::rotations;
    else if (name == "dihedral") pf.symmetry = BoundarySymmetry::dihedral;
    else throw ParseError("symmetry", "expected \"none\", \"rotations\" or \"dihedral\"");
  }
  return pf;
}

std::string serialize_problem(const ProblemFile& pf) {
  json doc = json::object();
  json poly = json::array();
  for (const auto& q : pf.polygon) poly.push_back({to_string(q.x), to_string(q.y)});
  doc["polygon"] = poly;
  if (pf.type) {
    json faces = json::array();
    for (const auto& f : pf.type->faces) faces.push_back({f[0] + 1, f[1] + 1, f[2] + 1});
    doc["type"] = {{"n", pf.type->n}, {"N", pf.type->N}, {"faces", faces}};
  } else if (pf.enumerate) {
    doc["type"] = {{"enumerate", {{"n", pf.enumerate->first}, {"i", pf.enumerate->second}}}};
  }
  if (pf.equal_areas) {
    doc["areas"] = {{"equal", true}};
  } else {
    json areas = json::array();
    for (const auto& a : pf.areas) areas.push_back(to_string(a));
    doc["areas"] = areas;
  }
  if (pf.square_faces) doc["square_faces"] = *pf.square_faces;
  if (pf.symmetry != BoundarySymmetry::none) doc["symmetry"] = symmetry_name(pf.symmetry);
  return doc.dump(2) + "\n";
}

std::vector<Instance> instances(const ProblemFile& pf, const Polygon& polygon, const EnumerationLimits& limits) {
  std::vector<CombinatorialType> types;
  if (pf.type) types.push_back(*pf.type);
  else types = enumerate_types(pf.enumerate->first, pf.enumerate->second, pf.symmetry, limits);
  std::vector<Instance> out;
  for (auto& t : types) {
    Instance inst;
    inst.areas = pf.equal_areas ? AreaAssignment::equal(t, polygon) : AreaAssignment{pf.areas};
    inst.type = std::move(t);
    inst.square_faces = pf.square_faces;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace eqd
