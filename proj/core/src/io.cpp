#include "coco/io.hpp"

#include <fstream>
#include <sstream>

#include "coco/errors.hpp"
#include "json.hpp"

namespace coco {

namespace {

using njson = nlohmann::ordered_json;

njson parse_or_throw(const std::string& text, const char* what) {
  njson doc = njson::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    throw ValidationError(std::string("malformed JSON in ") + what + " document");
  return doc;
}

double number_field(const njson& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number())
    throw ValidationError(std::string(what) + " document needs a numeric \"" + key +
                          "\" field");
  return obj[key].get<double>();
}

Vec vec_field(const njson& arr, const char* what) {
  if (!arr.is_array() || (arr.size() != 2 && arr.size() != 3))
    throw ValidationError(std::string(what) +
                          " expects coordinate arrays of length 2 or 3");
  for (const njson& v : arr)
    if (!v.is_number())
      throw ValidationError(std::string(what) + " coordinates must be numbers");
  if (arr.size() == 2) return Vec(arr[0].get<double>(), arr[1].get<double>());
  return Vec(arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>());
}

njson vec_to_json(const Vec& v) {
  njson a = njson::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::string cone_to_json(const Cone& c) {
  njson doc;
  doc["dim"] = c.dim;
  njson gens = njson::array();
  for (const Vec& g : c.generators) gens.push_back(vec_to_json(g));
  doc["generators"] = gens;
  return doc.dump(2) + "\n";
}

Cone cone_from_json(const std::string& text) {
  njson doc = parse_or_throw(text, "cone");
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer() ||
      !doc.contains("generators") || !doc["generators"].is_array())
    throw ValidationError(
        "cone document must be {\"dim\": 2|3, \"generators\": [[...], ...]}");
  int dim = doc["dim"].get<int>();
  if (dim != 2 && dim != 3) throw ValidationError("cone dim must be 2 or 3");
  std::vector<Vec> gens;
  for (const njson& g : doc["generators"]) {
    Vec v = vec_field(g, "cone generator");
    if (v.dim() != dim)
      throw ValidationError("cone generator length disagrees with dim");
    gens.push_back(normalized(v));  // generators need not be unit in the document
  }
  return make_cone(dim, gens);
}

std::string measure_to_json(const DiscreteMeasure& m) {
  njson doc;
  njson atoms = njson::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    njson a;
    a["u"] = vec_to_json(m.atoms[i]);
    a["mass"] = m.masses[i];
    atoms.push_back(a);
  }
  doc["atoms"] = atoms;
  return doc.dump(2) + "\n";
}

DiscreteMeasure measure_from_json(const std::string& text, int expected_dim) {
  njson doc = parse_or_throw(text, "measure");
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
    throw ValidationError(
        "measure document must be {\"atoms\": [{\"u\": [...], \"mass\": ...}, ...]}");
  std::vector<Vec> atoms;
  std::vector<double> masses;
  for (const njson& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("u"))
      throw ValidationError("measure atom needs a \"u\" direction");
    atoms.push_back(vec_field(a["u"], "measure atom"));
    masses.push_back(number_field(a, "mass", "measure atom"));
  }
  int dim = atoms.empty() ? expected_dim : atoms.front().dim();
  if (dim == 0)
    throw ValidationError(
        "cannot infer the dimension of an empty measure; pass the expected dimension");
  if (expected_dim != 0 && dim != expected_dim)
    throw ValidationError("measure dimension disagrees with the expected dimension");
  return make_measure(dim, atoms, masses);
}

std::string body_to_json(const CFullSet& k) {
  njson doc;
  doc["cone"] = njson::parse(cone_to_json(k.cone));
  njson atoms = njson::array();
  for (std::size_t i = 0; i < k.normals.size(); ++i) {
    njson a;
    a["u"] = vec_to_json(k.normals[i]);
    a["h"] = k.support[i];
    atoms.push_back(a);
  }
  doc["atoms"] = atoms;
  return doc.dump(2) + "\n";
}

CFullSet body_from_json(const std::string& text) {
  njson doc = parse_or_throw(text, "body");
  if (!doc.is_object() || !doc.contains("cone") || !doc.contains("atoms") ||
      !doc["atoms"].is_array())
    throw ValidationError(
        "body document must be {\"cone\": {...}, \"atoms\": [{\"u\", \"h\"}, ...]}");
  Cone c = cone_from_json(doc["cone"].dump());
  std::vector<Vec> normals;
  std::vector<double> support;
  for (const njson& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("u"))
      throw ValidationError("body atom needs a \"u\" direction");
    Vec u = vec_field(a["u"], "body atom");
    if (u.dim() != c.dim)
      throw ValidationError("body atom dimension disagrees with the cone");
    normals.push_back(normalized(u));
    support.push_back(number_field(a, "h", "body atom"));
  }
  return build(c, normals, support);  // rebuild derives and certifies the truncation
}

std::string solution_to_json(const SolveReport& rep, const DiscreteMeasure& target) {
  if (rep.k.normals.size() != target.size())
    throw DimensionMismatch("solution atoms do not match the target measure");
  std::vector<double> achieved = cut_facet_areas(rep.k);
  njson doc;
  njson atoms = njson::array();
  for (std::size_t i = 0; i < target.size(); ++i) {
    njson a;
    a["u"] = vec_to_json(rep.k.normals[i]);
    a["h"] = rep.k.support[i];
    a["target_mass"] = target.masses[i];
    a["achieved_mass"] = achieved[i];
    atoms.push_back(a);
  }
  doc["atoms"] = atoms;
  doc["residual_inf"] = rep.residual_inf;
  doc["iterations"] = rep.iterations;
  doc["converged"] = rep.converged;
  doc["coconvex_volume"] = coconvex_volume(rep.k, VolumeMethod::integral);
  return doc.dump(2) + "\n";
}

std::string stability_to_csv(const StabilityReport& rep) {
  std::ostringstream out;
  out << "trial,jitter,lp,dh,ratio\n";
  char buf[160];
  for (const StabilityRecord& r : rep.records) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g", r.trial, r.jitter, r.lp,
                  r.dh);
    out << buf << ',';
    if (r.ratio_defined) {
      std::snprintf(buf, sizeof buf, "%.17g", r.ratio);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out.good()) throw ValidationError("failed writing file: " + path);
}

}  // namespace coco
