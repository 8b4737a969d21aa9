#include "sqpeg/curve_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "sqpeg/error.hpp"

namespace sqpeg {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::MalformedInput, "field '" + field + "': " + why);
}

double number_field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) malformed(path + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) malformed(path + key, "expected a number");
  return v.get<double>();
}

std::vector<double> number_array(const json& obj, const std::string& key,
                                 const std::string& path) {
  if (!obj.contains(key)) malformed(path + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_array()) malformed(path + key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      malformed(path + key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

Curve curve_from_json(const json& doc) {
  if (!doc.is_object()) malformed("<root>", "expected a JSON object");

  if (doc.contains("type")) {
    if (!doc["type"].is_string()) malformed("type", "expected a string");
    const auto type = doc["type"].get<std::string>();
    if (type != "ellipse") malformed("type", "unknown curve type '" + type + "'");
    const double a = number_field(doc, "a", "");
    const double b = number_field(doc, "b", "");
    if (!(a > 0.0)) malformed("a", "must be positive");
    if (!(b > 0.0)) malformed("b", "must be positive");
    return make_ellipse(a, b);
  }

  if (!doc.contains("dim")) malformed("dim", "missing");
  if (!doc["dim"].is_number_integer()) malformed("dim", "expected an integer");
  const auto dim = doc["dim"].get<long long>();
  if (dim < 2) malformed("dim", "must be at least 2");
  if (!doc.contains("coords")) malformed("coords", "missing");
  const json& coords = doc["coords"];
  if (!coords.is_array()) malformed("coords", "expected an array");
  if (static_cast<long long>(coords.size()) != dim)
    malformed("coords", "expected dim = " + std::to_string(dim) + " entries, got " +
                            std::to_string(coords.size()));

  std::vector<FourierCoord> out;
  std::size_t harmonics = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::string path = "coords[" + std::to_string(i) + "].";
    if (!coords[i].is_object()) malformed("coords[" + std::to_string(i) + "]", "expected an object");
    FourierCoord c;
    c.a0 = coords[i].contains("a0") ? number_field(coords[i], "a0", path) : 0.0;
    c.cos = number_array(coords[i], "cos", path);
    c.sin = number_array(coords[i], "sin", path);
    if (c.cos.size() != c.sin.size())
      malformed(path + "sin", "length differs from " + path + "cos");
    if (i == 0) harmonics = c.cos.size();
    if (c.cos.size() != harmonics)
      malformed(path + "cos", "harmonic count differs from coords[0]");
    out.push_back(std::move(c));
  }
  return Curve(std::move(out));
}

json curve_to_json(const Curve& curve) {
  json coords = json::array();
  for (const auto& c : curve.coords())
    coords.push_back({{"a0", c.a0}, {"cos", c.cos}, {"sin", c.sin}});
  return {{"dim", curve.dim()}, {"coords", coords}};
}

Curve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open curve file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, path.string() + ": " + e.what());
  }
  return curve_from_json(doc);
}

std::string curve_hash(const Curve& curve) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const char* s) {
    for (; *s; ++s) {
      h ^= static_cast<unsigned char>(*s);
      h *= 1099511628211ULL;
    }
  };
  char buf[64];
  auto mix_double = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g;", x);
    mix(buf);
  };
  std::snprintf(buf, sizeof buf, "%d;%d;", curve.dim(), curve.harmonics());
  mix(buf);
  for (const auto& c : curve.coords()) {
    mix_double(c.a0);
    for (double x : c.cos) mix_double(x);
    for (double x : c.sin) mix_double(x);
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sqpeg
