#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sqpeg/curve.hpp"

namespace sqpeg {

// Accepts either the general form
//   {"dim": k, "coords": [{"a0": f, "cos": [...], "sin": [...]}, ...]}
// or the shorthand {"type": "ellipse", "a": f, "b": f}.
// Throws MalformedInput naming the offending field.
Curve curve_from_json(const nlohmann::json& doc);

// Always emits the general form.
nlohmann::json curve_to_json(const Curve& curve);

Curve load_curve(const std::filesystem::path& path);

// FNV-1a over the 17-digit serialization of every coefficient.
std::string curve_hash(const Curve& curve);

}  // namespace sqpeg
