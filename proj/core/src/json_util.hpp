#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/matrix_lab.hpp"

namespace dtlab::detail {

/// Rejects keys outside `allowed` so typos in configs fail loudly.
inline void require_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& what) {
  if (!j.is_object()) throw_config("experiments.config", what + " config must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw_config("experiments.config", "unknown key '" + item.key() + "' in " + what + " config");
    }
  }
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw_config("experiments.config", std::string("bad value for '") + key + "': " + e.what());
  }
}

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json atoms_json(const std::vector<RadialMeasure::Atom>& atoms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : atoms) out.push_back({{"radius", a.radius}, {"weight", a.weight}});
  return out;
}

inline std::vector<RadialMeasure::Atom> atoms_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw_config("experiments.config", "measure must be a nonempty array of atoms");
  std::vector<RadialMeasure::Atom> atoms;
  for (const auto& item : j) {
    require_keys(item, {"radius", "weight"}, "atom");
    if (!item.contains("radius") || !item.contains("weight")) {
      throw_config("experiments.config", "atom needs radius and weight");
    }
    atoms.push_back({item.at("radius").get<double>(), item.at("weight").get<double>()});
  }
  return atoms;
}

}  // namespace dtlab::detail
