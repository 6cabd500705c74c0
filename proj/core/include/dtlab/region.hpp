#pragma once

// Borel regions built from annuli centred at 0.
//
// An annulus A(r, s) is r <= |z| <= s when closed (the default), r < |z| < s
// when open.  r = 0 with a closed annulus is the closed disc of radius s;
// s = +inf is allowed.  Regions combine by union, intersection and
// complement, which is all the radially symmetric experiments need.

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace dtlab {

class Region {
 public:
  enum class Kind { empty, plane, annulus, unite, intersect, complement };

  static Region empty();
  static Region plane();
  static Region annulus(double inner, double outer, bool closed = true);
  static Region disc(double radius, bool closed = true) { return annulus(0.0, radius, closed); }
  static Region unite(std::vector<Region> parts);
  static Region intersect(std::vector<Region> parts);
  static Region complement(Region inner);

  Region operator|(const Region& rhs) const { return unite({*this, rhs}); }
  Region operator&(const Region& rhs) const { return intersect({*this, rhs}); }
  Region operator~() const { return complement(*this); }

  Kind kind() const noexcept { return kind_; }

  bool contains(std::complex<double> z) const;

  /// Distance from |z| to the nearest boundary circle of any annulus in the
  /// tree; +inf when the region has no boundary.
  double boundary_distance(std::complex<double> z) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::empty;
  double inner_ = 0.0;
  double outer_ = 0.0;
  bool closed_ = true;
  std::vector<Region> children_;

  friend nlohmann::json to_json(const Region& region);
};

/// {"annulus": {"r", "s", "closed"}}, {"op": "union"|"intersect", "args": [...]},
/// {"op": "complement", "arg": {...}}, {"op": "empty"}, {"op": "plane"}.
/// A null "s" means +inf.
nlohmann::json to_json(const Region& region);
Region region_from_json(const nlohmann::json& j);

}  // namespace dtlab
