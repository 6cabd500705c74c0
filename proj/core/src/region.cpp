#include "dtlab/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"

namespace dtlab {

Region Region::empty() { return Region{}; }

Region Region::plane() {
  Region r;
  r.kind_ = Kind::plane;
  return r;
}

Region Region::annulus(double inner, double outer, bool closed) {
  if (!(inner >= 0.0) || std::isnan(outer) || !(outer >= inner)) {
    throw_config("brown_hs.region", "annulus needs 0 <= r <= s");
  }
  Region r;
  r.kind_ = Kind::annulus;
  r.inner_ = inner;
  r.outer_ = outer;
  r.closed_ = closed;
  return r;
}

Region Region::unite(std::vector<Region> parts) {
  Region r;
  r.kind_ = Kind::unite;
  r.children_ = std::move(parts);
  return r;
}

Region Region::intersect(std::vector<Region> parts) {
  Region r;
  r.kind_ = Kind::intersect;
  r.children_ = std::move(parts);
  return r;
}

Region Region::complement(Region inner) {
  Region r;
  r.kind_ = Kind::complement;
  r.children_.push_back(std::move(inner));
  return r;
}

bool Region::contains(std::complex<double> z) const {
  const double m = std::abs(z);
  switch (kind_) {
    case Kind::empty:
      return false;
    case Kind::plane:
      return true;
    case Kind::annulus:
      return closed_ ? (m >= inner_ && m <= outer_) : (m > inner_ && m < outer_);
    case Kind::unite:
      return std::any_of(children_.begin(), children_.end(), [&](const Region& c) { return c.contains(z); });
    case Kind::intersect:
      return std::all_of(children_.begin(), children_.end(), [&](const Region& c) { return c.contains(z); });
    case Kind::complement:
      return !children_.front().contains(z);
  }
  return false;
}

double Region::boundary_distance(std::complex<double> z) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double m = std::abs(z);
  switch (kind_) {
    case Kind::empty:
    case Kind::plane:
      return inf;
    case Kind::annulus: {
      double d = inf;
      if (inner_ > 0.0 || !closed_) d = std::abs(m - inner_);
      if (std::isfinite(outer_)) d = std::min(d, std::abs(m - outer_));
      return d;
    }
    case Kind::unite:
    case Kind::intersect:
    case Kind::complement: {
      double d = inf;
      for (const auto& c : children_) d = std::min(d, c.boundary_distance(z));
      return d;
    }
  }
  return inf;
}

std::string Region::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::empty:
      return "{}";
    case Kind::plane:
      return "C";
    case Kind::annulus:
      os << (closed_ ? "A[" : "A(") << inner_ << "," << outer_ << (closed_ ? "]" : ")");
      return os.str();
    case Kind::unite:
    case Kind::intersect: {
      os << "(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) os << (kind_ == Kind::unite ? " u " : " n ");
        os << children_[i].to_string();
      }
      os << ")";
      return os.str();
    }
    case Kind::complement:
      return "~" + children_.front().to_string();
  }
  return {};
}

nlohmann::json to_json(const Region& region) {
  using Kind = Region::Kind;
  switch (region.kind_) {
    case Kind::empty:
      return {{"op", "empty"}};
    case Kind::plane:
      return {{"op", "plane"}};
    case Kind::annulus: {
      nlohmann::json s = std::isfinite(region.outer_) ? nlohmann::json(region.outer_) : nlohmann::json(nullptr);
      return {{"annulus", {{"r", region.inner_}, {"s", s}, {"closed", region.closed_}}}};
    }
    case Kind::unite:
    case Kind::intersect: {
      nlohmann::json args = nlohmann::json::array();
      for (const auto& c : region.children_) args.push_back(to_json(c));
      return {{"op", region.kind_ == Kind::unite ? "union" : "intersect"}, {"args", args}};
    }
    case Kind::complement:
      return {{"op", "complement"}, {"arg", to_json(region.children_.front())}};
  }
  return {};
}

Region region_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw_config("brown_hs.region", "region must be a JSON object");
  if (j.contains("annulus")) {
    const auto& a = j.at("annulus");
    const double r = a.value("r", 0.0);
    const double s = a.contains("s") && !a.at("s").is_null() ? a.at("s").get<double>()
                                                              : std::numeric_limits<double>::infinity();
    return Region::annulus(r, s, a.value("closed", true));
  }
  const std::string op = j.value("op", "");
  if (op == "empty") return Region::empty();
  if (op == "plane") return Region::plane();
  if (op == "complement") return Region::complement(region_from_json(j.at("arg")));
  if (op == "union" || op == "intersect") {
    std::vector<Region> parts;
    for (const auto& item : j.at("args")) parts.push_back(region_from_json(item));
    return op == "union" ? Region::unite(std::move(parts)) : Region::intersect(std::move(parts));
  }
  throw_config("brown_hs.region", "unknown region op '" + op + "'");
}

}  // namespace dtlab
