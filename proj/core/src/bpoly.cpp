#include "dtlab/bpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"

namespace dtlab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw_config("bpoly.parse", "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational value;
  if (value.set_str(s, 10) != 0 || value.get_den() == 0) {
    throw_config("bpoly.parse", "invalid rational literal '" + std::string(text) + "'");
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) { return value.get_str(10); }

BElem::BElem(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

BElem BElem::constant(const Rational& value) { return BElem(std::vector<Rational>{value}); }

BElem BElem::identity() { return monomial(1, 1); }

BElem BElem::monomial(const Rational& coeff, std::size_t power) {
  std::vector<Rational> c(power + 1, Rational(0));
  c[power] = coeff;
  return BElem(std::move(c));
}

void BElem::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational BElem::operator()(const Rational& x) const {
  Rational point = x;
  point.canonicalize();
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * point + *it;
  return acc;
}

double BElem::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

BElem BElem::reflected() const {
  // Horner in the variable (1 - x).
  const BElem one_minus_x(std::vector<Rational>{Rational(1), Rational(-1)});
  BElem acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * one_minus_x + constant(*it);
  }
  return acc;
}

BElem BElem::primitive() const {
  if (is_zero()) return {};
  std::vector<Rational> c(coeffs_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    c[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
  }
  return BElem(std::move(c));
}

BElem& BElem::operator+=(const BElem& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

BElem& BElem::operator-=(const BElem& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

BElem operator*(const BElem& lhs, const BElem& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Rational> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return BElem(std::move(c));
}

BElem& BElem::operator*=(const BElem& rhs) { return *this = *this * rhs; }

BElem& BElem::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

BElem BElem::operator-() const {
  BElem out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string BElem::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "x";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::string BElem::key() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    out += coeffs_[k].get_str();
  }
  return out;
}

BElem alpha12(const BElem& f) {
  BElem p = f.primitive();
  return BElem::constant(p(Rational(1))) - p;
}

BElem alpha21(const BElem& f) { return f.primitive(); }

Rational trace(const BElem& f) { return f.primitive()(Rational(1)); }

std::vector<Rational> eval_grid(const BElem& f, int grid_size) {
  if (grid_size < 2) throw_config("bpoly.grid", "grid_size must be at least 2");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) out.push_back(f(Rational(j, grid_size - 1)));
  return out;
}

Rational grid_sup_abs(const BElem& f, int grid_size) {
  Rational best = 0;
  for (const auto& v : eval_grid(f, grid_size)) best = std::max(best, Rational(abs(v)));
  return best;
}

nlohmann::json to_json(const BElem& f) {
  auto arr = nlohmann::json::array();
  for (const auto& c : f.coeffs()) arr.push_back(rational_to_string(c));
  return arr;
}

BElem belem_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw_config("bpoly.json", "BElem must be a JSON array of \"p/q\" strings");
  std::vector<Rational> coeffs;
  for (const auto& item : j) {
    if (item.is_string()) {
      coeffs.push_back(parse_rational(item.get<std::string>()));
    } else if (item.is_number_integer()) {
      coeffs.emplace_back(item.get<long>());
    } else {
      throw_config("bpoly.json", "coefficient must be a string \"p/q\" or an integer");
    }
  }
  return BElem(std::move(coeffs));
}

}  // namespace dtlab
