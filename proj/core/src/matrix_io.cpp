#include "dtlab/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"

namespace dtlab {

namespace {

static_assert(std::endian::native == std::endian::little, "binary container assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'D', 'T', 'L', 'M'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw_config("matrix_lab.io", "truncated matrix container");
  return value;
}

}  // namespace

void write_binary(std::ostream& os, const CMatrix& a) {
  os.write(kMagic.data(), kMagic.size());
  put(os, kVersion);
  put(os, static_cast<std::int64_t>(a.rows()));
  put(os, static_cast<std::int64_t>(a.cols()));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      put(os, a(i, j).real());
      put(os, a(i, j).imag());
    }
  }
  if (!os) throw_config("matrix_lab.io", "failed writing matrix container");
}

CMatrix read_binary(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw_config("matrix_lab.io", "not a DTLM matrix container");
  if (get<std::uint32_t>(is) != kVersion) throw_config("matrix_lab.io", "unsupported container version");
  const auto rows = get<std::int64_t>(is);
  const auto cols = get<std::int64_t>(is);
  if (rows < 0 || cols < 0) throw_config("matrix_lab.io", "negative dimensions");
  CMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      a(i, j) = Complex(re, im);
    }
  }
  return a;
}

void save_binary(const std::string& path, const CMatrix& a) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw_config("matrix_lab.io", "cannot open " + path);
  write_binary(os, a);
}

CMatrix load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw_config("matrix_lab.io", "cannot open " + path);
  return read_binary(is);
}

nlohmann::json matrix_to_json(const CMatrix& a) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (Index j = 0; j < a.cols(); ++j) {
      rr.push_back(a(i, j).real());
      ri.push_back(a(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Index>(re.size()) != rows || static_cast<Index>(im.size()) != rows) {
    throw_config("matrix_lab.io", "row count mismatch in matrix JSON");
  }
  CMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(re[i].size()) != cols || static_cast<Index>(im[i].size()) != cols) {
      throw_config("matrix_lab.io", "column count mismatch in matrix JSON");
    }
    for (Index k = 0; k < cols; ++k) a(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return a;
}

}  // namespace dtlab
