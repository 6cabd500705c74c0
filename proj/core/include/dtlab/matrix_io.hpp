#pragma once

// Matrix containers.  Binary layout (little-endian):
//   bytes 0..3  magic "DTLM"
//   uint32      format version (1)
//   int64       rows, int64 cols
//   rows*cols   complex entries in row-major order, each as (re, im) doubles

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "dtlab/matrix_lab.hpp"

namespace dtlab {

void write_binary(std::ostream& os, const CMatrix& a);
CMatrix read_binary(std::istream& is);

void save_binary(const std::string& path, const CMatrix& a);
CMatrix load_binary(const std::string& path);

/// {"rows", "cols", "re": [[...]], "im": [[...]]}, row-major.
nlohmann::json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace dtlab
