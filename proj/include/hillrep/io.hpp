#pragma once

// JSON forms of maps and Hill representations.  Complex scalars are [re, im]
// (a bare number is read as a real scalar); matrices are row-major nested
// arrays; cell indices are 1-based.  Doubles are written in shortest
// round-trip form, so reading back gives the identical bits.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hillrep/hill.hpp"
#include "hillrep/linmap.hpp"
#include "hillrep/types.hpp"

namespace hillrep::io {

using Json = nlohmann::ordered_json;

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

enum class Representation { Matricization, Choi };

std::string to_string(Representation r);
std::string to_string(Field f);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where);

struct MapFile {
  Index n = 0;
  Index q = 0;
  Representation representation = Representation::Matricization;
  Field field = Field::Complex;
  ComplexMatrix data;

  LinearMatrixMap to_map() const;
};

MapFile map_file(const LinearMatrixMap& map,
                 Representation representation = Representation::Matricization);
Json to_json(const MapFile& file);
MapFile map_file_from_json(const Json& j);

/// HillFile: {n, q, m, tol, H, A, provenance?{strategy, picks, Ls, Bs}}.
Json hill_to_json(const HillRepresentation& rep, double tol);
/// Rebuilds the representation and, when provenance is present, its basis
/// (alpha recovered as the rows vec(conj(A_k))^T).  Rejects H that is not
/// Hermitian within the file's tol.
HillRepresentation hill_from_json(const Json& j);

/// Throws IoError when the file cannot be read, SchemaError when it is not JSON.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& where);
/// Two-space indented, newline-terminated.
std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hillrep::io
