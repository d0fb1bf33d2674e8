#include "hillrep/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hillrep/numeric.hpp"
#include "hillrep/tensorops.hpp"

namespace hillrep::io {

namespace {

const Json& require_key(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
  return *it;
}

Index require_index(const Json& j, const char* key, const std::string& where, Index min) {
  const Json& v = require_key(j, key, where);
  if (!v.is_number_integer()) {
    throw SchemaError(where + ": \"" + key + "\" must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < min) {
    throw SchemaError(where + ": \"" + key + "\" must be >= " + std::to_string(min));
  }
  return static_cast<Index>(value);
}

double require_finite(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + ": non-finite number");
  return x;
}

std::vector<ComplexMatrix> matrix_list(const Json& j, const std::string& where, Index count,
                                       Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != count) {
    throw SchemaError(where + ": expected a list of " + std::to_string(count) + " matrices");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string here = where + "[" + std::to_string(k) + "]";
    ComplexMatrix m = matrix_from_json(j[k], here);
    if (m.rows() != rows || m.cols() != cols) {
      throw SchemaError(here + ": expected " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
    out.push_back(std::move(m));
  }
  return out;
}

Json matrix_list_to_json(const std::vector<ComplexMatrix>& mats) {
  Json out = Json::array();
  for (const ComplexMatrix& m : mats) out.push_back(matrix_to_json(m));
  return out;
}

BasisSource source_from_string(const std::string& s) {
  for (BasisSource b : {BasisSource::Blocks, BasisSource::QR, BasisSource::UserSupplied,
                        BasisSource::Derived}) {
    if (hillrep::to_string(b) == s) return b;
  }
  throw SchemaError("provenance: unknown strategy \"" + s + "\"");
}

}  // namespace

std::string to_string(Representation r) {
  return r == Representation::Choi ? "choi" : "matricization";
}

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {require_finite(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError(where + ": expected [re, im] or a number");
  }
  return {require_finite(j[0], where), require_finite(j[1], where)};
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected a nested array");
  const auto rows = static_cast<Index>(j.size());
  if (rows == 0) return ComplexMatrix(0, 0);
  if (!j[0].is_array()) throw SchemaError(where + ": rows must be arrays");
  const auto cols = static_cast<Index>(j[0].size());
  ComplexMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw SchemaError(where + ": ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      out(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                    where + "[" + std::to_string(r) + "][" +
                                        std::to_string(c) + "]");
    }
  }
  return out;
}

LinearMatrixMap MapFile::to_map() const {
  if (representation == Representation::Choi) return from_choi(ChoiMatrix(data, n, q));
  return from_matricization(data, n, q);
}

MapFile map_file(const LinearMatrixMap& map, Representation representation) {
  MapFile f;
  f.n = map.n();
  f.q = map.q();
  f.representation = representation;
  f.field = map.field();
  f.data = representation == Representation::Choi ? choi(map).matrix() : map.matricization();
  return f;
}

Json to_json(const MapFile& file) {
  Json j;
  j["n"] = file.n;
  j["q"] = file.q;
  j["representation"] = to_string(file.representation);
  j["field"] = to_string(file.field);
  j["data"] = matrix_to_json(file.data);
  return j;
}

MapFile map_file_from_json(const Json& j) {
  const std::string where = "map file";
  MapFile f;
  f.n = require_index(j, "n", where, 1);
  f.q = require_index(j, "q", where, 1);
  const Json& rep = require_key(j, "representation", where);
  if (rep == "matricization") {
    f.representation = Representation::Matricization;
  } else if (rep == "choi") {
    f.representation = Representation::Choi;
  } else {
    throw SchemaError(where + ": representation must be \"matricization\" or \"choi\"");
  }
  f.data = matrix_from_json(require_key(j, "data", where), where + ".data");
  const Index rows = f.representation == Representation::Choi ? f.n * f.q : f.n * f.n;
  const Index cols = f.representation == Representation::Choi ? f.n * f.q : f.q * f.q;
  if (f.data.rows() != rows || f.data.cols() != cols) {
    throw SchemaError(where + ": data must be " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " for this representation");
  }
  const bool has_imaginary = (f.data.imag().array() != 0.0).any();
  f.field = has_imaginary ? Field::Complex : Field::Real;
  if (const auto it = j.find("field"); it != j.end()) {
    if (*it == "real") {
      if (has_imaginary) throw SchemaError(where + ": field \"real\" with nonzero imaginary parts");
    } else if (*it != "complex") {
      throw SchemaError(where + ": field must be \"real\" or \"complex\"");
    }
  }
  return f;
}

Json hill_to_json(const HillRepresentation& rep, double tol) {
  Json j;
  j["n"] = rep.n;
  j["q"] = rep.q;
  j["m"] = rep.m();
  j["tol"] = tol;
  j["H"] = matrix_to_json(rep.hill);
  j["A"] = matrix_list_to_json(rep.factors);
  if (rep.basis) {
    const BasisSelection& b = *rep.basis;
    Json prov;
    prov["strategy"] = hillrep::to_string(b.source);
    Json picks = Json::array();
    for (const Cell& c : b.picks) picks.push_back(Json::array({c.row + 1, c.col + 1}));
    prov["picks"] = std::move(picks);
    prov["Ls"] = matrix_list_to_json(b.basis);
    prov["Bs"] = matrix_list_to_json(b.duals());
    j["provenance"] = std::move(prov);
  }
  return j;
}

HillRepresentation hill_from_json(const Json& j) {
  const std::string where = "hill file";
  HillRepresentation rep;
  rep.n = require_index(j, "n", where, 1);
  rep.q = require_index(j, "q", where, 1);
  const Index m = require_index(j, "m", where, 0);
  double tol = kDefaultTol;
  if (const auto it = j.find("tol"); it != j.end()) {
    tol = require_finite(*it, where + ".tol");
    if (tol <= 0.0) throw SchemaError(where + ": tol must be positive");
  }
  rep.hill = matrix_from_json(require_key(j, "H", where), where + ".H");
  if (rep.hill.rows() != m || (m > 0 && rep.hill.cols() != m)) {
    throw SchemaError(where + ": H must be m x m");
  }
  if (m == 0) rep.hill = ComplexMatrix(0, 0);
  rep.factors = matrix_list(require_key(j, "A", where), where + ".A", m, rep.n, rep.q);
  if (m > 0 && hermitian_deviation(rep.hill) > tol * std::max(1.0, max_abs(rep.hill))) {
    throw SchemaError(where + ": H is not Hermitian within tol");
  }

  const auto prov_it = j.find("provenance");
  if (prov_it == j.end() || prov_it->is_null()) return rep;
  const Json& prov = *prov_it;
  const std::string pw = where + ".provenance";
  BasisSelection b;
  b.n = rep.n;
  b.q = rep.q;
  b.tol = tol;
  const Json& strategy = require_key(prov, "strategy", pw);
  if (!strategy.is_string()) throw SchemaError(pw + ": strategy must be a string");
  b.source = source_from_string(strategy.get<std::string>());
  if (const auto it = prov.find("picks"); it != prov.end()) {
    if (!it->is_array()) throw SchemaError(pw + ".picks: expected an array");
    for (const Json& p : *it) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
          !p[1].is_number_integer()) {
        throw SchemaError(pw + ".picks: entries must be [i, j]");
      }
      const Cell c{p[0].get<Index>() - 1, p[1].get<Index>() - 1};
      if (c.row < 0 || c.row >= rep.n || c.col < 0 || c.col >= rep.q) {
        throw SchemaError(pw + ".picks: index out of range");
      }
      b.picks.push_back(c);
    }
  }
  b.basis = matrix_list(require_key(prov, "Ls", pw), pw + ".Ls", m, rep.n, rep.q);
  const std::vector<ComplexMatrix> duals =
      matrix_list(require_key(prov, "Bs", pw), pw + ".Bs", m, rep.n, rep.q);
  b.alpha = ComplexMatrix(m, rep.n * rep.q);
  b.beta = ComplexMatrix(m, rep.n * rep.q);
  for (Index k = 0; k < m; ++k) {
    b.alpha.row(k) = vec(rep.factors[k]).conjugate().transpose();
    b.beta.row(k) = vec(duals[k]).transpose();
  }
  rep.basis = std::move(b);
  return rep;
}

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(where + ": malformed JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return parse_json(buf.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

}  // namespace hillrep::io
