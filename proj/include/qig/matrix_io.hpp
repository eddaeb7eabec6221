#pragma once

// Flat-file matrix format: a JSON document with fields
//
//   dim   integer N
//   kind  "hermitian" | "density" | "hamiltonian"
//   re    N arrays of N decimals
//   im    N arrays of N decimals
//
// Decimals are written with shortest round-trip encoding (at most 17
// significant digits), so load(save(M)) reproduces M bit-approximately.
// Kind-specific invariants are enforced on load.

#include "qig/core.hpp"
#include "qig/states.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace qig {

enum class MatrixKind { hermitian, density, hamiltonian };

inline std::string kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::hermitian: return "hermitian";
    case MatrixKind::density: return "density";
    case MatrixKind::hamiltonian: return "hamiltonian";
  }
  return "hermitian";
}

inline MatrixKind kind_from_name(const std::string& name) {
  if (name == "hermitian") return MatrixKind::hermitian;
  if (name == "density") return MatrixKind::density;
  if (name == "hamiltonian") return MatrixKind::hamiltonian;
  throw DomainError("matrix file: unknown kind '" + name + "'");
}

struct MatrixFile {
  int dim = 0;
  MatrixKind kind = MatrixKind::hermitian;
  cmat matrix;
};

namespace detail {

inline void check_shape(const nlohmann::json& arr, int n, const char* field) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    throw DomainError(std::string("matrix file: field '") + field +
                      "' must have " + std::to_string(n) + " rows");
  for (const auto& row : arr)
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw DomainError(std::string("matrix file: field '") + field +
                        "' has a row of wrong length");
}

}  // namespace detail

inline MatrixFile parse_matrix_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw DomainError("matrix file: missing integer field 'dim'");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw DomainError("matrix file: missing string field 'kind'");
  if (!j.contains("re") || !j.contains("im"))
    throw DomainError("matrix file: missing field 're' or 'im'");
  MatrixFile out;
  out.dim = j["dim"].get<int>();
  if (out.dim < 1) throw DomainError("matrix file: dim must be positive");
  out.kind = kind_from_name(j["kind"].get<std::string>());
  detail::check_shape(j["re"], out.dim, "re");
  detail::check_shape(j["im"], out.dim, "im");
  out.matrix.resize(out.dim, out.dim);
  for (int i = 0; i < out.dim; ++i)
    for (int k = 0; k < out.dim; ++k) {
      if (!j["re"][i][k].is_number() || !j["im"][i][k].is_number())
        throw DomainError("matrix file: non-numeric entry");
      out.matrix(i, k) =
          cplx(j["re"][i][k].get<double>(), j["im"][i][k].get<double>());
    }
  // kind-specific invariants
  switch (out.kind) {
    case MatrixKind::hermitian:
    case MatrixKind::hamiltonian:
      if (!is_hermitian(out.matrix))
        throw DomainError("matrix file: matrix not hermitian");
      break;
    case MatrixKind::density:
      DensityMatrix{out.matrix};  // throws with the violated invariant named
      break;
  }
  return out;
}

inline MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("matrix file: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_file(buf.str());
}

inline std::string format_matrix_file(const cmat& m, MatrixKind kind) {
  const int n = static_cast<int>(m.rows());
  nlohmann::json j;
  j["dim"] = n;
  j["kind"] = kind_name(kind);
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (int k = 0; k < n; ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump(1) + "\n";
}

inline void save_matrix_file(const std::string& path, const cmat& m,
                             MatrixKind kind) {
  std::ofstream out(path);
  if (!out) throw DomainError("matrix file: cannot write '" + path + "'");
  out << format_matrix_file(m, kind);
}

inline DensityMatrix load_density(const std::string& path) {
  MatrixFile f = load_matrix_file(path);
  if (f.kind != MatrixKind::density)
    throw DomainError("matrix file: expected kind 'density' in '" + path +
                      "'");
  return DensityMatrix(f.matrix);
}

inline Hamiltonian load_hamiltonian(const std::string& path) {
  MatrixFile f = load_matrix_file(path);
  if (f.kind == MatrixKind::density)
    throw DomainError("matrix file: expected a hamiltonian/hermitian file in '" +
                      path + "'");
  return Hamiltonian(f.matrix);
}

}  // namespace qig
