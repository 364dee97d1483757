#ifndef MFKIT_MFCORE_IO_HPP
#define MFKIT_MFCORE_IO_HPP

#include <string>

#include "json.hpp"
#include "mfkit/mfcore/matrix_factorization.hpp"

namespace mfkit {

// {"f": str, "rank": r, "p": [[str]], "q": [[str]]} with optional "vars"
// (variable order) and "grading" (2r homological degrees).
nlohmann::json mf_to_json(const MatrixFactorization& m);

// With check = false the factorization identity is not verified
// (use validate() afterwards); everything else still is.
MatrixFactorization mf_from_json(const nlohmann::json& j, Field field = Field(), bool check = true);

MatrixFactorization read_mf_file(const std::string& path, Field field = Field(), bool check = true);
void write_mf_file(const MatrixFactorization& m, const std::string& path);

} // namespace mfkit

#endif
