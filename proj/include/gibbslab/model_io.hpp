// model_io.hpp — model description files (JSON), canonical config hashing,
// and small CSV/JSON report helpers shared by the CLI.
//
// Model format:
//   {
//     "dimension": D,
//     "side_length": L,
//     "terms": [
//       {"sites": [0, 1], "pauli": "ZZ", "coeff": 1.0},
//       {"sites": [2], "matrix": {"real": [[...]], "imag": [[...]]}}
//     ]
//   }
// "pauli" strings use characters I, X, Y, Z, one per listed site; arbitrary
// Hermitian operators are given as nested real/imag arrays.
#pragma once

#include <cstdint>
#include <string>

#include "gibbslab/hamiltonian.hpp"

namespace gibbslab {

SpinHamiltonian load_model(const std::string& path);
SpinHamiltonian parse_model(const std::string& json_text);

// FNV-1a over a canonicalized config string; embedded in every output file.
std::uint64_t config_hash(const std::string& canonical_config);
std::string hash_hex(std::uint64_t h);

// Numbers formatted with enough digits to round-trip doubles bit-exactly.
std::string format_double(double x);

}  // namespace gibbslab
