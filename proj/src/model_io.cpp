// model_io.cpp — JSON model parsing, config hashing, and number formatting.
#include "gibbslab/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gibbslab/linalg.hpp"

namespace gibbslab {

namespace {

using nlohmann::json;

Matrix parse_pauli_word(const std::string& word) {
  Matrix op = Matrix::Identity(1, 1);
  for (char c : word) {
    int alpha = -1;
    switch (c) {
      case 'I': alpha = 0; break;
      case 'X': alpha = 1; break;
      case 'Y': alpha = 2; break;
      case 'Z': alpha = 3; break;
      default: throw std::invalid_argument("model: pauli word may only contain I, X, Y, Z");
    }
    op = kron(op, pauli(alpha));
  }
  return op;
}

Matrix parse_dense(const json& spec) {
  if (!spec.contains("real")) throw std::invalid_argument("model: matrix needs a real part");
  const json& re = spec.at("real");
  const int rows = static_cast<int>(re.size());
  if (rows == 0) throw std::invalid_argument("model: empty matrix");
  const int cols = static_cast<int>(re.at(0).size());
  Matrix op = Matrix::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(re.at(i).size()) != cols)
      throw std::invalid_argument("model: ragged matrix rows");
    for (int j = 0; j < cols; ++j) op(i, j) = re.at(i).at(j).get<double>();
  }
  if (spec.contains("imag")) {
    const json& im = spec.at("imag");
    if (static_cast<int>(im.size()) != rows)
      throw std::invalid_argument("model: imag shape mismatch");
    for (int i = 0; i < rows; ++i) {
      if (static_cast<int>(im.at(i).size()) != cols)
        throw std::invalid_argument("model: imag shape mismatch");
      for (int j = 0; j < cols; ++j) op(i, j) += Complex(0.0, im.at(i).at(j).get<double>());
    }
  }
  return op;
}

}  // namespace

SpinHamiltonian parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("model: invalid JSON: ") + err.what());
  }
  if (!doc.contains("dimension") || !doc.contains("side_length") || !doc.contains("terms"))
    throw std::invalid_argument("model: need dimension, side_length, terms");

  LatticeSpec lattice(doc.at("dimension").get<int>(), doc.at("side_length").get<int>());
  std::vector<InteractionTerm> terms;
  for (const json& t : doc.at("terms")) {
    InteractionTerm term;
    for (const json& s : t.at("sites")) term.sites.push_back(s.get<int>());
    const double coeff = t.value("coeff", 1.0);
    if (t.contains("pauli")) {
      const std::string word = t.at("pauli").get<std::string>();
      if (word.size() != term.sites.size())
        throw std::invalid_argument("model: pauli word length must match sites");
      term.op = coeff * parse_pauli_word(word);
    } else if (t.contains("matrix")) {
      term.op = coeff * parse_dense(t.at("matrix"));
    } else {
      throw std::invalid_argument("model: term needs pauli or matrix");
    }
    terms.push_back(std::move(term));
  }
  return build_hamiltonian(lattice, terms);
}

SpinHamiltonian load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("model: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::uint64_t config_hash(const std::string& canonical_config) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64-bit
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace gibbslab
