#pragma once

// JSON documents: filtrations, N, generators and genus-3 model parameters.
// Rationals are strings ("p/q", integers or exact decimals); complex numbers are
// {"re": …, "im": …}. Unknown fields are rejected. serialize() writes the
// canonical form, so serialize(parse(doc)) == doc for canonical documents.

#include <optional>
#include <string>

#include "mhx/genus3.hpp"

namespace mhx {

using ExactVec = Vec<GaussianRational>;

struct ModelSpec {
  std::string kind;  // "nodal" | "reducible"
  std::vector<ExactVec> tau;  // rows
  ExactVec aj_z, aj_w;
  GaussianRational b;
};

struct Document {
  std::string backend = "exact";  // "exact" | "float"
  std::size_t dimension = 0;
  std::map<int, std::vector<ExactVec>> weight_filtration;  // weight → generators of W_k
  std::map<int, std::vector<ExactVec>> hodge_filtration;   // p → generators of F^p
  std::optional<std::vector<ExactVec>> N;                  // rows
  std::optional<std::pair<ExactVec, ExactVec>> generators;  // one, one_dual
  std::optional<ModelSpec> model;

  bool has_structure() const { return dimension > 0 && !weight_filtration.empty(); }
};

/// Throws ParseError naming the line (syntax) or the field path (content).
Document parse_document(const std::string& text);
Document read_document(const std::string& path);
std::string serialize(const Document& d);

template <class S>
Filtration<S> document_W(const Document& d);
template <class S>
Filtration<S> document_F(const Document& d);
template <class S>
MixedHodgeStructure<S> document_mhs(const Document& d);
/// Throws ParseError if the document has no "N".
template <class S>
Matrix<S> document_N(const Document& d);
/// Throws ParseError if the document has no "generators".
template <class S>
std::pair<Vec<S>, Vec<S>> document_generators(const Document& d);
/// Throws ParseError if the document has no "model".
Genus3Model document_model(const Document& d);

/// Canonical document of an exact structure (echelon bases of every step).
Document to_document(const MixedHodgeStructure<GaussianRational>& m);

}  // namespace mhx
