#pragma once

// Verification of candidate S-matrices over one real quadratic field.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fusionarith/quadratic.hpp"

namespace fusionarith {

enum class SMatrixKind { modular, super_modular_hat };

struct CandidateSMatrix {
  std::vector<std::vector<QuadraticFieldElement>> entries;
  std::size_t unit_index = 0;
  /// dim(C) for a modular S; dim(C)/2 for a super-modular S-hat.
  QuadraticFieldElement declared_dim;
  SMatrixKind kind = SMatrixKind::modular;
  std::vector<std::string> labels;  // optional; defaults to I, X1, X2, ...

  std::size_t size() const { return entries.size(); }
  const QuadraticFieldElement& dim(std::size_t x) const { return entries[unit_index][x]; }
  std::string label(std::size_t x) const;
  /// Generator of the common field (1 if all entries are rational).
  Integer field() const;
};

/// Square, symmetric, unit entry 1, one common field. Throws otherwise.
void validate(const CandidateSMatrix& s);

struct OrthogonalityVerdict {
  bool orthogonal = false;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // (i, i) for a bad norm
  std::string witness;
};

OrthogonalityVerdict check_orthogonality(const CandidateSMatrix& s);

struct FusionVerdict {
  /// n[x][y][z]
  std::vector<std::vector<std::vector<QuadraticFieldElement>>> n;
  bool nonnegative_integral = false;
  std::string witness;  // first offending coefficient

  /// Coefficient as an integer; only meaningful when nonnegative_integral.
  long coefficient(std::size_t x, std::size_t y, std::size_t z) const;
};

/// Verlinde formula with the declared dimension as normaliser. For an
/// S-hat this gives the naive fusion rules.
FusionVerdict verlinde_fusion(const CandidateSMatrix& s);

/// dim(C) / d_X^2 for every X, with dim(C) = declared (modular) or
/// 2 * declared (S-hat).
std::vector<QuadraticFieldElement> formal_codegrees(const CandidateSMatrix& s);

struct GaloisPermutationReport {
  bool found = false;
  std::vector<std::size_t> permutation;  // Y -> sigma(Y)
  std::string reason;                    // why no permutation exists
  std::optional<std::size_t> unit_image;
  bool unit_image_dim_square_one = false;

  std::string cycles(const CandidateSMatrix& s) const;
};

/// Permutation induced by sqrt(n) -> -sqrt(n) on the columns of s.
GaloisPermutationReport find_galois_permutation(const CandidateSMatrix& s);

/// sum_X d_X^2 == declared_dim.
bool dimension_consistency(const CandidateSMatrix& s);

}  // namespace fusionarith
