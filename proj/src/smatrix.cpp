#include "fusionarith/smatrix.hpp"

#include "fusionarith/error.hpp"

namespace fusionarith {

std::string CandidateSMatrix::label(std::size_t x) const {
  if (x < labels.size()) return labels[x];
  if (x == unit_index) return "I";
  const std::size_t k = x < unit_index ? x + 1 : x;
  return "X" + std::to_string(k);
}

Integer CandidateSMatrix::field() const {
  Integer n = declared_dim.n();
  for (const auto& row : entries) {
    for (const auto& e : row) {
      if (e.n() == 1) continue;
      if (n != 1 && n != e.n()) throw MixedFieldError("S-matrix mixes Q(sqrt(" + n.get_str() + ")) and Q(sqrt(" + e.n().get_str() + "))");
      n = e.n();
    }
  }
  return n;
}

void validate(const CandidateSMatrix& s) {
  const std::size_t k = s.size();
  if (k == 0) throw PreconditionError("empty S-matrix");
  for (const auto& row : s.entries) {
    if (row.size() != k) throw PreconditionError("S-matrix is not square");
  }
  if (s.unit_index >= k) throw PreconditionError("unit index out of range");
  if (!s.labels.empty() && s.labels.size() != k) throw PreconditionError("need one label per row");
  s.field();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(s.entries[i][j] == s.entries[j][i])) throw PreconditionError("S-matrix is not symmetric at (" + s.label(i) + ", " + s.label(j) + ")");
  if (!(s.dim(s.unit_index) == QuadraticFieldElement(1))) throw PreconditionError("unit entry must be 1");
}

OrthogonalityVerdict check_orthogonality(const CandidateSMatrix& s) {
  validate(s);
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      QuadraticFieldElement dot;
      for (std::size_t w = 0; w < k; ++w) dot += s.entries[i][w] * s.entries[j][w];
      const QuadraticFieldElement want = i == j ? s.declared_dim : QuadraticFieldElement(0);
      if (!(dot == want)) {
        return {false, std::make_pair(i, j),
                "row " + s.label(i) + " . row " + s.label(j) + " = " + dot.to_string() + ", expected " + want.to_string()};
      }
    }
  }
  return {true, std::nullopt, "rows orthogonal, each of squared norm " + s.declared_dim.to_string()};
}

long FusionVerdict::coefficient(std::size_t x, std::size_t y, std::size_t z) const {
  return n[x][y][z].rational_part().get_num().get_si();
}

FusionVerdict verlinde_fusion(const CandidateSMatrix& s) {
  validate(s);
  const std::size_t k = s.size();
  for (std::size_t w = 0; w < k; ++w) {
    if (s.dim(w).is_zero()) throw PreconditionError("degenerate column " + s.label(w) + ": d = 0");
  }
  FusionVerdict out;
  out.nonnegative_integral = true;
  out.n.assign(k, std::vector<std::vector<QuadraticFieldElement>>(k, std::vector<QuadraticFieldElement>(k)));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      for (std::size_t z = 0; z < k; ++z) {
        QuadraticFieldElement sum;
        for (std::size_t w = 0; w < k; ++w) sum += s.entries[x][w] * s.entries[y][w] * s.entries[z][w] / s.dim(w);
        sum = sum / s.declared_dim;
        out.n[x][y][z] = sum;
        const bool ok = sum.is_rational() && sum.rational_part().get_den() == 1 && sum.sign() >= 0;
        if (!ok && out.nonnegative_integral) {
          out.nonnegative_integral = false;
          out.witness = "N(" + s.label(x) + ", " + s.label(y) + "; " + s.label(z) + ") = " + sum.to_string();
        }
      }
    }
  }
  return out;
}

std::vector<QuadraticFieldElement> formal_codegrees(const CandidateSMatrix& s) {
  validate(s);
  const QuadraticFieldElement total = s.kind == SMatrixKind::modular ? s.declared_dim : s.declared_dim * QuadraticFieldElement(2);
  std::vector<QuadraticFieldElement> out;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (s.dim(x).is_zero()) throw PreconditionError("zero dimension for " + s.label(x));
    out.push_back(total / (s.dim(x) * s.dim(x)));
  }
  return out;
}

std::string GaloisPermutationReport::cycles(const CandidateSMatrix& s) const {
  if (!found) return "none";
  std::string out;
  std::vector<bool> seen(permutation.size(), false);
  for (std::size_t start = 0; start < permutation.size(); ++start) {
    if (seen[start] || permutation[start] == start) continue;
    std::string cycle;
    for (std::size_t x = start; !seen[x]; x = permutation[x]) {
      seen[x] = true;
      cycle += (cycle.empty() ? "" : " ") + s.label(x);
    }
    out += "(" + cycle + ")";
  }
  return out.empty() ? "identity" : out;
}

GaloisPermutationReport find_galois_permutation(const CandidateSMatrix& s) {
  validate(s);
  const std::size_t k = s.size();
  const std::size_t unit = s.unit_index;
  for (std::size_t y = 0; y < k; ++y) {
    if (s.entries[unit][y].is_zero()) return {false, {}, "column " + s.label(y) + " has zero unit entry", std::nullopt, false};
  }
  // ratio[y][x] = s_{x,y} / s_{I,y}
  std::vector<std::vector<QuadraticFieldElement>> ratio(k, std::vector<QuadraticFieldElement>(k));
  for (std::size_t y = 0; y < k; ++y)
    for (std::size_t x = 0; x < k; ++x) ratio[y][x] = s.entries[x][y] / s.entries[unit][y];

  GaloisPermutationReport out;
  out.permutation.assign(k, 0);
  std::vector<bool> used(k, false);
  for (std::size_t y = 0; y < k; ++y) {
    std::vector<QuadraticFieldElement> image;
    for (const auto& v : ratio[y]) image.push_back(v.conjugate());
    std::vector<std::size_t> matches;
    for (std::size_t y2 = 0; y2 < k; ++y2) {
      if (ratio[y2] == image) matches.push_back(y2);
    }
    if (matches.empty()) {
      out.reason = "no column matches the conjugate of column " + s.label(y);
      return out;
    }
    if (matches.size() > 1) {
      out.reason = "conjugate of column " + s.label(y) + " matches several columns";
      return out;
    }
    if (used[matches.front()]) {
      out.reason = "columns map onto " + s.label(matches.front()) + " twice";
      return out;
    }
    used[matches.front()] = true;
    out.permutation[y] = matches.front();
  }
  out.found = true;
  out.unit_image = out.permutation[unit];
  const QuadraticFieldElement d = s.dim(*out.unit_image);
  out.unit_image_dim_square_one = d * d == QuadraticFieldElement(1);
  return out;
}

bool dimension_consistency(const CandidateSMatrix& s) {
  validate(s);
  QuadraticFieldElement sum;
  for (std::size_t x = 0; x < s.size(); ++x) sum += s.dim(x) * s.dim(x);
  return sum == s.declared_dim;
}

}  // namespace fusionarith
