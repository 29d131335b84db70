#pragma once

// Predicates on algebraic integers given by integer polynomials.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fusionarith/polynomial.hpp"

namespace fusionarith {

struct DNumberVerdict {
  bool passes = true;
  std::optional<int> failing_index;  // i with (a_n)^i not dividing (a_i)^n
};

/// a_i is the coefficient of x^(n-i). p must be monic.
DNumberVerdict is_d_number(const IntPolynomial& p);

bool is_totally_real(const IntPolynomial& p);
bool is_totally_positive(const IntPolynomial& p);

/// Abelian splitting field test for degrees 1 to 3.
bool passes_cyclotomic_test(const IntPolynomial& p);

struct MembershipVerdict {
  bool member = false;
  Integer discriminant;
  std::string reason;
  /// Coordinates of one root in the power basis 1, t, t^2 of the field's
  /// generator t, when a root was found.
  std::optional<std::array<Integer, 3>> witness;
};

/// Conductors 7 and 9 only. p monic, irreducible, degree 3.
/// The discriminant condition is checked first; a root is then searched
/// for explicitly in the ring of integers of the field.
MembershipVerdict cyclic_cubic_membership(const IntPolynomial& p, const Integer& conductor);
bool in_cyclic_cubic_field(const IntPolynomial& p, const Integer& conductor);

/// Generator of the cyclic cubic field of the given conductor (7 or 9).
IntPolynomial cyclic_cubic_generator(const Integer& conductor);

/// d if d = 1 mod 4, else 4d. d squarefree, not 0 or 1.
Integer fundamental_discriminant(const Integer& d);

bool quadratic_subfield_in_cyclotomic(const Integer& d, const Integer& N, bool real_subfield_only);

struct GaloisStructure {
  Integer modulus;
  std::vector<Integer> orders;  // primary cyclic factors, ascending

  Integer order() const;
};

/// Primary decomposition of (Z/N)^x, N >= 3.
GaloisStructure cyclotomic_galois_structure(const Integer& N);

}  // namespace fusionarith
