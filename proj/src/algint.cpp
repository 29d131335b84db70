#include "fusionarith/algint.hpp"

#include <algorithm>

#include "fusionarith/error.hpp"
#include "fusionarith/roots.hpp"

namespace fusionarith {

namespace {

using Vec3 = std::array<Integer, 3>;

void require_monic(const IntPolynomial& p, const char* what) {
  if (p.degree() < 1 || !p.is_monic()) throw PreconditionError(std::string(what) + " needs a monic polynomial of degree >= 1, got " + p.to_string());
}

// Arithmetic in Z[t]/(m) for a monic cubic m.
struct CubicRing {
  IntPolynomial m;

  Vec3 mul(const Vec3& x, const Vec3& y) const {
    std::array<Integer, 5> c;
    for (auto& v : c) v = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    for (int k = 4; k >= 3; --k) {
      const Integer top = c[static_cast<std::size_t>(k)];
      if (top == 0) continue;
      c[static_cast<std::size_t>(k)] = 0;
      for (int j = 0; j < 3; ++j) c[static_cast<std::size_t>(k - 3 + j)] -= top * m.coeff(static_cast<std::size_t>(j));
    }
    return {c[0], c[1], c[2]};
  }

  Vec3 eval(const IntPolynomial& p, const Vec3& alpha) const {
    Vec3 acc{0, 0, 0};
    for (int i = p.degree(); i >= 0; --i) {
      acc = mul(acc, alpha);
      acc[0] += p.coeff(static_cast<std::size_t>(i));
    }
    return acc;
  }

  // Power sums Tr(t^k), k = 0..4, by Newton's identities.
  std::array<Integer, 5> power_sums() const {
    const Integer &m0 = m.coeff(0), &m1 = m.coeff(1), &m2 = m.coeff(2);
    std::array<Integer, 5> s;
    s[0] = 3;
    s[1] = -m2;
    s[2] = -m2 * s[1] - 2 * m1;
    s[3] = -m2 * s[2] - m1 * s[1] - 3 * m0;
    s[4] = -m2 * s[3] - m1 * s[2] - m0 * s[1];
    return s;
  }
};

}  // namespace

DNumberVerdict is_d_number(const IntPolynomial& p) {
  require_monic(p, "d-number test");
  const int n = p.degree();
  const Integer an = abs(p.coeff(0));
  for (int i = 1; i <= n; ++i) {
    const Integer ai = abs(p.coeff(static_cast<std::size_t>(n - i)));
    if (!divides(ipow(an, static_cast<unsigned long>(i)), ipow(ai, static_cast<unsigned long>(n)))) return {false, i};
  }
  return {true, std::nullopt};
}

bool is_totally_real(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("total reality of the zero polynomial");
  if (p.degree() < 1) return true;
  const IntPolynomial s = squarefree_part(p);
  return sturm_real_root_count(s) == static_cast<std::size_t>(s.degree());
}

bool is_totally_positive(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("total positivity of the zero polynomial");
  if (p.degree() < 1) return true;
  if (p.coeff(0) == 0) return false;
  const IntPolynomial s = squarefree_part(p);
  return sturm_real_root_count(s, RealRange::above(0)) == static_cast<std::size_t>(s.degree());
}

bool passes_cyclotomic_test(const IntPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("cyclotomic test needs degree >= 1");
  if (p.degree() > 3) throw UnsupportedDegree("cyclotomic test supports degree at most 3, got " + std::to_string(p.degree()));
  if (p.degree() <= 2) return true;
  if (factor_over_rationals(p).factors.size() > 1) return true;
  return is_perfect_square(poly_discriminant(p)).has_value();
}

IntPolynomial cyclic_cubic_generator(const Integer& conductor) {
  if (conductor == 9) return IntPolynomial::from_descending({1, 0, -3, 1});
  if (conductor == 7) return IntPolynomial::from_descending({1, 1, -2, -1});
  throw PreconditionError("unsupported conductor " + conductor.get_str() + " (supported: 7, 9)");
}

MembershipVerdict cyclic_cubic_membership(const IntPolynomial& p, const Integer& conductor) {
  const CubicRing ring{cyclic_cubic_generator(conductor)};
  if (p.degree() != 3 || !p.is_monic()) throw PreconditionError("membership needs a monic cubic, got " + p.to_string());
  if (factor_over_rationals(p).factors.size() != 1) throw PreconditionError(p.to_string() + " is reducible");

  MembershipVerdict out;
  out.discriminant = poly_discriminant(p);
  const Integer field_disc = conductor * conductor;
  if (!is_perfect_square(out.discriminant)) {
    out.reason = "discriminant " + out.discriminant.get_str() + " is not a square";
    return out;
  }
  if (!divides(field_disc, out.discriminant) || !is_perfect_square(out.discriminant / field_disc)) {
    out.reason = "discriminant " + out.discriminant.get_str() + " is not " + field_disc.get_str() + " times a square";
    return out;
  }

  // A root a = c0 + c1 t + c2 t^2 has Tr(a) = e1 and Tr(a^2) = e1^2 - 2 e2.
  // The trace form is positive definite, which bounds each c_i.
  const Integer e1 = -p.coeff(2);
  const Integer e2 = p.coeff(1);
  const Integer t2 = e1 * e1 - 2 * e2;
  const auto s = ring.power_sums();
  Integer g[3][3];
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) g[j][k] = s[static_cast<std::size_t>(j + k)];
  const Integer det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                      g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  const auto bound = [&](const Integer& cofactor) { return floor_sqrt(floor(make_rational(t2 * cofactor, det))); };
  const Integer b1 = bound(g[0][0] * g[2][2] - g[0][2] * g[2][0]);
  const Integer b2 = bound(g[0][0] * g[1][1] - g[0][1] * g[1][0]);

  for (Integer c1 = -b1; c1 <= b1; ++c1) {
    for (Integer c2 = -b2; c2 <= b2; ++c2) {
      const Integer rest = e1 - c1 * s[1] - c2 * s[2];
      if (!divides(s[0], rest)) continue;
      const Vec3 alpha{rest / s[0], c1, c2};
      const Vec3 value = ring.eval(p, alpha);
      if (value[0] == 0 && value[1] == 0 && value[2] == 0) {
        out.member = true;
        out.witness = alpha;
        out.reason = "root " + alpha[0].get_str() + " + " + alpha[1].get_str() + "t + " + alpha[2].get_str() + "t^2 with t a root of " + ring.m.to_string();
        return out;
      }
    }
  }
  out.reason = "discriminant " + out.discriminant.get_str() + " passes, but no root lies in Z[t], t a root of " + ring.m.to_string();
  return out;
}

bool in_cyclic_cubic_field(const IntPolynomial& p, const Integer& conductor) {
  return cyclic_cubic_membership(p, conductor).member;
}

Integer fundamental_discriminant(const Integer& d) {
  if (d == 0 || d == 1 || !is_squarefree(d)) throw PreconditionError("need a squarefree integer other than 0 and 1, got " + d.get_str());
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
  return r == 1 ? d : Integer(4 * d);
}

bool quadratic_subfield_in_cyclotomic(const Integer& d, const Integer& N, bool real_subfield_only) {
  if (N <= 0) throw PreconditionError("cyclotomic modulus must be positive");
  const Integer disc = fundamental_discriminant(d);
  if (real_subfield_only && d < 0) return false;
  return divides(abs(disc), N);
}

Integer GaloisStructure::order() const {
  Integer out = 1;
  for (const auto& o : orders) out *= o;
  return out;
}

GaloisStructure cyclotomic_galois_structure(const Integer& N) {
  if (N < 3) throw PreconditionError("Galois structure needs N >= 3");
  GaloisStructure out{N, {}};
  for (const auto& [p, k] : factor_integer(N)) {
    if (p == 2) {
      if (k == 2) out.orders.emplace_back(2);
      if (k >= 3) {
        out.orders.emplace_back(2);
        out.orders.push_back(ipow(2, k - 2));
      }
      continue;
    }
    for (const auto& [q, e] : factor_integer(p - 1)) out.orders.push_back(ipow(q, e));
    if (k >= 2) out.orders.push_back(ipow(p, k - 1));
  }
  std::sort(out.orders.begin(), out.orders.end());
  return out;
}

}  // namespace fusionarith
