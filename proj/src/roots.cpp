#include "fusionarith/roots.hpp"

#include <algorithm>

#include "fusionarith/error.hpp"

namespace fusionarith {

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<IntPolynomial>& seq, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& q : seq) signs.push_back(q.sign_at(x));
  return variations(signs);
}

int variations_at_infinity(const std::vector<IntPolynomial>& seq, bool negative) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& q : seq) signs.push_back(q.sign_at_infinity(negative));
  return variations(signs);
}

// Roots in (lo, hi] for a squarefree p, using a precomputed sequence.
std::size_t count_half_open(const std::vector<IntPolynomial>& seq, const std::optional<Rational>& lo,
                            const std::optional<Rational>& hi) {
  const int vlo = lo ? variations_at(seq, *lo) : variations_at_infinity(seq, true);
  const int vhi = hi ? variations_at(seq, *hi) : variations_at_infinity(seq, false);
  return vlo > vhi ? static_cast<std::size_t>(vlo - vhi) : 0;
}

std::size_t count_in_range(const IntPolynomial& p, const std::vector<IntPolynomial>& seq, const RealRange& r) {
  if (r.lo && r.hi && (*r.lo > *r.hi)) return 0;
  std::size_t n = count_half_open(seq, r.lo, r.hi);
  if (r.lo && !r.lo_open && p.sign_at(*r.lo) == 0) ++n;
  if (r.hi && r.hi_open && p.sign_at(*r.hi) == 0 && n > 0) --n;
  return n;
}

Rational cauchy_bound(const IntPolynomial& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max<Rational>(m, Rational(abs(p.coeff(static_cast<std::size_t>(i)))) / lead);
  return m + 1;
}

// Open-interval count: roots strictly between lo and hi.
std::size_t count_open(const IntPolynomial& p, const std::vector<IntPolynomial>& seq, const Rational& lo,
                       const Rational& hi) {
  return count_in_range(p, seq, RealRange{lo, hi, true, true});
}

void isolate(const IntPolynomial& p, const std::vector<IntPolynomial>& seq, const std::vector<Rational>& rational,
             const Rational& lo, const Rational& hi, std::vector<Interval>& out) {
  const std::size_t n = count_open(p, seq, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    for (const auto& r : rational) {
      if (r > lo && r < hi) {
        out.push_back({r, r, false, false});
        return;
      }
    }
    out.push_back({lo, hi, true, true});
    return;
  }
  const Rational mid = (lo + hi) / 2;
  isolate(p, seq, rational, lo, mid, out);
  if (p.sign_at(mid) == 0) out.push_back({mid, mid, false, false});
  isolate(p, seq, rational, mid, hi, out);
}

// All candidates num/den from the rational root theorem, positive and negative.
std::vector<Rational> root_candidates(const IntPolynomial& p) {
  std::vector<Rational> out;
  const auto nums = positive_divisors(p.coeff(0));
  const auto dens = positive_divisors(p.leading());
  for (const auto& a : nums) {
    for (const auto& b : dens) {
      if (::gcd(a, b) != 1) continue;
      out.push_back(make_rational(a, b));
      out.push_back(make_rational(-a, b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer det_bareiss(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::optional<std::pair<IntPolynomial, IntPolynomial>> try_quadratic_pair(const IntPolynomial& q) {
  const Integer& a = q.coeff(4);
  const Integer& b = q.coeff(3);
  const Integer& c = q.coeff(2);
  const Integer& d = q.coeff(1);
  const Integer& e = q.coeff(0);
  std::vector<Integer> c_choices;
  for (const auto& v : positive_divisors(e)) {
    c_choices.push_back(v);
    c_choices.push_back(-v);
  }
  for (const auto& a1 : positive_divisors(a)) {
    const Integer a2 = a / a1;
    for (const auto& c1 : c_choices) {
      const Integer c2 = e / c1;
      std::vector<Integer> b1_options;
      const Integer det = a2 * c1 - a1 * c2;
      if (det != 0) {
        const Integer num = b * c1 - a1 * d;
        if (!divides(det, num)) continue;
        b1_options.push_back(num / det);
      } else {
        // a2 b1^2 - b b1 + a1 (c - a1 c2 - a2 c1) = 0
        const Integer k = a1 * (c - a1 * c2 - a2 * c1);
        const Integer disc = b * b - 4 * a2 * k;
        auto s = is_perfect_square(disc);
        if (!s) continue;
        for (const Integer& top : {Integer(b + *s), Integer(b - *s)}) {
          if (divides(2 * a2, top)) b1_options.push_back(top / (2 * a2));
        }
      }
      for (const auto& b1 : b1_options) {
        const Integer rest = b - a2 * b1;
        if (!divides(a1, rest)) continue;
        const Integer b2 = rest / a1;
        IntPolynomial f1(std::vector<Integer>{c1, b1, a1});
        IntPolynomial f2(std::vector<Integer>{c2, b2, a2});
        if (f1 * f2 == q) return std::make_pair(f1, f2);
      }
    }
  }
  return std::nullopt;
}

IntPolynomial normalized(const IntPolynomial& p) {
  IntPolynomial q = p.primitive_part();
  return q.leading() < 0 ? -q : q;
}

}  // namespace

bool Interval::contains(const Rational& x) const {
  const bool above_lo = lo_open ? x > lo : x >= lo;
  const bool below_hi = hi_open ? x < hi : x <= hi;
  return above_lo && below_hi;
}

std::string Interval::to_string() const {
  if (is_point()) return "[" + fusionarith::to_string(lo) + "]";
  return std::string(lo_open ? "(" : "[") + fusionarith::to_string(lo) + ", " + fusionarith::to_string(hi) +
         (hi_open ? ")" : "]");
}

std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("Sturm sequence needs a nonconstant polynomial");
  std::vector<IntPolynomial> seq{p, p.derivative()};
  while (seq.back().degree() > 0) {
    const auto& a = seq[seq.size() - 2];
    const auto& b = seq.back();
    auto r = divmod(RatPolynomial(a), RatPolynomial(b)).second;
    if (r.is_zero()) break;
    seq.push_back(-r.positive_primitive());
  }
  return seq;
}

std::size_t sturm_real_root_count(const IntPolynomial& p, const RealRange& range) {
  if (p.degree() < 1) throw PreconditionError("root count needs a nonconstant polynomial");
  if (!is_squarefree(p)) throw PreconditionError(p.to_string() + " is not squarefree");
  return count_in_range(p, sturm_sequence(p), range);
}

std::size_t real_root_count_with_multiplicity(const IntPolynomial& p, const RealRange& range) {
  if (p.is_zero()) throw PreconditionError("root count of the zero polynomial");
  std::size_t total = 0;
  IntPolynomial g = p;
  while (g.degree() > 0) {
    const IntPolynomial s = squarefree_part(g);
    total += count_in_range(s, sturm_sequence(s), range);
    g = gcd(g, g.derivative());
  }
  return total;
}

std::vector<Interval> isolate_real_roots(const IntPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("root isolation needs a nonconstant polynomial");
  if (!is_squarefree(p)) throw PreconditionError(p.to_string() + " is not squarefree");
  const auto seq = sturm_sequence(p);
  const auto rational = rational_roots(p);
  const Rational bound = cauchy_bound(p);
  std::vector<Interval> out;
  isolate(p, seq, rational, -bound, bound, out);
  return out;
}

Interval refine_root(const IntPolynomial& p, Interval iv, const Rational& width) {
  if (width <= 0) throw PreconditionError("refinement width must be positive");
  if (iv.is_point()) return iv;
  const IntPolynomial s = squarefree_part(p);
  const auto seq = sturm_sequence(s);
  iv.lo_open = iv.hi_open = true;
  while (iv.hi - iv.lo > width) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    if (s.sign_at(mid) == 0) return {mid, mid, false, false};
    if (count_open(s, seq, iv.lo, mid) == 1) iv.hi = mid;
    else iv.lo = mid;
  }
  return iv;
}

std::vector<Rational> rational_roots(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("rational roots of the zero polynomial");
  std::vector<Rational> out;
  IntPolynomial q = p;
  while (q.degree() >= 1 && q.coeff(0) == 0) {
    out.emplace_back(0);
    q = IntPolynomial(std::vector<Integer>(q.coefficients().begin() + 1, q.coefficients().end()));
  }
  if (q.degree() >= 1) {
    for (const auto& r : root_candidates(q)) {
      while (q.degree() >= 1 && q.sign_at(r) == 0) {
        out.push_back(r);
        q = exact_quotient(q, IntPolynomial::linear_with_root(r));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntPolynomial Factorization::expand() const {
  IntPolynomial acc(std::vector<Integer>{content});
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

Factorization factor_over_rationals(const IntPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("factoring needs degree at least 1");
  if (p.degree() > 4) throw UnsupportedDegree("factoring supports degree at most 4, got " + std::to_string(p.degree()));
  Factorization out{p.content(), {}};
  IntPolynomial rest = normalized(p);
  for (const auto& r : rational_roots(rest)) {
    const IntPolynomial lin = IntPolynomial::linear_with_root(r);
    out.factors.push_back(lin);
    rest = exact_quotient(rest, lin);
  }
  rest = normalized(rest);
  if (rest.degree() == 4) {
    if (auto pair = try_quadratic_pair(rest)) {
      out.factors.push_back(normalized(pair->first));
      out.factors.push_back(normalized(pair->second));
      rest = IntPolynomial{1};
    }
  }
  if (rest.degree() >= 1) out.factors.push_back(rest);
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

Integer resultant(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree();
  const int n = b.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return 1;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
  for (int row = 0; row < n; ++row)
    for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] = a.coeff(static_cast<std::size_t>(m - j));
  for (int row = 0; row < m; ++row)
    for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + j)] = b.coeff(static_cast<std::size_t>(n - j));
  return det_bareiss(std::move(s));
}

Integer poly_discriminant(const IntPolynomial& p) {
  const int n = p.degree();
  if (n == 2) {
    const Integer &a = p.coeff(2), &b = p.coeff(1), &c = p.coeff(0);
    return b * b - 4 * a * c;
  }
  if (n == 3) {
    const Integer &a = p.coeff(3), &b = p.coeff(2), &c = p.coeff(1), &d = p.coeff(0);
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d;
  }
  if (n == 4) {
    // (-1)^{n(n-1)/2} = +1 for n = 4.
    return resultant(p, p.derivative()) / p.leading();
  }
  throw UnsupportedDegree("discriminant supports degrees 2 to 4, got " + std::to_string(n));
}

}  // namespace fusionarith
