// Oracles shared by the property tests and the acceptance driver. None of
// them calls the library routine it is compared against.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fusionarith/algint.hpp"
#include "fusionarith/codegree.hpp"
#include "fusionarith/quadratic.hpp"
#include "fusionarith/roots.hpp"

namespace oracle {

using namespace fusionarith;

using i128 = __int128;
using QFE = QuadraticFieldElement;

// ------------------------------------------------------------ root counting

inline QFE eval_at(const IntPolynomial& p, const QFE& x) {
  QFE acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + QFE(p.coeff(static_cast<std::size_t>(i)));
  return acc;
}

// A point of the extended real line for the piece oracle.
struct Point {
  int infinite = 0;  // -1, 0, +1
  QFE value;
};

inline int sign_at(const IntPolynomial& p, const Point& x) {
  if (x.infinite != 0) return p.sign_at_infinity(x.infinite < 0);
  return eval_at(p, x.value).sign();
}

inline bool less(const Point& a, const Point& b) {
  if (a.infinite != b.infinite && (a.infinite != 0 || b.infinite != 0)) return a.infinite < b.infinite;
  if (a.infinite != 0) return false;
  return (a.value - b.value).sign() < 0;
}

// Distinct real roots of a cubic in (lo, hi], by splitting at the critical
// points, where p is strictly monotone on each piece.
inline std::size_t piece_count(const IntPolynomial& p, const Point& lo, const Point& hi) {
  const Integer a = p.coeff(3), b = p.coeff(2), c = p.coeff(1);
  std::vector<Point> cuts{lo};
  const Integer disc = 4 * b * b - 12 * a * c;
  if (disc > 0) {
    const auto split = split_square(disc);
    for (int s : {-1, 1}) {
      const Point crit{0, QFE(make_rational(-2 * b, 3 * a), make_rational(s * split.root, 3 * a), split.core)};
      if (less(lo, crit) && less(crit, hi)) cuts.push_back(crit);
    }
  }
  cuts.push_back(hi);
  std::sort(cuts.begin() + 1, cuts.end() - 1, less);
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int sl = sign_at(p, cuts[i]);
    const int sr = sign_at(p, cuts[i + 1]);
    if (sr == 0) ++count;
    else if (sl != 0 && sl != sr) ++count;
  }
  return count;
}

// ------------------------------------------------------------ codegree oracle

inline i128 ipow128(i128 b, int e) {
  i128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline long isqrt(long m) {
  long s = static_cast<long>(std::sqrt(static_cast<long double>(m)));
  while (s * s > m) --s;
  while ((s + 1) * (s + 1) <= m) ++s;
  return s;
}

inline long squarefree_core(long m) {
  long core = m < 0 ? -1 : 1;
  m = m < 0 ? -m : m;
  for (long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) core *= p;
  }
  return core * m;
}

struct OracleInstance {
  long dim;
  long r_num, r_den;
  int n;
  long bound;
  std::vector<std::pair<long, long>> lower;  // strict, ascending, as num/den
  std::set<long> excluded_d;
  long conductor = 0;
  std::set<std::string> disabled;
};

// Coefficients x^n - e1 x^(n-1) + ...; e = {e1, ..., en}.
inline i128 eval_poly(const std::vector<long>& e, i128 num, i128 den) {
  // den^n * p(num/den)
  const int n = static_cast<int>(e.size());
  i128 acc = ipow128(num, n);
  for (int i = 1; i <= n; ++i) acc += (i % 2 ? -1 : 1) * static_cast<i128>(e[i - 1]) * ipow128(num, n - i) * ipow128(den, i);
  return acc;
}

inline std::vector<long double> real_roots_numeric(const std::vector<long>& e) {
  if (e.size() == 2) {
    const long double d = std::sqrt(static_cast<long double>(e[0]) * e[0] - 4.0L * e[1]);
    return {(e[0] - d) / 2, (e[0] + d) / 2};
  }
  // Depressed cubic with three real roots: trigonometric form.
  const long double b = -e[0], c = e[1], d = -e[2];
  const long double p = c - b * b / 3, q = 2 * b * b * b / 27 - b * c / 3 + d;
  std::vector<long double> out;
  if (p >= 0) {
    out.assign(3, -b / 3);
  } else {
    const long double m = 2 * std::sqrt(-p / 3);
    long double arg = 3 * q / (p * m);
    arg = std::clamp(arg, -1.0L, 1.0L);
    const long double theta = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) out.push_back(m * std::cos(theta - 2 * std::numbers::pi_v<long double> * k / 3) - b / 3);
  }
  std::sort(out.begin(), out.end());
  // Polish each root with Newton steps.
  for (auto& x : out) {
    for (int it = 0; it < 60; ++it) {
      const long double f = ((x - e[0]) * x + e[1]) * x - e[2];
      const long double fp = (3 * x - 2 * e[0]) * x + e[1];
      if (fp == 0) break;
      x -= f / fp;
    }
  }
  return out;
}

inline std::optional<long> integer_root(const std::vector<long>& e) {
  const long P = e.back();
  for (long d = 1; d <= P; ++d) {
    if (P % d) continue;
    for (long s : {d, -d}) {
      if (eval_poly(e, s, 1) == 0) return s;
    }
  }
  return std::nullopt;
}

// p(a + b t + c t^2) == 0 in Z[t]/(t^3 - 3t + 1), all exact.
inline bool vanishes_in_conductor9(const std::vector<long>& e, long a, long b, long c) {
  using V = std::array<i128, 3>;
  const auto mul = [](const V& x, const V& y) {
    i128 r[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i + j] += x[i] * y[j];
    // t^4 = 3t^2 - t, t^3 = 3t - 1
    r[2] += 3 * r[4];
    r[1] -= r[4];
    r[1] += 3 * r[3];
    r[0] -= r[3];
    return V{r[0], r[1], r[2]};
  };
  const V alpha{a, b, c};
  V acc{1, 0, 0};
  V value{0, 0, 0};
  // Horner from the constant term upward: sum of coeff_k * alpha^k.
  const int n = static_cast<int>(e.size());
  for (int k = 0; k <= n; ++k) {
    const i128 coeff = k == n ? 1 : ((n - k) % 2 ? -1 : 1) * static_cast<i128>(e[n - k - 1]);
    for (int i = 0; i < 3; ++i) value[i] += coeff * acc[i];
    acc = mul(acc, alpha);
  }
  return value == V{0, 0, 0};
}

inline bool member_conductor9(const std::vector<long>& e) {
  const auto roots = real_roots_numeric(e);
  std::array<long double, 3> t;
  const std::array<int, 3> ks{1, 2, 4};
  for (int i = 0; i < 3; ++i) t[i] = 2 * std::cos(2 * std::numbers::pi_v<long double> * ks[i] / 9);
  std::array<int, 3> perm{0, 1, 2};
  do {
    // Solve a + b t_i + c t_i^2 = roots[perm[i]] by Cramer's rule.
    long double m[3][4];
    for (int i = 0; i < 3; ++i) {
      m[i][0] = 1;
      m[i][1] = t[i];
      m[i][2] = t[i] * t[i];
      m[i][3] = roots[perm[i]];
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
      std::swap(m[col], m[piv]);
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const long double f = m[r][col] / m[col][col];
        for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
      }
    }
    const long a = std::llround(m[0][3] / m[0][0]);
    const long b = std::llround(m[1][3] / m[1][1]);
    const long c = std::llround(m[2][3] / m[2][2]);
    if (vanishes_in_conductor9(e, a, b, c)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Per candidate: how many filters in pipeline order it passes.
struct OracleVerdict {
  std::string poly;
  int passed;
  int total;
};

inline std::vector<OracleVerdict> brute_force(const OracleInstance& in) {
  std::vector<std::string> order{"d-number", "totally-real", "totally-positive", "cyclotomic"};
  if (in.conductor) order.push_back("cyclic-cubic-membership");
  if (!in.excluded_d.empty()) order.push_back("quadratic-subfield");
  std::vector<std::string> active;
  for (const auto& f : order) {
    if (!in.disabled.count(f)) active.push_back(f);
  }
  std::vector<OracleVerdict> out;
  for (long P = 1; P <= in.bound; ++P) {
    if (in.bound % P) continue;
    // The class equation fixes e_{n-1} = r * P; e1 is free only for cubics.
    if ((static_cast<i128>(in.r_num) * P) % in.r_den != 0) continue;
    const long forced = in.r_num * P / in.r_den;
    const long e1_max = in.n == 2 ? 1 : 3 * P;
    for (long e1 = 1; e1 <= e1_max; ++e1) {
      {
        const std::vector<long> e = in.n == 2 ? std::vector<long>{forced, P} : std::vector<long>{e1, forced, P};
        const auto check = [&](const std::string& f) -> bool {
          const int n = in.n;
          if (f == "d-number") {
            for (int i = 1; i <= n; ++i) {
              if (ipow128(e[i - 1], n) % ipow128(P, i) != 0) return false;
            }
            return true;
          }
          if (f == "totally-real") {
            if (n == 2) return static_cast<i128>(e[0]) * e[0] - 4 * static_cast<i128>(e[1]) >= 0;
            const i128 b = -e[0], c = e[1], d = -e[2];
            return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d >= 0;
          }
          if (f == "totally-positive") {
            const auto roots = real_roots_numeric(e);
            for (std::size_t k = 0; k < roots.size(); ++k) {
              const auto [num, den] = in.lower[k];
              const long double L = static_cast<long double>(num) / den;
              if (std::fabs(roots[k] - L) < 1e-7L) {
                if (eval_poly(e, num, den) == 0) return false;
              }
              if (!(roots[k] > L)) return false;
            }
            return true;
          }
          if (f == "cyclotomic") {
            if (n == 2 || integer_root(e)) return true;
            const i128 b = -e[0], c = e[1], d = -e[2];
            const i128 disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
            const long s = isqrt(static_cast<long>(disc));
            return static_cast<i128>(s) * s == disc;
          }
          if (f == "cyclic-cubic-membership") {
            if (integer_root(e)) {
              // A rational root leaves a quadratic factor, which is never in a cubic field
              // unless it splits too.
              const long r = *integer_root(e);
              const long s1 = e[0] - r, s2 = P / r;
              const long disc = s1 * s1 - 4 * s2;
              return disc >= 0 && isqrt(disc) * isqrt(disc) == disc;
            }
            return member_conductor9(e);
          }
          // quadratic-subfield: the quadratic factor after removing a rational root.
          const auto r = integer_root(e);
          if (!r) return true;
          const long s1 = e[0] - *r, s2 = P / *r;
          const long disc = s1 * s1 - 4 * s2;
          if (disc >= 0 && isqrt(disc) * isqrt(disc) == disc) return true;
          return !in.excluded_d.count(squarefree_core(disc));
        };
        int passed = 0;
        for (const auto& f : active) {
          if (!check(f)) break;
          ++passed;
        }
        out.push_back({from_elementary(std::vector<Integer>(e.begin(), e.end())).to_string(), passed, static_cast<int>(active.size())});
      }
    }
  }
  return out;
}

inline ClassEquationInstance to_instance(const OracleInstance& in) {
  ClassEquationInstance inst;
  inst.global_dim = in.dim;
  inst.residual = make_rational(in.r_num, in.r_den);
  inst.orbit_degree = in.n;
  inst.product_divides = in.bound;
  for (const auto& [num, den] : in.lower) inst.root_lower_bounds.push_back(make_rational(num, den));
  for (long d : in.excluded_d)
    for (long k = 1; k <= 4; ++k) inst.excluded_quadratic_subfields.emplace_back(d, ipow(in.dim, static_cast<unsigned long>(k)));
  if (in.conductor) inst.membership_conductor = in.conductor;
  inst.disabled_filters = in.disabled;
  return inst;
}

// Candidates passing at least the first `stage` filters.
inline std::set<std::string> oracle_stage(const std::vector<OracleVerdict>& vs, int stage) {
  std::set<std::string> out;
  for (const auto& v : vs) {
    if (v.passed >= stage) out.insert(v.poly);
  }
  return out;
}

inline std::set<std::string> library_stage(const EnumerationResult& e, int stage) {
  std::set<std::string> out;
  for (const auto& c : e.certificates) {
    int passed = 0;
    for (const auto& f : c.filters) {
      if (!f.passed) break;
      ++passed;
    }
    if (passed >= stage) out.insert(c.candidate.to_string());
  }
  return out;
}
inline OracleInstance dim6_oracle() { return {6, 2, 3, 2, 36, {{3, 2}, {6, 1}}, {}, 0, {}}; }
inline OracleInstance dim7_oracle() { return {7, 4, 7, 3, 343, {{7, 4}, {7, 2}, {7, 1}}, {5}, 0, {}}; }
inline OracleInstance dim9_oracle() { return {9, 5, 9, 3, 729, {{9, 5}, {18, 5}, {9, 1}}, {}, 9, {}}; }

// ------------------------------------------------------------ d-numbers

inline bool d_number_by_unit_ratio(long b, long c) {
  // alpha / alpha-bar has norm 1; it is a unit iff its trace (b^2 - 2c)/c is integral.
  if (c == 0) return b == 0;
  return make_rational(b * b - 2 * c, c).get_den() == 1;
}

inline int vp(long m, long p) {
  if (m == 0) return 1 << 20;
  int v = 0;
  m = m < 0 ? -m : m;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

inline bool d_number_by_valuations(const std::vector<long>& a) {
  // a[i] is the coefficient of x^(n-i), a[0] = 1.
  const int n = static_cast<int>(a.size()) - 1;
  const long an = a[n];
  if (an == 0) {
    for (int i = 1; i < n; ++i)
      if (a[i] != 0) return false;
    return true;
  }
  for (long p = 2; p <= std::llabs(an); ++p) {
    bool prime = true;
    for (long q = 2; q * q <= p; ++q) prime = prime && p % q;
    if (!prime || an % p) continue;
    for (int i = 1; i <= n; ++i) {
      if (static_cast<long>(i) * vp(an, p) > static_cast<long>(n) * vp(a[i], p)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ decompositions

using Multiset = std::vector<std::pair<long, long>>;

inline std::set<Multiset> decomposition_box(long n, long A, long B, int k, long box) {
  std::vector<std::pair<long, long>> atoms;
  for (long beta = 1; beta <= box; ++beta)
    for (long alpha = 1; alpha <= box; ++alpha)
      if (((alpha * alpha - n * beta * beta) % 4 + 4) % 4 == 0) atoms.emplace_back(alpha, beta);
  std::set<Multiset> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    long a = 0, b = 0;
    for (auto i : idx) {
      a += atoms[i].first * atoms[i].first + n * atoms[i].second * atoms[i].second;
      b += atoms[i].first * atoms[i].second;
    }
    if (a == A && b == B) {
      Multiset m;
      for (auto i : idx) m.push_back(atoms[i]);
      std::sort(m.begin(), m.end(), [](auto x, auto y) { return std::tie(x.second, x.first) < std::tie(y.second, y.first); });
      out.insert(m);
    }
    // Next nondecreasing index tuple.
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == atoms.size()) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(pos)];
  }
  return out;
}

// Sturm counts on random cubics, over several range shapes, against the
// piece oracle. Returns the number of disagreements.
inline int sturm_disagreements(int trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(-12, 12), lead(1, 4), pick(0, 3);
  int disagreements = 0;
  for (int trial = 0; trial < trials; ++trial) {
    IntPolynomial p;
    if (pick(rng) == 0) {
      // Force a rational root so endpoints can hit it.
      const long q = lead(rng), r = small(rng);
      p = IntPolynomial({-r, q}) * IntPolynomial({small(rng), small(rng), lead(rng)});
    } else {
      p = IntPolynomial({small(rng), small(rng), small(rng), lead(rng) * (pick(rng) < 2 ? 1 : -1)});
    }
    if (p.degree() != 3) continue;
    const IntPolynomial s = squarefree_part(p);
    const auto roots = rational_roots(p);
    Rational lo = make_rational(small(rng), lead(rng)), hi = make_rational(small(rng), lead(rng));
    if (!roots.empty() && pick(rng) == 0) lo = roots.front();
    if (!roots.empty() && pick(rng) == 0) hi = roots.back();
    if (hi < lo) std::swap(lo, hi);
    if (lo == hi) hi += 1;
    const Point L{0, QFE(lo)}, H{0, QFE(hi)}, NEG{-1, {}}, POS{1, {}};
    const bool lo_root = p.sign_at(lo) == 0, hi_root = p.sign_at(hi) == 0;
    const std::size_t half_open = piece_count(p, L, H);  // (lo, hi]
    const std::map<std::pair<bool, bool>, std::size_t> want{
        {{true, false}, half_open},
        {{false, false}, half_open + lo_root},
        {{true, true}, half_open - hi_root},
        {{false, true}, half_open + lo_root - hi_root},
    };
    for (const auto& [flags, expected] : want) {
      const std::size_t got = sturm_real_root_count(s, {lo, hi, flags.first, flags.second});
      if (got != expected) ++disagreements;
    }
    if (sturm_real_root_count(s) != piece_count(p, NEG, POS)) ++disagreements;
    if (sturm_real_root_count(s, RealRange::at_most(hi)) != piece_count(p, NEG, H)) ++disagreements;
  }
  return disagreements;
}

inline std::set<std::string> library_survivors(const EnumerationResult& e) {
  std::set<std::string> out;
  for (const auto& c : e.certificates) {
    if (c.survived) out.insert(c.candidate.to_string());
  }
  return out;
}

// Candidate sets after each filter from total positivity on, then survivors.
// Returns an empty string on agreement, else a description of the first gap.
inline std::string compare_enumeration(const OracleInstance& in) {
  const auto oracle = brute_force(in);
  const auto lib = enumerate_candidates(to_instance(in), 2);
  if (oracle.empty()) return "oracle produced no candidates";
  const int total = oracle.front().total;
  // From total positivity on, every candidate lies inside the library's scan.
  for (int stage = std::min(3, total); stage <= total; ++stage) {
    if (library_stage(lib, stage) != oracle_stage(oracle, stage)) return "stage " + std::to_string(stage) + " differs";
  }
  if (library_survivors(lib) != oracle_stage(oracle, total)) return "survivors differ";
  return "";
}

inline int d_number_quadratic_disagreements(long box) {
  int disagreements = 0;
  for (long b = -box; b <= box; ++b) {
    for (long c = -box; c <= box; ++c) {
      const bool got = is_d_number(IntPolynomial({c, b, 1})).passes;
      if (got != d_number_by_unit_ratio(b, c)) ++disagreements;
      if (got != d_number_by_valuations({1, b, c})) ++disagreements;
    }
  }
  return disagreements;
}

}  // namespace oracle
