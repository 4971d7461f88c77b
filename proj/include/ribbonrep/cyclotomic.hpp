#pragma once

// Exact arithmetic in Q(A), A a primitive 4(k+2)-th root of unity, together
// with the quantum integers [n], quantum factorials, loop values and the
// exact sine representatives used by the Verlinde sums.
//
// Elements are stored as integer polynomials in A of degree < deg Phi_{4(k+2)}
// over a positive integer denominator, reduced so that
// gcd(content(numerator), denominator) = 1.  Equality is plain equality of
// the stored form.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ribbonrep {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct NotAnInteger : std::runtime_error {
  explicit NotAnInteger(const std::string& what) : std::runtime_error(what) {}
};
struct DivisionByZero : std::runtime_error {
  DivisionByZero() : std::runtime_error("division by zero in Q(A)") {}
};

namespace detail {

// All integer polynomials are coefficient vectors, ascending powers.
using IPoly = std::vector<Int>;

inline void trim(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IPoly poly_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// Exact division of integer polynomials, used only where divisibility is
// guaranteed (cyclotomic polynomial construction).
inline IPoly poly_divexact(IPoly num, const IPoly& den) {
  trim(num);
  IPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0);
  while (num.size() >= den.size() && !num.empty()) {
    Int c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    trim(num);
  }
  return q;
}

inline IPoly cyclotomic_poly(int n) {
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  IPoly num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_divexact(std::move(num), cyclotomic_poly(d));
  }
  return num;
}

inline Int rat_num(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Int rat_den(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

class CycNum;

// Ring context for a fixed level k.  Immutable after construction and
// shareable across threads; holds the reduction tables and the quantum
// factorial tables every coefficient formula draws from.
struct RingCtx {
  int level = 0;       // k
  int order = 8;       // 4(k+2)
  int degree = 4;      // deg Phi_{4(k+2)}
  detail::IPoly minimal_polynomial;

  // x^e mod Phi for e in [0, 2*degree); beyond that exponents are first
  // reduced mod `order` using A^{4(k+2)} = 1.
  std::vector<detail::IPoly> power_table;

  // Quantum factorials [n]! for n in [0, 2k+3] and inverses for n <= k+1,
  // stored as raw (numerator, denominator) pairs.
  struct Raw {
    detail::IPoly num;
    Int den = 1;
  };
  std::vector<Raw> fact;
  std::vector<Raw> inv_fact;

  bool same(const RingCtx& o) const { return level == o.level; }
};

using Ring = std::shared_ptr<const RingCtx>;

// One element of Q(A).
class CycNum {
 public:
  CycNum() = default;
  CycNum(Ring ring, detail::IPoly num, Int den) : ring_(std::move(ring)) {
    num_ = reduce_poly(*ring_, std::move(num));
    den_ = std::move(den);
    canonicalize();
  }

  static CycNum integer(const Ring& ring, Int n) {
    return CycNum(ring, detail::IPoly{std::move(n)}, 1);
  }
  static CycNum rational(const Ring& ring, const Rational& q) {
    return CycNum(ring, detail::IPoly{detail::rat_num(q)}, detail::rat_den(q));
  }
  // A^m for any integer m, normalized with A^{4(k+2)} = 1.
  static CycNum a_power(const Ring& ring, long long m) {
    int ord = ring->order;
    long long e = m % ord;
    if (e < 0) e += ord;
    return CycNum(ring, ring->power_table[static_cast<std::size_t>(e)], 1);
  }

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return num_.empty(); }

  bool operator==(const CycNum& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  CycNum operator+(const CycNum& o) const {
    check_ring(o);
    detail::IPoly n(std::max(num_.size(), o.num_.size()));
    for (std::size_t i = 0; i < num_.size(); ++i) n[i] += num_[i] * o.den_;
    for (std::size_t i = 0; i < o.num_.size(); ++i) n[i] += o.num_[i] * den_;
    return CycNum(ring_, std::move(n), den_ * o.den_);
  }
  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }
  CycNum operator-(const CycNum& o) const { return *this + (-o); }
  CycNum operator*(const CycNum& o) const {
    check_ring(o);
    return CycNum(ring_, detail::poly_mul(num_, o.num_), den_ * o.den_);
  }
  CycNum operator/(const CycNum& o) const { return *this * o.inverse(); }

  CycNum inverse() const;

  CycNum pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum acc = integer(ring_, 1);
    CycNum base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // The canonical stored form, exposed for serialization.
  const detail::IPoly& numerator_coeffs() const { return num_; }
  const Int& denominator() const { return den_; }

  // Succeeds exactly when the element is a rational integer.
  Int as_integer() const {
    if (den_ != 1 || num_.size() > 1)
      throw NotAnInteger("CycNum is not a rational integer: " + to_string());
    return num_.empty() ? Int(0) : num_[0];
  }
  Rational as_rational() const {
    if (num_.size() > 1)
      throw NotAnInteger("CycNum is not rational: " + to_string());
    return num_.empty() ? Rational(0) : Rational(num_[0], den_);
  }

  std::string to_string() const {
    if (num_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < num_.size(); ++i) {
      if (num_[i] == 0) continue;
      if (!s.empty() && num_[i] > 0) s += "+";
      s += num_[i].str();
      if (i >= 1) s += "*A";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    if (den_ != 1) s = "(" + s + ")/" + den_.str();
    return s;
  }

 private:
  static detail::IPoly reduce_poly(const RingCtx& ctx, detail::IPoly p) {
    detail::trim(p);
    if (static_cast<int>(p.size()) <= ctx.degree) return p;
    detail::IPoly r(ctx.degree);
    for (std::size_t e = 0; e < p.size(); ++e) {
      if (p[e] == 0) continue;
      std::size_t er = e;
      if (static_cast<int>(er) >= ctx.order) er %= ctx.order;
      const detail::IPoly& row = ctx.power_table[er];
      for (std::size_t i = 0; i < row.size(); ++i) r[i] += p[e] * row[i];
    }
    detail::trim(r);
    return r;
  }

  void canonicalize() {
    if (den_ == 0) throw DivisionByZero();
    if (num_.empty()) {
      den_ = 1;
      return;
    }
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    Int g = den_;
    for (const auto& c : num_) g = detail::int_gcd(g, c);
    if (g > 1) {
      den_ /= g;
      for (auto& c : num_) c /= g;
    }
  }

  void check_ring(const CycNum& o) const {
    if (!ring_ || !o.ring_ || !ring_->same(*o.ring_))
      throw std::logic_error("CycNum ring mismatch");
  }

  Ring ring_;
  detail::IPoly num_;
  Int den_ = 1;
};

namespace detail {

// Extended Euclid over Q[x]: returns s with s*a = gcd (mod m), where a is
// invertible mod m.  Used for field inversion against Phi_{4(k+2)}.
using QPoly = std::vector<Rational>;

inline void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qsub_scaled(QPoly a, const QPoly& b, const Rational& c,
                         std::size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
  qtrim(a);
  return a;
}

inline std::pair<QPoly, QPoly> qdivmod(QPoly num, const QPoly& den) {
  QPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0);
  while (num.size() >= den.size() && !num.empty()) {
    Rational c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    q[shift] += c;
    num = qsub_scaled(std::move(num), den, c, shift);
  }
  return {q, num};
}

inline QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

inline QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace detail

inline CycNum CycNum::inverse() const {
  if (is_zero()) throw DivisionByZero();
  // Solve s * this + t * Phi = 1 over Q[x].
  detail::QPoly a;
  for (const auto& c : num_) a.emplace_back(c);
  detail::QPoly m;
  for (const auto& c : ring_->minimal_polynomial) m.emplace_back(c);

  // Invariant: s_i * a == r_i (mod Phi).
  detail::QPoly r0 = m, r1 = a;
  detail::QPoly s0 = {}, s1 = {Rational(1)};
  while (!r1.empty()) {
    auto [q, r2] = detail::qdivmod(r0, r1);
    detail::QPoly s2 = detail::qsub(s0, detail::qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd, a nonzero constant since Phi is irreducible over Q.
  if (r0.size() != 1)
    throw std::logic_error("inverse: gcd not constant; Phi not coprime?");
  Rational g = r0[0];
  detail::QPoly s = s0;
  for (auto& c : s) c /= g;
  Int lcm = 1;
  for (const auto& c : s)
    lcm = lcm / detail::int_gcd(lcm, detail::rat_den(c)) * detail::rat_den(c);
  // s inverts the numerator polynomial; the stored element is num/den.
  detail::IPoly snum(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    snum[i] = detail::rat_num(s[i]) * (lcm / detail::rat_den(s[i])) * den_;
  return CycNum(ring_, snum, lcm);
}

// ---------------------------------------------------------------------------
// Ring construction and the quantum-number zoo.

inline CycNum quantum_int(const Ring& ring, long long n);

inline Ring make_ring(int k) {
  if (k < 0) throw std::invalid_argument("level k must be >= 0");
  auto ctx = std::make_shared<RingCtx>();
  ctx->level = k;
  ctx->order = 4 * (k + 2);
  ctx->minimal_polynomial = detail::cyclotomic_poly(ctx->order);
  ctx->degree = static_cast<int>(ctx->minimal_polynomial.size()) - 1;

  // Monomial reduction table covering every exponent in [0, order).
  ctx->power_table.resize(ctx->order);
  for (int e = 0; e < ctx->degree && e < ctx->order; ++e) {
    detail::IPoly p(e + 1);
    p[e] = 1;
    ctx->power_table[e] = std::move(p);
  }
  for (int e = ctx->degree; e < ctx->order; ++e) {
    // x^e = x * x^{e-1} mod Phi
    detail::IPoly p(ctx->degree + 1);
    const detail::IPoly& prev = ctx->power_table[e - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) p[i + 1] = prev[i];
    if (static_cast<int>(p.size()) > ctx->degree && p[ctx->degree] != 0) {
      Int top = p[ctx->degree];
      p.resize(ctx->degree);
      // x^degree = -(lower part of Phi) since Phi is monic.
      for (int i = 0; i < ctx->degree; ++i)
        p[i] -= top * ctx->minimal_polynomial[i];
    } else {
      p.resize(ctx->degree);
    }
    detail::trim(p);
    ctx->power_table[e] = std::move(p);
  }

  Ring ring(ctx);

  // Quantum factorial tables.  [n]! vanishes once n >= k+2.
  auto mut = std::const_pointer_cast<RingCtx>(ring);
  CycNum f = CycNum::integer(ring, 1);
  mut->fact.push_back({f.numerator_coeffs(), f.denominator()});
  for (int n = 1; n <= 2 * k + 3; ++n) {
    f = f * quantum_int(ring, n);
    mut->fact.push_back({f.numerator_coeffs(), f.denominator()});
  }
  for (int n = 0; n <= k + 1; ++n) {
    CycNum fn(ring, ctx->fact[n].num, ctx->fact[n].den);
    CycNum inv = fn.inverse();
    mut->inv_fact.push_back({inv.numerator_coeffs(), inv.denominator()});
  }
  return ring;
}

// [n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2}), evaluated division-free as the
// geometric sum A^{2(n-1)} + A^{2(n-3)} + ... + A^{-2(n-1)}.
inline CycNum quantum_int(const Ring& ring, long long n) {
  if (n == 0) return CycNum::integer(ring, 0);
  if (n < 0) return -quantum_int(ring, -n);
  CycNum s = CycNum::integer(ring, 0);
  for (long long i = 0; i < n; ++i)
    s = s + CycNum::a_power(ring, 2 * (n - 1) - 4 * i);
  return s;
}

inline CycNum quantum_factorial(const Ring& ring, long long n) {
  if (n < 0) throw std::invalid_argument("[n]! needs n >= 0");
  if (n < static_cast<long long>(ring->fact.size()))
    return CycNum(ring, ring->fact[n].num, ring->fact[n].den);
  return CycNum::integer(ring, 0);  // contains the factor [k+2] = 0
}

// 1/[n]! for 0 <= n <= k+1.
inline CycNum inv_quantum_factorial(const Ring& ring, long long n) {
  if (n < 0 || n > ring->level + 1)
    throw std::invalid_argument("1/[n]! needs 0 <= n <= k+1");
  return CycNum(ring, ring->inv_fact[n].num, ring->inv_fact[n].den);
}

// <n> = (-1)^n [n+1]
inline CycNum loop_value(const Ring& ring, long long n) {
  CycNum v = quantum_int(ring, n + 1);
  return (n % 2 != 0) ? -v : v;
}

// i = A^{k+2}, a square root of -1.
inline CycNum imaginary_unit(const Ring& ring) {
  return CycNum::a_power(ring, ring->level + 2);
}

// Exact representative of sin(a*pi/(k+2)) under A -> exp(i*pi/(2(k+2))):
// (A^{2a} - A^{-2a}) / (2 A^{k+2}).
inline CycNum sin_value(const Ring& ring, long long a, long long weight = 1) {
  CycNum d = CycNum::a_power(ring, 2 * a) - CycNum::a_power(ring, -2 * a);
  CycNum s = d * CycNum::a_power(ring, -(ring->level + 2)) *
             CycNum::rational(ring, Rational(1, 2));
  return weight == 1 ? s : s.pow(weight);
}

inline Int as_integer(const CycNum& x) { return x.as_integer(); }

}  // namespace ribbonrep
