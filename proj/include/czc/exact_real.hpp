#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "czc/errors.hpp"

// Exact arithmetic over Q-linear combinations of square roots of distinct
// squarefree integers.  Every value handled by the library (rotation numbers,
// mean indices, eta thresholds, resonance sums) lives in such a field, and
// every comparison, floor, and sign decision below is pure integer
// arithmetic: no floating point participates in any accept/reject decision.

namespace czc {

using Int = boost::multiprecision::cpp_int;

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Floor of the real square root.  v must be >= 0.
inline Int isqrt(const Int& v) { return boost::multiprecision::sqrt(v); }

// Floor division with b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline int sign_of(const Int& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

inline bool is_squarefree(long long r) {
  if (r < 1) return false;
  for (long long p = 2; p * p <= r; ++p) {
    if (r % p == 0) {
      r /= p;
      if (r % p == 0) return false;
    }
  }
  return true;
}

inline long long smallest_prime_factor(long long r) {
  for (long long p = 2; p * p <= r; ++p)
    if (r % p == 0) return p;
  return r;
}

// Rational number in lowest terms with positive denominator.
struct Rational {
  Int num{0};
  Int den{1};

  Rational() = default;
  Rational(Int n) : num(std::move(n)) {}  // NOLINT: implicit by design
  Rational(long long n) : num(n) {}       // NOLINT
  Rational(Int n, Int d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  void normalize() {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
      den = -den;
      num = -num;
    }
    if (num == 0) {
      den = 1;
      return;
    }
    Int g = gcd_int(num < 0 ? Int(-num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  int sign() const { return sign_of(num); }
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  Int floor() const { return floor_div(num, den); }

  Rational operator-() const {
    Rational r(*this);
    r.num = -r.num;
    return r;
  }
  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw InputError("rational division by zero");
    return Rational(num * o.den, den * o.num);
  }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  double approx() const { return num.convert_to<double>() / den.convert_to<double>(); }

  std::string str() const {
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
  }
};

class ExactReal {
 public:
  // One summand coef * sqrt(root); root == 1 carries the rational part.
  struct Term {
    long long root;
    Rational coef;
  };

  ExactReal() = default;
  ExactReal(long long v) {  // NOLINT: implicit by design
    if (v != 0) t_.push_back({1, Rational(v)});
  }
  ExactReal(Int v) {  // NOLINT
    if (v != 0) t_.push_back({1, Rational(std::move(v))});
  }
  ExactReal(Rational r) {  // NOLINT
    if (!r.is_zero()) t_.push_back({1, std::move(r)});
  }

  static ExactReal integer(Int v) { return ExactReal(std::move(v)); }

  static ExactReal rational(Int num, Int den) { return ExactReal(Rational(std::move(num), std::move(den))); }

  // (a + b*sqrt(root)) / den.  root must be squarefree; b == 0 collapses to a
  // rational, root == 1 folds sqrt(1) into the rational part.
  static ExactReal surd(const Int& a, const Int& b, long long root, const Int& den) {
    if (den == 0) throw InputError("surd with zero denominator");
    ExactReal x(Rational(a, den));
    if (b != 0) {
      if (root < 1) throw InputError("surd root must be >= 1");
      if (!is_squarefree(root)) throw InputError("surd root " + std::to_string(root) + " is not squarefree");
      if (root == 1) return x + ExactReal(Rational(b, den));
      x.t_.push_back({root, Rational(b, den)});
      x.canon();
    }
    return x;
  }

  // sqrt(v) for v >= 0, extracting the square part (sqrt(8) -> 2*sqrt(2)).
  static ExactReal sqrt_of(long long v) {
    if (v < 0) throw InputError("square root of a negative number");
    if (v == 0) return ExactReal();
    long long square = 1, rest = v;
    for (long long p = 2; p * p <= rest; ++p) {
      while (rest % (p * p) == 0) {
        rest /= p * p;
        square *= p;
      }
    }
    if (rest == 1) return ExactReal(Int(square));
    ExactReal x;
    x.t_.push_back({rest, Rational(square)});
    return x;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_[0].root == 1); }
  bool is_integer() const { return t_.empty() || (is_rational() && t_[0].coef.is_integer()); }

  std::optional<Rational> as_rational() const {
    if (t_.empty()) return Rational(0);
    if (is_rational()) return t_[0].coef;
    return std::nullopt;
  }

  ExactReal operator-() const {
    ExactReal r(*this);
    for (auto& t : r.t_) t.coef = -t.coef;
    return r;
  }

  ExactReal operator+(const ExactReal& o) const {
    ExactReal r(*this);
    r.t_.insert(r.t_.end(), o.t_.begin(), o.t_.end());
    r.canon();
    return r;
  }
  ExactReal operator-(const ExactReal& o) const { return *this + (-o); }

  ExactReal operator*(const ExactReal& o) const {
    ExactReal r;
    for (const auto& a : t_)
      for (const auto& b : o.t_) {
        long long root;
        Rational coef = a.coef * b.coef;
        if (a.root == 1) {
          root = b.root;
        } else if (b.root == 1) {
          root = a.root;
        } else {
          long long g = std::gcd(a.root, b.root);
          long long u = a.root / g, v = b.root / g;
          if (u > (1LL << 62) / v) throw InputError("surd root product overflow");
          root = u * v;
          coef = coef * Rational(g);
        }
        if (!coef.is_zero()) r.t_.push_back({root, std::move(coef)});
      }
    r.canon();
    return r;
  }

  ExactReal operator*(const Int& k) const {
    ExactReal r(*this);
    for (auto& t : r.t_) t.coef = t.coef * Rational(k);
    r.canon();
    return r;
  }
  ExactReal operator*(long long k) const { return *this * Int(k); }

  ExactReal operator/(const ExactReal& o) const { return *this * o.inverse(); }
  ExactReal operator/(const Int& k) const {
    if (k == 0) throw InputError("division by zero");
    ExactReal r(*this);
    for (auto& t : r.t_) t.coef = t.coef / Rational(k);
    return r;
  }
  ExactReal operator/(long long k) const { return *this / Int(k); }

  // 1/x by peeling one prime at a time: with x = A + sqrt(p)*B and A, B free
  // of p, 1/x = (A - sqrt(p)*B) / (A^2 - p*B^2), and the denominator lives in
  // the subfield without p.  A^2 = p*B^2 would force sqrt(p) into that
  // subfield, impossible for nonzero x by independence of surds over Q.
  ExactReal inverse() const {
    if (t_.empty()) throw InputError("division by zero");
    if (is_rational()) return ExactReal(Rational(t_[0].coef.den, t_[0].coef.num));
    long long p = smallest_prime_factor(first_irrational_root());
    auto [a, b] = split_by_prime(p);
    ExactReal denom = a * a - (b * b) * Int(p);
    ExactReal conj = a - sqrt_times(p, b);
    return conj * denom.inverse();
  }

  // Sign by exact means only: coefficient shortcuts, then exact rational
  // bracketing, then recursive conjugation sign(A + sqrt(p)B) via A^2 - pB^2.
  int sign() const {
    if (t_.empty()) return 0;
    if (t_.size() == 1) return t_[0].coef.sign();
    bool all_pos = true, all_neg = true;
    for (const auto& t : t_) {
      if (t.coef.sign() > 0) all_neg = false;
      if (t.coef.sign() < 0) all_pos = false;
    }
    if (all_pos) return 1;
    if (all_neg) return -1;
    auto [lo, hi] = bounds(64);
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
    long long p = smallest_prime_factor(first_irrational_root());
    auto [a, b] = split_by_prime(p);
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    int s = (a * a - (b * b) * Int(p)).sign();
    if (s == 0) throw InternalInconsistency("conjugate norm of a nonzero value vanished");
    return sa * s;
  }

  bool operator==(const ExactReal& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
      if (t_[i].root != o.t_[i].root || !(t_[i].coef == o.t_[i].coef)) return false;
    return true;
  }
  bool operator!=(const ExactReal& o) const { return !(*this == o); }
  bool operator<(const ExactReal& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const ExactReal& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const ExactReal& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const ExactReal& o) const { return (*this - o).sign() >= 0; }

  Int floor() const {
    if (is_rational()) return t_.empty() ? Int(0) : t_[0].coef.floor();
    for (unsigned prec = 128;; prec *= 2) {
      auto [lo, hi] = bounds(prec);
      Int fl = lo.floor(), fh = hi.floor();
      if (fl == fh) return fl;
      if (fh == fl + 1) {
        // The bracket straddles fh; the value is irrational, so the exact
        // sign test cannot tie.
        return (*this - ExactReal(fh)).sign() > 0 ? fh : fl;
      }
    }
  }

  Int ceil() const { return -((-*this).floor()); }

  ExactReal fractional_part() const { return *this - ExactReal(floor()); }

  double approx() const {
    double v = 0;
    for (const auto& t : t_) v += t.coef.approx() * std::sqrt(static_cast<double>(t.root));
    return v;
  }

  // Exact rational bracket [lo, hi] containing the value, with each sqrt
  // approximated to `prec` binary digits.
  std::pair<Rational, Rational> bounds(unsigned prec) const {
    Rational lo(0), hi(0);
    Int scale = Int(1) << prec;
    for (const auto& t : t_) {
      if (t.root == 1) {
        lo = lo + t.coef;
        hi = hi + t.coef;
        continue;
      }
      Int s = isqrt(Int(t.root) << (2 * prec));
      Rational r_lo(s, scale), r_hi(s + 1, scale);
      if (t.coef.sign() >= 0) {
        lo = lo + t.coef * r_lo;
        hi = hi + t.coef * r_hi;
      } else {
        lo = lo + t.coef * r_hi;
        hi = hi + t.coef * r_lo;
      }
    }
    return {lo, hi};
  }

  std::string str() const {
    if (t_.empty()) return "0";
    if (is_rational()) return t_[0].coef.str();
    if (t_.size() <= 2 && irrational_count() == 1) {
      // Single-root value: render as (a+b*sqrt(r))/den with gcd(a,b,den)=1.
      Rational ra = is_rational_leading() ? t_[0].coef : Rational(0);
      const Term& s = t_.back();
      Int den = ra.den * s.coef.den / gcd_int(ra.den, s.coef.den);
      Int a = ra.num * (den / ra.den), b = s.coef.num * (den / s.coef.den);
      std::string body = "(" + a.str() + (b < 0 ? "-" : "+") + Int(b < 0 ? -b : b).str() +
                         "*sqrt(" + std::to_string(s.root) + "))";
      return den == 1 ? body : body + "/" + den.str();
    }
    std::string out;
    for (size_t i = 0; i < t_.size(); ++i) {
      const auto& t = t_[i];
      Rational c = t.coef;
      if (i == 0) {
        if (c.sign() < 0) {
          out += "-";
          c = -c;
        }
      } else {
        out += c.sign() < 0 ? " - " : " + ";
        if (c.sign() < 0) c = -c;
      }
      if (t.root == 1) {
        out += c.str();
      } else {
        out += c.str() + "*sqrt(" + std::to_string(t.root) + ")";
      }
    }
    return out;
  }

 private:
  std::vector<Term> t_;

  bool is_rational_leading() const { return !t_.empty() && t_[0].root == 1; }

  size_t irrational_count() const {
    size_t n = 0;
    for (const auto& t : t_)
      if (t.root != 1) ++n;
    return n;
  }

  long long first_irrational_root() const {
    for (const auto& t : t_)
      if (t.root != 1) return t.root;
    throw InternalInconsistency("no irrational term to split");
  }

  // x = A + sqrt(p) * B with p dividing no root of A and no root of B.
  std::pair<ExactReal, ExactReal> split_by_prime(long long p) const {
    ExactReal a, b;
    for (const auto& t : t_) {
      if (t.root % p == 0) {
        b.t_.push_back({t.root / p, t.coef});
      } else {
        a.t_.push_back(t);
      }
    }
    a.canon();
    b.canon();
    return {a, b};
  }

  // sqrt(p) * b where no root of b is divisible by the prime p.
  static ExactReal sqrt_times(long long p, const ExactReal& b) {
    ExactReal r;
    for (const auto& t : b.t_) {
      if (t.root > (1LL << 62) / p) throw InputError("surd root product overflow");
      r.t_.push_back({t.root * p, t.coef});
    }
    r.canon();
    return r;
  }

  void canon() {
    std::sort(t_.begin(), t_.end(), [](const Term& x, const Term& y) { return x.root < y.root; });
    std::vector<Term> out;
    for (auto& t : t_) {
      if (!out.empty() && out.back().root == t.root) {
        out.back().coef = out.back().coef + t.coef;
        if (out.back().coef.is_zero()) out.pop_back();
      } else if (!t.coef.is_zero()) {
        out.push_back(std::move(t));
      }
    }
    t_ = std::move(out);
  }
};

inline ExactReal operator*(const Int& k, const ExactReal& x) { return x * k; }
inline ExactReal operator*(long long k, const ExactReal& x) { return x * k; }

// floor(k * x) for an iterate count k >= 1.
inline Int floor_mul(const ExactReal& x, const Int& k) { return (x * k).floor(); }

// Whether k * x is an integer, i.e. the k-th iterate of a rotation by x is
// degenerate.  Irrational x never is.
inline bool is_integer_multiple(const ExactReal& x, const Int& k) { return (x * k).is_integer(); }

// Fractional part and its complement for k * x; exact, and an error when the
// product is an integer (the gap is then undefined).
inline std::pair<ExactReal, ExactReal> frac_gap(const ExactReal& x, const Int& k) {
  ExactReal y = x * k;
  ExactReal f = y.fractional_part();
  if (f.is_zero())
    throw DegenerateIterate("k * theta is an integer at k = " + k.str());
  return {f, ExactReal(1) - f};
}

}  // namespace czc
