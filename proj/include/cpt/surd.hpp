// Copyright 2026 The cptkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpt {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

//! num/den as an exact rational; unlike the raw cpp_rational constructor
//! this accepts negative denominators.
inline BigRational make_rational(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return BigRational(num, den);
}

//! Exact value of the form sign * rational * sqrt(radicand).
//!
//! Canonical form: the radicand is a square-free positive integer (1 for
//! rational values) and the rational part is strictly positive unless the
//! value is zero. Products and ratios of surds are surds; sums require
//! commensurable radicands and throw std::domain_error otherwise.
class Surd {
public:
  Surd() = default;  // zero
  Surd(long long n) { assign_rational(BigRational(n)); }
  explicit Surd(const BigRational& r) { assign_rational(r); }

  //! sqrt of a non-negative rational, normalized to canonical form.
  static Surd sqrt_rational(const BigRational& r) {
    if (r < 0) throw std::domain_error("Surd: sqrt of negative rational");
    if (r == 0) return Surd();
    // sqrt(p/q) = sqrt(p*q)/q
    BigInt rad = numerator(r) * denominator(r);
    BigInt outer = 1;
    extract_square_part(rad, outer);
    Surd s;
    s.sign_ = 1;
    s.mag_ = BigRational(outer, denominator(r));
    s.radicand_ = rad;
    return s;
  }

  //! rational * sqrt(radicand), radicand a non-negative rational.
  static Surd make(const BigRational& rational, const BigRational& radicand) {
    return Surd(rational) * sqrt_rational(radicand);
  }

  int sign() const { return sign_; }
  const BigRational& rational() const { return mag_; }
  const BigInt& radicand() const { return radicand_; }
  bool is_zero() const { return sign_ == 0; }
  bool is_rational() const { return radicand_ == 1; }

  double value() const {
    if (sign_ == 0) return 0.0;
    const double m = mag_.convert_to<double>();
    const double r = radicand_.convert_to<double>();
    return sign_ * m * std::sqrt(r);
  }

  Surd operator-() const {
    Surd s = *this;
    s.sign_ = -s.sign_;
    return s;
  }

  Surd inverse() const {
    if (sign_ == 0) throw std::domain_error("Surd: inverse of zero");
    // 1/(m * sqrt(r)) = (1/(m*r)) * sqrt(r)
    Surd s;
    s.sign_ = sign_;
    s.mag_ = 1 / (mag_ * radicand_);
    s.radicand_ = radicand_;
    return s;
  }

  friend Surd operator*(const Surd& a, const Surd& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return Surd();
    Surd s;
    s.sign_ = a.sign_ * b.sign_;
    s.mag_ = a.mag_ * b.mag_;
    // Both radicands are square free, so the square part of their product
    // is exactly gcd(ra, rb).
    BigInt g = gcd(a.radicand_, b.radicand_);
    s.mag_ *= g;
    s.radicand_ = (a.radicand_ / g) * (b.radicand_ / g);
    return s;
  }

  friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }

  friend Surd operator+(const Surd& a, const Surd& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.radicand_ != b.radicand_)
      throw std::domain_error("Surd: sum of incommensurable radicands");
    BigRational m = a.signed_mag() + b.signed_mag();
    Surd s;
    if (m == 0) return s;
    s.sign_ = m < 0 ? -1 : 1;
    s.mag_ = m < 0 ? BigRational(-m) : m;
    s.radicand_ = a.radicand_;
    return s;
  }

  friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

  friend bool operator==(const Surd& a, const Surd& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_ && a.radicand_ == b.radicand_;
  }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

  std::string str() const {
    if (sign_ == 0) return "0";
    std::string out = sign_ < 0 ? "-" : "";
    const std::string mag = rational_str(mag_);
    if (radicand_ == 1) return out + mag;
    if (mag_ != 1) out += "(" + mag + ")*";
    out += "sqrt(" + radicand_.str() + ")";
    return out;
  }

private:
  int sign_ = 0;
  BigRational mag_ = 0;  // > 0 iff sign_ != 0
  BigInt radicand_ = 1;  // square-free positive integer

  BigRational signed_mag() const { return sign_ < 0 ? BigRational(-mag_) : mag_; }

  void assign_rational(const BigRational& r) {
    if (r == 0) return;
    sign_ = r < 0 ? -1 : 1;
    mag_ = r < 0 ? BigRational(-r) : r;
    radicand_ = 1;
  }

  static std::string rational_str(const BigRational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
  }

  // Factors n = s^2 * rest with rest square free; multiplies outer by s
  // and replaces n by rest.
  static void extract_square_part(BigInt& n, BigInt& outer) {
    if (n <= 1) return;
    BigInt rest = 1;
    for (BigInt p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      int count = 0;
      while (n % p == 0) {
        n /= p;
        ++count;
      }
      for (int i = 0; i < count / 2; ++i) outer *= p;
      if (count % 2 != 0) rest *= p;
    }
    rest *= n;  // leftover is 1 or a prime
    n = rest;
  }
};

}  // namespace cpt
