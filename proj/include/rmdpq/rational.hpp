// Copyright 2026 The rmdpq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RMDPQ_RATIONAL_HPP_
#define RMDPQ_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace rmdpq {

// Exact rational number. All probabilities, radii and polytope coefficients
// in the library are of this type; solver fixpoints must never depend on
// floating-point rounding.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT(runtime/explicit)
  Rational(long long num, long long den);

  // Accepts "p/q", integer strings and plain decimals ("0.25", "-7.5e0" is
  // not supported). Throws std::invalid_argument on malformed input.
  static Rational parse(const std::string& text);

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }
  bool operator<=(const Rational& o) const { return v_ <= o.v_; }
  bool operator>(const Rational& o) const { return v_ > o.v_; }
  bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_positive() const { return sgn(v_) > 0; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  // v^e for small non-negative integer exponents (norm orders).
  Rational pow(unsigned e) const;

  // Reduced form, "p" when the denominator is 1 and "p/q" otherwise.
  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace rmdpq

#endif  // RMDPQ_RATIONAL_HPP_
