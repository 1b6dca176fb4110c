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

#include "rmdpq/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace rmdpq {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational::Rational(long long num, long long den) : v_(0) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  v_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::pow(unsigned e) const {
  mpq_class acc(1);
  mpq_class base = v_;
  unsigned k = e;
  while (k > 0) {
    if (k & 1u) acc *= base;
    base *= base;
    k >>= 1u;
  }
  return Rational(std::move(acc));
}

Rational Rational::parse(const std::string& text) {
  const auto bad = [&] {
    return std::invalid_argument("malformed rational: '" + text + "'");
  };
  if (text.empty()) throw bad();

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) throw bad();
    mpq_class v;
    if (v.set_str(num + "/" + den, 10) != 0) throw bad();
    if (v.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    v.canonicalize();
    return Rational(std::move(v));
  }

  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    if (!is_integer_token(text)) throw bad();
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw bad();
    v.canonicalize();
    return Rational(std::move(v));
  }

  // Decimal: sign, integer part, fractional part.
  std::string head = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  bool negative = false;
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    negative = head[0] == '-';
    head = head.substr(1);
  }
  if (head.empty() && frac.empty()) throw bad();
  if (head.empty()) head = "0";
  for (char c : head)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();

  mpz_class numerator(head.empty() ? "0" : head);
  mpz_class scale(1);
  for (char c : frac) {
    numerator = numerator * 10 + (c - '0');
    scale *= 10;
  }
  mpq_class v(numerator, scale);
  v.canonicalize();
  if (negative) v = -v;
  return Rational(std::move(v));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace rmdpq
