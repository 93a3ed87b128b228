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

#include <compare>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpt {

//! Exact half-integer quantum number (F, m, I, J, ...) stored as twice its value.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice_(2 * whole) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  double value() const { return 0.5 * twice_; }

  // Same integer/half-integer character, so that m can be a projection of F.
  constexpr bool same_parity(HalfInt o) const {
    return ((twice_ - o.twice_) % 2) == 0;
  }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ - b.twice_);
  }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const {
    if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  //! Parses "3", "-2", "7/2", "-1/2". Returns nullopt on malformed input.
  static std::optional<HalfInt> parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    auto to_int = [](std::string_view v, int& out) -> bool {
      if (v.empty()) return false;
      std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
      if (i == v.size()) return false;
      long acc = 0;
      for (; i < v.size(); ++i) {
        if (v[i] < '0' || v[i] > '9') return false;
        acc = acc * 10 + (v[i] - '0');
        if (acc > 1000000) return false;
      }
      out = static_cast<int>(v[0] == '-' ? -acc : acc);
      return true;
    };
    auto slash = s.find('/');
    int num = 0;
    if (slash == std::string_view::npos) {
      if (!to_int(s, num)) return std::nullopt;
      return HalfInt(num);
    }
    int den = 0;
    if (!to_int(s.substr(0, slash), num) || !to_int(s.substr(slash + 1), den))
      return std::nullopt;
    if (den == 2) return from_twice(num);
    if (den == 1) return HalfInt(num);
    return std::nullopt;
  }

private:
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt a) {
  return a.twice() < 0 ? HalfInt::from_twice(-a.twice()) : a;
}

//! m is a valid projection of F: |m| <= F and both share parity.
constexpr bool projection_in_range(HalfInt F, HalfInt m) {
  return F.same_parity(m) && abs(m) <= F;
}

//! Triangle rule |a-b| <= c <= a+b with integer perimeter.
constexpr bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if ((ta + tb + tc) % 2 != 0) return false;
  return tc >= std::abs(ta - tb) && tc <= ta + tb;
}

}  // namespace cpt
