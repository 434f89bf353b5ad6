// Copyright 2026 The trapkit developers
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

#include "trapkit/rational.hpp"

#include <cctype>

#include "trapkit/errors.hpp"

namespace trapkit {

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) {
    return numerator(r).str();
  }
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return InvalidInput("not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      return Rational(BigInt(s));
    }
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    }
    bool negative = !whole.empty() && whole[0] == '-';
    BigInt iw = whole.empty() || whole == "-" ? BigInt(0) : BigInt(whole);
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt fp = frac.empty() ? BigInt(0) : BigInt(frac);
    BigInt num = abs(iw) * scale + fp;
    if (negative) num = -num;
    return Rational(num, scale);
  } catch (const std::exception&) {
    throw bad();
  }
}

BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace trapkit
