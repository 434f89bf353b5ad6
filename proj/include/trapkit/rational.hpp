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

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace trapkit {

using BigInt = boost::multiprecision::cpp_int;

/** Exact rational arithmetic. All detection rates, LP solutions and tail
 *  probabilities are computed in this type so that paper values such as 2/5
 *  are testable as equalities. */
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/** Renders as "p/q", or "p" when the denominator is 1. */
std::string to_string(const Rational& r);

/** Parses "p/q", integers and plain decimals ("0.02" -> 1/50). */
Rational parse_rational(std::string_view text);

/** Exact binomial coefficient; zero outside 0 <= k <= n. */
BigInt binomial(long n, long k);

}  // namespace trapkit
