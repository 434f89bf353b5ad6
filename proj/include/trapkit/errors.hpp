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

#include <stdexcept>
#include <string>

namespace trapkit {

/** Base class for all trapkit errors. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** A size cap (vertex count, qubit count, enumeration bound) was exceeded. */
struct CapExceeded : Error {
  using Error::Error;
};

/** Invalid argument to a construction or operation. */
struct InvalidInput : Error {
  using Error::Error;
};

/** Pattern requires a non-Clifford angle or preparation in the tableau
 *  back-end. */
struct NotClifford : Error {
  using Error::Error;
};

/** A protocol message arrived out of order or referenced an unknown
 *  vertex. */
struct ProtocolViolation : Error {
  using Error::Error;
};

/** Compiler or bound-calculator parameters violate an admissibility
 *  inequality. The message names the failing inequality. */
struct Inadmissible : Error {
  using Error::Error;
};

}  // namespace trapkit
