// error.h
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

#ifndef SYLATTR_ERROR_H_
#define SYLATTR_ERROR_H_

#include <stdexcept>
#include <string>

namespace sylattr {

// Malformed or invalid input data (files, specs, out-of-inventory tokens).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that could not produce a result, e.g. no decoding
// hypothesis survived the search.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sylattr

#endif  // SYLATTR_ERROR_H_
