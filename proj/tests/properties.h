// properties.h
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
//
// Randomized property suites. Each runs the given number of independent
// cases and reports how many failed.

#ifndef SYLATTR_TESTS_PROPERTIES_H_
#define SYLATTR_TESTS_PROPERTIES_H_

#include <cstdint>
#include <string>
#include <vector>

namespace sylattr::testing {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

SuiteResult CtcCollapseSuite(int cases, std::uint64_t seed);
SuiteResult EditDistanceSuite(int cases, std::uint64_t seed);
SuiteResult LexiconRoundTripSuite(int cases, std::uint64_t seed);
SuiteResult RefinementSuite(int cases, std::uint64_t seed);
SuiteResult LmNormalizationSuite(int cases, std::uint64_t seed);
SuiteResult ApstRoundTripSuite(int cases, std::uint64_t seed);
SuiteResult ArpaRoundTripSuite(int cases, std::uint64_t seed);

std::vector<SuiteResult> AllSuites(int cases, std::uint64_t seed);

}  // namespace sylattr::testing

#endif  // SYLATTR_TESTS_PROPERTIES_H_
