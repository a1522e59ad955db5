// text.h
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
// Small string helpers shared by the file-format readers.

#ifndef SYLATTR_TEXT_H_
#define SYLATTR_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace sylattr {

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);
// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> Split(std::string_view s, char delim);
// Splits on runs of blanks (space or tab), dropping empty fields.
std::vector<std::string_view> SplitWhitespace(std::string_view s);
std::vector<std::string_view> SplitLines(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double v);
// Fixed number of significant digits ("%.Ng").
std::string FormatSignificant(double v, int digits);
// Strict parse of the whole field; false on trailing garbage.
bool ParseDouble(std::string_view s, double* out);
bool ParseInt(std::string_view s, long long* out);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace sylattr

#endif  // SYLATTR_TEXT_H_
