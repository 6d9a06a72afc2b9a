// Copyright 2026 The typed-pa Authors
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

#ifndef TYPEDPA_CSV_HPP_
#define TYPEDPA_CSV_HPP_

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

namespace typedpa {

// 17 significant digits, enough to round-trip any double.
std::string FormatDouble(double v);

std::string CsvLine(std::initializer_list<std::string_view> fields);

// Lowercase hex SHA-256 of a file's bytes or of a string.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view data);

}  // namespace typedpa

#endif  // TYPEDPA_CSV_HPP_
