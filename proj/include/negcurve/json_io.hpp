// Copyright 2026 The negcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NEGCURVE_JSON_IO_HPP_
#define NEGCURVE_JSON_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

namespace negcurve {

using Json = nlohmann::ordered_json;

// printf("%.17g"), with non-finite values spelled "nan" / "inf" / "-inf".
std::string format_double(double value);

// Serializes with every floating-point number at 17 significant digits.
// Non-finite numbers become null.
std::string dump_json(const Json& value, int indent = 2);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string digest_hex(std::string_view bytes);

}  // namespace negcurve

#endif  // NEGCURVE_JSON_IO_HPP_
