// Copyright 2026 The Relic Authors
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

#ifndef RELIC_SRC_BASE64_H_
#define RELIC_SRC_BASE64_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace relic::internal {

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
// Throws InputError on characters outside the standard alphabet.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace relic::internal

#endif  // RELIC_SRC_BASE64_H_
