/*
 * Copyright 2026 The ranknull authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RANKNULL_CORE_DIGEST_HPP_
#define RANKNULL_CORE_DIGEST_HPP_

#include <cstdint>
#include <span>
#include <string>

namespace ranknull {

/// Content digest of a candidate-size sequence (order sensitive).
/// FNV-1a over the little-endian byte representation; 16 hex chars.
/// Used to tie stored null statistics back to the exact sizes that
/// produced them without persisting the full sequence.
inline std::string sizes_digest(std::span<const std::int64_t> sizes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::int64_t value : sizes) {
    auto v = static_cast<std::uint64_t>(value);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  static const char* hex = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int nibble = 15; nibble >= 0; --nibble) {
    out.push_back(hex[(h >> (4 * nibble)) & 0xf]);
  }
  return out;
}

}  // namespace ranknull

#endif  // RANKNULL_CORE_DIGEST_HPP_
