// Copyright 2026 The semicl Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "semicl/spectral.hpp"

namespace semicl::harness {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Hex key of the canonical (sorted, compact) serialization of `key`.
std::string cache_key(const nlohmann::json &key);

/// On-disk store of reference wavefunctions. Disabled when constructed without
/// a directory.
class ReferenceCache {
  public:
    ReferenceCache() = default;
    explicit ReferenceCache(std::filesystem::path directory);

    /// Uses $SEMICL_CACHE_DIR, or a disabled cache when it is unset or empty.
    static ReferenceCache from_environment();

    bool enabled() const { return directory_.has_value(); }
    std::optional<WaveFunction> load(const nlohmann::json &key) const;
    void store(const nlohmann::json &key, const WaveFunction &psi, double t) const;

    /// Returns the cached entry or computes, stores and returns it.
    WaveFunction get_or_compute(const nlohmann::json &key, double t, const std::function<WaveFunction()> &compute) const;

  private:
    std::optional<std::filesystem::path> directory_;
};

} // namespace semicl::harness
