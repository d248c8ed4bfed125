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

#include "semicl/harness/cache.hpp"

#include <cstdio>
#include <cstdlib>

#include "semicl/harness/io.hpp"

namespace semicl::harness {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string cache_key(const nlohmann::json &key) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key.dump())));
    return buf;
}

ReferenceCache::ReferenceCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

ReferenceCache ReferenceCache::from_environment() {
    const char *dir = std::getenv("SEMICL_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') {
        return {};
    }
    return ReferenceCache(dir);
}

std::optional<WaveFunction> ReferenceCache::load(const nlohmann::json &key) const {
    if (!directory_) {
        return std::nullopt;
    }
    const std::string k = cache_key(key);
    const auto dump_path = *directory_ / (k + ".scwf");
    const auto key_path = *directory_ / (k + ".json");
    if (!std::filesystem::exists(dump_path) || !std::filesystem::exists(key_path)) {
        return std::nullopt;
    }
    // Guard against hash collisions by comparing the stored key.
    try {
        if (nlohmann::json::parse(read_text(key_path)) != key) {
            return std::nullopt;
        }
        return read_dump(dump_path).wavefunction();
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

void ReferenceCache::store(const nlohmann::json &key, const WaveFunction &psi, double t) const {
    if (!directory_) {
        return;
    }
    const std::string k = cache_key(key);
    write_dump(*directory_ / (k + ".scwf"), psi, t);
    write_text(*directory_ / (k + ".json"), key.dump(2) + "\n");
}

WaveFunction ReferenceCache::get_or_compute(const nlohmann::json &key, double t,
                                            const std::function<WaveFunction()> &compute) const {
    if (auto hit = load(key)) {
        return *hit;
    }
    WaveFunction psi = compute();
    store(key, psi, t);
    return psi;
}

} // namespace semicl::harness
