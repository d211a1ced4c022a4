// Copyright 2026 The pretzel-surgeon Authors
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

#ifndef PRETZEL_CACHE_HPP_
#define PRETZEL_CACHE_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace pretzel {

// Lowercase hex SHA-256.
std::string Sha256Hex(const std::string& bytes);

// Content-addressed store of computed results. Each entry file holds the
// payload digest on its first line; entries whose payload does not match are
// deleted on read. Writes go to a temporary file that is then renamed.
class ResultCache {
 public:
  explicit ResultCache(std::string directory);

  // Key for a command over input bytes and options.
  static std::string Key(const std::string& command, const std::string& input,
                         const std::string& options);

  std::optional<std::string> Get(const std::string& key);
  void Put(const std::string& key, const std::string& payload);

  const std::string& directory() const { return directory_; }
  uint64_t evictions() const { return evictions_; }

 private:
  std::string PathFor(const std::string& key) const;

  std::string directory_;
  uint64_t evictions_ = 0;
};

// Settings from flags, an optional config file, and the environment.
struct Config {
  std::string data_dir;
  std::string cache_dir;
  size_t search_max_len = 40;
  size_t search_max_steps = 200000;
  size_t quotient_max_steps = 0;
  double root_tolerance = 1e-10;
};

// Defaults: bundled data directory, cache under $XDG_CACHE_HOME or ~/.cache.
// PRETZEL_SURGEON_CACHE overrides the cache directory.
Config DefaultConfig();

// Reads `key = value` lines (TOML subset: comments, quoted strings, integers,
// floats; [sections] are ignored). Unknown keys are rejected.
Config LoadConfig(const std::string& path, Config base = DefaultConfig());

}  // namespace pretzel

#endif  // PRETZEL_CACHE_HPP_
