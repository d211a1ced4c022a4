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

#include "pretzel/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pretzel/error.hpp"

namespace pretzel {

namespace fs = std::filesystem;

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    Fail(ErrorCode::kInternal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

ResultCache::ResultCache(std::string directory) : directory_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create cache directory '" + directory_ + "'");
}

std::string ResultCache::Key(const std::string& command, const std::string& input,
                             const std::string& options) {
  std::string material = command;
  material += '\0';
  material += Sha256Hex(input);
  material += '\0';
  material += options;
  return Sha256Hex(material);
}

std::string ResultCache::PathFor(const std::string& key) const {
  return (fs::path(directory_) / (key + ".entry")).string();
}

std::optional<std::string> ResultCache::Get(const std::string& key) {
  const std::string path = PathFor(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string digest;
  std::getline(in, digest);
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string payload = rest.str();
  if (digest.size() != 64 || Sha256Hex(payload) != digest) {
    in.close();
    std::error_code ec;
    fs::remove(path, ec);
    ++evictions_;
    return std::nullopt;
  }
  return payload;
}

void ResultCache::Put(const std::string& key, const std::string& payload) {
  const std::string path = PathFor(key);
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write cache entry '" + tmp + "'");
    out << Sha256Hex(payload) << '\n' << payload;
    if (!out.flush()) Fail(ErrorCode::kIo, "short write to '" + tmp + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    Fail(ErrorCode::kIo, "cannot publish cache entry '" + path + "'");
  }
}

#ifndef PRETZEL_DATA_DIR
#define PRETZEL_DATA_DIR "data"
#endif

Config DefaultConfig() {
  Config c;
  c.data_dir = PRETZEL_DATA_DIR;
  if (const char* env = std::getenv("PRETZEL_SURGEON_CACHE"); env && *env) {
    c.cache_dir = env;
  } else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    c.cache_dir = (fs::path(xdg) / "pretzel-surgeon").string();
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    c.cache_dir = (fs::path(home) / ".cache" / "pretzel-surgeon").string();
  } else {
    c.cache_dir = (fs::temp_directory_path() / "pretzel-surgeon").string();
  }
  return c;
}

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string Unquote(const std::string& v, int line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": expected a quoted string");
}

size_t ParseSize(const std::string& v, int line) {
  try {
    size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used == v.size() && x >= 0) return static_cast<size_t>(x);
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": expected a non-negative integer");
}

double ParseDouble(const std::string& v, int line) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size() && x > 0) return x;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": expected a positive number");
}

}  // namespace

Config LoadConfig(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config '" + path + "'");
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw;
    bool quoted = false;
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '"') quoted = !quoted;
      if (text[i] == '#' && !quoted) {
        text.resize(i);
        break;
      }
    }
    text = Trim(text);
    if (text.empty() || text.front() == '[') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = Trim(text.substr(0, eq));
    const std::string value = Trim(text.substr(eq + 1));
    if (key == "data_dir") {
      base.data_dir = Unquote(value, line);
    } else if (key == "cache_dir") {
      // The environment wins over the file.
      if (!std::getenv("PRETZEL_SURGEON_CACHE")) base.cache_dir = Unquote(value, line);
    } else if (key == "search_max_len") {
      base.search_max_len = ParseSize(value, line);
    } else if (key == "search_max_steps") {
      base.search_max_steps = ParseSize(value, line);
    } else if (key == "quotient_max_steps") {
      base.quotient_max_steps = ParseSize(value, line);
    } else if (key == "root_tolerance") {
      base.root_tolerance = ParseDouble(value, line);
    } else {
      Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

}  // namespace pretzel
