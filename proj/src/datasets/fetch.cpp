/**
 * Copyright 2026 The ffbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ffbench/datasets/fetch.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>

#include "ffbench/error.hpp"
#include "json.hpp"

namespace ffb {

namespace fs = std::filesystem;

std::string to_string(FileFormat f) {
  switch (f) {
    case FileFormat::idx_gzip: return "idx-gzip";
    case FileFormat::cifar10_binary: return "cifar10-binary";
    case FileFormat::flat_tensor: return "flat-tensor";
  }
  return "?";
}

FileFormat file_format_from_string(const std::string& s) {
  if (s == "idx-gzip") return FileFormat::idx_gzip;
  if (s == "cifar10-binary") return FileFormat::cifar10_binary;
  if (s == "flat-tensor") return FileFormat::flat_tensor;
  throw ConfigError("unknown file format '" + s + "'");
}

void DatasetManifest::validate() const {
  if (name.empty()) throw ConfigError("manifest: empty name");
  if (urls.empty()) throw ConfigError("manifest '" + name + "': no urls");
  if (urls.size() != sha256.size()) {
    throw ConfigError("manifest '" + name + "': every url needs exactly one sha256");
  }
  for (const auto& h : sha256) {
    if (h.size() != 64) throw ConfigError("manifest '" + name + "': malformed sha256 '" + h + "'");
  }
}

std::string DatasetManifest::cache_name(std::size_t i) const {
  std::string base = urls.at(i);
  if (auto slash = base.find_last_of('/'); slash != std::string::npos) base = base.substr(slash + 1);
  if (base.size() > 3 && base.ends_with(".gz")) base.resize(base.size() - 3);
  if (base.empty()) throw ConfigError("manifest '" + name + "': url without a file name");
  return base;
}

std::vector<DatasetManifest> parse_manifests(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (!j.is_array()) throw ConfigError("manifest: top level must be an array");
  std::vector<DatasetManifest> out;
  for (const auto& e : j) {
    try {
      DatasetManifest m;
      m.name = e.at("name").get<std::string>();
      m.urls = e.at("urls").get<std::vector<std::string>>();
      m.sha256 = e.at("sha256").get<std::vector<std::string>>();
      m.format = file_format_from_string(e.at("format").get<std::string>());
      m.validate();
      out.push_back(std::move(m));
    } catch (const nlohmann::json::exception& ex) {
      throw ConfigError(std::string("manifest entry: ") + ex.what());
    }
  }
  return out;
}

std::vector<DatasetManifest> load_manifests(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifests(ss.str());
}

std::vector<DatasetManifest> builtin_manifests() {
  DatasetManifest mnist;
  mnist.name = "mnist";
  mnist.format = FileFormat::idx_gzip;
  const std::string base = "https://ossci-datasets.s3.amazonaws.com/mnist/";
  mnist.urls = {base + "train-images-idx3-ubyte.gz", base + "train-labels-idx1-ubyte.gz",
                base + "t10k-images-idx3-ubyte.gz", base + "t10k-labels-idx1-ubyte.gz"};
  // Digests of the decompressed IDX files.
  mnist.sha256 = {
      "ba891046e6505d7aadcbbe25680a0738ad16aec93bde7f9b65e87a2fc25776db",
      "65a50cbbf4e906d70832878ad85ccda5333a97f0f4c3dd2ef09a8a9eef7101c5",
      "0fa7898d509279e482958e8ce81c8e77db3f2f8254e26661ceb7762c4d494ce7",
      "ff7bcfd416de33731a308c3f266cc351222c34898ecbeaf847f06e48f7ec33f2",
  };
  return {mnist};
}

const DatasetManifest& find_manifest(const std::vector<DatasetManifest>& manifests, const std::string& name) {
  for (const auto& m : manifests) {
    if (m.name == name) return m;
  }
  throw ConfigError("no manifest for dataset '" + name + "'");
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

std::size_t write_body(char* ptr, std::size_t size, std::size_t nmemb, void* userdata) {
  auto* out = static_cast<Bytes*>(userdata);
  out->insert(out->end(), reinterpret_cast<std::uint8_t*>(ptr), reinterpret_cast<std::uint8_t*>(ptr) + size * nmemb);
  return size * nmemb;
}

Bytes as_cached(Bytes raw) { return is_gzip(raw) ? gunzip(raw) : raw; }

}  // namespace

Bytes curl_download(const std::string& url) {
  static std::once_flag init;
  std::call_once(init, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });

  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) throw FetchError("curl_easy_init failed");
  Bytes body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, write_body);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) throw FetchError(url + ": " + curl_easy_strerror(rc));
  return body;
}

std::vector<fs::path> fetch_dataset(const DatasetManifest& manifest, const fs::path& cache_dir,
                                    const Downloader& download) {
  manifest.validate();
  const fs::path dir = cache_dir / manifest.name;
  fs::create_directories(dir);
  std::vector<fs::path> out;
  for (std::size_t i = 0; i < manifest.urls.size(); ++i) {
    const fs::path target = dir / manifest.cache_name(i);
    const std::string& expected = manifest.sha256[i];
    if (fs::exists(target)) {
      if (sha256_hex(read_file(target)) == expected) {
        out.push_back(target);
        continue;
      }
      std::cerr << "checksum mismatch for cached " << target << ", downloading again\n";
      fs::remove(target);
    }
    Bytes bytes = as_cached(download(manifest.urls[i]));
    const std::string got = sha256_hex(bytes);
    if (got != expected) {
      fs::remove(target);
      throw IntegrityError(manifest.urls[i] + ": sha256 " + got + " != expected " + expected);
    }
    write_file(target, bytes);
    out.push_back(target);
  }
  return out;
}

std::vector<fs::path> seed_cache(const DatasetManifest& manifest, const fs::path& cache_dir,
                                 const fs::path& source_dir) {
  manifest.validate();
  const fs::path dir = cache_dir / manifest.name;
  fs::create_directories(dir);
  std::vector<fs::path> out;
  for (std::size_t i = 0; i < manifest.urls.size(); ++i) {
    const std::string name = manifest.cache_name(i);
    fs::path src = source_dir / name;
    if (!fs::exists(src)) src = source_dir / (name + ".gz");
    if (!fs::exists(src)) throw FetchError("seed: " + name + " not found in " + source_dir.string());
    Bytes bytes = as_cached(read_file(src));
    const std::string got = sha256_hex(bytes);
    if (got != manifest.sha256[i]) {
      throw IntegrityError(src.string() + ": sha256 " + got + " != expected " + manifest.sha256[i]);
    }
    const fs::path target = dir / name;
    write_file(target, bytes);
    out.push_back(target);
  }
  return out;
}

fs::path resolve_cache_dir(const std::optional<fs::path>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("FFBENCH_CACHE"); env && *env) return fs::path(env);
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "ffbench";
  return fs::path(".ffbench-cache");
}

}  // namespace ffb
