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

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffbench/datasets/io.hpp"

namespace ffb {

enum class FileFormat { idx_gzip, cifar10_binary, flat_tensor };

std::string to_string(FileFormat f);
FileFormat file_format_from_string(const std::string& s);

/// Where a dataset's files come from. sha256[i] is the digest of urls[i] as stored in the
/// cache, i.e. after transparent gzip decompression.
struct DatasetManifest {
  std::string name;
  std::vector<std::string> urls;
  std::vector<std::string> sha256;
  FileFormat format = FileFormat::idx_gzip;

  void validate() const;
  /// Cache file name for urls[i]: the URL basename without a trailing ".gz".
  std::string cache_name(std::size_t i) const;
};

/// Parses the manifest file format: a JSON array of {name, urls, sha256, format}.
std::vector<DatasetManifest> parse_manifests(const std::string& json_text);
std::vector<DatasetManifest> load_manifests(const std::filesystem::path& path);
std::vector<DatasetManifest> builtin_manifests();
/// Throws ConfigError for unknown names.
const DatasetManifest& find_manifest(const std::vector<DatasetManifest>& manifests, const std::string& name);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

using Downloader = std::function<Bytes(const std::string& url)>;
/// libcurl GET; throws FetchError on transport or HTTP errors.
Bytes curl_download(const std::string& url);

/// Ensures every manifest file exists in cache_dir/<name>/ with a matching digest.
///
/// Verified cached files are returned without calling `download`. A cached file with the
/// wrong digest is deleted and downloaded once more; if the fresh copy also mismatches it
/// is removed and IntegrityError is thrown.
std::vector<std::filesystem::path> fetch_dataset(const DatasetManifest& manifest,
                                                 const std::filesystem::path& cache_dir,
                                                 const Downloader& download = curl_download);

/// Copies manifest files found in `source_dir` (raw or .gz) into the cache after verifying
/// their digests. Useful when the upstream URLs are unreachable.
std::vector<std::filesystem::path> seed_cache(const DatasetManifest& manifest,
                                              const std::filesystem::path& cache_dir,
                                              const std::filesystem::path& source_dir);

/// --cache-dir if given, else $FFBENCH_CACHE, else ~/.cache/ffbench.
std::filesystem::path resolve_cache_dir(const std::optional<std::filesystem::path>& flag);

}  // namespace ffb
