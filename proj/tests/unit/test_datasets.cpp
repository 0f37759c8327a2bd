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

#include <gtest/gtest.h>
#include <zlib.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "ffbench/core/rng.hpp"
#include "ffbench/datasets/fetch.hpp"
#include "ffbench/datasets/formats.hpp"
#include "ffbench/datasets/image_dataset.hpp"
#include "ffbench/datasets/io.hpp"
#include "ffbench/datasets/registry.hpp"
#include "ffbench/error.hpp"
#include "temp_dir.hpp"

using namespace ffb;
namespace fs = std::filesystem;

namespace {

Bytes idx_bytes(const std::vector<std::uint32_t>& dims, const Bytes& payload) {
  Bytes b{0, 0, 0x08, static_cast<std::uint8_t>(dims.size())};
  for (auto d : dims) {
    for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(d >> s));
  }
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

Bytes gzip_compress(const Bytes& raw) {
  z_stream zs{};
  EXPECT_EQ(deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY), Z_OK);
  Bytes out(deflateBound(&zs, raw.size()) + 32);
  zs.next_in = const_cast<Bytef*>(raw.data());
  zs.avail_in = static_cast<uInt>(raw.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  EXPECT_EQ(deflate(&zs, Z_FINISH), Z_STREAM_END);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

ImageDataset tiny_dataset(std::size_t n, std::size_t c, std::size_t h, std::size_t w, int classes,
                          std::uint64_t seed) {
  Rng rng(seed);
  ImageDataset ds;
  ds.name = "tiny";
  ds.num_classes = classes;
  std::vector<double> px(n * c * h * w);
  for (auto& v : px) v = static_cast<double>(rng.uniform_int(256)) / 255.0;
  ds.images = Tensor({n, c, h, w}, std::move(px));
  for (std::size_t i = 0; i < n; ++i) ds.labels.push_back(static_cast<int>(rng.uniform_int(classes)));
  return ds;
}

}  // namespace

TEST(Idx, SyntheticTwoByThree) {
  const auto t = parse_idx(idx_bytes({2, 3}, {0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(t.shape, (Shape{2, 3}));
  EXPECT_EQ(t.data, (std::vector<std::uint8_t>{0, 1, 2, 3, 4, 5}));
}

TEST(Idx, TruncatedHeaderAndPayload) {
  Bytes short_header{0, 0, 0x08, 4, 0, 0, 0, 2};
  EXPECT_THROW(parse_idx(short_header), FormatError);
  EXPECT_THROW(parse_idx(idx_bytes({2, 3}, {0, 1, 2})), FormatError);
  EXPECT_THROW(parse_idx(idx_bytes({2, 3}, {0, 1, 2, 3, 4, 5, 6})), FormatError);
}

TEST(Idx, BadMagic) {
  Bytes b = idx_bytes({1}, {0});
  b[0] = 1;
  EXPECT_THROW(parse_idx(b), FormatError);
  b = idx_bytes({1}, {0});
  b[2] = 0x0d;
  EXPECT_THROW(parse_idx(b), FormatError);
}

TEST(Idx, GzipIsSniffed) {
  TempDir dir;
  const Bytes raw = idx_bytes({2, 2, 2}, {0, 255, 1, 2, 3, 4, 5, 6});
  write_file(dir.path() / "imgs.gz", gzip_compress(raw));
  write_file(dir.path() / "labs", idx_bytes({2}, {3, 9}));
  const auto loaded = load_idx(dir.path() / "imgs.gz");
  EXPECT_EQ(loaded.data, parse_idx(raw).data);
  const auto ds = load_idx_dataset(dir.path() / "imgs.gz", dir.path() / "labs", "x", Split::test);
  EXPECT_EQ(ds.images.shape(), (Shape{2, 1, 2, 2}));
  EXPECT_EQ(ds.images[1], 1.0);
  EXPECT_EQ(ds.images[2], 1.0 / 255.0);
  EXPECT_EQ(ds.labels, (std::vector<int>{3, 9}));
}

TEST(Idx, ImageLabelCountMismatch) {
  TempDir dir;
  write_file(dir.path() / "imgs", idx_bytes({2, 1, 1}, {0, 0}));
  write_file(dir.path() / "labs", idx_bytes({3}, {0, 0, 0}));
  EXPECT_THROW(load_idx_dataset(dir.path() / "imgs", dir.path() / "labs", "x", Split::train), FormatError);
}

TEST(Gzip, CorruptStreamIsFormatError) {
  Bytes gz = gzip_compress(Bytes(1000, 7));
  EXPECT_EQ(gunzip(gz), Bytes(1000, 7));
  gz.resize(gz.size() / 2);
  EXPECT_THROW(gunzip(gz), FormatError);
}

TEST(Cifar, SingleWhiteRecord) {
  Bytes rec(kCifarRecordBytes, 255);
  rec[0] = 7;
  const auto ds = parse_cifar10_binary(rec);
  EXPECT_EQ(ds.count(), 1u);
  EXPECT_EQ(ds.num_classes, 10);
  EXPECT_EQ(ds.labels[0], 7);
  EXPECT_EQ(ds.images.shape(), (Shape{1, 3, 32, 32}));
  for (double v : ds.images.values()) ASSERT_EQ(v, 1.0);
}

TEST(Cifar, ChannelPlanarLayout) {
  Bytes rec(kCifarRecordBytes, 0);
  rec[0] = 1;
  rec[1 + 1024] = 255;  // first green pixel
  const auto ds = parse_cifar10_binary(rec);
  EXPECT_EQ(ds.image(0).values()[1024], 1.0);
  EXPECT_EQ(ds.image(0).values()[0], 0.0);
}

TEST(Cifar, WrongSizeIsFormatError) {
  EXPECT_THROW(parse_cifar10_binary(Bytes(3072, 0)), FormatError);
  EXPECT_THROW(parse_cifar10_binary(Bytes(2 * kCifarRecordBytes + 1, 0)), FormatError);
  EXPECT_THROW(parse_cifar10_binary(Bytes{}), FormatError);
}

TEST(Cifar, LabelOutOfRangeIsRejected) {
  Bytes rec(kCifarRecordBytes, 0);
  rec[0] = 10;
  EXPECT_THROW(parse_cifar10_binary(rec), ValidationError);
}

TEST(FlatTensor, BitExactRoundTrip) {
  const auto ds = tiny_dataset(2, 1, 2, 2, 3, 1);
  const Bytes enc = encode_flat_tensor(ds);
  const auto back = decode_flat_tensor(enc, "tiny", Split::train);
  EXPECT_EQ(back.images, ds.images);
  EXPECT_EQ(back.labels, ds.labels);
  EXPECT_EQ(back.num_classes, 3);
  EXPECT_EQ(encode_flat_tensor(back), enc);

  TempDir dir;
  save_flat_tensor(ds, dir.path() / "x.ftns");
  EXPECT_EQ(read_file(dir.path() / "x.ftns"), enc);
  EXPECT_EQ(load_flat_tensor(dir.path() / "x.ftns").images, ds.images);
}

TEST(FlatTensor, HeaderLayout) {
  const auto ds = tiny_dataset(2, 1, 2, 2, 3, 2);
  const Bytes enc = encode_flat_tensor(ds);
  ASSERT_EQ(enc.size(), 4u + 1 + 1 + 16 + 4 + 8 + 2);
  EXPECT_EQ(std::string(enc.begin(), enc.begin() + 4), "FTNS");
  EXPECT_EQ(enc[4], 1);
  EXPECT_EQ(enc[5], 4);
  EXPECT_EQ(enc[6], 2);  // dims[0] little-endian
  EXPECT_EQ(enc[22], 3);  // num_classes
}

TEST(FlatTensor, RandomizedRoundTrips) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng r(seed + 100);
    const auto ds = tiny_dataset(1 + r.uniform_int(5), 1 + r.uniform_int(3), 1 + r.uniform_int(6),
                                 1 + r.uniform_int(6), 2 + static_cast<int>(r.uniform_int(20)), seed);
    const auto back = decode_flat_tensor(encode_flat_tensor(ds), "tiny", Split::test);
    ASSERT_EQ(back.images, ds.images);
    ASSERT_EQ(back.labels, ds.labels);
    back.validate();
  }
}

TEST(FlatTensor, Errors) {
  const Bytes enc = encode_flat_tensor(tiny_dataset(2, 1, 2, 2, 3, 3));
  Bytes truncated(enc.begin(), enc.end() - 1);
  EXPECT_THROW(decode_flat_tensor(truncated, "x", Split::train), FormatError);
  Bytes magic = enc;
  magic[0] = 'X';
  EXPECT_THROW(decode_flat_tensor(magic, "x", Split::train), FormatError);
  Bytes bad_label = enc;
  bad_label.back() = 3;
  EXPECT_THROW(decode_flat_tensor(bad_label, "x", Split::train), ValidationError);
}

TEST(FlatTensor, FuzzedBytesNeverYieldInvalidDatasets) {
  const Bytes enc = encode_flat_tensor(tiny_dataset(3, 1, 3, 3, 4, 4));
  Rng r(5);
  for (int trial = 0; trial < 500; ++trial) {
    Bytes b = enc;
    const auto flips = 1 + r.uniform_int(4);
    for (std::uint64_t k = 0; k < flips; ++k) b[r.uniform_int(b.size())] = static_cast<std::uint8_t>(r.uniform_int(256));
    try {
      decode_flat_tensor(b, "x", Split::train).validate();
    } catch (const FormatError&) {
    } catch (const ValidationError&) {
    }
  }
}

TEST(Subset, RelabelsAndPreservesPixels) {
  const auto ds = tiny_dataset(40, 1, 3, 3, 5, 6);
  const auto sub = make_subset(ds, {3, 1});
  std::size_t k = 0;
  for (std::size_t i = 0; i < ds.count(); ++i) {
    if (ds.labels[i] != 3 && ds.labels[i] != 1) continue;
    ASSERT_LT(k, sub.count());
    EXPECT_EQ(sub.labels[k], ds.labels[i] == 3 ? 0 : 1);
    EXPECT_EQ(sample_hash(sub, k), sample_hash(ds, i));
    ++k;
  }
  EXPECT_EQ(k, sub.count());
  EXPECT_EQ(sub.num_classes, 2);
}

TEST(Subset, FullSubsetIsIdentity) {
  const auto ds = tiny_dataset(30, 1, 2, 2, 10, 7);
  const auto sub = make_subset(ds, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  EXPECT_EQ(sub.images, ds.images);
  EXPECT_EQ(sub.labels, ds.labels);
}

TEST(Subset, Errors) {
  const auto ds = tiny_dataset(10, 1, 2, 2, 10, 8);
  EXPECT_THROW(make_subset(ds, {}), ArgumentError);
  EXPECT_THROW(make_subset(ds, {11}), ArgumentError);
  EXPECT_THROW(make_subset(ds, {-1}), ArgumentError);
}

TEST(Subset, MnistZerosAndOnes) {
  const fs::path dir = resolve_cache_dir(std::nullopt) / "mnist";
  const fs::path labels = dir / "train-labels-idx1-ubyte";
  if (!fs::exists(labels) || !fs::exists(dir / "train-images-idx3-ubyte")) GTEST_SKIP() << "MNIST not cached";
  // Count directly from the label bytes.
  std::ifstream in(labels, std::ios::binary);
  in.seekg(8);
  std::size_t expected = 0;
  for (char c; in.get(c);) expected += (c == 0 || c == 1) ? 1 : 0;
  const auto train = load_dataset("mnist", Split::train, resolve_cache_dir(std::nullopt));
  EXPECT_EQ(train.images.shape(), (Shape{60000, 1, 28, 28}));
  EXPECT_EQ(make_subset(train, {0, 1}).count(), expected);
  EXPECT_EQ(expected, 12665u);
}

TEST(Validate, Invariants) {
  auto ds = tiny_dataset(3, 1, 2, 2, 4, 9);
  ds.validate();
  auto bad = ds;
  bad.labels[0] = 4;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.images[0] = 1.5;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = ds;
  bad.labels.pop_back();
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Sha256, KnownVector) {
  const std::string abc = "abc";
  EXPECT_EQ(sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size())),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

namespace {

DatasetManifest toy_manifest(const Bytes& content) {
  DatasetManifest m;
  m.name = "toy";
  m.urls = {"https://example.invalid/data/blob.bin.gz"};
  m.sha256 = {sha256_hex(content)};
  m.format = FileFormat::flat_tensor;
  return m;
}

}  // namespace

TEST(Fetch, DownloadsVerifiesAndCaches) {
  TempDir dir;
  const Bytes content(100, 42);
  const auto m = toy_manifest(content);
  int calls = 0;
  Downloader dl = [&](const std::string& url) {
    ++calls;
    EXPECT_EQ(url, m.urls[0]);
    return gzip_compress(content);
  };
  const auto paths = fetch_dataset(m, dir.path(), dl);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], dir.path() / "toy" / "blob.bin");
  EXPECT_EQ(read_file(paths[0]), content);
  EXPECT_EQ(calls, 1);
  fetch_dataset(m, dir.path(), dl);
  EXPECT_EQ(calls, 1);
}

TEST(Fetch, CorruptCacheRedownloadsOnceThenFails) {
  TempDir dir;
  const Bytes content(64, 1);
  const auto m = toy_manifest(content);
  fs::create_directories(dir.path() / "toy");
  write_file(dir.path() / "toy" / "blob.bin", Bytes(64, 2));
  int calls = 0;
  Downloader bad = [&](const std::string&) {
    ++calls;
    return Bytes(64, 3);
  };
  EXPECT_THROW(fetch_dataset(m, dir.path(), bad), IntegrityError);
  EXPECT_EQ(calls, 1);
  EXPECT_FALSE(fs::exists(dir.path() / "toy" / "blob.bin"));

  write_file(dir.path() / "toy" / "blob.bin", Bytes(64, 2));
  Downloader good = [&](const std::string&) { return content; };
  fetch_dataset(m, dir.path(), good);
  EXPECT_EQ(read_file(dir.path() / "toy" / "blob.bin"), content);
}

TEST(Fetch, NetworkFailurePropagates) {
  TempDir dir;
  Downloader fail = [](const std::string& url) -> Bytes { throw FetchError(url + ": unreachable"); };
  EXPECT_THROW(fetch_dataset(toy_manifest(Bytes(1, 0)), dir.path(), fail), FetchError);
}

TEST(Fetch, SeedCacheFromLocalFiles) {
  TempDir src, cache;
  const Bytes content(10, 9);
  write_file(src.path() / "blob.bin.gz", gzip_compress(content));
  const auto paths = seed_cache(toy_manifest(content), cache.path(), src.path());
  EXPECT_EQ(read_file(paths.at(0)), content);
  EXPECT_THROW(seed_cache(toy_manifest(Bytes(10, 8)), cache.path(), src.path()), IntegrityError);
}

TEST(Manifest, ParseAndLookup) {
  const auto ms = parse_manifests(R"([{"name":"a","urls":["u/x.gz"],"sha256":[")" + std::string(64, '0') +
                                  R"("],"format":"idx-gzip"}])");
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].cache_name(0), "x");
  EXPECT_EQ(find_manifest(ms, "a").format, FileFormat::idx_gzip);
  EXPECT_THROW(find_manifest(ms, "nope"), ConfigError);
  EXPECT_THROW(find_manifest(builtin_manifests(), "imagenet"), ConfigError);
  EXPECT_THROW(parse_manifests(R"([{"name":"a","urls":["u"],"sha256":[],"format":"idx-gzip"}])"), ConfigError);
  EXPECT_THROW(parse_manifests("{}"), ConfigError);
}

TEST(CacheDir, Precedence) {
  const char* old = std::getenv("FFBENCH_CACHE");
  const std::string saved = old ? old : "";
  setenv("FFBENCH_CACHE", "/env/cache", 1);
  EXPECT_EQ(resolve_cache_dir(fs::path("/flag")), fs::path("/flag"));
  EXPECT_EQ(resolve_cache_dir(std::nullopt), fs::path("/env/cache"));
  unsetenv("FFBENCH_CACHE");
  const char* home = std::getenv("HOME");
  if (home) EXPECT_EQ(resolve_cache_dir(std::nullopt), fs::path(home) / ".cache" / "ffbench");
  if (old) setenv("FFBENCH_CACHE", saved.c_str(), 1);
}

TEST(Registry, MissingFilesAreConfigErrors) {
  TempDir dir;
  EXPECT_THROW(load_dataset("mnist", Split::train, dir.path()), ConfigError);
  EXPECT_THROW(load_dataset("imagenet", Split::train, dir.path()), ConfigError);
  EXPECT_TRUE(is_known_dataset("svhn"));
}

TEST(Registry, SvhnFromFlatTensor) {
  TempDir dir;
  fs::create_directories(dir.path() / "svhn");
  const auto ds = tiny_dataset(4, 3, 4, 4, 10, 11);
  save_flat_tensor(ds, dir.path() / "svhn" / "test.ftns");
  const auto loaded = load_dataset("svhn", Split::test, dir.path());
  EXPECT_EQ(loaded.images, ds.images);
  EXPECT_EQ(loaded.name, "svhn");
}
