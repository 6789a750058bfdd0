#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "dcliques/dataset.hpp"
#include "dcliques/seeds.hpp"

using namespace dcliques;

namespace {

void put_u32_be(std::ofstream& out, uint32_t value) {
  unsigned char bytes[4] = {static_cast<unsigned char>(value >> 24),
                            static_cast<unsigned char>(value >> 16),
                            static_cast<unsigned char>(value >> 8),
                            static_cast<unsigned char>(value)};
  out.write(reinterpret_cast<char*>(bytes), 4);
}

struct IdxFiles {
  std::string images, labels;
};

// Writes a minimal IDX pair: `count` 2x2 images with pixel value 10*i and
// label i % 10.
IdxFiles write_idx_pair(const std::filesystem::path& dir, int count,
                        uint32_t images_magic = 0x803, uint32_t labels_magic = 0x801,
                        int bad_label_at = -1) {
  std::filesystem::create_directories(dir);
  IdxFiles files{(dir / "images.idx").string(), (dir / "labels.idx").string()};
  {
    std::ofstream out(files.images, std::ios::binary);
    put_u32_be(out, images_magic);
    put_u32_be(out, count);
    put_u32_be(out, 2);
    put_u32_be(out, 2);
    for (int i = 0; i < count; ++i) {
      unsigned char pixels[4] = {static_cast<unsigned char>(10 * i % 256), 0, 255, 51};
      out.write(reinterpret_cast<char*>(pixels), 4);
    }
  }
  {
    std::ofstream out(files.labels, std::ios::binary);
    put_u32_be(out, labels_magic);
    put_u32_be(out, count);
    for (int i = 0; i < count; ++i) {
      unsigned char label = static_cast<unsigned char>(i == bad_label_at ? 12 : i % 10);
      out.write(reinterpret_cast<char*>(&label), 1);
    }
  }
  return files;
}

}  // namespace

TEST_CASE("idx loader reads headers, scales pixels and shifts labels") {
  auto files = write_idx_pair(std::filesystem::temp_directory_path() / "dcliques_idx_ok", 25);
  Dataset data = load_idx(files.images, files.labels);
  CHECK(data.count() == 25);
  CHECK(data.dim() == 4);
  CHECK(data.num_classes == 10);
  CHECK(data.labels[0] == 1);   // raw 0 -> 1
  CHECK(data.labels[12] == 3);  // raw 2 -> 3
  CHECK(data.features(0, 2) == doctest::Approx(1.0));
  CHECK(data.features(0, 3) == doctest::Approx(51.0 / 255.0));
  CHECK_NOTHROW(data.check());
}

TEST_CASE("idx loader rejects malformed files") {
  auto base = std::filesystem::temp_directory_path();

  SUBCASE("bad image magic") {
    auto files = write_idx_pair(base / "dcliques_idx_magic", 5, 0x804);
    CHECK_THROWS_WITH_AS(load_idx(files.images, files.labels), doctest::Contains("bad magic"),
                         std::runtime_error);
  }
  SUBCASE("bad label magic") {
    auto files = write_idx_pair(base / "dcliques_idx_lmagic", 5, 0x803, 0x999);
    CHECK_THROWS_AS(load_idx(files.images, files.labels), std::runtime_error);
  }
  SUBCASE("count mismatch") {
    auto a = write_idx_pair(base / "dcliques_idx_a", 5);
    auto b = write_idx_pair(base / "dcliques_idx_b", 6);
    CHECK_THROWS_WITH_AS(load_idx(a.images, b.labels), doctest::Contains("count mismatch"),
                         std::runtime_error);
  }
  SUBCASE("truncated image data") {
    auto files = write_idx_pair(base / "dcliques_idx_trunc", 5);
    std::filesystem::resize_file(files.images, 16 + 3 * 4);  // header + 3 images only
    CHECK_THROWS_WITH_AS(load_idx(files.images, files.labels), doctest::Contains("truncated"),
                         std::runtime_error);
  }
  SUBCASE("empty file") {
    auto files = write_idx_pair(base / "dcliques_idx_empty", 5);
    std::filesystem::resize_file(files.images, 0);
    CHECK_THROWS_AS(load_idx(files.images, files.labels), std::runtime_error);
  }
  SUBCASE("label out of range") {
    auto files = write_idx_pair(base / "dcliques_idx_label", 5, 0x803, 0x801, 3);
    CHECK_THROWS_WITH_AS(load_idx(files.images, files.labels), doctest::Contains("out of range"),
                         std::runtime_error);
  }
}

TEST_CASE("synthetic dataset is deterministic and class-structured") {
  Dataset a = synthetic_dataset(10, 20, 20, 5.0, 99);
  Dataset b = synthetic_dataset(10, 20, 20, 5.0, 99);
  CHECK(a.count() == 200);
  CHECK(a.dim() == 20);
  CHECK(a.labels == b.labels);
  CHECK((a.features.array() == b.features.array()).all());  // bit-identical

  Dataset c = synthetic_dataset(10, 20, 20, 5.0, 100);
  CHECK_FALSE((a.features.array() == c.features.array()).all());

  // Blob means sit at separation * e_c; with 20 samples the empirical mean of
  // the class coordinate should be close to it.
  double mean = 0.0;
  for (int r = 0; r < 20; ++r) mean += a.features(r, 0);
  CHECK(mean / 20 == doctest::Approx(5.0).epsilon(0.2));
  CHECK_NOTHROW(a.check());
}

TEST_CASE("synthetic dataset rejects bad arguments") {
  CHECK_THROWS_AS(synthetic_dataset(1, 10, 10, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(synthetic_dataset(10, 0, 10, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(synthetic_dataset(10, 10, 5, 1.0, 1), std::invalid_argument);
}

TEST_CASE("validation split is stratified and disjoint") {
  // Unbalanced classes: 60/40 split over two classes.
  Dataset data;
  data.num_classes = 2;
  data.labels.resize(100);
  data.features.resize(100, 2);
  for (int i = 0; i < 100; ++i) {
    data.labels[i] = i < 60 ? 1 : 2;
    data.features(i, 0) = i;
    data.features(i, 1) = -i;
  }

  auto [train, validation] = split_validation(data, 20, 7);
  CHECK(train.count() == 80);
  CHECK(validation.count() == 20);

  // Ratio preserved: 12 of class 1, 8 of class 2.
  int val_class1 = 0;
  for (int label : validation.labels) val_class1 += label == 1;
  CHECK(val_class1 == 12);

  // Feature rows move with their labels.
  for (int r = 0; r < validation.count(); ++r) {
    int original = static_cast<int>(validation.features(r, 0));
    CHECK(validation.labels[r] == (original < 60 ? 1 : 2));
  }
  CHECK_THROWS_AS(split_validation(data, 100, 7), std::invalid_argument);
}
