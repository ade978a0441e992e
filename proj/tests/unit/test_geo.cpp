#include <doctest.h>

#include <set>

#include "skg/common/error.hpp"
#include "skg/common/text.hpp"
#include "skg/geo/geo_index.hpp"
#include "skg/geo/geohash.hpp"
#include "support.hpp"

using namespace skg;
using namespace skg::geo;

namespace {

GeoPoint random_point(Rng& rng) { return {rng.uniform(-90, 90), rng.uniform(-180, 180)}; }

// Coordinates on a half-degree lattice so that box edges are hit exactly.
GeoPoint lattice_point(Rng& rng) {
  return {-90.0 + 0.5 * static_cast<double>(rng.below(361)), -180.0 + 0.5 * static_cast<double>(rng.below(721))};
}

bool in_box(const BBox& b, const GeoPoint& p) {
  if (p.lat < b.lat_min || p.lat > b.lat_max) return false;
  if (b.lon_min <= b.lon_max) return p.lon >= b.lon_min && p.lon <= b.lon_max;
  return p.lon >= b.lon_min || p.lon <= b.lon_max;
}

struct Fixture {
  corpus::FusedCorpus corpus;
  std::vector<corpus::LocationMention> mentions;
};

Fixture random_fixture(Rng& rng, std::size_t papers, std::size_t points) {
  const std::vector<std::string> words{"lockdown", "mask", "vaccine", "Lockdowns", "schools", "MASK"};
  Fixture f;
  for (std::size_t i = 0; i < papers; ++i) {
    corpus::PaperRecord p;
    p.paper_id = "P" + std::to_string(1000 + i);
    p.title = words[rng.below(words.size())] + " study";
    p.abstract = words[rng.below(words.size())];
    f.corpus.papers.push_back(p);
  }
  for (std::size_t i = 0; i < points; ++i) {
    const auto pt = lattice_point(rng);
    f.mentions.push_back({f.corpus.papers[rng.below(papers)].paper_id, "x", "Place" + std::to_string(i % 7), pt.lat, pt.lon});
  }
  return f;
}

BBox random_box(Rng& rng) {
  BBox b;
  const auto a = lattice_point(rng), c = lattice_point(rng);
  b.lat_min = std::min(a.lat, c.lat);
  b.lat_max = std::max(a.lat, c.lat);
  b.lon_min = a.lon;
  b.lon_max = c.lon;  // crosses the antimeridian when a.lon > c.lon
  return b;
}

}  // namespace

TEST_CASE("geohash known values") {
  CHECK(encode({57.64911, 10.40744}, 11) == "u4pruydqqvj");
  CHECK(encode({0, 0}, 1) == "s");
  CHECK(encode({-90, -180}, 3) == "000");
  CHECK(encode({90, 180}, 2) == "zz");
  CHECK(decode("s") == BBox{0, 45, 0, 45});
  const auto fine = decode(encode({12.5, -3.25}, 12));
  CHECK(fine.lat_max - fine.lat_min < 1e-5);
  CHECK(fine.lon_max - fine.lon_min < 1e-5);
  CHECK(lon_bits(1) == 3);
  CHECK(lat_bits(1) == 2);
  CHECK_THROWS_AS(encode({91, 0}, 5), Error);
  CHECK_THROWS_AS(encode({0, 0}, 0), Error);
  CHECK_THROWS_AS(encode({0, 0}, 13), Error);
  CHECK_THROWS_AS(decode(""), Error);
  CHECK_THROWS_AS(decode("a"), Error);
  CHECK_THROWS_AS(decode("0123456789bcd"), Error);
}

TEST_CASE("geohash agrees with the textbook bisection") {
  Rng rng(1);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = trial % 2 ? random_point(rng) : lattice_point(rng);
    const std::size_t k = 1 + rng.below(kMaxPrecision);
    CHECK(encode(p, k) == testing::reference_geohash(p.lat, p.lon, k));
  }
}

TEST_CASE("geohash round trip and prefix properties") {
  Rng rng(2);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = random_point(rng);
    const std::string full = encode(p, kMaxPrecision);
    BBox parent = whole_earth();
    for (std::size_t k = 1; k <= kMaxPrecision; ++k) {
      const std::string h = encode(p, k);
      CHECK(full.substr(0, k) == h);
      const BBox cell = decode(h);
      CHECK(in_box(cell, p));
      // each cell sits inside its parent cell
      CHECK(cell.lat_min >= parent.lat_min);
      CHECK(cell.lat_max <= parent.lat_max);
      CHECK(cell.lon_min >= parent.lon_min);
      CHECK(cell.lon_max <= parent.lon_max);
      parent = cell;
    }
  }
}

TEST_CASE("cell_hash enumerates cells") {
  for (std::size_t k = 1; k <= 2; ++k) {
    std::set<std::string> seen;
    for (std::uint64_t ix = 0; ix < (1ull << lon_bits(k)); ++ix) {
      for (std::uint64_t iy = 0; iy < (1ull << lat_bits(k)); ++iy) seen.insert(cell_hash(ix, iy, k));
    }
    CHECK(seen.size() == (1ull << (5 * k)));
  }
  CHECK(cell_hash(0, 0, 3) == "000");
}

TEST_CASE("cover contains every point of the box") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    BBox box = random_box(rng);
    for (const auto& piece : box.split()) {
      CHECK_FALSE(piece.crosses_antimeridian());
      const std::size_t k = cover_precision(piece, 64);
      CHECK(cover_size(piece, k) <= 64);
      const auto cells = cover(piece, k);
      CHECK(cells.size() == cover_size(piece, k));
      const std::set<std::string> set(cells.begin(), cells.end());
      for (int i = 0; i < 20; ++i) {
        const GeoPoint p{rng.uniform(piece.lat_min, piece.lat_max), rng.uniform(piece.lon_min, piece.lon_max)};
        CHECK(set.count(encode(p, k)) == 1);
      }
    }
  }
}

TEST_CASE("bbox search agrees with a linear scan") {
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = random_fixture(rng, 30, 200);
    const GeoIndex index(f.mentions, f.corpus);
    CHECK(index.size() == 200);
    for (int q = 0; q < 20; ++q) {
      const BBox box = random_box(rng);
      const std::optional<std::string> keyword =
          rng.bernoulli(0.5) ? std::optional<std::string>(rng.bernoulli(0.5) ? "LOCKDOWN" : "mask") : std::nullopt;
      std::set<std::string> expected;
      for (const auto& m : f.mentions) {
        if (!in_box(box, {m.lat, m.lon})) continue;
        const auto* paper = f.corpus.find_paper(m.paper_id);
        const std::string text = text::fold(paper->title + " " + paper->abstract);
        if (keyword && text.find(text::fold(*keyword)) == std::string::npos) continue;
        expected.insert(m.paper_id);
      }
      const auto got = keyword ? index.bbox_search(box, *keyword) : index.bbox_search(box);
      CHECK(got == std::vector<std::string>(expected.begin(), expected.end()));
    }
  }
}

TEST_CASE("whole earth box and blank keyword do not filter") {
  Rng rng(5);
  const auto f = random_fixture(rng, 20, 80);
  const GeoIndex index(f.mentions, f.corpus);
  std::set<std::string> all;
  for (const auto& m : f.mentions) all.insert(m.paper_id);
  CHECK(index.bbox_search(whole_earth()) == std::vector<std::string>(all.begin(), all.end()));
  CHECK(index.bbox_search(whole_earth(), "  ") == index.bbox_search(whole_earth()));
  CHECK(GeoIndex().bbox_search(whole_earth()).empty());
  CHECK(GeoIndex().density_grid(3).empty());

  auto bad = f.mentions;
  bad.push_back({"NOPE", "x", "y", 0, 0});
  CHECK_THROWS_AS(GeoIndex(bad, f.corpus), Error);
  CHECK_FALSE((BBox{10, 5, 0, 1}.valid()));
  CHECK_FALSE((BBox{0, 1, 0, 200}.valid()));
}

TEST_CASE("density grid conserves points across precisions") {
  Rng rng(6);
  const auto f = random_fixture(rng, 40, 500);
  const GeoIndex index(f.mentions, f.corpus);
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto grid = index.density_grid(k);
    std::size_t total = 0;
    for (const auto& [cell, n] : grid) {
      CHECK(cell.size() == k);
      CHECK(n > 0);
      total += n;
    }
    CHECK(total == 500);
    if (k < 6) {
      std::map<std::string, std::size_t> rolled;
      for (const auto& [cell, n] : index.density_grid(k + 1)) rolled[cell.substr(0, k)] += n;
      CHECK(rolled == grid);
    }
  }
  CHECK_THROWS_AS(index.density_grid(0), Error);
  CHECK_THROWS_AS(index.density_grid(7), Error);
  CHECK(format_density({{"2j", 19}, {"6g", 11}}) == "2j\t19\n6g\t11\n");
}

TEST_CASE("per-paper geohashes") {
  Rng rng(7);
  const auto f = random_fixture(rng, 10, 40);
  const GeoIndex index(f.mentions, f.corpus);
  for (const auto& p : f.corpus.papers) {
    std::set<std::string> expected;
    for (const auto& m : f.mentions) {
      if (m.paper_id == p.paper_id) expected.insert(testing::reference_geohash(m.lat, m.lon, kIndexPrecision));
    }
    CHECK(index.geohashes_of(p.paper_id) == std::vector<std::string>(expected.begin(), expected.end()));
  }
  CHECK(index.folded_text("P1000") != nullptr);
  CHECK(index.folded_text("none") == nullptr);
}
