#include <doctest.h>

#include <cmath>
#include <limits>

#include "skg/common/error.hpp"
#include "skg/common/hash.hpp"
#include "skg/common/io.hpp"
#include "skg/common/ranking.hpp"
#include "skg/common/rng.hpp"
#include "skg/common/text.hpp"
#include "support.hpp"

using namespace skg;

TEST_CASE("content hash is the sha256 prefix") {
  // FIPS 180-2 test vectors, first 128 bits
  CHECK(content_hash128("abc") == "ba7816bf8f01cfea414140de5dae2223");
  CHECK(content_hash128("") == "e3b0c44298fc1c149afbf4c8996fb924");
}

TEST_CASE("fold removes case and diacritics but keeps punctuation") {
  CHECK(text::fold("José SILVA") == "jose silva");
  CHECK(text::fold("Straße") == "strasse");
  CHECK(text::fold("O'Brien, T.") == "o'brien, t.");
  CHECK(text::fold_collapse("  Mixed \t  Case  ") == "mixed case");
  CHECK(text::contains_folded("Lockdown in MILÁN", "milan"));
  CHECK_FALSE(text::contains_folded("Lockdown", "lockdowns"));
}

TEST_CASE("tokenize keeps byte offsets into the input") {
  const std::string s = "Über-cases, 2020!";
  const auto toks = text::tokenize(s);
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].text == "uber");
  CHECK(s.substr(toks[0].begin, toks[0].end - toks[0].begin) == "Über");
  CHECK(toks[1].text == "cases");
  CHECK(toks[2].text == "2020");
}

TEST_CASE("count_letters counts Unicode letters only") {
  CHECK(text::count_letters("COVID-19 vaccine") == 12);
  CHECK(text::count_letters("héllo 42") == 5);
  CHECK(text::count_letters("") == 0);
}

TEST_CASE("split keeps empty fields") {
  CHECK(text::split("a\t\tb\t", '\t') == std::vector<std::string>{"a", "", "b", ""});
  CHECK(text::split("", ',') == std::vector<std::string>{""});
}

TEST_CASE("escape_field round-trips random strings") {
  Rng rng(3);
  const std::string alphabet = "ab\t\n\r\\ xé";
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    const std::string e = text::escape_field(s);
    CHECK(e.find('\t') == std::string::npos);
    CHECK(e.find('\n') == std::string::npos);
    CHECK(text::unescape_field(e) == s);
  }
}

TEST_CASE("format_double is shortest round-trip") {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(200)) - 100);
    CHECK(text::parse_double(text::format_double(v)) == v);
  }
  CHECK(text::format_double(0.5) == "0.5");
  CHECK_THROWS_AS(text::parse_double("1.5x"), Error);
  CHECK_THROWS_AS(text::parse_double(""), Error);
  CHECK_THROWS_AS(text::parse_int("12a"), Error);
  CHECK(text::parse_int(" 42 ") == 42);
}

TEST_CASE("utf-8 validation") {
  CHECK(text::is_valid_utf8("plain"));
  CHECK(text::is_valid_utf8("é漢"));
  CHECK_FALSE(text::is_valid_utf8("\xc3"));
  CHECK_FALSE(text::is_valid_utf8("\xff\xfe"));
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(mix_seed(42, 1));
  Rng b(mix_seed(42, 1));
  Rng c(mix_seed(42, 2));
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
  }
}

TEST_CASE("write_file replaces atomically and read_lines drops the final newline") {
  const auto dir = testing::fresh_dir("common-io");
  const auto path = dir / "nested" / "f.txt";
  io::write_file(path, "one\ntwo\n");
  CHECK(io::read_lines(path) == std::vector<std::string>{"one", "two"});
  io::write_file(path, "three");
  CHECK(io::read_file(path) == "three");
  CHECK_THROWS_AS(io::read_file(dir / "absent"), IoError);
}

TEST_CASE("rank discount and ndcg_at_k by hand") {
  CHECK(rank_discount(1) == doctest::Approx(1.0));
  CHECK(rank_discount(3) == doctest::Approx(0.5));
  const std::vector<int> labels{0, 1};
  CHECK(ndcg_at_k(labels, 2) == doctest::Approx(1.0 / std::log2(3.0)));
}
