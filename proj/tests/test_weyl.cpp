#include <doctest.h>

#include <map>
#include <random>

#include "hecke/error.hpp"
#include "hecke/weyl.hpp"

using namespace hecke;

namespace {

// Independent model: 2x2 monomial matrices with entries varpi^n, stored as exponents.
struct Mono {
  int e[2][2];
  bool nz[2][2];
};

Mono to_mono(const WeylElement& g) {
  Mono m{};
  if (!g.w) {
    m.nz[0][0] = m.nz[1][1] = true;
    m.e[0][0] = g.x;
    m.e[1][1] = g.y;
  } else {
    m.nz[0][1] = m.nz[1][0] = true;
    m.e[0][1] = g.x;
    m.e[1][0] = g.y;
  }
  return m;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (a.nz[i][k] && b.nz[k][j]) {
          c.nz[i][j] = true;
          c.e[i][j] = a.e[i][k] + b.e[k][j];
        }
  return c;
}

bool same(const Mono& a, const Mono& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (a.nz[i][j] != b.nz[i][j]) return false;
      if (a.nz[i][j] && a.e[i][j] != b.e[i][j]) return false;
    }
  return true;
}

// Word length in the generators w, w' (t has length 0) by breadth-first search.
std::map<WeylElement, int> bfs_lengths(int radius) {
  std::map<WeylElement, int> dist;
  std::vector<WeylElement> frontier;
  for (int n = -2 * radius - 2; n <= 2 * radius + 2; ++n) {
    dist[weyl_t(n)] = 0;
    frontier.push_back(weyl_t(n));
  }
  for (int d = 1; d <= radius; ++d) {
    std::vector<WeylElement> next;
    for (auto& e : frontier)
      for (auto g : {weyl_w(), weyl_wprime()}) {
        WeylElement h = e * g;
        if (!dist.count(h)) {
          dist[h] = d;
          next.push_back(h);
        }
      }
    frontier = next;
  }
  return dist;
}

std::vector<WeylElement> box(int r) {
  std::vector<WeylElement> v;
  for (int x = -r; x <= r; ++x)
    for (int y = -r; y <= r; ++y)
      for (bool w : {false, true}) v.push_back({x, y, w});
  return v;
}

}  // namespace

TEST_CASE("multiplication matches monomial matrices") {
  for (auto& a : box(2))
    for (auto& b : box(2)) CHECK(same(to_mono(a * b), mono_mul(to_mono(a), to_mono(b))));
}

TEST_CASE("inverse, t and w' relations") {
  for (auto& a : box(3)) CHECK(a * inverse(a) == weyl_identity());
  WeylElement t = weyl_t(), w = weyl_w(), wp = weyl_wprime();
  CHECK(t * w * inverse(t) == wp);
  CHECK(t * t == weyl_delta(1, 1));
  CHECK(t * w == wp * t);
  CHECK(t * w == weyl_delta(0, 1));
  CHECK(w * inverse(t) == weyl_delta(0, -1));
}

TEST_CASE("length formula matches breadth-first word length") {
  auto dist = bfs_lengths(8);
  for (auto& e : box(3)) {
    if (!dist.count(e)) continue;
    CAPTURE(to_string(e));
    CHECK(length(e) == dist.at(e));
  }
}

TEST_CASE("normal form round trips and has reduced length") {
  for (auto& e : box(4)) {
    WeylWord word = normal_form(e);
    CHECK(from_word(word) == e);
    CHECK(static_cast<int>(word.letters.size()) == length(e));
    for (std::size_t i = 1; i < word.letters.size(); ++i) CHECK(word.letters[i] != word.letters[i - 1]);
  }
}

TEST_CASE("diagonal shape classes: A iff x <= y, D iff x >= y") {
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) {
      if (x == y && x + y == 0) continue;
      ShapeClass c = shape_class(weyl_delta(x, y));
      CAPTURE(x);
      CAPTURE(y);
      if (x < y) CHECK(c == ShapeClass::A);
      if (x > y) CHECK(c == ShapeClass::D);
      if (x == y) CHECK((c == ShapeClass::A || c == ShapeClass::D));
    }
}

TEST_CASE("shape class examples") {
  CHECK(shape_class(parse_weyl("t w")) == ShapeClass::A);
  CHECK(shape_class(parse_weyl("w")) == ShapeClass::B);
  CHECK(shape_class(parse_weyl("w'")) == ShapeClass::C);
  CHECK(shape_class(parse_weyl("w w'")) == ShapeClass::D);
  CHECK(shape_class(parse_weyl("t")) == ShapeClass::PureT);
  CHECK(shape_class(parse_weyl("t^3")) == ShapeClass::PureT);
}

TEST_CASE("ends on w: delta_{x,y} w ends on w iff x >= y") {
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) {
      WeylElement e{x, y, true};
      if (length(e) == 0) continue;
      CHECK(ends_on_w(e) == (x >= y));
    }
}

TEST_CASE("left factorisation examples") {
  auto f = left_factor(parse_weyl("t^2 w' w"));
  CHECK(f.first == parse_weyl("t w"));
  CHECK(f.second == parse_weyl("t w"));
  auto g = left_factor(parse_weyl("w w'"));
  CHECK(g.first == parse_weyl("t^-1 w'"));
  CHECK(g.second == parse_weyl("t w'"));
  CHECK_THROWS_AS(left_factor(parse_weyl("t w")), Error);
  CHECK_THROWS_AS(left_factor(parse_weyl("w")), Error);
}

TEST_CASE("factorisations hold for every element of length at least 2") {
  for (auto& e : box(4)) {
    if (length(e) < 2) continue;
    CAPTURE(to_string(e));
    auto [a, b] = left_factor(e);
    CHECK(a * b == e);
    CHECK(is_diagonal(a));
    CHECK(length(a) == 1);
    CHECK(length(b) == length(e) - 1);
    auto [d2, d1] = right_factor(e);
    CHECK(d2 * d1 == e);
    CHECK(is_diagonal(d1));
    CHECK(length(d1) == 1);
    CHECK(length(d2) == length(e) - 1);
  }
}

TEST_CASE("affine part has exactly two elements of each positive length") {
  CHECK(count_affine_of_length(0, 10) == 1);
  for (int l = 1; l <= 8; ++l) CHECK(count_affine_of_length(l, 10) == 2);
}

TEST_CASE("parser and printer agree") {
  for (auto& e : box(3)) CHECK(parse_weyl(to_string(e)) == e);
  CHECK_THROWS_AS(parse_weyl("t^x"), Error);
  CHECK_THROWS_AS(parse_weyl("q"), Error);
}
