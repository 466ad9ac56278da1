#include "hecke/weyl.hpp"

#include <cctype>
#include <cstdlib>

#include "hecke/error.hpp"

namespace hecke {

namespace {

int floor_div2(int a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

}  // namespace

WeylElement weyl_identity() { return {0, 0, false}; }
WeylElement weyl_w() { return {0, 0, true}; }
WeylElement weyl_wprime() { return {-1, 1, true}; }

WeylElement weyl_t(int n) {
  int m = floor_div2(n);
  if (n - 2 * m == 0) return {m, m, false};
  return {m, m + 1, true};
}

WeylElement weyl_delta(int x, int y) { return {x, y, false}; }

WeylElement letter_element(Letter l) { return l == Letter::W ? weyl_w() : weyl_wprime(); }

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  if (!a.w) return {a.x + b.x, a.y + b.y, b.w};
  return {a.x + b.y, a.y + b.x, !b.w};
}

WeylElement inverse(const WeylElement& a) {
  if (!a.w) return {-a.x, -a.y, false};
  return {-a.y, -a.x, true};
}

int length(const WeylElement& e) { return e.w ? std::abs(e.x - e.y + 1) : std::abs(e.x - e.y); }

int alpha(const WeylElement& e) { return e.x + e.y; }

bool is_diagonal(const WeylElement& e) { return !e.w; }

int grade(const WeylElement& e) { return e.w ? 1 : 0; }

WeylWord normal_form(const WeylElement& e) {
  WeylWord word;
  word.alpha = alpha(e);
  WeylElement u = weyl_t(-word.alpha) * e;
  int m = u.y;
  auto push_pairs = [&](Letter first, int n) {
    for (int i = 0; i < n; ++i) {
      word.letters.push_back(first);
      word.letters.push_back(swapped(first));
    }
  };
  if (!u.w) {
    if (m >= 0)
      push_pairs(Letter::WPrime, m);
    else
      push_pairs(Letter::W, -m);
  } else if (m >= 1) {
    push_pairs(Letter::WPrime, m - 1);
    word.letters.push_back(Letter::WPrime);
  } else {
    push_pairs(Letter::W, -m);
    word.letters.push_back(Letter::W);
  }
  return word;
}

WeylElement from_word(const WeylWord& word) {
  WeylElement e = weyl_t(word.alpha);
  for (Letter l : word.letters) e = e * letter_element(l);
  return e;
}

bool ends_on_w(const WeylElement& e) {
  WeylWord word = normal_form(e);
  return !word.letters.empty() && word.letters.back() == Letter::W;
}

ShapeClass shape_class(const WeylElement& e) {
  WeylWord word = normal_form(e);
  bool odd = (word.alpha % 2) != 0;
  if (word.letters.empty()) return odd ? ShapeClass::PureT : ShapeClass::A;
  // normalise to the even-alpha reading: t w = w' t
  Letter first = word.letters.front();
  if (odd) first = swapped(first);
  Letter last = word.letters.back();
  if (first == Letter::WPrime && last == Letter::W) return ShapeClass::A;
  if (first == Letter::W && last == Letter::W) return ShapeClass::B;
  if (first == Letter::WPrime && last == Letter::WPrime) return ShapeClass::C;
  return ShapeClass::D;
}

bool is_length_additive(const WeylElement& a, const WeylElement& b) {
  return length(a * b) == length(a) + length(b);
}

std::pair<WeylElement, WeylElement> left_factor(const WeylElement& eta) {
  if (length(eta) < 2)
    throw Error(ErrorKind::TooShort, to_string(eta) + " has length " + std::to_string(length(eta)));
  WeylWord word = normal_form(eta);
  Letter w1 = word.letters.front();
  WeylWord tail{0, std::vector<Letter>(word.letters.begin() + 1, word.letters.end())};
  WeylElement rest = from_word(tail);
  WeylElement first = letter_element(w1), first_sw = letter_element(swapped(w1));
  std::pair<WeylElement, WeylElement> f;
  const int a = word.alpha;
  if (a % 2 != 0)
    f = {weyl_t(a) * first, rest};
  else if (a > 0)
    f = {weyl_t(a - 1) * first_sw, weyl_t(1) * rest};
  else if (a < 0)
    f = {weyl_t(a + 1) * first_sw, weyl_t(-1) * rest};
  else if (w1 == Letter::W)
    f = {weyl_t(-1) * first_sw, weyl_t(1) * rest};
  else
    f = {weyl_t(1) * first_sw, weyl_t(-1) * rest};
  if (f.first * f.second != eta || !is_diagonal(f.first) || length(f.first) != 1 ||
      length(f.second) != length(eta) - 1)
    throw Error(ErrorKind::InvalidArgument, "factorisation invariant broken for " + to_string(eta));
  return f;
}

std::pair<WeylElement, WeylElement> right_factor(const WeylElement& delta) {
  if (length(delta) < 2)
    throw Error(ErrorKind::TooShort, to_string(delta) + " has length " + std::to_string(length(delta)));
  auto [a1, a2] = left_factor(inverse(delta));
  return {inverse(a2), inverse(a1)};
}

int count_affine_of_length(int l, int bound) {
  int n = 0;
  for (int x = -bound; x <= bound; ++x)
    for (bool w : {false, true}) {
      WeylElement e{x, -x, w};
      if (std::abs(e.y) <= bound && length(e) == l) ++n;
    }
  return n;
}

std::string to_string(const WeylElement& e) {
  WeylWord word = normal_form(e);
  std::string s;
  if (word.alpha == 1)
    s = "t";
  else if (word.alpha != 0)
    s = "t^" + std::to_string(word.alpha);
  for (Letter l : word.letters) {
    if (!s.empty()) s += ' ';
    s += l == Letter::W ? "w" : "w'";
  }
  return s.empty() ? "1" : s;
}

std::string to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::A: return "A";
    case ShapeClass::B: return "B";
    case ShapeClass::C: return "C";
    case ShapeClass::D: return "D";
    case ShapeClass::PureT: return "PureT";
  }
  return "?";
}

WeylElement parse_weyl(const std::string& s) {
  WeylElement e = weyl_identity();
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(i) + " in \"" + s + "\"");
  };
  bool any = false;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    if (c == '1' && !any) {
      ++i;
      any = true;
      continue;
    }
    if (c == 't') {
      ++i;
      int n = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || !std::isdigit(static_cast<unsigned char>(s[i - 1]))) fail("expected integer exponent");
        n = std::stoi(s.substr(start, i - start));
      }
      e = e * weyl_t(n);
      any = true;
      continue;
    }
    if (c == 'w') {
      ++i;
      if (i < s.size() && s[i] == '\'') {
        ++i;
        e = e * weyl_wprime();
      } else {
        e = e * weyl_w();
      }
      any = true;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  if (!any) fail("empty Weyl word");
  return e;
}

}  // namespace hecke
