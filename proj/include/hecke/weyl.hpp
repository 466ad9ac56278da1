#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace hecke {

enum class Letter { W, WPrime };

inline Letter swapped(Letter l) { return l == Letter::W ? Letter::WPrime : Letter::W; }

// delta_{x,y} v with v in {1, w}; delta_{x,y} = diag(varpi^x, varpi^y) blockwise.
struct WeylElement {
  int x = 0;
  int y = 0;
  bool w = false;

  auto operator<=>(const WeylElement&) const = default;
};

// t^alpha followed by a reduced word in w, w'.
struct WeylWord {
  int alpha = 0;
  std::vector<Letter> letters;
  bool operator==(const WeylWord&) const = default;
};

enum class ShapeClass { A, B, C, D, PureT };

WeylElement weyl_identity();
WeylElement weyl_w();
WeylElement weyl_wprime();
WeylElement weyl_t(int n = 1);
WeylElement weyl_delta(int x, int y);
WeylElement letter_element(Letter l);

WeylElement operator*(const WeylElement& a, const WeylElement& b);
WeylElement inverse(const WeylElement& a);

int length(const WeylElement& e);
// Exponent of t in the normal form; equals x + y.
int alpha(const WeylElement& e);
bool is_diagonal(const WeylElement& e);
// 0 for diagonal elements, 1 otherwise.
int grade(const WeylElement& e);

WeylWord normal_form(const WeylElement& e);
WeylElement from_word(const WeylWord& word);
// Last letter of the normal form is w.
bool ends_on_w(const WeylElement& e);
ShapeClass shape_class(const WeylElement& e);
bool is_length_additive(const WeylElement& a, const WeylElement& b);

// eta = eta1 eta2 with eta1 diagonal and lengths 1 + (l - 1); needs l(eta) >= 2.
std::pair<WeylElement, WeylElement> left_factor(const WeylElement& eta);
// delta = delta2 delta1 with delta1 diagonal and lengths (l - 1) + 1; needs l(delta) >= 2.
std::pair<WeylElement, WeylElement> right_factor(const WeylElement& delta);

// Count of elements of the affine part {x + y = 0} with length l, in the box |x|,|y| <= bound.
int count_affine_of_length(int l, int bound);

std::string to_string(const WeylElement& e);
std::string to_string(ShapeClass c);
// Parses "1", "t^2 w' w", "t^-1w", "ww'" and similar; throws ParseError.
WeylElement parse_weyl(const std::string& s);

}  // namespace hecke
