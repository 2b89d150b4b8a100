#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsforge/errors.hpp"

namespace gsforge {

/// Arbitrary-width natural number used for word indices, sphere sizes and
/// pairing values. Sphere sizes overflow 64 bits around length 40 already
/// for d = 2, so counts are exact big integers throughout.
using Index = boost::multiprecision::cpp_int;

/// Generators x_1..x_d with optional printable names (default x1, x2, ...).
class Alphabet {
 public:
  explicit Alphabet(int d);
  Alphabet(int d, std::vector<std::string> names);

  int rank() const { return d_; }
  const std::string& name(int generator) const;  // 1-based
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const Alphabet&) const = default;

 private:
  int d_;
  std::vector<std::string> names_;
};

/// Freely reduced word over x_1..x_d. Letters are stored as +-i, i in 1..d,
/// with the sign giving the exponent of the letter. The representation is
/// always reduced: no adjacent pair l, -l.
class Word {
 public:
  Word() = default;  // empty word over the empty alphabet

  static Word identity(int d);
  /// Reduce an arbitrary raw letter sequence. Throws MismatchError on letter
  /// indices outside 1..d.
  static Word from_raw(int d, const std::vector<int>& raw);

  int alphabet_size() const { return d_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  Word(int d, std::vector<int> letters) : d_(d), letters_(std::move(letters)) {}

  int d_ = 0;
  std::vector<int> letters_;
};

Word multiply(const Word& u, const Word& v);
Word inverse(const Word& u);
/// u^e by concatenation (e may be negative).
Word power(const Word& u, long long e);
Word commutator(const Word& g, const Word& h);  // g^-1 h^-1 g h

/// Homomorphic substitution: letter y_i of w maps to images[i-1], inverse
/// letters to the inverse image. All images must share one target alphabet.
Word substitute(const Word& w, const std::vector<Word>& images);

/// Length-preserving bijective enumeration of F(X): index 0 is the empty
/// word, each sphere is listed in shortlex order with the fixed letter order
/// x1 < x1^-1 < x2 < x2^-1 < ...
Index word_to_index(const Word& w);
Word index_to_word(const Index& i, const Alphabet& a);

/// |S_n| = 1 for n = 0, else 2d(2d-1)^(n-1). Exact.
Index sphere_size(const Alphabet& a, unsigned n);
/// Number of words of length <= n.
Index ball_size(const Alphabet& a, unsigned n);

/// Streams S_n in shortlex order.
class SphereStream {
 public:
  SphereStream(const Alphabet& a, unsigned n);
  std::optional<Word> next();

 private:
  int d_;
  unsigned n_;
  bool done_ = false;
  std::vector<int> digits_;  // digits_[0] in [0,2d), the rest in [0,2d-1)
};

/// Cantor pairing (x+y)(x+y+1)/2 + x and its inverse.
Index cantor_pair(const Index& x, const Index& y);
std::pair<Index, Index> cantor_unpair(const Index& z);

/// Serialization: runs print as name^exp joined by '*', e.g. "x1^-8",
/// "x1^2*x2^-1"; the empty word prints as "1". The parser accepts unreduced
/// input and re-reduces.
std::string format_word(const Word& w, const Alphabet& a);
Word parse_word(const std::string& text, const Alphabet& a);

/// Shortlex letter codes: x_i -> 2(i-1), x_i^-1 -> 2(i-1)+1.
int letter_code(int letter);
int letter_from_code(int code);

}  // namespace gsforge
