#include "gsforge/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gsforge {

namespace {

constexpr long long kMaxParsedExponent = 1 << 24;

void check_rank(int d) {
  if (d < 1) throw MismatchError("alphabet rank must be >= 1");
}

std::vector<std::string> default_names(int d) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

Alphabet::Alphabet(int d) : d_(d), names_(default_names((check_rank(d), d))) {}

Alphabet::Alphabet(int d, std::vector<std::string> names) : d_(d), names_(std::move(names)) {
  check_rank(d);
  if (names_.size() != static_cast<std::size_t>(d))
    throw ParseError("alphabet needs exactly d generator names");
  for (const auto& n : names_) {
    if (n.empty() || n == "1") throw ParseError("invalid generator name '" + n + "'");
    for (char c : n) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^')
        throw ParseError("invalid generator name '" + n + "'");
    }
  }
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("generator names must be pairwise distinct");
}

const std::string& Alphabet::name(int generator) const {
  if (generator < 1 || generator > d_) throw MismatchError("generator index out of range");
  return names_[static_cast<std::size_t>(generator - 1)];
}

Word Word::identity(int d) {
  check_rank(d);
  return Word(d, {});
}

Word Word::from_raw(int d, const std::vector<int>& raw) {
  check_rank(d);
  std::vector<int> out;
  out.reserve(raw.size());
  for (int l : raw) {
    if (l == 0 || l > d || l < -d) throw MismatchError("letter index out of range 1..d");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(d, std::move(out));
}

Word multiply(const Word& u, const Word& v) {
  if (u.alphabet_size() != v.alphabet_size())
    throw MismatchError("words over different alphabets");
  std::vector<int> out = u.letters();
  for (int l : v.letters()) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word::from_raw(u.alphabet_size(), out);
}

Word inverse(const Word& u) {
  std::vector<int> out;
  out.reserve(u.length());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) out.push_back(-*it);
  return Word::from_raw(u.alphabet_size(), out);
}

Word power(const Word& u, long long e) {
  const Word base = e < 0 ? inverse(u) : u;
  unsigned long long reps = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1
                                  : static_cast<unsigned long long>(e);
  if (base.length() > 0 && reps > (1ull << 26) / base.length())
    throw CapError("word power too long");
  Word acc = Word::identity(u.alphabet_size());
  for (unsigned long long i = 0; i < reps; ++i) acc = multiply(acc, base);
  return acc;
}

Word commutator(const Word& g, const Word& h) {
  return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  if (images.size() < static_cast<std::size_t>(w.alphabet_size()))
    throw MismatchError("substitution dictionary is missing generators");
  int target_d = images.empty() ? 1 : images.front().alphabet_size();
  for (const auto& img : images) {
    if (img.alphabet_size() != target_d)
      throw MismatchError("substitution images over different alphabets");
  }
  Word acc = Word::identity(target_d);
  for (int l : w.letters()) {
    const Word& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
    acc = multiply(acc, l > 0 ? img : inverse(img));
  }
  return acc;
}

int letter_code(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

int letter_from_code(int code) {
  int gen = code / 2 + 1;
  return (code % 2) ? -gen : gen;
}

Index sphere_size(const Alphabet& a, unsigned n) {
  if (n == 0) return 1;
  Index size = 2 * a.rank();
  const int q = 2 * a.rank() - 1;
  for (unsigned i = 1; i < n; ++i) size *= q;
  return size;
}

Index ball_size(const Alphabet& a, unsigned n) {
  Index total = 1;
  Index sphere = 2 * a.rank();
  const int q = 2 * a.rank() - 1;
  for (unsigned i = 1; i <= n; ++i) {
    total += sphere;
    sphere *= q;
  }
  return total;
}

Index word_to_index(const Word& w) {
  if (w.is_identity()) return 0;
  const int d = w.alphabet_size();
  const int q = 2 * d - 1;
  const std::size_t n = w.length();

  // words shorter than n
  Index base = 1;
  Index sphere = 2 * d;
  for (std::size_t m = 1; m < n; ++m) {
    base += sphere;
    sphere *= q;
  }

  // shortlex rank within the sphere: first letter has radix 2d with weight
  // q^(n-1), every further letter picks one of the q non-cancelling letters.
  Index qpow = 1;
  for (std::size_t i = 1; i < n; ++i) qpow *= q;
  Index rank = Index(letter_code(w.letters()[0])) * qpow;
  int prev = w.letters()[0];
  for (std::size_t k = 1; k < n; ++k) {
    qpow /= q;
    const int avoid = letter_code(-prev);
    const int code = letter_code(w.letters()[k]);
    const int digit = code - (code > avoid ? 1 : 0);
    rank += Index(digit) * qpow;
    prev = w.letters()[k];
  }
  return base + rank;
}

Word index_to_word(const Index& i, const Alphabet& a) {
  if (i == 0) return Word::identity(a.rank());
  const int d = a.rank();
  const int q = 2 * d - 1;

  Index base = 1;
  Index sphere = 2 * d;
  std::size_t n = 1;
  while (i >= base + sphere) {
    base += sphere;
    sphere *= q;
    ++n;
  }

  Index rank = i - base;
  Index qpow = 1;
  for (std::size_t k = 1; k < n; ++k) qpow *= q;

  std::vector<int> letters;
  letters.reserve(n);
  Index digit = rank / qpow;
  rank %= qpow;
  letters.push_back(letter_from_code(static_cast<int>(digit)));
  for (std::size_t k = 1; k < n; ++k) {
    qpow /= q;
    digit = rank / qpow;
    rank %= qpow;
    const int avoid = letter_code(-letters.back());
    int code = static_cast<int>(digit);
    if (code >= avoid) ++code;
    letters.push_back(letter_from_code(code));
  }
  return Word::from_raw(d, letters);
}

SphereStream::SphereStream(const Alphabet& a, unsigned n) : d_(a.rank()), n_(n) {
  digits_.assign(n == 0 ? 0 : n, 0);
}

std::optional<Word> SphereStream::next() {
  if (done_) return std::nullopt;
  if (n_ == 0) {
    done_ = true;
    return Word::identity(d_);
  }
  // decode current odometer state
  std::vector<int> letters;
  letters.reserve(n_);
  letters.push_back(letter_from_code(digits_[0]));
  for (unsigned k = 1; k < n_; ++k) {
    const int avoid = letter_code(-letters.back());
    int code = digits_[k];
    if (code >= avoid) ++code;
    letters.push_back(letter_from_code(code));
  }
  Word result = Word::from_raw(d_, letters);

  // advance: first digit has radix 2d, the rest 2d-1
  int pos = static_cast<int>(n_) - 1;
  while (pos >= 0) {
    const int radix = pos == 0 ? 2 * d_ : 2 * d_ - 1;
    if (++digits_[static_cast<std::size_t>(pos)] < radix) break;
    digits_[static_cast<std::size_t>(pos)] = 0;
    --pos;
  }
  if (pos < 0) done_ = true;
  return result;
}

Index cantor_pair(const Index& x, const Index& y) {
  Index s = x + y;
  return s * (s + 1) / 2 + x;
}

std::pair<Index, Index> cantor_unpair(const Index& z) {
  using boost::multiprecision::sqrt;
  Index s = (sqrt(8 * z + 1) - 1) / 2;
  Index t = s * (s + 1) / 2;
  Index x = z - t;
  return {x, s - x};
}

std::string format_word(const Word& w, const Alphabet& a) {
  if (w.alphabet_size() > a.rank()) throw MismatchError("word does not fit the alphabet");
  if (w.is_identity()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  const auto& ls = w.letters();
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long long run = static_cast<long long>(j - i);
    const long long exp = ls[i] > 0 ? run : -run;
    if (!first) os << '*';
    os << a.name(std::abs(ls[i]));
    if (exp != 1) os << '^' << exp;
    first = false;
    i = j;
  }
  return os.str();
}

Word parse_word(const std::string& text, const Alphabet& a) {
  std::vector<int> raw;
  std::size_t pos = 0;
  const auto skip_separators = [&] {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
      ++pos;
  };
  skip_separators();
  if (pos >= text.size()) throw ParseError("empty word string (use \"1\" for the identity)");
  while (pos < text.size()) {
    if (text[pos] == '1') {
      ++pos;  // identity factor
      skip_separators();
      continue;
    }
    // longest generator-name match
    int gen = 0;
    std::size_t best = 0;
    for (int i = 1; i <= a.rank(); ++i) {
      const std::string& n = a.name(i);
      if (n.size() > best && text.compare(pos, n.size(), n) == 0) {
        gen = i;
        best = n.size();
      }
    }
    if (gen == 0)
      throw ParseError("cannot parse word at '..." + text.substr(pos, 12) + "'");
    pos += best;
    long long exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        neg = text[pos] == '-';
        ++pos;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("malformed exponent in word string");
      long long mag = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        mag = mag * 10 + (text[pos] - '0');
        if (mag > kMaxParsedExponent) throw CapError("word exponent too large");
        ++pos;
      }
      exp = neg ? -mag : mag;
    }
    const int letter = exp < 0 ? -gen : gen;
    for (long long r = 0; r < std::llabs(exp); ++r) raw.push_back(letter);
    skip_separators();
  }
  return Word::from_raw(a.rank(), raw);
}

}  // namespace gsforge
