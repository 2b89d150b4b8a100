#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gsforge/words.hpp"

namespace gsforge {

/// Minimal counter machine: registers r0, r1, ... holding naturals.
/// Instructions, one per line:
///   inc <r>        increment register r
///   djz <r> <L>    if r > 0 decrement and fall through, else jump to line L
///   halt           stop (running off the end also halts)
/// Input is placed in r0; the output is r0 at halt. One instruction = one
/// step. Malformed text is rejected at parse time.
class RegisterProgram {
 public:
  static RegisterProgram parse(const std::string& text);

  struct Result {
    bool halted = false;
    std::uint64_t output = 0;
    std::uint64_t steps = 0;
  };
  Result run(std::uint64_t input, std::uint64_t max_steps) const;

  const std::string& source() const { return source_; }
  bool operator==(const RegisterProgram& o) const { return source_ == o.source_; }

 private:
  struct Instr {
    enum class Op { inc, djz, halt } op;
    std::uint32_t reg = 0;
    std::uint32_t target = 0;
  };
  std::vector<Instr> code_;
  std::string source_;
};

/// Built-in enumerator families. Each family is a deterministic sequence of
/// elements; the j-th element carries step cost j+1, so W_{e,s} holds the
/// elements with cost < s (and is empty for s <= e). The register-machine
/// kind instead uses genuine phi_{e,s} stage semantics: word index x enters
/// iff x < s and the program halts on x in < s steps with output < s.
struct AllWordsFamily {
  bool operator==(const AllWordsFamily&) const = default;
};

enum class PowerSchedule { all, powers_of_p };

struct GeneratorPowersFamily {
  int generator = 1;
  PowerSchedule schedule = PowerSchedule::all;
  unsigned base = 0;  // exponent base for powers_of_p
  bool operator==(const GeneratorPowersFamily&) const = default;
};

struct IndexArithmeticFamily {
  Index start;
  Index step;
  bool operator==(const IndexArithmeticFamily&) const = default;
};

struct ExplicitListFamily {
  std::vector<Word> words;
  bool operator==(const ExplicitListFamily&) const = default;
};

struct RegisterMachineFamily {
  RegisterProgram program;
  bool operator==(const RegisterMachineFamily&) const = default;
};

struct EnumeratorSpec {
  unsigned e = 0;
  std::variant<AllWordsFamily, GeneratorPowersFamily, IndexArithmeticFamily, ExplicitListFamily,
               RegisterMachineFamily>
      family;
};

/// Finite stage approximation W_{e,s}: distinct words sorted by word index.
struct StageSet {
  unsigned e = 0;
  unsigned s = 0;
  std::vector<Word> members;
  std::vector<Index> indices;  // parallel to members
};

StageSet enumerate_up_to(const EnumeratorSpec& spec, unsigned s, const Alphabet& a);

/// Ordered pair of distinct stage-set members with its Cantor scan key.
struct WordPair {
  Word u, v;
  Index iu, iv;
  Index tau;
};

/// All ordered pairs (u, v), u != v, sorted by cantor_pair(index u, index v).
std::vector<WordPair> distinct_pairs(const StageSet& set);

/// Longest enumerator element we are willing to materialize (letters).
constexpr std::uint64_t kMaxElementLetters = 1u << 20;

}  // namespace gsforge
