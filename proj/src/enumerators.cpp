#include "gsforge/enumerators.hpp"

#include <algorithm>
#include <sstream>

namespace gsforge {

RegisterProgram RegisterProgram::parse(const std::string& text) {
  RegisterProgram prog;
  prog.source_ = text;
  std::istringstream in(text);
  std::string line;
  std::vector<Instr> code;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;  // blank line
    if (op == "#") continue;
    Instr instr{};
    long long a = -1, b = -1;
    if (op == "inc") {
      instr.op = Instr::Op::inc;
      if (!(ls >> a) || a < 0) throw ParseError("line " + std::to_string(line_no) + ": inc needs a register");
      instr.reg = static_cast<std::uint32_t>(a);
    } else if (op == "djz") {
      instr.op = Instr::Op::djz;
      if (!(ls >> a >> b) || a < 0 || b < 0)
        throw ParseError("line " + std::to_string(line_no) + ": djz needs a register and a target");
      instr.reg = static_cast<std::uint32_t>(a);
      instr.target = static_cast<std::uint32_t>(b);
    } else if (op == "halt") {
      instr.op = Instr::Op::halt;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown instruction '" + op + "'");
    }
    std::string rest;
    if (ls >> rest && rest[0] != '#')
      throw ParseError("line " + std::to_string(line_no) + ": trailing tokens");
    code.push_back(instr);
  }
  if (code.empty()) throw ParseError("empty register-machine program");
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i].op == Instr::Op::djz && code[i].target > code.size())
      throw ParseError("instruction " + std::to_string(i) + ": jump target out of range");
  }
  prog.code_ = std::move(code);
  return prog;
}

RegisterProgram::Result RegisterProgram::run(std::uint64_t input, std::uint64_t max_steps) const {
  std::vector<std::uint64_t> regs(4, 0);
  regs[0] = input;
  std::size_t pc = 0;
  Result res;
  while (res.steps < max_steps) {
    if (pc >= code_.size()) {
      res.halted = true;
      res.output = regs[0];
      return res;
    }
    const Instr& instr = code_[pc];
    if (instr.reg >= regs.size()) regs.resize(instr.reg + 1, 0);
    ++res.steps;
    switch (instr.op) {
      case Instr::Op::inc:
        ++regs[instr.reg];
        ++pc;
        break;
      case Instr::Op::djz:
        if (regs[instr.reg] > 0) {
          --regs[instr.reg];
          ++pc;
        } else {
          pc = instr.target;
        }
        break;
      case Instr::Op::halt:
        res.halted = true;
        res.output = regs[0];
        return res;
    }
  }
  return res;  // still running after max_steps
}

StageSet enumerate_up_to(const EnumeratorSpec& spec, unsigned s, const Alphabet& a) {
  StageSet out;
  out.e = spec.e;
  out.s = s;
  if (s <= spec.e) return out;

  std::vector<std::pair<Index, Word>> collected;
  const auto add_word = [&](Word w) {
    Index idx = word_to_index(w);
    collected.emplace_back(std::move(idx), std::move(w));
  };

  // built-ins: element #j has cost j+1 and enters iff cost < s
  const std::uint64_t count = s - 1;  // elements 0..s-2

  if (const auto* all = std::get_if<AllWordsFamily>(&spec.family)) {
    (void)all;
    for (std::uint64_t j = 0; j < count; ++j)
      collected.emplace_back(Index(j), index_to_word(Index(j), a));
  } else if (const auto* gp = std::get_if<GeneratorPowersFamily>(&spec.family)) {
    if (gp->generator < 1 || gp->generator > a.rank())
      throw MismatchError("generator index out of range for this alphabet");
    if (gp->schedule == PowerSchedule::powers_of_p && gp->base < 2)
      throw MismatchError("powers-of-p schedule needs a base >= 2");
    const Word x = Word::from_raw(a.rank(), {gp->generator});
    for (std::uint64_t j = 0; j < count; ++j) {
      std::uint64_t exponent;
      if (gp->schedule == PowerSchedule::all) {
        exponent = j + 1;
      } else {
        exponent = 1;
        for (std::uint64_t i = 0; i < j; ++i) {
          if (exponent > kMaxElementLetters / gp->base)
            throw CapError("generator power exceeds the element length cap");
          exponent *= gp->base;
        }
      }
      if (exponent > kMaxElementLetters)
        throw CapError("generator power exceeds the element length cap");
      add_word(power(x, static_cast<long long>(exponent)));
    }
  } else if (const auto* ia = std::get_if<IndexArithmeticFamily>(&spec.family)) {
    for (std::uint64_t j = 0; j < count; ++j) {
      const Index idx = ia->start + Index(j) * ia->step;
      collected.emplace_back(idx, index_to_word(idx, a));
    }
  } else if (const auto* el = std::get_if<ExplicitListFamily>(&spec.family)) {
    const std::uint64_t n = std::min<std::uint64_t>(count, el->words.size());
    for (std::uint64_t j = 0; j < n; ++j) add_word(el->words[j]);
  } else if (const auto* rm = std::get_if<RegisterMachineFamily>(&spec.family)) {
    // genuine phi_{e,s} semantics: x, output and step count all below s
    for (std::uint64_t x = 0; x < s; ++x) {
      const auto res = rm->program.run(x, s > 0 ? s - 1 : 0);
      if (res.halted && res.output < s) collected.emplace_back(Index(x), index_to_word(Index(x), a));
    }
  }

  std::sort(collected.begin(), collected.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  collected.erase(std::unique(collected.begin(), collected.end(),
                              [](const auto& l, const auto& r) { return l.first == r.first; }),
                  collected.end());

  out.members.reserve(collected.size());
  out.indices.reserve(collected.size());
  for (auto& [idx, w] : collected) {
    out.indices.push_back(std::move(idx));
    out.members.push_back(std::move(w));
  }
  return out;
}

std::vector<WordPair> distinct_pairs(const StageSet& set) {
  std::vector<WordPair> pairs;
  const std::size_t n = set.members.size();
  pairs.reserve(n > 1 ? n * (n - 1) : 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      pairs.push_back(WordPair{set.members[i], set.members[j], set.indices[i], set.indices[j],
                               cantor_pair(set.indices[i], set.indices[j])});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const WordPair& l, const WordPair& r) { return l.tau < r.tau; });
  return pairs;
}

}  // namespace gsforge
