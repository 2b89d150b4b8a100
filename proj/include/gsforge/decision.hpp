#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "gsforge/enumerators.hpp"
#include "gsforge/words.hpp"

namespace gsforge {

/// Fair deterministic enumeration of the normal closure <<R>>. Generation g
/// yields every reduced product of at most g conjugates c r^{+-1} c^{-1}
/// with |c| <= g, duplicates suppressed, in first-occurrence order (c by
/// word index, then relator index, then sign + before -). Any closure
/// element built from j conjugates with conjugators of length <= L appears
/// by generation max(j, L).
class ClosureStream {
 public:
  explicit ClosureStream(std::vector<Word> relators, unsigned max_generation = 64);

  /// Next unseen closure element; nullopt once max_generation is exhausted.
  std::optional<Word> next();

  std::uint64_t products_computed() const { return products_; }

 private:
  struct WordHash {
    std::size_t operator()(const std::vector<int>& v) const;
  };

  void start_generation();
  bool insert_seen(const Word& w);

  std::vector<Word> relators_;
  int d_ = 1;
  unsigned max_generation_;
  unsigned g_ = 0;

  std::vector<Word> conjugates_;           // C_g, deduplicated
  std::vector<Word> prev_level_, cur_level_;  // L_{j-1}, L_j (deduplicated)
  std::unordered_set<std::vector<int>, WordHash> cur_level_seen_;
  unsigned j_ = 0;          // number of factors in the level being built
  std::size_t a_idx_ = 0;   // position in prev_level_
  std::size_t c_idx_ = 0;   // position in conjugates_

  std::unordered_set<std::vector<int>, WordHash> seen_;
  std::uint64_t products_ = 0;
  bool emitted_identity_ = false;
};

struct CosetDecision {
  bool found = false;
  std::size_t index = 0;  // 1-based, per the report format
  std::uint64_t elements_consumed = 0;
};

/// Budgeted semi-decision: w belongs to rep_i * <<R>> iff reduce(rep_i *
/// w^-1) shows up in the closure enumeration. Empty test words return
/// immediately; otherwise up to `budget` closure elements are consumed and
/// timeout is reported as a value, not an error.
CosetDecision coset_decide(const Word& w, const std::vector<Word>& reps,
                           const std::vector<Word>& relators, std::uint64_t budget);

using EqualityOracle = std::function<bool(const Word&, const Word&)>;

/// Mixes an enumerator with an equality oracle: yields the subsequence of
/// pairwise oracle-inequivalent elements (each candidate is compared against
/// everything yielded so far, quadratic by design — desk scale). Candidates
/// are drawn from the stage sets W_{e,s} for s = e+1, e+2, ..., new members
/// in word-index order; examination stops after `budget` candidates.
class DistinctFilter {
 public:
  DistinctFilter(EnumeratorSpec spec, Alphabet alphabet, EqualityOracle eq, std::uint64_t budget);

  std::optional<Word> next();

  std::uint64_t candidates_examined() const { return examined_; }
  const std::vector<Word>& yielded() const { return yielded_; }

 private:
  EnumeratorSpec spec_;
  Alphabet alphabet_;
  EqualityOracle eq_;
  std::uint64_t budget_;
  std::uint64_t examined_ = 0;
  unsigned s_;
  std::vector<Word> pending_;   // new members of the current stage, reversed
  std::vector<Index> known_;    // indices already drawn from earlier stages
  std::vector<Word> yielded_;
};

}  // namespace gsforge
