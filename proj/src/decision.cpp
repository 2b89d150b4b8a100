#include "gsforge/decision.hpp"

#include <algorithm>

namespace gsforge {

std::size_t ClosureStream::WordHash::operator()(const std::vector<int>& v) const {
  // FNV-1a over the letter stream
  std::uint64_t h = 1469598103934665603ull;
  for (int l : v) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

ClosureStream::ClosureStream(std::vector<Word> relators, unsigned max_generation)
    : relators_(std::move(relators)), max_generation_(max_generation) {
  if (relators_.empty()) throw MismatchError("closure stream needs at least one relator");
  d_ = relators_.front().alphabet_size();
  for (const Word& r : relators_) {
    if (r.is_identity()) throw MismatchError("empty relator rejected");
    if (r.alphabet_size() != d_) throw MismatchError("relators over different alphabets");
  }
  g_ = 0;
}

bool ClosureStream::insert_seen(const Word& w) { return seen_.insert(w.letters()).second; }

void ClosureStream::start_generation() {
  ++g_;
  // conjugate factors c r^{+-1} c^{-1}, c over the ball of radius g in word
  // index order, deduplicated at first occurrence
  conjugates_.clear();
  std::unordered_set<std::vector<int>, WordHash> conj_seen;
  const Alphabet a(d_);
  const Index limit = ball_size(a, g_);
  for (Index ci = 0; ci < limit; ++ci) {
    const Word c = index_to_word(ci, a);
    const Word c_inv = inverse(c);
    for (const Word& r : relators_) {
      for (int sign = 0; sign < 2; ++sign) {
        const Word factor = multiply(multiply(c, sign == 0 ? r : inverse(r)), c_inv);
        if (conj_seen.insert(factor.letters()).second) conjugates_.push_back(factor);
      }
    }
  }
  prev_level_ = {Word::identity(d_)};
  cur_level_.clear();
  cur_level_seen_.clear();
  j_ = 1;
  a_idx_ = 0;
  c_idx_ = 0;
}

std::optional<Word> ClosureStream::next() {
  // the 0-fold product
  if (!emitted_identity_) {
    emitted_identity_ = true;
    const Word id = Word::identity(relators_.front().alphabet_size());
    insert_seen(id);
    return id;
  }
  while (true) {
    if (g_ == 0 || j_ > g_) {
      if (g_ >= max_generation_) return std::nullopt;
      start_generation();
    }
    while (j_ <= g_) {
      if (a_idx_ >= prev_level_.size()) {
        prev_level_ = std::move(cur_level_);
        cur_level_.clear();
        cur_level_seen_.clear();
        ++j_;
        a_idx_ = 0;
        c_idx_ = 0;
        continue;
      }
      const Word prod = multiply(prev_level_[a_idx_], conjugates_[c_idx_]);
      ++products_;
      if (++c_idx_ >= conjugates_.size()) {
        c_idx_ = 0;
        ++a_idx_;
      }
      if (cur_level_seen_.insert(prod.letters()).second) {
        cur_level_.push_back(prod);
        if (insert_seen(prod)) return prod;
      }
    }
  }
}

CosetDecision coset_decide(const Word& w, const std::vector<Word>& reps,
                           const std::vector<Word>& relators, std::uint64_t budget) {
  if (reps.empty()) throw MismatchError("coset decision needs at least one representative");
  if (budget < 1) throw MismatchError("budget must be >= 1");
  for (const Word& r : relators)
    if (r.alphabet_size() != w.alphabet_size())
      throw MismatchError("relators and test word over different alphabets");
  std::vector<Word> targets;
  targets.reserve(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    targets.push_back(multiply(reps[i], inverse(w)));
    if (targets.back().is_identity()) return {true, i + 1, 0};  // w equals rep_i in F
  }
  ClosureStream stream(relators);
  CosetDecision out;
  while (out.elements_consumed < budget) {
    const auto elem = stream.next();
    if (!elem) break;
    ++out.elements_consumed;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (*elem == targets[i]) {
        out.found = true;
        out.index = i + 1;
        return out;
      }
    }
  }
  return out;  // timeout
}

DistinctFilter::DistinctFilter(EnumeratorSpec spec, Alphabet alphabet, EqualityOracle eq,
                               std::uint64_t budget)
    : spec_(std::move(spec)),
      alphabet_(std::move(alphabet)),
      eq_(std::move(eq)),
      budget_(budget),
      s_(spec_.e) {}

std::optional<Word> DistinctFilter::next() {
  while (true) {
    if (pending_.empty()) {
      // pull the next stage; stages are bounded so a finite W_e (or a
      // machine that stops halting) cannot loop us forever
      if (examined_ >= budget_) return std::nullopt;
      if (static_cast<std::uint64_t>(s_) > spec_.e + budget_ + 1) return std::nullopt;
      ++s_;
      const StageSet set = enumerate_up_to(spec_, s_, alphabet_);
      for (std::size_t i = set.members.size(); i-- > 0;) {
        if (std::find(known_.begin(), known_.end(), set.indices[i]) == known_.end()) {
          pending_.push_back(set.members[i]);  // reversed; popped from the back
          known_.push_back(set.indices[i]);
        }
      }
      std::sort(known_.begin(), known_.end());
      continue;
    }
    if (examined_ >= budget_) return std::nullopt;
    const Word candidate = pending_.back();
    pending_.pop_back();
    ++examined_;
    bool distinct = true;
    for (const Word& prior : yielded_) {
      if (eq_(candidate, prior)) {
        distinct = false;
        break;
      }
    }
    if (distinct) {
      yielded_.push_back(candidate);
      return candidate;
    }
  }
}

}  // namespace gsforge
