#pragma once

// Domain types for the tool loading problem: instances, magazine state
// sequences, pipes, and the switch / pipe definitions every solver is checked
// against.  Moments (job positions) and tool ids are 1-based throughout.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tlp {

using ToolId = std::int32_t;
using Moment = std::int32_t;

enum class ErrorKind {
  EmptyJobList,
  ToolSetTooLarge,
  EmptyToolSet,
  InvalidCapacity,
  NoTools,
  NotFull,
  InfeasibleInput,
  NotUseless,
  BudgetExceeded,
  MalformedHeader,
  NonBinaryEntry,
  ShapeMismatch,
  AmbiguousHeader,
  MalformedEntry,
  InfeasibleConfig,
  NotAPermutation,
  ObjectiveMismatch,
  CapacityExceeded,
  InternalInvariant,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyJobList: return "EmptyJobList";
    case ErrorKind::ToolSetTooLarge: return "ToolSetTooLarge";
    case ErrorKind::EmptyToolSet: return "EmptyToolSet";
    case ErrorKind::InvalidCapacity: return "InvalidCapacity";
    case ErrorKind::NoTools: return "NoTools";
    case ErrorKind::NotFull: return "NotFull";
    case ErrorKind::InfeasibleInput: return "InfeasibleInput";
    case ErrorKind::NotUseless: return "NotUseless";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::AmbiguousHeader: return "AmbiguousHeader";
    case ErrorKind::MalformedEntry: return "MalformedEntry";
    case ErrorKind::InfeasibleConfig: return "InfeasibleConfig";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::ObjectiveMismatch: return "ObjectiveMismatch";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

/// Error raised by every operation in the library.  `index()` carries the
/// offending job / row / moment where one applies (1-based, 0 otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::int64_t index = 0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::int64_t index_;
};

/// Unvalidated input: tool ids in any non-negative numbering.
struct RawInstance {
  int capacity = 0;
  std::vector<std::vector<std::int64_t>> tool_sets;
};

class Instance;
Instance validate_instance(const RawInstance& raw);

/// A validated instance.  Tool ids are contiguous 1..m, every id is used by
/// some job, each tool set is sorted and duplicate-free, and |T_i| <= C.
class Instance {
 public:
  int n() const noexcept { return static_cast<int>(tool_sets_.size()); }
  int m() const noexcept { return m_; }
  int capacity() const noexcept { return capacity_; }

  /// Slots that can actually be occupied: min(C, m).  Equals C whenever the
  /// instance is a genuine loading problem (m >= C).
  int effective_capacity() const noexcept { return std::min(capacity_, m_); }

  /// Tools of the job at moment `i` (1-based).
  std::span<const ToolId> tools(Moment i) const {
    return tool_sets_[static_cast<std::size_t>(i - 1)];
  }
  const std::vector<std::vector<ToolId>>& tool_sets() const noexcept {
    return tool_sets_;
  }

  /// Sum of |T_i| over all jobs.
  std::int64_t total_demand() const noexcept { return total_demand_; }

  /// Input-file id of internal tool `t`.
  std::int64_t original_id(ToolId t) const {
    return original_ids_[static_cast<std::size_t>(t - 1)];
  }
  const std::vector<std::int64_t>& original_ids() const noexcept {
    return original_ids_;
  }
  bool ids_remapped() const noexcept {
    for (std::size_t k = 0; k < original_ids_.size(); ++k) {
      if (original_ids_[k] != static_cast<std::int64_t>(k + 1)) return true;
    }
    return false;
  }

  /// Moments whose job needs no tools (accepted, reported here).
  const std::vector<Moment>& empty_jobs() const noexcept { return empty_jobs_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.capacity_ == b.capacity_ && a.m_ == b.m_ &&
           a.tool_sets_ == b.tool_sets_;
  }

 private:
  friend Instance validate_instance(const RawInstance& raw);
  Instance() = default;

  int capacity_ = 0;
  int m_ = 0;
  std::int64_t total_demand_ = 0;
  std::vector<std::vector<ToolId>> tool_sets_;
  std::vector<std::int64_t> original_ids_;
  std::vector<Moment> empty_jobs_;
};

inline Instance validate_instance(const RawInstance& raw) {
  if (raw.tool_sets.empty()) {
    throw Error(ErrorKind::EmptyJobList, "instance has no jobs");
  }
  if (raw.capacity < 1) {
    throw Error(ErrorKind::InvalidCapacity,
                "capacity must be >= 1, got " + std::to_string(raw.capacity));
  }

  std::vector<std::vector<std::int64_t>> sets = raw.tool_sets;
  std::vector<std::int64_t> ids;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto& s = sets[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.front() < 0) {
      throw Error(ErrorKind::MalformedEntry,
                  "negative tool id in job " + std::to_string(i + 1),
                  static_cast<std::int64_t>(i + 1));
    }
    if (static_cast<std::int64_t>(s.size()) > raw.capacity) {
      throw Error(ErrorKind::ToolSetTooLarge,
                  "job " + std::to_string(i + 1) + " needs " +
                      std::to_string(s.size()) + " tools but capacity is " +
                      std::to_string(raw.capacity),
                  static_cast<std::int64_t>(i + 1));
    }
    ids.insert(ids.end(), s.begin(), s.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) {
    throw Error(ErrorKind::NoTools, "no job requires any tool");
  }

  Instance inst;
  inst.capacity_ = raw.capacity;
  inst.m_ = static_cast<int>(ids.size());
  inst.original_ids_ = ids;
  inst.tool_sets_.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<ToolId> mapped;
    mapped.reserve(sets[i].size());
    for (std::int64_t id : sets[i]) {
      auto it = std::lower_bound(ids.begin(), ids.end(), id);
      mapped.push_back(static_cast<ToolId>(it - ids.begin()) + 1);
    }
    if (mapped.empty()) inst.empty_jobs_.push_back(static_cast<Moment>(i + 1));
    inst.total_demand_ += static_cast<std::int64_t>(mapped.size());
    inst.tool_sets_.push_back(std::move(mapped));
  }
  return inst;
}

/// Builds an instance directly from 1-based tool lists.
inline Instance make_instance(int capacity,
                              const std::vector<std::vector<ToolId>>& sets) {
  RawInstance raw;
  raw.capacity = capacity;
  for (const auto& s : sets) raw.tool_sets.emplace_back(s.begin(), s.end());
  return validate_instance(raw);
}

/// Per-moment magazine contents.  Each state is an unordered set of at most
/// `capacity()` tools stored in a flat n x C slot array, so insertion is O(1).
class MagazineSequence {
 public:
  MagazineSequence() = default;
  MagazineSequence(int moments, int capacity)
      : moments_(moments),
        capacity_(capacity),
        slots_(static_cast<std::size_t>(moments) *
               static_cast<std::size_t>(capacity)),
        sizes_(static_cast<std::size_t>(moments), 0) {}

  /// Sequence with states[i] = T_i.
  static MagazineSequence from_instance(const Instance& inst, int capacity) {
    MagazineSequence seq(inst.n(), capacity);
    for (Moment i = 1; i <= inst.n(); ++i) {
      for (ToolId t : inst.tools(i)) seq.insert(i, t);
    }
    return seq;
  }

  static MagazineSequence from_sets(
      const std::vector<std::vector<ToolId>>& states, int capacity) {
    MagazineSequence seq(static_cast<int>(states.size()), capacity);
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::vector<ToolId> s = states[i];
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw Error(ErrorKind::InfeasibleInput,
                    "duplicate tool in state " + std::to_string(i + 1),
                    static_cast<std::int64_t>(i + 1));
      }
      if (static_cast<int>(s.size()) > capacity) {
        throw Error(ErrorKind::CapacityExceeded,
                    "state " + std::to_string(i + 1) + " exceeds capacity",
                    static_cast<std::int64_t>(i + 1));
      }
      for (ToolId t : s) seq.insert(static_cast<Moment>(i + 1), t);
    }
    return seq;
  }

  int moments() const noexcept { return moments_; }
  int capacity() const noexcept { return capacity_; }

  std::span<const ToolId> state(Moment i) const {
    const auto base = static_cast<std::size_t>(i - 1) *
                      static_cast<std::size_t>(capacity_);
    return {slots_.data() + base, static_cast<std::size_t>(sizes_[i - 1])};
  }
  int state_size(Moment i) const { return sizes_[static_cast<std::size_t>(i - 1)]; }
  bool state_full(Moment i) const { return state_size(i) == capacity_; }

  /// Appends `t` to state `i`.  The caller guarantees `t` is absent and the
  /// state has a free slot.
  void insert(Moment i, ToolId t) {
    auto& size = sizes_[static_cast<std::size_t>(i - 1)];
    slots_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(capacity_) +
           static_cast<std::size_t>(size)] = t;
    ++size;
  }

  bool full() const noexcept {
    return std::all_of(sizes_.begin(), sizes_.end(),
                       [this](int s) { return s == capacity_; });
  }

  bool contains(Moment i, ToolId t) const {
    auto s = state(i);
    return std::find(s.begin(), s.end(), t) != s.end();
  }

  std::vector<ToolId> sorted_state(Moment i) const {
    auto s = state(i);
    std::vector<ToolId> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::vector<ToolId>> sorted_states() const {
    std::vector<std::vector<ToolId>> out;
    out.reserve(static_cast<std::size_t>(moments_));
    for (Moment i = 1; i <= moments_; ++i) out.push_back(sorted_state(i));
    return out;
  }

  ToolId max_tool() const {
    ToolId best = 0;
    for (Moment i = 1; i <= moments_; ++i) {
      for (ToolId t : state(i)) best = std::max(best, t);
    }
    return best;
  }

  friend bool operator==(const MagazineSequence& a, const MagazineSequence& b) {
    return a.capacity_ == b.capacity_ && a.sorted_states() == b.sorted_states();
  }

 private:
  int moments_ = 0;
  int capacity_ = 0;
  std::vector<ToolId> slots_;
  std::vector<int> sizes_;
};

/// Tool `tool` kept loaded between its uses at `start` and `end`.
struct Pipe {
  Moment start = 0;
  Moment end = 0;
  ToolId tool = 0;

  friend auto operator<=>(const Pipe&, const Pipe&) = default;
};

struct SolveResult {
  std::int64_t min_switches = 0;
  std::int64_t pipes_count = 0;
  MagazineSequence sequence;
};

/// Objective from a pipe count: sum|T_i| - C - pipes.
inline std::int64_t switches_from_pipes(const Instance& inst,
                                        std::int64_t pipes) {
  return inst.total_demand() - inst.effective_capacity() - pipes;
}

/// Number of tool loads between consecutive states of a full sequence.
inline std::int64_t switches(const MagazineSequence& seq) {
  for (Moment i = 1; i <= seq.moments(); ++i) {
    if (!seq.state_full(i)) {
      throw Error(ErrorKind::NotFull,
                  "state " + std::to_string(i) + " holds " +
                      std::to_string(seq.state_size(i)) + " of " +
                      std::to_string(seq.capacity()) + " tools",
                  i);
    }
  }
  std::vector<Moment> stamp(static_cast<std::size_t>(seq.max_tool()) + 1, 0);
  std::int64_t total = 0;
  for (Moment i = 1; i < seq.moments(); ++i) {
    for (ToolId t : seq.state(i)) stamp[static_cast<std::size_t>(t)] = i;
    for (ToolId t : seq.state(i + 1)) {
      if (stamp[static_cast<std::size_t>(t)] != i) ++total;
    }
  }
  return total;
}

/// Dense (moment, tool) membership table for a sequence and its instance.
/// Row 0 and row n+1 are empty sentinels.
class Occupancy {
 public:
  Occupancy(const MagazineSequence& seq, const Instance& inst)
      : n_(inst.n()),
        width_(static_cast<std::size_t>(std::max<int>(inst.m(), seq.max_tool())) + 1),
        loaded_(static_cast<std::size_t>(n_ + 2) * width_, 0),
        needed_(static_cast<std::size_t>(n_ + 2) * width_, 0) {
    if (seq.moments() != inst.n()) {
      throw Error(ErrorKind::InfeasibleInput,
                  "sequence has " + std::to_string(seq.moments()) +
                      " states for " + std::to_string(inst.n()) + " jobs");
    }
    for (Moment i = 1; i <= n_; ++i) {
      for (ToolId t : seq.state(i)) loaded_[index(i, t)] = 1;
      for (ToolId t : inst.tools(i)) {
        needed_[index(i, t)] = 1;
        if (!loaded_[index(i, t)]) {
          throw Error(ErrorKind::InfeasibleInput,
                      "tool " + std::to_string(t) + " required at moment " +
                          std::to_string(i) + " is not loaded",
                      i);
        }
      }
    }
  }

  int moments() const noexcept { return n_; }
  ToolId max_tool() const noexcept { return static_cast<ToolId>(width_ - 1); }

  /// Out-of-range moments (0, n+1) read as empty.
  bool loaded(Moment i, ToolId t) const {
    if (i < 1 || i > n_) return false;
    return loaded_[index(i, t)] != 0;
  }
  bool needed(Moment i, ToolId t) const {
    if (i < 1 || i > n_) return false;
    return needed_[index(i, t)] != 0;
  }
  bool useless(Moment i, ToolId t) const {
    return loaded(i, t) && !needed(i, t);
  }

 private:
  std::size_t index(Moment i, ToolId t) const {
    return static_cast<std::size_t>(i) * width_ + static_cast<std::size_t>(t);
  }

  int n_;
  std::size_t width_;
  std::vector<unsigned char> loaded_;
  std::vector<unsigned char> needed_;
};

/// All pipes of `seq`: (s, e, t) with t used at s and e, unused strictly
/// between, and loaded at every moment strictly between.  Sorted.
inline std::vector<Pipe> enumerate_pipes(const MagazineSequence& seq,
                                         const Instance& inst) {
  const Occupancy occ(seq, inst);
  std::vector<Moment> last_use(static_cast<std::size_t>(inst.m()) + 1, 0);
  std::vector<Pipe> pipes;
  for (Moment e = 1; e <= inst.n(); ++e) {
    for (ToolId t : inst.tools(e)) {
      const Moment s = last_use[static_cast<std::size_t>(t)];
      if (s != 0) {
        bool kept = true;
        for (Moment i = s + 1; i < e && kept; ++i) kept = occ.loaded(i, t);
        if (kept) pipes.push_back({s, e, t});
      }
      last_use[static_cast<std::size_t>(t)] = e;
    }
  }
  std::sort(pipes.begin(), pipes.end());
  return pipes;
}

}  // namespace tlp
