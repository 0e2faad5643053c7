#pragma once

// Exhaustive searches over coefficient multisets. The search space is split
// into numbered work units (one multiset per unit for 2x2, a block of
// multisets for 3x3); any contiguous run of units can be processed by any
// number of shards and the merged output is always the same.

#include <algorithm>
#include <array>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pythperm/checked.hpp"
#include "pythperm/eigen.hpp"
#include "pythperm/multiset.hpp"
#include "pythperm/triples.hpp"

namespace pythperm {

/// Largest |coefficient| for which every 2x2 discriminant stays within 64 bits
/// ((2M)^2 + 4M^2 = 8M^2 < 2^63).
inline constexpr Int kMaxAbsCoefficient2 = 1'000'000'000;
/// Largest |coefficient| for which 3x3 determinants stay within 64 bits (6M^3 < 2^63).
inline constexpr Int kMaxAbsCoefficient3 = 1'000'000;

inline constexpr std::uint64_t kDefaultBlockSize3 = 1024;
inline constexpr std::uint64_t kDefaultWorkBudget2 = 50'000'000;

/// Inclusive bounds applied to every coefficient.
struct SearchRange {
  Int lo = 0;
  Int hi = 0;

  friend bool operator==(const SearchRange&, const SearchRange&) = default;
  std::uint64_t width() const { return static_cast<std::uint64_t>(checked::sub(hi, lo)) + 1; }
};

enum class Classification { ansatz, degenerate, constant, other };

inline const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::ansatz: return "ansatz";
    case Classification::degenerate: return "degenerate";
    case Classification::constant: return "constant";
    case Classification::other: return "other";
  }
  return "?";
}

inline std::optional<Classification> classification_from_string(const std::string& s) {
  for (auto c : {Classification::ansatz, Classification::degenerate, Classification::constant,
                 Classification::other})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

/// Two pairs with equal sums t; the first pair sits on the diagonal.
struct AnsatzPairing {
  std::array<std::array<Int, 2>, 2> pairs{};
  Int t = 0;

  friend bool operator==(const AnsatzPairing&, const AnsatzPairing&) = default;
};

struct ClassInfo {
  Classification primary = Classification::other;
  std::optional<AnsatzPairing> ansatz;
  bool degenerate = false;
  bool constant = false;
};

/// Tag a quadruple. Precedence when several apply: constant, ansatz, degenerate.
///
/// ansatz: some split into two pairs has equal pair sums.
/// degenerate: two entries are zero and the product of the others is a square.
inline ClassInfo classify(const std::array<Int, 4>& quad) {
  auto q = quad;
  std::sort(q.begin(), q.end());
  ClassInfo out;
  out.constant = q[0] == q[3];

  const std::array<std::array<std::size_t, 4>, 3> splits{{{0, 3, 1, 2}, {0, 2, 1, 3}, {0, 1, 2, 3}}};
  for (const auto& sp : splits) {
    const Int first = checked::add(q[sp[0]], q[sp[1]]);
    if (first == checked::add(q[sp[2]], q[sp[3]])) {
      out.ansatz = AnsatzPairing{{{{q[sp[0]], q[sp[1]]}, {q[sp[2]], q[sp[3]]}}}, first};
      break;
    }
  }

  // Sorted, so two zeros are adjacent; drop one pair of them and keep the rest.
  const auto zero = std::find(q.begin(), q.end(), Int{0});
  if (std::distance(zero, q.end()) >= 2 && *(zero + 1) == 0) {
    std::vector<Int> rest(q.begin(), zero);
    rest.insert(rest.end(), zero + 2, q.end());
    out.degenerate = is_perfect_square(checked::mul(rest[0], rest[1])).has_value();
  }

  if (out.constant) out.primary = Classification::constant;
  else if (out.ansatz) out.primary = Classification::ansatz;
  else if (out.degenerate) out.primary = Classification::degenerate;
  return out;
}

inline ClassInfo classify(const CoefficientQuad& q) { return classify(q.v); }

/// Recover (r, s, t) from an ansatz pairing through k = b - d, l = a - b,
/// u^2 = t^2 + 4kl, v^2 = t^2 - 4kl, r = (u+v)/2, s = (u-v)/2.
///
/// `swap_roles` puts the second pair on the diagonal instead. Returns nothing
/// when k l = 0 (no valid triple), or when the square roots do not exist.
/// Legs and hypotenuse are reported as absolute values.
inline std::optional<PythTriple> recover_triple(const AnsatzPairing& pairing, bool swap_roles = false) {
  const auto& diag = pairing.pairs[swap_roles ? 1 : 0];
  const auto& off = pairing.pairs[swap_roles ? 0 : 1];
  const Int a = diag[1], d = diag[0], b = off[1];
  const Int k = checked::sub(b, d);
  const Int l = checked::sub(a, b);
  const Int kl = checked::mul(k, l);
  if (kl == 0) return std::nullopt;
  const Int tt = checked::square(pairing.t);
  const auto u = is_perfect_square(checked::add(tt, checked::mul(4, kl)));
  const auto v = is_perfect_square(checked::sub(tt, checked::mul(4, kl)));
  if (!u || !v) return std::nullopt;
  if ((*u + *v) % 2 != 0) return std::nullopt;
  const Int r = (*u + *v) / 2;
  const Int s = (*u - *v) / 2;
  if (checked::mul(r, s) != checked::mul(2, kl)) return std::nullopt;
  return PythTriple{checked::abs(r), checked::abs(s), checked::abs(pairing.t)};
}

/// One multiset that passed the all-arrangements check.
struct SearchRecord {
  int dim = 2;
  /// Ascending.
  std::vector<Int> coefficients;
  Classification classification = Classification::other;
  /// All entries equal.
  bool trivial = false;
  bool degenerate = false;
  std::optional<AnsatzPairing> ansatz;
  /// 2x2: the six representative spectra {plus, minus}, in the order of
  /// `representatives` applied to the ascending multiset. 3x3: distinct
  /// spectra, roots descending.
  std::vector<std::vector<Int>> eigenvalue_classes;

  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

/// The evaluated region: dimension, coefficient range, multisets per unit.
struct SearchSpace {
  int dim = 2;
  SearchRange range;
  std::uint64_t block_size = 1;
  bool allow_negative = false;

  std::size_t arity() const noexcept { return dim == 2 ? 4 : 9; }

  void validate() const {
    if (dim != 2 && dim != 3) throw ParameterError("dimension must be 2 or 3, got " + std::to_string(dim));
    if (range.lo > range.hi)
      throw ParameterError("empty range [" + std::to_string(range.lo) + "," + std::to_string(range.hi) + "]");
    const Int limit = dim == 2 ? kMaxAbsCoefficient2 : kMaxAbsCoefficient3;
    if (range.lo < -limit || range.hi > limit)
      throw ParameterError("coefficients must lie within +-" + std::to_string(limit) + " for dim " +
                           std::to_string(dim));
    if (dim == 3 && range.lo < 0 && !allow_negative)
      throw ParameterError("3x3 searches are nonnegative unless negative ranges are explicitly allowed");
    if (block_size == 0) throw ParameterError("block size must be positive");
  }

  std::uint64_t multiset_total() const { return multiset_count(range.width(), arity()); }
  std::uint64_t unit_total() const {
    const auto n = multiset_total();
    return n / block_size + (n % block_size != 0 ? 1 : 0);
  }

  std::string id() const {
    return "dim" + std::to_string(dim) + ":[" + std::to_string(range.lo) + "," + std::to_string(range.hi) +
           "]:block" + std::to_string(block_size);
  }
};

struct ShardDescriptor {
  std::size_t shard = 0;
  std::uint64_t unit_begin = 0;
  std::uint64_t unit_end = 0;

  friend bool operator==(const ShardDescriptor&, const ShardDescriptor&) = default;
  std::uint64_t size() const noexcept { return unit_end - unit_begin; }
};

/// Split [begin, end) into `shards` contiguous, disjoint, covering pieces in
/// order. Pieces differ in size by at most one; surplus shards are empty.
inline std::vector<ShardDescriptor> partition_work(std::uint64_t begin, std::uint64_t end, std::size_t shards) {
  if (shards == 0) throw ParameterError("shard count must be >= 1");
  if (end < begin) throw ParameterError("inverted unit interval");
  const std::uint64_t total = end - begin;
  const std::uint64_t base = total / shards;
  const std::uint64_t extra = total % shards;
  std::vector<ShardDescriptor> out;
  out.reserve(shards);
  std::uint64_t at = begin;
  for (std::size_t i = 0; i < shards; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.push_back({i, at, at + len});
    at += len;
  }
  return out;
}

inline std::vector<ShardDescriptor> partition_work(const SearchSpace& space, std::size_t shards) {
  space.validate();
  return partition_work(0, space.unit_total(), shards);
}

namespace detail {

inline std::optional<SearchRecord> evaluate_quad(const std::vector<Int>& values) {
  const std::array<Int, 4> q{values[0], values[1], values[2], values[3]};
  if (!discriminants(q).all_square()) return std::nullopt;
  SearchRecord rec;
  rec.dim = 2;
  rec.coefficients = values;
  const ClassInfo info = classify(q);
  rec.classification = info.primary;
  rec.trivial = info.constant;
  rec.degenerate = info.degenerate;
  rec.ansatz = info.ansatz;
  for (const Matrix2& m : representatives(q)) {
    const auto pair = eigenvalues_2x2(m);
    if (!pair) throw std::logic_error("discriminant check and eigenvalue extraction disagree");
    rec.eigenvalue_classes.push_back({pair->plus, pair->minus});
  }
  return rec;
}

inline std::optional<SearchRecord> evaluate_nonuple(const std::vector<Int>& values) {
  std::array<Int, 9> n{};
  std::copy(values.begin(), values.end(), n.begin());
  const EigenReport3 report = verify_all_permutations_3x3(n);
  if (!report.all_pass) return std::nullopt;
  SearchRecord rec;
  rec.dim = 3;
  rec.coefficients = values;
  rec.trivial = values.front() == values.back();
  rec.classification = rec.trivial ? Classification::constant : Classification::other;
  for (const auto& s : report.spectra) rec.eigenvalue_classes.push_back({s[0], s[1], s[2]});
  return rec;
}

inline std::vector<SearchRecord> run_shard(const SearchSpace& space, const ShardDescriptor& shard) {
  std::vector<SearchRecord> out;
  if (shard.size() == 0) return out;
  const std::uint64_t total = space.multiset_total();
  const std::uint64_t first = shard.unit_begin * space.block_size;
  const std::uint64_t last = std::min(total, shard.unit_end * space.block_size);
  MultisetCursor cursor(space.range.lo, space.range.hi, space.arity());
  cursor.seek(first);
  for (std::uint64_t i = first; i < last; ++i) {
    auto rec = space.dim == 2 ? evaluate_quad(cursor.values()) : evaluate_nonuple(cursor.values());
    if (rec) out.push_back(std::move(*rec));
    if (i + 1 < last) cursor.next();
  }
  return out;
}

}  // namespace detail

/// Process units [begin, end) on `shards` threads and merge in unit order.
inline std::vector<SearchRecord> run_units(const SearchSpace& space, std::uint64_t begin, std::uint64_t end,
                                           std::size_t shards) {
  space.validate();
  const auto plan = partition_work(begin, end, shards);
  std::vector<std::vector<SearchRecord>> partial(plan.size());
  std::vector<std::exception_ptr> errors(plan.size());
  {
    std::vector<std::jthread> workers;
    workers.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (plan[i].size() == 0) continue;
      workers.emplace_back([&, i] {
        try {
          partial[i] = detail::run_shard(space, plan[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SearchRecord> merged;
  for (auto& p : partial)
    for (auto& r : p) merged.push_back(std::move(r));
  return merged;
}

/// Progress of a resumable search. Units [0, next_unit) are done.
struct SearchState {
  SearchSpace space;
  std::uint64_t next_unit = 0;
  std::vector<SearchRecord> records;

  bool complete() const { return next_unit >= space.unit_total(); }
};

/// Run up to `max_units` further units of `state`.
inline void advance(SearchState& state, std::uint64_t max_units, std::size_t shards) {
  const std::uint64_t total = state.space.unit_total();
  const std::uint64_t end = state.next_unit + std::min(max_units, total - std::min(total, state.next_unit));
  auto fresh = run_units(state.space, state.next_unit, end, shards);
  for (auto& r : fresh) state.records.push_back(std::move(r));
  state.next_unit = end;
}

/// Every 2x2 multiset in `range` whose 24 arrangements all have integer
/// eigenvalues, ascending. Refuses if the range holds more than `max_work`
/// multisets.
inline std::vector<SearchRecord> search_2x2(const SearchRange& range, std::uint64_t max_work = kDefaultWorkBudget2,
                                            std::size_t shards = 1) {
  SearchState state{SearchSpace{2, range, 1}, 0, {}};
  state.space.validate();
  const std::uint64_t need = state.space.multiset_total();
  if (need > max_work)
    throw BudgetExceeded(need, max_work,
                         "range [" + std::to_string(range.lo) + "," + std::to_string(range.hi) + "] holds " +
                             std::to_string(need) + " multisets, budget is " + std::to_string(max_work));
  advance(state, need, shards);
  return std::move(state.records);
}

struct Search3Result {
  SearchState state;
  bool complete() const { return state.complete(); }
  const std::vector<SearchRecord>& records() const& { return state.records; }
  std::vector<SearchRecord> records() && { return std::move(state.records); }
};

/// Scan 3x3 nonuples in `range`, stopping after `budget` units. Pass a state
/// from a checkpoint in `resume` to continue an earlier run.
inline Search3Result search_3x3(const SearchRange& range, std::uint64_t budget, std::size_t shards = 1,
                                std::uint64_t block_size = kDefaultBlockSize3, bool allow_negative = false,
                                std::optional<SearchState> resume = std::nullopt) {
  Search3Result out;
  const SearchSpace space{3, range, block_size, allow_negative};
  space.validate();
  if (resume) {
    if (resume->space.id() != space.id())
      throw CheckpointError("checkpoint is for " + resume->space.id() + ", not " + space.id());
    out.state = std::move(*resume);
    out.state.space.allow_negative = allow_negative;
  } else {
    out.state.space = space;
  }
  advance(out.state, budget, shards);
  return out;
}

}  // namespace pythperm
