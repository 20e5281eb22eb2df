#pragma once

// Channel index sets, the dropout lattice and k-channel controllability.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neurochan/io.hpp"
#include "neurochan/numerics.hpp"
#include "neurochan/parallel.hpp"
#include "neurochan/plant.hpp"

namespace neurochan {

/// Subset I of the channels {1..m}; indices are 1-based and strictly increasing.
class ChannelSet {
 public:
  ChannelSet() = default;

  ChannelSet(int m, std::vector<int> indices) : m_(m), indices_(std::move(indices)) {
    if (m < 0) throw DomainError("ChannelSet: negative channel count");
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] < 1 || indices_[i] > m) {
        throw DomainError("ChannelSet: index " + std::to_string(indices_[i]) + " outside 1.." + std::to_string(m));
      }
      if (i > 0 && indices_[i] == indices_[i - 1]) throw DomainError("ChannelSet: duplicate index");
    }
  }

  static ChannelSet full(int m) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    return ChannelSet(m, std::move(idx));
  }

  static ChannelSet empty(int m) { return ChannelSet(m, {}); }

  /// Bit i-1 set for channel i.
  static ChannelSet from_mask(int m, std::uint64_t mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1u) idx.push_back(i + 1);
    }
    return ChannelSet(m, std::move(idx));
  }

  int m() const { return m_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }

  bool contains(int channel) const { return std::binary_search(indices_.begin(), indices_.end(), channel); }

  bool is_subset_of(const ChannelSet& other) const {
    return m_ == other.m_ && std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                                           indices_.end());
  }

  std::uint64_t mask() const {
    std::uint64_t bits = 0;
    for (int i : indices_) bits |= std::uint64_t{1} << (i - 1);
    return bits;
  }

  /// Diagonal 0/1 projection P_I.
  Matrix projection() const {
    Matrix P = Matrix::Zero(m_, m_);
    for (int i : indices_) P(i - 1, i - 1) = 1.0;
    return P;
  }

  /// Columns of B indexed by this set, in index order.
  Matrix columns_of(const Matrix& B) const {
    if (B.cols() != m_) throw DimensionError("ChannelSet::columns_of: column count differs from m");
    Matrix out(B.rows(), size());
    for (int j = 0; j < size(); ++j) out.col(j) = B.col(indices_[static_cast<std::size_t>(j)] - 1);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(indices_[i]);
    }
    return s + "}";
  }

  /// (cardinality, lexicographic) order used for every report.
  friend bool operator<(const ChannelSet& a, const ChannelSet& b) {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    if (a.size() != b.size()) return a.size() < b.size();
    return a.indices_ < b.indices_;
  }
  friend bool operator==(const ChannelSet& a, const ChannelSet& b) = default;

 private:
  int m_ = 0;
  std::vector<int> indices_;
};

inline Matrix projection_matrix(const ChannelSet& I) { return I.projection(); }

inline Matrix gramian(const Matrix& A, const Matrix& B, const ChannelSet& I, double T) {
  return gramian(A, B, I.projection(), T);
}

/// Largest enumeration accepted by enumerate_subsets.
inline constexpr std::uint64_t kMaxSubsets = std::uint64_t{1} << 20;

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// All subsets of {1..m} with k_min <= |I| <= k_max, ordered by (cardinality, lexicographic).
inline std::vector<ChannelSet> enumerate_subsets(int m, int k_min, int k_max) {
  if (m < 0 || k_min < 0 || k_min > k_max || k_max > m) {
    throw DomainError("enumerate_subsets: need 0 <= k_min <= k_max <= m");
  }
  if (m > 62) throw CapacityError("enumerate_subsets: m too large");
  std::uint64_t total = 0;
  for (int k = k_min; k <= k_max; ++k) {
    total += binomial(m, k);
    if (total > kMaxSubsets) throw CapacityError("enumerate_subsets: more than 2^20 subsets requested");
  }
  std::vector<ChannelSet> out;
  out.reserve(total);
  for (int k = k_min; k <= k_max; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      out.emplace_back(m, idx);
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i + 1) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

/// Every L with I subset of L subset of {1..m}, in report order.
inline std::vector<ChannelSet> supersets_of(const ChannelSet& I) {
  const int m = I.m();
  std::vector<int> free;
  for (int c = 1; c <= m; ++c) {
    if (!I.contains(c)) free.push_back(c);
  }
  const int f = static_cast<int>(free.size());
  if (f > 20) throw CapacityError("supersets_of: more than 2^20 supersets");
  std::vector<ChannelSet> out;
  out.reserve(std::size_t{1} << f);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f); ++bits) {
    std::vector<int> idx = I.indices();
    for (int j = 0; j < f; ++j) {
      if (bits >> j & 1u) idx.push_back(free[static_cast<std::size_t>(j)]);
    }
    out.emplace_back(m, std::move(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct LatticeRecord {
  ChannelSet set;
  bool controllable = false;
  double gramian_min_singular_value = 0.0;
  std::optional<double> hurwitz_margin;
};

struct CardinalitySummary {
  int total = 0;
  int controllable = 0;
  int hurwitz = 0;  // records with a margin below kHurwitzTolerance
};

struct LatticeReport {
  std::vector<LatticeRecord> records;
  std::map<int, CardinalitySummary> summary;

  const LatticeRecord* find(const ChannelSet& I) const {
    for (const auto& r : records) {
      if (r.set == I) return &r;
    }
    return nullptr;
  }

  /// Records whose margin is present and not Hurwitz.
  std::vector<ChannelSet> failures() const {
    std::vector<ChannelSet> out;
    for (const auto& r : records) {
      if (r.hurwitz_margin && !(*r.hurwitz_margin < kHurwitzTolerance)) out.push_back(r.set);
    }
    return out;
  }

  void summarize() {
    summary.clear();
    for (const auto& r : records) {
      auto& s = summary[r.set.size()];
      ++s.total;
      if (r.controllable) ++s.controllable;
      if (r.hurwitz_margin && *r.hurwitz_margin < kHurwitzTolerance) ++s.hurwitz;
    }
  }

  /// Columns: indices, cardinality, controllable, gramian_min_singular_value[, hurwitz_margin].
  std::string to_csv() const {
    const bool margins = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.hurwitz_margin; });
    std::vector<std::string> header = {"indices", "cardinality", "controllable", "gramian_min_singular_value"};
    if (margins) header.push_back("hurwitz_margin");
    std::string out = io::csv_row(header);
    for (const auto& r : records) {
      std::vector<std::string> row = {r.set.to_string(), std::to_string(r.set.size()), r.controllable ? "1" : "0",
                                      io::fmt(r.gramian_min_singular_value)};
      if (margins) row.push_back(r.hurwitz_margin ? io::fmt(*r.hurwitz_margin) : "");
      out += io::csv_row(row);
    }
    return out;
  }
};

/// Controllability of (A, B P_I) for every I of the given cardinalities. The
/// decision is the Kalman rank test; the Gramian's smallest singular value
/// over [0, T] is recorded alongside it.
inline LatticeReport classify_controllability(const Matrix& A, const Matrix& B, double T, int k_min, int k_max) {
  detail::require_square(A, "classify_controllability");
  if (B.rows() != A.rows()) throw DimensionError("classify_controllability: A and B row counts differ");
  if (!(T > 0.0)) throw DomainError("classify_controllability: T must be positive");
  const int n = static_cast<int>(A.rows());
  const auto subsets = enumerate_subsets(static_cast<int>(B.cols()), k_min, k_max);
  LatticeReport report;
  report.records.resize(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    const ChannelSet& I = subsets[i];
    const Matrix BP = B * I.projection();
    auto& rec = report.records[i];
    rec.set = I;
    rec.controllable = ctrb_rank(A, BP) == n;
    rec.gramian_min_singular_value = min_singular_value(gramian(A, B, I, T));
  });
  report.summarize();
  return report;
}

inline LatticeReport classify_controllability(const Matrix& A, const Matrix& B, double T = 1.0) {
  return classify_controllability(A, B, T, 0, static_cast<int>(B.cols()));
}

inline LatticeReport classify_controllability(const Plant& plant, double T = 1.0) {
  return classify_controllability(plant.A(), plant.B(), T);
}

}  // namespace neurochan
