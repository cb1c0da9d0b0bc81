#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "prolim/invsys.hpp"

namespace prolim {

inline constexpr std::size_t kDefaultEnumerationCap = 10000;

/// (x_1, ..., x_N) with x_n = f_n(x_{n+1}); entries[n-1] is x_n.
struct CoherentTuple {
  std::uint64_t space_id = 0;
  std::vector<Vector> entries;

  std::size_t level() const { return entries.size(); }
  bool operator==(const CoherentTuple&) const = default;
};

/// Tuples whose level-n coordinate is base_point. Level 0 is the whole space.
struct Cylinder {
  std::size_t level = 0;
  Vector base_point;
};

enum class MetricKind { Exact, Zero, AtMost };

struct MetricValue {
  MetricKind kind = MetricKind::Zero;
  /// m for Exact(2^-m), N for AtMost(2^-N), unused for Zero.
  std::size_t exponent = 0;

  /// "2^-3", "0" or "<=2^-2"
  std::string to_string() const;
  bool operator==(const MetricValue&) const = default;
};

/// The inverse limit of a system, seen through its finite truncations.
class LimitSpace {
 public:
  explicit LimitSpace(InverseSystem s);

  const InverseSystem& system() const { return system_; }
  std::uint64_t id() const { return id_; }
  /// Stabilization index of the surjectivized system, if it stabilizes.
  std::optional<std::size_t> stable_index() const;
  /// Universal image of the limit in G_n.
  Subgroup limit_image(std::size_t n) const;

  /// Validates coherence; throws std::invalid_argument naming the level.
  CoherentTuple make_tuple(std::vector<Vector> entries) const;
  /// The tuple determined by its top coordinate x_N.
  CoherentTuple from_top(std::size_t level, const Vector& top) const;
  /// Extends with the least preimage at every step. Throws MathError when
  /// some coordinate has no preimage.
  CoherentTuple extend(const CoherentTuple& x, std::size_t to_level) const;
  CoherentTuple add(const CoherentTuple& x, const CoherentTuple& y) const;

  MetricValue metric(const CoherentTuple& x, const CoherentTuple& y) const;
  Cylinder cylinder_of(const CoherentTuple& x, std::size_t n) const;
  bool contains(const Cylinder& c, const CoherentTuple& y) const;
  /// Cylinder containing y and not x, at the first level where they differ.
  Cylinder separating_clopen(const CoherentTuple& x, const CoherentTuple& y) const;

  /// For every j <= budget and every g in G_j (the first `cap` elements when
  /// G_j is infinite) a tuple of level `budget` with x_j = g, without
  /// repetitions. Throws MathError when a finite G_j exceeds the cap.
  std::vector<CoherentTuple> dense_family(std::size_t budget, std::size_t cap = kDefaultEnumerationCap) const;

  /// Coordinatewise eventual value, truncated to `level`.
  CoherentTuple cauchy_limit(const std::vector<CoherentTuple>& seq, std::size_t level) const;

  /// Every coherent tuple of level N (one per element of G_N).
  std::vector<CoherentTuple> tuples_at(std::size_t level, std::size_t cap = kDefaultEnumerationCap) const;
  /// Tuples of level N that are truncations of points of the limit.
  std::vector<CoherentTuple> limit_tuples_at(std::size_t level, std::size_t cap = kDefaultEnumerationCap) const;

 private:
  const Surjectivization& surjectivization() const;
  void check_same(const CoherentTuple& x) const;

  InverseSystem system_;
  std::uint64_t id_;
  struct Lazy {
    std::once_flag once;
    std::optional<Surjectivization> surj;
    std::optional<std::size_t> stable;
  };
  std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();
};

/// Restriction of a tuple of s at level original_level(stride, offset, N)
/// to the cofinal levels, and its inverse.
CoherentTuple cofinal_restrict_tuple(const LimitSpace& original, const LimitSpace& restricted, std::size_t stride,
                                     std::size_t offset, const CoherentTuple& x);
CoherentTuple cofinal_expand_tuple(const LimitSpace& original, const LimitSpace& restricted, std::size_t stride,
                                   std::size_t offset, const CoherentTuple& y);

}  // namespace prolim
