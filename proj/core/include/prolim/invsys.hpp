#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

/// A levelwise direct summand whose groups grow without bound, so that it
/// cannot be written with a repeating cycle. Levels before `start` are
/// trivial; from `start` on the exponent is initial + step * (n - start).
///   Cyclic: Z/base^exponent with reduction maps.
///   Power:  C^exponent, C = Z when base == 0 and Z/base otherwise, with
///           maps that drop the trailing coordinates.
/// Both kinds have surjective bonding maps.
struct Tower {
  enum class Kind { Cyclic, Power };

  Kind kind = Kind::Cyclic;
  Integer base = 2;
  std::size_t start = 1;
  std::size_t initial = 1;
  std::size_t step = 1;

  std::size_t exponent(std::size_t level) const;
  FgAbGroup group_at(std::size_t level) const;
  /// level + 1 -> level
  GroupHom map_at(std::size_t level) const;
  /// Kernel of map_at(level - 1), or the whole group at level 1.
  FgAbGroup kernel_at(std::size_t level) const;

  bool operator==(const Tower&) const = default;
};

/// Canonical coordinates of one level, split into the base summand
/// followed by one summand per tower.
struct LevelLayout {
  DirectSum sum;
};

/// Eventually periodic inverse system. Levels are 1-based. The base part
/// has prefix groups G_1..G_k and cycle groups repeating with period p;
/// maps[n-1] : G_{n+1} -> G_n for n = 1..k+p and map(n + p) = map(n) for
/// n >= k+1. A finite chain has no cycle and maps for n = 1..length-1.
/// Towers are added levelwise as direct summands.
class InverseSystem {
 public:
  InverseSystem() = default;

  static InverseSystem periodic(std::vector<FgAbGroup> prefix, std::vector<FgAbGroup> cycle,
                                std::vector<GroupHom> maps, std::vector<Tower> towers = {});
  static InverseSystem finite_chain(std::vector<FgAbGroup> groups, std::vector<GroupHom> maps);
  static InverseSystem constant(const FgAbGroup& g, const GroupHom& endo);
  static InverseSystem zero();

  bool is_finite_chain() const { return !has_cycle_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t period() const { return cycle_.size(); }
  /// Number of levels of a finite chain.
  std::size_t length() const;
  const std::vector<FgAbGroup>& prefix_groups() const { return prefix_; }
  const std::vector<FgAbGroup>& cycle_groups() const { return cycle_; }
  const std::vector<GroupHom>& maps() const { return maps_; }
  const std::vector<Tower>& towers() const { return towers_; }
  bool has_towers() const { return !towers_.empty(); }

  FgAbGroup base_group(std::size_t n) const;
  /// G_{n+1} -> G_n on the base summand.
  const GroupHom& base_map(std::size_t n) const;

  const LevelLayout& layout(std::size_t n) const;
  const FgAbGroup& group_at(std::size_t n) const;
  /// f_n : G_{n+1} -> G_n
  GroupHom map_at(std::size_t n) const;
  /// f_{n,m} = f_n o ... o f_{m-1} : G_m -> G_n; identity when n == m.
  GroupHom map_between(std::size_t n, std::size_t m) const;

  /// First level L such that kernels of levels >= L repeat with the period
  /// (for both the base maps and the towers).
  std::size_t tail_start() const;
  /// Last level of the analysis window: tail_start() + period() - 1.
  std::size_t window() const;
  /// max(start) over towers, 0 without towers.
  std::size_t tower_horizon() const;

  /// Level n of the system restricted to the levels offset + 1 + stride*(i-1).
  std::size_t original_level(std::size_t stride, std::size_t offset, std::size_t i) const;

  bool operator==(const InverseSystem& other) const;

 private:
  void validate() const;
  void check_level(std::size_t n) const;

  std::vector<FgAbGroup> prefix_;
  std::vector<FgAbGroup> cycle_;
  bool has_cycle_ = false;
  std::vector<GroupHom> maps_;
  std::vector<Tower> towers_;

  struct Cache {
    std::mutex mutex;
    std::map<std::size_t, std::shared_ptr<const LevelLayout>> layouts;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Stable part of an endomorphism: the intersection of the images of all
/// its powers, with the data used to find it.
struct EventualImage {
  Subgroup subgroup;
  /// Least j with ker E^j = ker E^(j+1).
  std::size_t kernel_exponent = 0;
  /// Index of E(I) in I for I = Im E^kernel_exponent; the image chain is
  /// eventually constant exactly when this is 1.
  Integer index = 1;
  bool stable() const { return index == 1; }
};

EventualImage eventual_image(const GroupHom& endo);

struct Surjectivization {
  InverseSystem system;
  /// Universal image inside each base level 1..k+p (levels beyond repeat).
  std::vector<Subgroup> base_images;
  /// Universal image inside G_n.
  Subgroup image_at(const InverseSystem& original, std::size_t n) const;
  /// G°_n -> G_n
  GroupHom inclusion(const InverseSystem& original, std::size_t n) const;
};

/// Replaces every level by the image of the inverse limit in it. The
/// bonding maps of the result are surjective and the limit is unchanged.
Surjectivization surjectivize_with_data(const InverseSystem& s);
InverseSystem surjectivize(const InverseSystem& s);

struct MLLevel {
  std::size_t level = 0;
  /// Image horizon: Im f_{level,witness} is the stable image, or the point
  /// from which the constant index is reproduced.
  std::size_t witness = 0;
  /// 1 when the images are stable from `witness` on, else the constant
  /// index of Im f_{level,m+p} in Im f_{level,m} for m >= witness.
  Integer index = 1;
  bool stable() const { return index == 1; }
};

struct MLCertificate {
  bool verdict = true;
  std::vector<MLLevel> per_level;
};

MLCertificate is_mittag_leffler(const InverseSystem& s);

/// Keeps the levels offset + 1 + stride*(i-1), i >= 1, with composite maps.
InverseSystem restrict_cofinal(const InverseSystem& s, std::size_t stride, std::size_t offset);

struct KernelEntry {
  std::size_t level = 0;
  FgAbGroup group;
  bool finite = true;
};

/// X_1 = G_1 and X_n = ker f_{n-1} for n = 2..window(); the entries from
/// tail_start() on repeat with the period. Throws MathError when a bonding
/// map in the window is not surjective.
std::vector<KernelEntry> kernel_sequence(const InverseSystem& s);

struct Stabilization {
  bool stabilizes = false;
  /// Least index s >= 1 with X_n = 0 for every n > s.
  std::optional<std::size_t> index;
};

Stabilization stabilizes(const InverseSystem& s);
Stabilization stabilizes(const std::vector<KernelEntry>& kernels, std::size_t tail_start);

}  // namespace prolim
