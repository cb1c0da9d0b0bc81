#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prolim/invsys.hpp"

namespace prolim {

enum class TopologyTag { Finite, CountableDiscrete, Cantor, NCrossCantor, Baire };

struct TopologyClass {
  TopologyTag tag = TopologyTag::Finite;
  /// Number of points, for Finite only.
  std::optional<Integer> cardinality;

  bool operator==(const TopologyClass&) const = default;
};

/// "Finite", "CountableDiscrete", "Cantor", "NxCantor", "Baire"
std::string tag_name(TopologyTag tag);
/// Table symbols in ASCII: "F", "N", "C", "NxC", "N^N".
std::string class_symbol(TopologyTag tag);

enum class InfiniteKernels { Zero, FinitelyMany, InfinitelyMany };
std::string infinite_kernels_name(InfiniteKernels k);

struct TraceStep {
  std::string predicate;
  std::string value;
  std::string rule;
};

struct ClassCertificate {
  Surjectivization surjectivized;
  std::vector<KernelEntry> kernels;
  std::size_t tail_start = 0;
  std::optional<std::size_t> stabilizes_at;
  InfiniteKernels infinite_kernels = InfiniteKernels::Zero;
  /// "I.1", "I.2", "II.1", "II.2", "II.3"
  std::string case_label;
  std::vector<TraceStep> trace;
};

struct ClassifyResult {
  TopologyClass topology;
  ClassCertificate certificate;
};

ClassifyResult classify_limit(const InverseSystem& s);

/// The group at the stabilization index of the surjectivized system. Throws
/// MathError when the system does not stabilize.
FgAbGroup stable_model(const InverseSystem& s);

enum class ClosureOfZero { Zero, UncountableIndiscrete };

struct KKTopologyClass {
  TopologyClass lim_part;
  ClosureOfZero closure_of_zero = ClosureOfZero::Zero;

  /// 1..10: rows 1-5 with trivial closure of zero, 6-10 with the
  /// uncountable indiscrete factor.
  int row() const;
  /// e.g. "NxCxU"
  std::string symbol() const;
  /// e.g. "ℕ × 𝒞 × U"
  std::string display() const;
};

struct KKResult {
  KKTopologyClass verdict;
  ClassifyResult lim;
  MLCertificate sb_certificate;
  std::vector<TraceStep> trace;
};

KKResult classify_kk(const InverseSystem& system_b, const InverseSystem& system_sb);

}  // namespace prolim
