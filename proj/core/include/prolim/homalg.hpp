#pragma once

#include <vector>

#include "prolim/classify.hpp"
#include "prolim/invsys.hpp"

namespace prolim {

/// Levels 1..N with maps f_n : G_{n+1} -> G_n for n = 1..N-1.
struct TruncatedChain {
  std::vector<FgAbGroup> groups;
  std::vector<GroupHom> maps;

  TruncatedChain(std::vector<FgAbGroup> groups, std::vector<GroupHom> maps);
  static TruncatedChain from_system(const InverseSystem& s, std::size_t levels);

  std::size_t length() const { return groups.size(); }
  /// Product of all levels.
  DirectSum product() const;
  /// Product of levels 1..N-1, the codomain of delta.
  DirectSum codomain() const;
};

/// (x_n - f_n(x_{n+1}))_{n=1..N-1}
std::vector<Vector> delta(const TruncatedChain& chain, const std::vector<Vector>& x);
GroupHom delta_hom(const TruncatedChain& chain);

struct TruncatedLimit {
  FgAbGroup group;  // ker delta in normal form
  Subgroup kernel;  // ker delta inside the product
  /// G_N -> ker delta, x -> (f_{1,N} x, ..., f_{N-1,N} x, x); an isomorphism.
  GroupHom witness;
};

TruncatedLimit lim_truncated(const TruncatedChain& chain);
FgAbGroup lim1_truncated(const TruncatedChain& chain);

enum class Lim1Value { Zero, Uncountable };

struct Lim1Verdict {
  Lim1Value value = Lim1Value::Zero;
  MLCertificate certificate;
};

Lim1Verdict lim1_verdict(const InverseSystem& s);

/// 0 -> sub -> mid -> quot -> 0 with levelwise maps for levels
/// 1..ses_window(...). Deeper levels are covered by periodicity.
struct SystemSES {
  InverseSystem sub;
  InverseSystem mid;
  InverseSystem quot;
  std::vector<GroupHom> inclusions;   // sub_n -> mid_n
  std::vector<GroupHom> projections;  // mid_n -> quot_n
};

/// Levels that must be supplied: the largest prefix plus one common period
/// plus one more level, so every square of a period is checked.
std::size_t ses_window(const InverseSystem& sub, const InverseSystem& mid, const InverseSystem& quot);

/// 0 -> (G°_n) -> (G_n) -> (G_n / G°_n) -> 0
SystemSES surjectivization_ses(const InverseSystem& s);

bool check_ses(const SystemSES& ses);

struct SixTermReport {
  Lim1Verdict lim1_sub, lim1_mid, lim1_quot;
  ClassifyResult class_sub, class_mid, class_quot;
  std::size_t horizon = 0;
  /// The image of lim(mid) at the horizon covers the image of lim(quot).
  bool lim_surjective_at_horizon = false;
  /// Failing surjectivity forces lim1(sub) to be uncountable.
  bool connecting_consistent = false;
  /// All three ML: 0 -> lim sub -> lim mid -> lim quot -> 0 exact at the
  /// horizon (checked on the universal images).
  std::optional<bool> lim_row_exact;
  /// lim1(mid) -> lim1(quot) -> 0: uncountable lim1(quot) needs
  /// uncountable lim1(mid).
  bool lim1_tail_consistent = false;
  bool consistent() const;
};

/// Throws MathError when check_ses fails.
SixTermReport six_term_report(const SystemSES& ses);

}  // namespace prolim
