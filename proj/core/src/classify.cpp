#include "prolim/classify.hpp"

#include <stdexcept>

#include "prolim/errors.hpp"
#include "prolim/homalg.hpp"

namespace prolim {

std::string tag_name(TopologyTag tag) {
  switch (tag) {
    case TopologyTag::Finite: return "Finite";
    case TopologyTag::CountableDiscrete: return "CountableDiscrete";
    case TopologyTag::Cantor: return "Cantor";
    case TopologyTag::NCrossCantor: return "NxCantor";
    case TopologyTag::Baire: return "Baire";
  }
  throw std::logic_error("tag_name: unknown tag");
}

std::string class_symbol(TopologyTag tag) {
  switch (tag) {
    case TopologyTag::Finite: return "F";
    case TopologyTag::CountableDiscrete: return "N";
    case TopologyTag::Cantor: return "C";
    case TopologyTag::NCrossCantor: return "NxC";
    case TopologyTag::Baire: return "N^N";
  }
  throw std::logic_error("class_symbol: unknown tag");
}

std::string infinite_kernels_name(InfiniteKernels k) {
  switch (k) {
    case InfiniteKernels::Zero: return "Zero";
    case InfiniteKernels::FinitelyMany: return "FinitelyMany";
    case InfiniteKernels::InfinitelyMany: return "InfinitelyMany";
  }
  throw std::logic_error("infinite_kernels_name: unknown value");
}

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

ClassifyResult classify_limit(const InverseSystem& s) {
  Surjectivization surj = surjectivize_with_data(s);
  std::vector<KernelEntry> kernels = kernel_sequence(surj.system);
  const std::size_t tail = surj.system.tail_start();
  const Stabilization stab = stabilizes(kernels, tail);

  bool any_infinite = false, tail_infinite = false, prefix_infinite = false;
  for (const auto& e : kernels) {
    if (e.finite) continue;
    any_infinite = true;
    (e.level >= tail ? tail_infinite : prefix_infinite) = true;
  }

  ClassifyResult r;
  ClassCertificate& c = r.certificate;
  c.tail_start = tail;
  c.stabilizes_at = stab.index;
  c.infinite_kernels = tail_infinite   ? InfiniteKernels::InfinitelyMany
                       : any_infinite ? InfiniteKernels::FinitelyMany
                                      : InfiniteKernels::Zero;
  c.trace.push_back({"bonding maps surjective after restriction to universal images", "true", "surjectivization"});
  c.trace.push_back({"stabilizes", stab.stabilizes ? "true at index " + std::to_string(*stab.index) : "false",
                     "five-class-table"});

  if (stab.stabilizes) {
    bool finite = true;
    Integer count = 1;
    for (const auto& e : kernels) {
      if (e.level > *stab.index) break;
      if (!e.finite) {
        finite = false;
        break;
      }
      count *= *e.group.order();
    }
    c.trace.push_back({"kernels up to the stable index finite", yes_no(finite), "five-class-table"});
    if (finite) {
      r.topology = {TopologyTag::Finite, count};
      c.case_label = "I.1";
      c.trace.push_back({"cardinality", count.str(), "stable-finite-product"});
    } else {
      r.topology = {TopologyTag::CountableDiscrete, std::nullopt};
      c.case_label = "I.2";
      c.trace.push_back({"limit countably infinite and discrete", "true", "stable-countable-discrete"});
    }
  } else {
    c.trace.push_back({"some kernel in a tail period infinite", yes_no(tail_infinite), "five-class-table"});
    if (tail_infinite) {
      r.topology = {TopologyTag::Baire, std::nullopt};
      c.case_label = "II.3";
      c.trace.push_back({"infinitely many infinite kernels", "true", "baire-not-locally-compact"});
    } else {
      c.trace.push_back({"some kernel before the tail infinite", yes_no(prefix_infinite), "five-class-table"});
      if (prefix_infinite) {
        r.topology = {TopologyTag::NCrossCantor, std::nullopt};
        c.case_label = "II.2";
        c.trace.push_back({"finitely many infinite kernels, nontrivial finite tail", "true", "countable-times-cantor"});
      } else {
        r.topology = {TopologyTag::Cantor, std::nullopt};
        c.case_label = "II.1";
        c.trace.push_back({"all kernels finite, nontrivial tail", "true", "cantor-compact-perfect"});
      }
    }
  }
  c.surjectivized = std::move(surj);
  c.kernels = std::move(kernels);
  return r;
}

FgAbGroup stable_model(const InverseSystem& s) {
  const ClassifyResult r = classify_limit(s);
  if (!r.certificate.stabilizes_at) {
    throw MathError("stable_model: the system does not stabilize");
  }
  return r.certificate.surjectivized.system.group_at(*r.certificate.stabilizes_at);
}

int KKTopologyClass::row() const {
  int base = 0;
  switch (lim_part.tag) {
    case TopologyTag::Finite: base = 1; break;
    case TopologyTag::CountableDiscrete: base = 2; break;
    case TopologyTag::Cantor: base = 3; break;
    case TopologyTag::NCrossCantor: base = 4; break;
    case TopologyTag::Baire: base = 5; break;
  }
  return closure_of_zero == ClosureOfZero::Zero ? base : base + 5;
}

std::string KKTopologyClass::symbol() const {
  std::string s = class_symbol(lim_part.tag);
  if (closure_of_zero == ClosureOfZero::UncountableIndiscrete) s += "xU";
  return s;
}

std::string KKTopologyClass::display() const {
  std::string s;
  switch (lim_part.tag) {
    case TopologyTag::Finite: s = "F"; break;
    case TopologyTag::CountableDiscrete: s = "ℕ"; break;
    case TopologyTag::Cantor: s = "\U0001D49E"; break;
    case TopologyTag::NCrossCantor: s = "ℕ × \U0001D49E"; break;
    case TopologyTag::Baire: s = "ℕ^ℕ"; break;
  }
  if (closure_of_zero == ClosureOfZero::UncountableIndiscrete) s += " × U";
  return s;
}

KKResult classify_kk(const InverseSystem& system_b, const InverseSystem& system_sb) {
  KKResult r;
  r.lim = classify_limit(system_b);
  const Lim1Verdict v = lim1_verdict(system_sb);
  r.sb_certificate = v.certificate;
  r.verdict.lim_part = r.lim.topology;
  r.verdict.closure_of_zero =
      v.value == Lim1Value::Zero ? ClosureOfZero::Zero : ClosureOfZero::UncountableIndiscrete;
  r.trace.push_back({"limit part", tag_name(r.lim.topology.tag), "five-class-table"});
  r.trace.push_back({"second system Mittag-Leffler", yes_no(v.certificate.verdict), "ml-iff-lim1-zero"});
  r.trace.push_back({"row", std::to_string(r.verdict.row()) + " " + r.verdict.symbol(), "kk-ten-class-table"});
  return r;
}

}  // namespace prolim
