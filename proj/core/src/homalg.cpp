#include "prolim/homalg.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "prolim/errors.hpp"

namespace prolim {

TruncatedChain::TruncatedChain(std::vector<FgAbGroup> g, std::vector<GroupHom> m)
    : groups(std::move(g)), maps(std::move(m)) {
  if (groups.empty()) throw std::invalid_argument("TruncatedChain: needs at least one level");
  if (maps.size() + 1 != groups.size()) throw std::invalid_argument("TruncatedChain: needs N-1 maps");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].source() != groups[i + 1] || maps[i].target() != groups[i]) {
      throw std::invalid_argument("TruncatedChain: map " + std::to_string(i + 1) + " does not match its levels");
    }
  }
}

TruncatedChain TruncatedChain::from_system(const InverseSystem& s, std::size_t levels) {
  std::vector<FgAbGroup> g;
  std::vector<GroupHom> m;
  for (std::size_t n = 1; n <= levels; ++n) {
    g.push_back(s.group_at(n));
    if (n < levels) m.push_back(s.map_at(n));
  }
  return {std::move(g), std::move(m)};
}

DirectSum TruncatedChain::product() const { return direct_sum(groups); }

DirectSum TruncatedChain::codomain() const {
  return direct_sum(std::vector<FgAbGroup>(groups.begin(), groups.end() - 1));
}

std::vector<Vector> delta(const TruncatedChain& chain, const std::vector<Vector>& x) {
  if (x.size() != chain.length()) {
    throw std::invalid_argument("delta: tuple has " + std::to_string(x.size()) + " entries, chain has " +
                                std::to_string(chain.length()) + " levels");
  }
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (!chain.groups[n].is_reduced(x[n])) {
      throw std::invalid_argument("delta: entry " + std::to_string(n + 1) + " is not an element of its group");
    }
  }
  std::vector<Vector> out;
  for (std::size_t n = 0; n + 1 < x.size(); ++n) {
    out.push_back(chain.groups[n].subtract(x[n], chain.maps[n].apply(x[n + 1])));
  }
  return out;
}

GroupHom delta_hom(const TruncatedChain& chain) {
  const DirectSum src = chain.product();
  const DirectSum dst = chain.codomain();
  Matrix block(dst.concatenated_rank(), src.concatenated_rank());
  for (std::size_t n = 0; n + 1 < chain.length(); ++n) {
    const std::size_t r0 = dst.offsets[n];
    for (std::size_t i = 0; i < chain.groups[n].rank(); ++i) block(r0 + i, src.offsets[n] + i) = 1;
    const Matrix& f = chain.maps[n].matrix();
    for (std::size_t i = 0; i < f.rows(); ++i) {
      for (std::size_t j = 0; j < f.cols(); ++j) block(r0 + i, src.offsets[n + 1] + j) = -f(i, j);
    }
  }
  return direct_sum_hom(src, dst, block);
}

TruncatedLimit lim_truncated(const TruncatedChain& chain) {
  const GroupHom d = delta_hom(chain);
  Subgroup ker = kernel(d).subgroup;
  const DirectSum prod = chain.product();
  const std::size_t top = chain.length() - 1;
  const FgAbGroup& gn = chain.groups[top];

  std::vector<Vector> cols;
  for (std::size_t j = 0; j < gn.rank(); ++j) {
    std::vector<Vector> pieces(chain.length());
    pieces[top] = gn.basis_vector(j);
    for (std::size_t n = top; n > 0; --n) pieces[n - 1] = chain.maps[n - 1].apply(pieces[n]);
    auto coords = ker.coordinates_of(prod.pack(pieces));
    if (!coords) throw std::logic_error("lim_truncated: coherent tuple outside ker delta");
    cols.push_back(std::move(*coords));
  }
  FgAbGroup g = ker.normal_form();
  GroupHom witness(gn, g, Matrix::from_columns(cols, g.rank()));
  return {std::move(g), std::move(ker), std::move(witness)};
}

FgAbGroup lim1_truncated(const TruncatedChain& chain) {
  const GroupHom d = delta_hom(chain);
  return quotient(d.target(), image(d)).group;
}

Lim1Verdict lim1_verdict(const InverseSystem& s) {
  Lim1Verdict v;
  v.certificate = is_mittag_leffler(s);
  v.value = v.certificate.verdict ? Lim1Value::Zero : Lim1Value::Uncountable;
  return v;
}

// ------------------------------------------------------------ short exact sequences

std::size_t ses_window(const InverseSystem& sub, const InverseSystem& mid, const InverseSystem& quot) {
  std::size_t start = 0, period = 1;
  for (const InverseSystem* s : {&sub, &mid, &quot}) {
    if (s->is_finite_chain()) throw MathError("short exact sequence of finite chains is not supported");
    start = std::max(start, s->tail_start());
    period = std::lcm(period, s->period());
  }
  return start + period;
}

SystemSES surjectivization_ses(const InverseSystem& s) {
  const Surjectivization surj = surjectivize_with_data(s);
  const std::size_t k = s.prefix_length();
  const std::size_t p = s.period();

  std::vector<QuotientResult> q;
  for (std::size_t n = 1; n <= k + p; ++n) q.push_back(quotient(s.base_group(n), surj.base_images[n - 1]));
  std::vector<FgAbGroup> prefix, cycle;
  std::vector<GroupHom> maps;
  for (std::size_t n = 1; n <= k + p; ++n) {
    (n <= k ? prefix : cycle).push_back(q[n - 1].group);
    const QuotientResult& above = n == k + p ? q[k] : q[n];
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < above.group.rank(); ++j) {
      auto lift = solve_preimage(above.projection, above.group.basis_vector(j));
      if (!lift) throw std::logic_error("surjectivization_ses: quotient map not surjective");
      cols.push_back(q[n - 1].projection.apply(s.base_map(n).apply(*lift)));
    }
    maps.emplace_back(above.group, q[n - 1].group, Matrix::from_columns(cols, q[n - 1].group.rank()));
  }

  SystemSES ses{surj.system, s, InverseSystem::periodic(std::move(prefix), std::move(cycle), std::move(maps)), {},
                {}};
  const std::size_t w = ses_window(ses.sub, ses.mid, ses.quot);
  for (std::size_t n = 1; n <= w; ++n) {
    ses.inclusions.push_back(surj.inclusion(s, n));
    const std::size_t idx = n <= k + p ? n - 1 : k + (n - k - 1) % p;
    GroupHom proj = q[idx].projection;
    if (s.has_towers()) proj = compose(proj, s.layout(n).sum.projection(0));
    ses.projections.push_back(std::move(proj));
  }
  return ses;
}

bool check_ses(const SystemSES& ses) {
  const std::size_t w = ses_window(ses.sub, ses.mid, ses.quot);
  if (ses.inclusions.size() < w || ses.projections.size() < w) return false;
  for (std::size_t n = 1; n <= w; ++n) {
    const GroupHom& inc = ses.inclusions[n - 1];
    const GroupHom& proj = ses.projections[n - 1];
    if (inc.source() != ses.sub.group_at(n) || inc.target() != ses.mid.group_at(n)) return false;
    if (proj.source() != ses.mid.group_at(n) || proj.target() != ses.quot.group_at(n)) return false;
    if (!is_injective(inc) || !is_surjective(proj)) return false;
    if (!subgroup_equal(image(inc), kernel(proj).subgroup)) return false;
  }
  for (std::size_t n = 1; n < w; ++n) {
    if (compose(ses.inclusions[n - 1], ses.sub.map_at(n)) != compose(ses.mid.map_at(n), ses.inclusions[n])) {
      return false;
    }
    if (compose(ses.projections[n - 1], ses.mid.map_at(n)) != compose(ses.quot.map_at(n), ses.projections[n])) {
      return false;
    }
  }
  return true;
}

bool SixTermReport::consistent() const {
  return connecting_consistent && lim1_tail_consistent && lim_row_exact.value_or(true);
}

SixTermReport six_term_report(const SystemSES& ses) {
  if (!check_ses(ses)) {
    throw MathError("six_term_report: the levelwise data is not a short exact sequence of systems");
  }
  SixTermReport r;
  r.lim1_sub = lim1_verdict(ses.sub);
  r.lim1_mid = lim1_verdict(ses.mid);
  r.lim1_quot = lim1_verdict(ses.quot);
  r.class_sub = classify_limit(ses.sub);
  r.class_mid = classify_limit(ses.mid);
  r.class_quot = classify_limit(ses.quot);

  const std::size_t n = ses_window(ses.sub, ses.mid, ses.quot);
  r.horizon = n;
  const Subgroup gs = r.class_sub.certificate.surjectivized.image_at(ses.sub, n);
  const Subgroup gm = r.class_mid.certificate.surjectivized.image_at(ses.mid, n);
  const Subgroup gq = r.class_quot.certificate.surjectivized.image_at(ses.quot, n);
  const GroupHom& inc = ses.inclusions[n - 1];
  const GroupHom& proj = ses.projections[n - 1];

  r.lim_surjective_at_horizon = subgroup_equal(map_subgroup(proj, gm), gq);
  r.connecting_consistent = r.lim_surjective_at_horizon || r.lim1_sub.value == Lim1Value::Uncountable;
  r.lim1_tail_consistent = !(r.lim1_quot.value == Lim1Value::Uncountable && r.lim1_mid.value == Lim1Value::Zero);

  if (r.lim1_sub.certificate.verdict && r.lim1_mid.certificate.verdict && r.lim1_quot.certificate.verdict) {
    const Subgroup sub_image = map_subgroup(inc, gs);
    const Subgroup kernel_in_gm = intersect(gm, kernel(proj).subgroup);
    r.lim_row_exact = subgroup_contains(gm, sub_image) && subgroup_equal(sub_image, kernel_in_gm) &&
                      r.lim_surjective_at_horizon;
  }
  return r;
}

}  // namespace prolim
