#include "prolim_tools/reports.hpp"

#include "prolim/prospace.hpp"

namespace prolim::io {

json to_json(const MLCertificate& c) {
  json levels = json::array();
  for (const auto& l : c.per_level) {
    levels.push_back({{"level", l.level}, {"witness", l.witness}, {"index", to_json(l.index)}});
  }
  return {{"verdict", c.verdict}, {"per_level", levels}};
}

json to_json(const KernelEntry& k) {
  return {{"level", k.level}, {"group", to_json(k.group)}, {"finite", k.finite}};
}

json to_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& t : trace) out.push_back({{"predicate", t.predicate}, {"value", t.value}, {"rule", t.rule}});
  return out;
}

namespace {

json kernels_json(const std::vector<KernelEntry>& ks) {
  json out = json::array();
  for (const auto& k : ks) out.push_back(to_json(k));
  return out;
}

json optional_size(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

json class_json(const TopologyClass& t) {
  json out{{"tag", tag_name(t.tag)}, {"symbol", class_symbol(t.tag)}};
  out["cardinality"] = t.cardinality ? to_json(*t.cardinality) : json(nullptr);
  return out;
}

std::string lim1_name(Lim1Value v) { return v == Lim1Value::Zero ? "Zero" : "Uncountable"; }

}  // namespace

json to_json(const ClassifyResult& r, bool with_trace) {
  const ClassCertificate& c = r.certificate;
  json cert{{"case", c.case_label},
            {"tail_start", c.tail_start},
            {"stabilizes_at", optional_size(c.stabilizes_at)},
            {"infinite_kernels", infinite_kernels_name(c.infinite_kernels)},
            {"kernels", kernels_json(c.kernels)},
            {"surjectivized", to_json(c.surjectivized.system)}};
  json out{{"class", class_json(r.topology)}, {"certificate", cert}};
  if (with_trace) out["trace"] = to_json(c.trace);
  return out;
}

json classify_report(const SystemDocument& doc, bool trace) {
  json out = to_json(classify_limit(doc.system), trace);
  out["command"] = "classify";
  out["name"] = doc.name;
  return out;
}

json kk_classify_report(const SystemDocument& doc, bool trace) {
  if (!doc.sb_system) throw InputError("/sb_system", "kk-classify needs a second system under \"sb_system\"");
  const KKResult r = classify_kk(doc.system, *doc.sb_system);
  json out{{"command", "kk-classify"},
           {"name", doc.name},
           {"row", r.verdict.row()},
           {"symbol", r.verdict.symbol()},
           {"display", r.verdict.display()},
           {"lim_part", tag_name(r.verdict.lim_part.tag)},
           {"closure_of_zero",
            r.verdict.closure_of_zero == ClosureOfZero::Zero ? "Zero" : "UncountableIndiscrete"},
           {"lim", to_json(r.lim, false)},
           {"sb_mittag_leffler", to_json(r.sb_certificate)}};
  if (trace) out["trace"] = to_json(r.trace);
  return out;
}

json ml_report(const SystemDocument& doc) {
  const Lim1Verdict v = lim1_verdict(doc.system);
  json out = to_json(v.certificate);
  out["command"] = "ml";
  out["name"] = doc.name;
  out["lim1"] = lim1_name(v.value);
  return out;
}

json surjectivize_report(const SystemDocument& doc) {
  const Surjectivization s = surjectivize_with_data(doc.system);
  bool zero = true;
  for (std::size_t n = 1; n <= s.system.window(); ++n) zero = zero && s.system.group_at(n).is_trivial();
  return {{"command", "surjectivize"}, {"name", doc.name}, {"system", to_json(s.system)}, {"zero", zero}};
}

json kernels_report(const SystemDocument& doc) {
  const InverseSystem s = surjectivize(doc.system);
  const std::vector<KernelEntry> ks = kernel_sequence(s);
  const Stabilization st = stabilizes(ks, s.tail_start());
  return {{"command", "kernels"},
          {"name", doc.name},
          {"kernels", kernels_json(ks)},
          {"tail_start", s.tail_start()},
          {"period", s.period()},
          {"stabilizes", st.stabilizes},
          {"stabilizes_at", optional_size(st.stabilizes ? st.index : std::nullopt)}};
}

json sample_report(const SystemDocument& doc, std::size_t level, std::size_t cap) {
  const LimitSpace space(doc.system);
  const Subgroup img = space.limit_image(level);
  const FgAbGroup& h = img.normal_form();
  json tuples = json::array();
  const bool complete = h.is_finite();
  const std::vector<Vector> elems = complete ? h.elements(cap) : h.first_elements(cap);
  for (const auto& e : elems) tuples.push_back(to_json(space.from_top(level, img.inclusion().apply(e))));
  return {{"command", "sample"},
          {"name", doc.name},
          {"level", level},
          {"image", to_json(h)},
          {"complete", complete},
          {"tuples", tuples}};
}

json metric_report(const SystemDocument& doc, const json& x, const json& y) {
  const LimitSpace space(doc.system);
  const CoherentTuple tx = tuple_from_json(x, space, "/x");
  const CoherentTuple ty = tuple_from_json(y, space, "/y");
  const MetricValue d = space.metric(tx, ty);
  json out{{"command", "metric"}, {"name", doc.name}, {"metric", d.to_string()}};
  switch (d.kind) {
    case MetricKind::Exact: out["kind"] = "Exact"; break;
    case MetricKind::Zero: out["kind"] = "Zero"; break;
    case MetricKind::AtMost: out["kind"] = "AtMost"; break;
  }
  out["exponent"] = d.kind == MetricKind::Zero ? json(nullptr) : json(d.exponent);
  if (d.kind == MetricKind::Exact) {
    const Cylinder c = space.separating_clopen(tx, ty);
    out["separating_cylinder"] = {{"level", c.level}, {"base_point", to_json(c.base_point)}};
  } else {
    out["separating_cylinder"] = nullptr;
  }
  return out;
}

json dense_report(const SystemDocument& doc, std::size_t budget, std::size_t cap) {
  const LimitSpace space(doc.system);
  json tuples = json::array();
  for (const auto& t : space.dense_family(budget, cap)) tuples.push_back(to_json(t));
  return {{"command", "dense"}, {"name", doc.name}, {"budget", budget}, {"count", tuples.size()}, {"tuples", tuples}};
}

json split_demo_report(const std::string& name) {
  const FiniteTopAbGroup g = split_demo_group(name);
  const QuotientTopology q = quotient_topology(g);
  const ElementSet cl = closure_of_zero_set(g);
  auto members = [&](ElementSet s) {
    json out = json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
      if ((s >> i) & 1U) out.push_back(to_json(g.elements()[i]));
    }
    return out;
  };

  json sections = json::array();
  bool all_ok = true;
  std::optional<bool> first;
  bool independent = true;
  for (const auto& s : all_sections(g, q)) {
    const SplittingReport r = splitting_check(g, s);
    json table = json::array();
    for (std::size_t idx : s.table) table.push_back(to_json(g.elements()[idx]));
    sections.push_back({{"section", table},
                        {"bijective", r.bijective},
                        {"continuous", r.continuous},
                        {"inverse_continuous", r.inverse_continuous},
                        {"sandwich", r.sandwich},
                        {"opens_checked", r.opens_checked},
                        {"basic_opens_checked", r.basic_opens_checked}});
    all_ok = all_ok && r.ok();
    if (first && *first != r.ok()) independent = false;
    first = r.ok();
  }

  std::vector<ElementSet> basis;
  for (ElementSet o : g.opens()) {
    if (o & 1U) basis.push_back(o);
  }
  json opens = json::array();
  for (ElementSet o : g.opens()) opens.push_back(members(o));
  return {{"command", "split-demo"},
          {"name", name},
          {"group", to_json(g.group())},
          {"opens", opens},
          {"closure_of_zero", members(cl)},
          {"quotient", {{"group", to_json(q.group.group())}, {"open_count", q.group.opens().size()},
                        {"discrete", q.group.opens().size() == (std::size_t{1} << q.group.order())}}},
          {"sections", sections},
          {"homeomorphism", all_ok},
          {"section_independent", independent},
          {"translated_basis", translated_basis_check(g, basis)}};
}

json six_term_report_json(const SystemDocument& doc) {
  const SystemSES ses = surjectivization_ses(doc.system);
  const SixTermReport r = six_term_report(ses);
  auto part = [](const Lim1Verdict& v, const ClassifyResult& c) {
    return json{{"lim1", lim1_name(v.value)}, {"class", class_json(c.topology)}};
  };
  return {{"command", "six-term"},
          {"name", doc.name},
          {"sub", part(r.lim1_sub, r.class_sub)},
          {"mid", part(r.lim1_mid, r.class_mid)},
          {"quot", part(r.lim1_quot, r.class_quot)},
          {"horizon", r.horizon},
          {"lim_surjective_at_horizon", r.lim_surjective_at_horizon},
          {"connecting_consistent", r.connecting_consistent},
          {"lim_row_exact", r.lim_row_exact ? json(*r.lim_row_exact) : json(nullptr)},
          {"lim1_tail_consistent", r.lim1_tail_consistent},
          {"consistent", r.consistent()}};
}

}  // namespace prolim::io
