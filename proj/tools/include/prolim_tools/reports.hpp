#pragma once

#include <string>

#include "prolim/classify.hpp"
#include "prolim/homalg.hpp"
#include "prolim/invsys.hpp"
#include "prolim/topgrp.hpp"
#include "prolim_tools/json_io.hpp"

namespace prolim::io {

json to_json(const MLCertificate& c);
json to_json(const KernelEntry& k);
json to_json(const ClassifyResult& r, bool with_trace);
json to_json(const std::vector<TraceStep>& trace);

json classify_report(const SystemDocument& doc, bool trace);
/// Needs doc.sb_system; throws InputError otherwise.
json kk_classify_report(const SystemDocument& doc, bool trace);
json ml_report(const SystemDocument& doc);
json surjectivize_report(const SystemDocument& doc);
json kernels_report(const SystemDocument& doc);
json sample_report(const SystemDocument& doc, std::size_t level, std::size_t cap);
/// x and y are tuple objects.
json metric_report(const SystemDocument& doc, const json& x, const json& y);
json dense_report(const SystemDocument& doc, std::size_t budget, std::size_t cap);
json split_demo_report(const std::string& name);
json six_term_report_json(const SystemDocument& doc);

}  // namespace prolim::io
