#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "prolim/errors.hpp"
#include "prolim/prospace.hpp"
#include "prolim_tools/reports.hpp"

namespace {

using prolim::io::json;

constexpr int kExitInput = 2;
constexpr int kExitMath = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw prolim::io::InputError("", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

prolim::io::SystemDocument load(const std::string& path) { return prolim::io::parse_document(read_file(path)); }

// --x and --y take a tuple object inline or the name of a file holding one.
json tuple_argument(const std::string& arg, const std::string& flag) {
  const std::size_t first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && arg[first] == '{';
  return prolim::io::parse_json(inline_json ? arg : read_file(arg), flag);
}

std::size_t cap_from_env() {
  const char* env = std::getenv("PROLIM_CAP");
  if (env == nullptr || *env == '\0') return prolim::kDefaultEnumerationCap;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw prolim::io::InputError("", std::string("PROLIM_CAP must be a positive integer, got \"") + env + "\"");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse limits of finitely generated abelian groups: classification and diagnostics"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent the JSON output");

  std::string file;
  bool trace = false;
  std::size_t level = 0, budget = 0, cap = 0;
  std::string x_arg, y_arg, demo;

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "System document (JSON)")->required();
    return sub;
  };
  auto* classify = with_file(app.add_subcommand("classify", "Five-class topology of the limit"));
  classify->add_flag("--trace", trace, "Include the derivation trace");
  auto* kk = with_file(app.add_subcommand("kk-classify", "Ten-class topology from a system and its second system"));
  kk->add_flag("--trace", trace, "Include the derivation trace");
  auto* ml = with_file(app.add_subcommand("ml", "Mittag-Leffler certificate and lim^1 verdict"));
  auto* surj = with_file(app.add_subcommand("surjectivize", "Restrict every level to the image of the limit"));
  auto* kernels = with_file(app.add_subcommand("kernels", "Kernel sequence of the surjectivized system"));
  auto* sample = with_file(app.add_subcommand("sample", "Truncations of limit points at a level"));
  sample->add_option("--level", level, "Level N")->required()->check(CLI::PositiveNumber);
  sample->add_option("--cap", cap, "Enumeration cap")->check(CLI::PositiveNumber);
  auto* metric = with_file(app.add_subcommand("metric", "Distance between two coherent tuples"));
  metric->add_option("--x", x_arg, "Tuple (inline JSON or file)")->required();
  metric->add_option("--y", y_arg, "Tuple (inline JSON or file)")->required();
  auto* dense = with_file(app.add_subcommand("dense", "Dense family of tuples up to a level"));
  dense->add_option("--budget", budget, "Level J")->required()->check(CLI::PositiveNumber);
  dense->add_option("--cap", cap, "Enumeration cap")->check(CLI::PositiveNumber);
  auto* split = app.add_subcommand("split-demo", "Verify the splitting G = G/cl{0} x cl{0} on a named example");
  split->add_option("NAME", demo, "indiscrete-z2 | discrete-z4 | mixed-z2-z3")->required();
  auto* six = with_file(app.add_subcommand("six-term", "Six-term sequence checks for 0 -> surjectivized -> G -> quotient -> 0"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (cap == 0) cap = cap_from_env();
    json report;
    if (*classify) {
      report = prolim::io::classify_report(load(file), trace);
    } else if (*kk) {
      report = prolim::io::kk_classify_report(load(file), trace);
    } else if (*ml) {
      report = prolim::io::ml_report(load(file));
    } else if (*surj) {
      report = prolim::io::surjectivize_report(load(file));
    } else if (*kernels) {
      report = prolim::io::kernels_report(load(file));
    } else if (*sample) {
      report = prolim::io::sample_report(load(file), level, cap);
    } else if (*metric) {
      report = prolim::io::metric_report(load(file), tuple_argument(x_arg, "--x"), tuple_argument(y_arg, "--y"));
    } else if (*dense) {
      report = prolim::io::dense_report(load(file), budget, cap);
    } else if (*split) {
      report = prolim::io::split_demo_report(demo);
    } else if (*six) {
      report = prolim::io::six_term_report_json(load(file));
    }
    std::cout << (pretty ? report.dump(2) : prolim::io::canonical(report)) << '\n';
    return 0;
  } catch (const prolim::io::InputError& e) {
    std::cerr << "prolim: input error: " << (file.empty() ? "" : file + ": ") << e.what() << '\n';
    return kExitInput;
  } catch (const prolim::MathError& e) {
    std::cerr << "prolim: precondition failed: " << e.what() << '\n';
    return kExitMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "prolim: input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "prolim: input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "prolim: internal error: " << e.what() << '\n';
    return 1;
  }
}
