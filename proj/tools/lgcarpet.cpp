// Command-line front end: one subcommand per library operation.
//
// Exit status: 0 on success (including Undetermined verdicts), 1 on domain
// errors such as constraint violations, 2 on usage errors.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lgc/approx.hpp"
#include "lgc/carpet.hpp"
#include "lgc/dimension.hpp"
#include "lgc/disconnect.hpp"
#include "lgc/error.hpp"
#include "lgc/gaps.hpp"
#include "lgc/io.hpp"
#include "lgc/report.hpp"
#include "lgc/structure.hpp"

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

// Thrown after a validation report has been printed.
struct InvalidSpec {};

lgc::CarpetSpec load_valid(const std::string& path) {
  auto spec = lgc::load_spec(path);
  const auto violations = lgc::validate(spec);
  if (!violations.empty()) {
    lgc::Json doc;
    doc["valid"] = false;
    doc["violations"] = lgc::to_json(violations);
    std::cerr << lgc::render_json(doc);
    throw InvalidSpec{};
  }
  return spec;
}

lgc::Coding parse_coding(const std::string& text) {
  lgc::Coding coding;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      coding.push_back(v - 1);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--coding", "expected comma-separated row numbers, got '" + text + "'");
    }
  }
  if (coding.empty()) throw CLI::ValidationError("--coding", "empty coding");
  return coding;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-affine carpet toolkit: dimensions, gap sequences, disconnectedness"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_path;
  std::function<int()> action;

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check the carpet constraints");
  validate_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  validate_cmd->callback([&] {
    action = [&] {
      const auto spec = lgc::load_spec(spec_path);
      const auto violations = lgc::validate(spec);
      lgc::Json doc;
      doc["valid"] = violations.empty();
      doc["spec_hash"] = spec.hash();
      doc["violations"] = lgc::to_json(violations);
      lgc::write_text("", lgc::render_json(doc));
      return violations.empty() ? 0 : kDomainError;
    };
  });

  // dimension
  double tol = lgc::kDefaultDimensionTol;
  auto* dimension_cmd = app.add_subcommand("dimension", "Solve for s1 and the box dimension");
  dimension_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  dimension_cmd->add_option("--tol", tol, "Residual bound")->capture_default_str();
  dimension_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      lgc::write_text("", lgc::render_json(lgc::to_json(lgc::solve_bdim(spec, tol))));
      return 0;
    };
  });

  // render
  int depth = -1;
  double delta = 0.0;
  auto* render_cmd = app.add_subcommand("render", "Draw cylinder rectangles as SVG");
  render_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  auto* depth_opt = render_cmd->add_option("--depth", depth, "Word length")->check(CLI::NonNegativeNumber);
  auto* delta_opt = render_cmd->add_option("--delta", delta, "Stopping scale instead of a depth")
                        ->check(CLI::PositiveNumber);
  depth_opt->excludes(delta_opt);
  render_cmd->add_option("--out", out_path, "Output SVG (stdout when omitted)");
  render_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      std::string svg;
      if (*delta_opt) {
        svg = lgc::render_svg_scale(spec, delta);
      } else {
        svg = lgc::render_svg_depth(spec, depth < 0 ? 1 : depth);
      }
      lgc::write_text(out_path, svg);
      return 0;
    };
  });

  // boxcount
  double delta_max = 0.5, delta_min = 1e-3;
  int steps = 10;
  auto* box_cmd = app.add_subcommand("boxcount", "Covering counts over a geometric range of scales");
  box_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  box_cmd->add_option("--delta-max", delta_max)->capture_default_str();
  box_cmd->add_option("--delta-min", delta_min)->capture_default_str();
  box_cmd->add_option("--steps", steps)->capture_default_str();
  box_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");
  box_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      lgc::write_text(out_path, lgc::curve_csv(lgc::n_delta_curve(spec, delta_max, delta_min, steps)));
      return 0;
    };
  });

  // gaps
  double delta_res = 1e-3;
  std::size_t top = 50;
  auto* gaps_cmd = app.add_subcommand("gaps", "Gap sequence of the stopping approximation");
  gaps_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  gaps_cmd->add_option("--delta-res", delta_res)->capture_default_str();
  gaps_cmd->add_option("--top", top, "Entries written (0 = all)")->capture_default_str();
  gaps_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");
  gaps_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      const auto gaps = lgc::gap_sequence_of_carpet(spec, delta_res);
      lgc::write_text(out_path, lgc::gaps_csv(gaps.sequence, top));
      return 0;
    };
  });

  // scaling
  auto* scaling_cmd = app.add_subcommand("scaling", "Fit alpha_k against k^(-1/s)");
  scaling_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  scaling_cmd->add_option("--delta-res", delta_res)->capture_default_str();
  scaling_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      const auto dim = lgc::solve_bdim(spec);
      const auto gaps = lgc::gap_sequence_of_carpet(spec, delta_res);
      auto doc = lgc::to_json(lgc::scaling_fit(gaps.sequence, dim.s), dim.s);
      doc["s"] = dim.s;
      doc["delta_res"] = delta_res;
      lgc::write_text("", lgc::render_json(doc));
      return 0;
    };
  });

  // fibers
  std::string coding_text;
  int fiber_depth = 0;
  auto* fibers_cmd = app.add_subcommand("fibers", "Interval approximation of a horizontal fiber");
  fibers_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  fibers_cmd->add_option("--coding", coding_text, "Row itinerary, e.g. 1,2,2 (repeated periodically)")
      ->required();
  fibers_cmd->add_option("--depth", fiber_depth, "Digits used (default: coding length)")
      ->check(CLI::PositiveNumber);
  fibers_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");
  fibers_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      const auto base = parse_coding(coding_text);
      const auto n = fiber_depth > 0 ? static_cast<std::size_t>(fiber_depth) : base.size();
      lgc::Coding coding;
      for (std::size_t k = 0; k < n; ++k) coding.push_back(base[k % base.size()]);
      lgc::write_text(out_path, lgc::intervals_csv(lgc::fiber_approx(spec, coding)));
      return 0;
    };
  });

  // check-ud
  int max_depth = 8;
  auto* ud_cmd = app.add_subcommand("check-ud", "Decide uniform disconnectedness");
  ud_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  ud_cmd->add_option("--max-depth", max_depth)->capture_default_str()->check(CLI::PositiveNumber);
  ud_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      lgc::write_text("", lgc::render_json(lgc::to_json(lgc::check_uniform_disconnectedness(spec, max_depth))));
      return 0;
    };
  });

  // chain
  double epsilon = 0.1;
  int depth_pad = 40;
  auto* chain_cmd = app.add_subcommand("chain", "Epsilon0-chain when every row is nonempty");
  chain_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  chain_cmd->add_option("--epsilon", epsilon)->capture_default_str();
  chain_cmd->add_option("--depth-pad", depth_pad)->capture_default_str();
  chain_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");
  chain_cmd->callback([&] {
    action = [&] {
      const auto spec = load_valid(spec_path);
      lgc::write_text(out_path, lgc::chain_csv(lgc::build_epsilon_chain(spec, epsilon, depth_pad)));
      return 0;
    };
  });

  // report
  lgc::ReportOptions report_options;
  auto* report_cmd = app.add_subcommand("report", "Combined JSON: dimensions, verdict, gap scaling");
  report_cmd->add_option("spec", spec_path, "Spec JSON file")->required();
  report_cmd->add_option("--delta-res", report_options.delta_res)->capture_default_str();
  report_cmd->add_option("--max-depth", report_options.max_depth)->capture_default_str();
  report_cmd->add_option("--top", report_options.top)->capture_default_str();
  report_cmd->add_option("--out", out_path, "Output JSON (stdout when omitted)");
  report_cmd->callback([&] {
    action = [&] {
      const auto spec = lgc::load_spec(spec_path);
      const auto doc = lgc::build_report(spec, report_options);
      lgc::write_text(out_path, lgc::render_json(doc));
      return doc["validation"].empty() ? 0 : kDomainError;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    return action();
  } catch (const InvalidSpec&) {
    return kDomainError;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  } catch (const lgc::Error& e) {
    std::cerr << e.what() << "\n";
    return kDomainError;
  }
}
