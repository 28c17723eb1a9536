// qst: command-line front end for rate regions, sweeps, bounds and resource
// inequalities. Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "qst/entropy.hpp"
#include "qst/io.hpp"
#include "qst/models.hpp"
#include "qst/optimizer.hpp"
#include "qst/ri.hpp"
#include "qst/tradeoff.hpp"
#include "qst/unit.hpp"

namespace {

using nlohmann::json;
using qst::io::format_double;

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

qst::RateTriple parse_triple(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in triple '" + text + "'");
    }
  }
  if (v.size() != 3) throw UsageError("expected C,Q,E but got '" + text + "'");
  return {v[0], v[1], v[2]};
}

qst::Model load_model(const std::string& spec) {
  try {
    return qst::parse_model(spec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string triple_text(const qst::RateTriple& x) {
  return "(" + format_double(x.C) + ", " + format_double(x.Q) + ", " + format_double(x.E) + ")";
}

/// "C+2Q <= 0" from a facet normal.
std::string facet_text(const qst::Facet& f) {
  static const char* axis[] = {"C", "Q", "E"};
  double unit = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double a = std::abs(f.normal(i));
    if (a > 1e-12 && (unit == 0.0 || a < unit)) unit = a;
  }
  if (unit == 0.0) unit = 1.0;
  std::string out;
  for (int i = 0; i < 3; ++i) {
    const double c = f.normal(i) / unit;
    if (std::abs(c) <= 1e-12) continue;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    const double mag = std::abs(c);
    if (std::abs(mag - 1.0) > 1e-12) out += format_double(std::round(mag * 1e9) / 1e9);
    out += axis[i];
  }
  return out + " <= " + format_double(f.offset / unit);
}

void echo(const json& config) { std::cerr << "config: " << config.dump() << '\n'; }

// --- unit-region ---------------------------------------------------------------

int cmd_unit_region(const std::string& format, const std::string& point) {
  echo({{"command", "unit-region"}, {"format", format}, {"point", point}});
  const auto region = qst::unit_region();
  if (format == "json") {
    std::cout << qst::io::to_json(region).dump(2) << '\n';
    return 0;
  }
  if (format == "facets") {
    for (const auto& f : qst::unit_facets()) std::cout << facet_text(f) << '\n';
    return 0;
  }
  if (point.empty()) throw UsageError("--format check needs --point C,Q,E");
  const auto x = parse_triple(point);
  const bool inside = qst::contains(region, x);
  const auto w = qst::unit_coefficients(x);
  std::cout << (inside ? "inside" : "outside") << '\n';
  std::cout << "coefficients (TP, SD, ED): " << triple_text({w.tp, w.sd, w.ed}) << '\n';
  for (const auto& f : qst::unit_facets()) {
    if (f.normal.dot(x.vec()) > f.offset + 1e-9) std::cout << "violated facet: " << facet_text(f) << '\n';
  }
  return 0;
}

// --- region --------------------------------------------------------------------

struct RegionArgs {
  std::string mode;
  std::string model;
  qst::SweepConfig cfg;
  std::size_t grid = 0;
  std::string out = "region.json";
};

int cmd_region(RegionArgs args) {
  if (args.mode != "dynamic" && args.mode != "static") throw UsageError("region mode must be dynamic or static");
  if (args.grid > 0) args.cfg.grid = args.grid;
  const auto model = load_model(args.model);
  json config = {{"command", "region"},          {"mode", args.mode},
                 {"model", model.spec()},        {"samples", args.cfg.samples},
                 {"seed", args.cfg.seed},        {"k", args.cfg.k},
                 {"max_outcomes", args.cfg.max_outcomes}, {"grid", args.grid},
                 {"refine_iters", args.cfg.refine_iters}, {"workers", args.cfg.workers},
                 {"out", args.out}};
  echo(config);

  std::vector<qst::OneShotPoint> points;
  if (args.cfg.samples > 0) {
    try {
      args.cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (args.mode == "dynamic") {
      if (!model.channel) throw UsageError("dynamic sweeps need a channel model");
      points = qst::sweep_cef(*model.channel, args.cfg);
    } else {
      if (!model.state) throw UsageError("static sweeps need a state model");
      points = qst::sweep_casr(*model.state, args.cfg);
    }
  }
  const auto region = qst::reduce(qst::assemble_region(points));

  const std::filesystem::path out(args.out);
  auto sibling = [&](const std::string& suffix) {
    auto p = out;
    p.replace_extension();
    return p.string() + suffix;
  };
  const std::string csv_path = sibling(".points.csv");
  const std::string report_path = sibling(".sweep.json");

  qst::io::write_text_file(out.string(), qst::io::to_json(region).dump(2) + "\n");
  std::ostringstream csv;
  qst::io::write_points_csv(csv, points);
  qst::io::write_text_file(csv_path, csv.str());
  json report = {{"config", config},
                 {"points_csv", std::filesystem::path(csv_path).filename().string()},
                 {"region_json", out.filename().string()},
                 {"point_count", points.size()}};
  qst::io::write_text_file(report_path, report.dump(2) + "\n");

  std::cout << "points: " << points.size() << '\n'
            << "region: " << out.string() << " (" << region.points().size() << " points, "
            << region.rays().size() << " rays, " << region.half_spaces().facets.size() << " facets)\n"
            << "points csv: " << csv_path << '\n'
            << "sweep report: " << report_path << '\n';
  return 0;
}

// --- bounds --------------------------------------------------------------------

int cmd_bounds(const std::string& octant, const std::string& model_spec, const std::string& point,
               const std::string& ensemble_path, const std::string& instrument_path) {
  echo({{"command", "bounds"}, {"octant", octant}, {"model", model_spec}, {"point", point},
        {"ensemble", ensemble_path}, {"instrument", instrument_path}});
  qst::OrthantSpec spec;
  try {
    spec = qst::OrthantSpec::parse(octant);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const std::string key = spec.str();
  const auto model = load_model(model_spec);
  const auto x = parse_triple(point);

  qst::BoundReport report;
  if (key == "(-,-,+)") {
    if (!model.state) throw UsageError("the (-,-,+) bounds need a state model");
    const auto inst = instrument_path.empty()
                          ? qst::Instrument::trivial(model.state->subsystem("A").dim)
                          : qst::io::instrument_from_json(qst::io::read_json_file(instrument_path));
    report = qst::casr_octant_bounds(qst::build_sigma_static(*model.state, inst), x);
  } else if (key == "(+,+,-)" || key == "(-,+,-)" || key == "(+,-,-)") {
    if (!model.channel) throw UsageError("the " + key + " bounds need a channel model");
    const auto ens = ensemble_path.empty() ? qst::Ensemble::maximally_entangled(model.channel->in_dim())
                                           : qst::io::ensemble_from_json(qst::io::read_json_file(ensemble_path));
    const auto sigma = qst::build_sigma_dynamic(*model.channel, ens);
    if (key == "(+,+,-)") report = qst::cef_octant_bounds(sigma, x);
    else if (key == "(-,+,-)") report = qst::caq_bounds(sigma, x);
    else report = qst::eaq_classical_bounds(sigma, x);
  } else {
    throw UsageError("no bound family for octant " + key + "; use (+,+,-), (-,+,-), (+,-,-) or (-,-,+)");
  }

  std::cout << report.family << " on " << report.octant << " at " << triple_text(x)
            << (report.in_octant ? "" : " (point lies outside this octant)") << '\n';
  for (const auto& c : report.checks) {
    std::cout << "  " << c.name << ": " << format_double(c.lhs) << " <= " << format_double(c.rhs)
              << "  slack " << format_double(c.slack()) << '\n';
  }
  std::cout << (report.passed(1e-9) ? "satisfied" : "violated") << '\n';
  return 0;
}

// --- ri ------------------------------------------------------------------------

int cmd_ri_parse(const std::string& text) {
  echo({{"command", "ri parse"}, {"expr", text}});
  const auto e = qst::ri::parse(text);
  std::cout << qst::ri::print(e) << '\n';
  try {
    const auto net = qst::ri::net_rate(e);
    std::cout << "net rate (C, Q, E): " << triple_text(net.rate);
    if (net.has_noisy()) std::cout << " using <" << net.noisy << ">";
    std::cout << '\n';
  } catch (const qst::ri::RateError& err) {
    std::cout << "net rate: unavailable (" << err.what() << ")\n";
  }
  return 0;
}

int cmd_ri_derive(const std::string& target_text, const std::vector<std::string>& using_text) {
  echo({{"command", "ri derive"}, {"target", target_text}, {"using", using_text}});
  const auto target = qst::ri::parse(target_text);
  std::vector<qst::ri::Expr> protocols;
  for (const auto& t : using_text) protocols.push_back(qst::ri::parse(t));
  const auto d = qst::ri::derivable(target, protocols);
  std::cout << "target: " << qst::ri::print(target) << '\n';
  if (!d.derivable) {
    std::cout << "not derivable" << (d.reason.empty() ? "" : ": " + d.reason) << '\n';
    return 0;
  }
  std::cout << "derivable\n";
  for (std::size_t i = 0; i < protocols.size(); ++i) {
    std::cout << "  " << format_double(d.protocol_weights[i]) << " x " << qst::ri::print(protocols[i]) << '\n';
  }
  std::cout << "  waste (C, Q, E): " << triple_text(d.waste) << '\n';
  std::cout << "  replayed net rate: " << triple_text(qst::ri::replay(d, protocols)) << '\n';
  return 0;
}

// --- reference -----------------------------------------------------------------

void row(const std::string& name, double closed, double numeric) {
  std::cout << "  " << name << ": closed " << format_double(closed) << "  numeric " << format_double(numeric)
            << "  delta " << format_double(numeric - closed) << '\n';
}

int cmd_reference(const std::string& spec) {
  const auto model = load_model(spec);
  echo({{"command", "reference"}, {"model", model.spec()}});
  std::cout << model.spec() << '\n';
  if (model.name == "erased") {
    const double eps = model.params.at("eps");
    const auto ref = qst::erased_state_reference(eps);
    const auto& rho = *model.state;
    row("H(A)", ref.H_A, qst::von_neumann(rho, {"A"}));
    row("H(B)", ref.H_B, qst::von_neumann(rho, {"B"}));
    row("H(AB)", ref.H_AB, qst::von_neumann(rho, {"A", "B"}));
    row("I(A>B)", ref.coherent_info, qst::coherent_information(rho, {"A"}, {"B"}));
    row("I(A;B)/2", ref.half_I_AB, qst::mutual_information(rho, {"A"}, {"B"}) / 2.0);
    const auto mother = qst::casr_point(rho, qst::Instrument::trivial(2)).triple;
    row("mother C", 0.0, mother.C);
    row("mother Q", -eps, mother.Q);
    row("mother E", 1.0 - eps, mother.E);
    return 0;
  }
  if (model.name == "dephasing") {
    const double p = model.params.at("p");
    const auto ref = qst::dephasing_reference(p);
    const auto phi = qst::cef_point(*model.channel, qst::Ensemble::maximally_entangled(2)).triple;
    qst::SweepConfig cfg;
    cfg.samples = 1;
    cfg.grid = 101;
    cfg.refine_iters = 40;
    row("quantum capacity", ref.quantum_capacity, qst::max_coherent_information(qst::sweep_cef(*model.channel, cfg)));
    row("CEF Q on Phi+", 1.0 - ref.environment_entropy / 2.0, phi.Q);
    row("CEF E on Phi+", -ref.environment_entropy / 2.0, phi.E);
    std::cout << "  note: " << ref.note << '\n';
    return 0;
  }
  if (model.name == "erasure") {
    const double eps = model.params.at("eps");
    const auto phi = qst::cef_point(*model.channel, qst::Ensemble::maximally_entangled(2)).triple;
    row("I(A>B) on Phi+", 1.0 - 2.0 * eps, phi.Q + phi.E);
    row("CEF Q on Phi+", 1.0 - eps, phi.Q);
    return 0;
  }
  if (model.channel) {
    const int d = model.channel->in_dim();
    const auto phi = qst::cef_point(*model.channel, qst::Ensemble::maximally_entangled(d)).triple;
    row("I(A>B) on Phi+", std::log2(static_cast<double>(d)), phi.Q + phi.E);
    return 0;
  }
  const auto& rho = *model.state;
  row("H(A)", 1.0, qst::von_neumann(rho, {"A"}));
  row("I(A>B)", 1.0, qst::coherent_information(rho, {"A"}, {"B"}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions for quantum resource trade-offs"};
  app.require_subcommand(1);

  std::string format = "json", point;
  auto* unit = app.add_subcommand("unit-region", "Unit protocol region: JSON, facets or membership check");
  unit->add_option("--format", format, "json | facets | check")->check(CLI::IsMember({"json", "facets", "check"}));
  unit->add_option("--point", point, "C,Q,E for --format check");
  unit->add_option("--check", point, "shorthand for --format check --point C,Q,E");

  RegionArgs region;
  auto* reg = app.add_subcommand("region", "Sweep one-shot points and assemble a region");
  reg->add_option("mode", region.mode, "dynamic | static")->required();
  reg->add_option("--model", region.model, "model spec, e.g. dephasing:p=0.2")->required();
  reg->add_option("--samples", region.cfg.samples, "random samples (0 = unit region only)");
  reg->add_option("--seed", region.cfg.seed, "random seed");
  reg->add_option("--k", region.cfg.k, "tensor copies (1 or 2)");
  reg->add_option("--max-outcomes", region.cfg.max_outcomes, "ensemble/instrument cardinality cap");
  reg->add_option("--grid", region.grid, "Schmidt angles in the structured qubit family (0 = off)");
  reg->add_option("--refine", region.cfg.refine_iters, "golden-section iterations on the Schmidt angle");
  reg->add_option("--workers", region.cfg.workers, "worker threads");
  reg->add_option("--out", region.out, "region JSON path; the CSV and report are written alongside");

  std::string octant, bmodel, bpoint, ensemble, instrument;
  auto* bounds = app.add_subcommand("bounds", "Evaluate converse bounds at a point");
  bounds->add_option("--octant", octant, "(+,+,-), (-,+,-), (+,-,-) or (-,-,+)")->required();
  bounds->add_option("--model", bmodel, "model spec")->required();
  bounds->add_option("--point", bpoint, "C,Q,E")->required();
  bounds->add_option("--ensemble", ensemble, "ensemble JSON (default: maximally entangled input)");
  bounds->add_option("--instrument", instrument, "instrument JSON (default: trivial instrument)");

  auto* ri = app.add_subcommand("ri", "Resource inequalities");
  ri->require_subcommand(1);
  std::string expr, target;
  std::vector<std::string> using_exprs;
  auto* ri_parse = ri->add_subcommand("parse", "Canonicalize an expression");
  ri_parse->add_option("expr", expr, "expression")->required();
  auto* ri_derive = ri->add_subcommand("derive", "Derive a target from protocols and unit resources");
  ri_derive->add_option("--target", target, "target expression")->required();
  ri_derive->add_option("--using", using_exprs, "protocol expression; repeat for several")->required()->allow_extra_args(false);

  std::string ref_model;
  auto* ref = app.add_subcommand("reference", "Closed-form reference values next to numerics");
  ref->add_option("--model", ref_model, "model spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*unit) return cmd_unit_region(unit->count("--check") ? "check" : format, point);
    if (*reg) return cmd_region(region);
    if (*bounds) return cmd_bounds(octant, bmodel, bpoint, ensemble, instrument);
    if (*ri_parse) return cmd_ri_parse(expr);
    if (*ri_derive) return cmd_ri_derive(target, using_exprs);
    if (*ref) return cmd_reference(ref_model);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const qst::ri::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const qst::ri::RateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const qst::io::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
