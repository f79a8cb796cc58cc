#include "henselium/commands.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "henselium/coarsening.hpp"
#include "henselium/diagnostics.hpp"
#include "henselium/disjointness.hpp"
#include "henselium/error.hpp"
#include "henselium/hensel.hpp"

#ifndef HENSELIUM_SCENARIO_DIR
#define HENSELIUM_SCENARIO_DIR "scenarios"
#endif

namespace henselium {

using nlohmann::json;

namespace {

struct Args {
  std::string vars, field, prec, horizon;
  bool json_output = false;

  std::string poly, start = "1", series, minpoly, henspoly, shift, b, c = "0";
  std::string inner, inner_start = "1", outer, outer_start = "1";
  std::string scenario;
  std::size_t delta = 1;
  std::size_t min_samples = kDefaultMinSamples;
  bool asserted = false;
};

// ---- JSON helpers -------------------------------------------------------

json exponents_json(const std::vector<Exponent>& v) {
  json out = json::array();
  for (const Exponent& e : v) out.push_back(e.str());
  return out;
}

std::vector<std::string> tail_names(const Session& s, const ConvexSubgroup& delta) {
  return {s.variables.end() - static_cast<std::ptrdiff_t>(delta.index()), s.variables.end()};
}

json series_json(const Series& x, const std::vector<std::string>& vars) {
  return {{"text", format_series(x, vars)},
          {"valuation", x.valuation().str()},
          {"precision", x.precision().str()},
          {"terms", x.size()}};
}

json cofinality_json(const CofinalityReport& r) {
  return {{"verdict", verdict_name(r.verdict)},
          {"alpha", r.candidate_alpha.str()},
          {"delta", r.candidate_delta ? json(r.candidate_delta->str()) : json(nullptr)},
          {"horizon", r.horizon.str()},
          {"gaps", exponents_json(r.gaps)},
          {"samples", r.gaps.size()},
          {"coset_members", r.coset_members},
          {"note", r.note}};
}

bool doubles(const std::vector<Exponent>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k] < trace[k - 1].scaled(2)) return false;
  }
  return true;
}

json hensel_json(const HenselResult& r, const Session& s) {
  json steps = json::array();
  return {{"root", series_json(r.root, s.variables)},
          {"approximant", format_series(r.approximant, s.variables)},
          {"target", r.target.str()},
          {"trace", exponents_json(r.trace)},
          {"steps", exponents_json(r.steps)},
          {"iterations", r.steps.size()},
          {"doubling", doubles(r.trace)},
          {"certificate",
           {{"value", r.achieved.str()}, {"target", r.target.str()}, {"pass", !(r.achieved < r.target)}}}};
}

json chardist_json(const ChardistReport& r, const std::vector<std::string>& residue_vars) {
  return {{"verdict", check_name(r.verdict)},
          {"completion", check_name(r.completion)},
          {"non_membership", check_name(r.non_membership)},
          {"basis", r.basis},
          {"residue", series_json(r.residue, residue_vars)},
          {"residue_horizon", r.residue_horizon.str()},
          {"approximation_trace", exponents_json(r.approximation_trace)},
          {"support_in_window", r.support_in_window},
          {"horizon", r.horizon.str()}};
}

// ---- element sources ----------------------------------------------------

struct Element {
  Series value;
  std::optional<HenselResult> lift;
  std::optional<ValPolynomial> polynomial;
};

Element element_from(const Args& a, const Session& s) {
  if (!a.series.empty()) return {parse_series(a.series, s), std::nullopt, std::nullopt};
  if (a.poly.empty()) fail(ErrorCode::InvalidArgument, "give --series or --poly with --start");
  const ValPolynomial f = parse_polynomial(a.poly, s);
  HenselResult r = hensel_root(f, parse_series(a.start, s), s.precision);
  Series root = r.root;
  return {std::move(root), std::move(r), f};
}

json element_json(const Element& e, const Session& s) {
  json out = series_json(e.value, s.variables);
  if (e.polynomial) out["polynomial"] = format_polynomial(*e.polynomial, s.variables);
  return out;
}

ConvexSubgroup subgroup(const Args& a, const Session& s) { return ConvexSubgroup(s.rank(), a.delta); }

// ---- commands -----------------------------------------------------------

CommandOutcome cmd_lift(const Args& a, const Session& s) {
  if (a.poly.empty()) fail(ErrorCode::InvalidArgument, "lift needs --poly");
  const ValPolynomial f = parse_polynomial(a.poly, s);
  const HenselResult r = hensel_root(f, parse_series(a.start, s), s.precision);
  json report = {{"command", "lift"},
                 {"polynomial", format_polynomial(f, s.variables)},
                 {"start", a.start}};
  report.update(hensel_json(r, s));
  return {report, kExitOk};
}

CommandOutcome cmd_coarsen(const Args& a, const Session& s) {
  const ConvexSubgroup delta = subgroup(a, s);
  const Series x = parse_series(a.series, s);
  json report = {{"command", "coarsen"},
                 {"series", series_json(x, s.variables)},
                 {"delta", delta.str()},
                 {"coarse_value", coarse_value(x, delta).str()}};
  try {
    report["residue"] = series_json(residue_series(x, delta), tail_names(s, delta));
  } catch (const Error& e) {
    report["residue"] = nullptr;
    report["residue_error"] = {{"error", error_name(e.code())}, {"message", e.what()}};
  }
  bool pass = true;
  if (x.valuation().known()) {
    const ComposeReport c = compose_check(x, delta);
    pass = c.pass;
    report["compose_check"] = {{"pass", c.pass},
                               {"valuation", c.valuation.str()},
                               {"head", c.head.str()},
                               {"tail", c.tail.str()},
                               {"coarse_value", c.coarse.str()},
                               {"residue_valuation", c.residue_valuation.str()}};
  } else {
    report["compose_check"] = nullptr;
  }
  return {report, pass ? kExitOk : kExitNegative};
}

CommandOutcome cmd_diagnose(const Args& a, const Session& s, bool delta_given) {
  const Element z = element_from(a, s);
  const CofinalityReport r = classify(z.value, s.horizon, a.min_samples);
  const FsegmReport fs = fsegm_check(z.value, r.samples);
  bool immediate = true;
  for (const ApproximationRecord& rec : r.samples) {
    if (rec.gap.is_infinite()) continue;
    if (z.value.coefficient(rec.gap).is_zero()) immediate = false;
  }
  json report = {{"command", "diagnose"}, {"element", element_json(z, s)}};
  report.update(cofinality_json(r));
  report["fsegm"] = {{"pass", fs.pass}, {"checked", fs.checked}, {"failures", fs.failures}};
  report["gaps_in_value_group"] = immediate;
  if (z.lift) report["trace"] = exponents_json(z.lift->trace);
  if (delta_given) {
    const ConvexSubgroup delta = subgroup(a, s);
    report["chardist"] = chardist_json(chardist_check(z.value, delta, s.horizon, a.asserted),
                                       tail_names(s, delta));
  }
  return {report, kExitOk};
}

CommandOutcome cmd_aat(const Args& a, const Session& s) {
  const Element z = element_from(a, s);
  if (a.b.empty()) fail(ErrorCode::InvalidArgument, "check aat needs --b");
  const AatReport r = aat_check(z.value, parse_series(a.b, s), parse_series(a.c, s), s.horizon);
  json report = {{"command", "check aat"},
                 {"element", element_json(z, s)},
                 {"b", a.b},
                 {"c", a.c},
                 {"pass", r.pass},
                 {"verdict", r.pass ? "PASS" : "FAIL"},
                 {"shift", r.shift.str()},
                 {"horizon", r.horizon.str()},
                 {"lhs", exponents_json(r.lhs)},
                 {"rhs", exponents_json(r.rhs)},
                 {"verdict_z", verdict_name(r.verdict_z)},
                 {"verdict_bz", verdict_name(r.verdict_bz)}};
  return {report, r.pass ? kExitOk : kExitNegative};
}

CommandOutcome cmd_chardist(const Args& a, const Session& s) {
  const Element z = element_from(a, s);
  const ConvexSubgroup delta = subgroup(a, s);
  const ChardistReport r = chardist_check(z.value, delta, s.horizon, a.asserted);
  json report = {{"command", "check chardist"}, {"element", element_json(z, s)}, {"delta", delta.str()}};
  report.update(chardist_json(r, tail_names(s, delta)));
  return {report, r.verdict == Check::Fail ? kExitNegative : kExitOk};
}

CommandOutcome cmd_sd(const Args& a, const Session& s) {
  const Element z = element_from(a, s);
  const ConvexSubgroup delta = subgroup(a, s);
  const std::string& minpoly = a.minpoly.empty() ? a.poly : a.minpoly;
  if (minpoly.empty()) fail(ErrorCode::InvalidArgument, "check sd needs --minpoly or --poly");
  const ValPolynomial f = parse_polynomial(minpoly, s);
  const SdReport r = sd_check(z.value, f, delta, s.horizon, a.asserted);
  json report = {{"command", "check sd"},
                 {"element", element_json(z, s)},
                 {"minpoly", format_polynomial(f, s.variables)},
                 {"delta", delta.str()},
                 {"sd1", check_name(r.sd1)},
                 {"sd2", check_name(r.sd2)},
                 {"sd3", check_name(r.sd3)},
                 {"sd3_note", r.sd3_note},
                 {"residue_roots", r.residue_roots},
                 {"block_degrees", r.block_degrees},
                 {"horizon", r.horizon.str()}};
  if (r.sd1 == Check::Pass) report["chardist"] = chardist_json(r.chardist, tail_names(s, delta));
  const bool negative = r.sd1 == Check::Fail || r.sd2 == Check::Fail || r.sd3 == Check::Fail;
  return {report, negative ? kExitNegative : kExitOk};
}

CommandOutcome cmd_transfer(const Args& a, const Session& s) {
  const Element z = element_from(a, s);
  const ConvexSubgroup delta = subgroup(a, s);
  const TransferReport r = coarsening_transfer_check(z.value, delta, s.horizon, a.min_samples);
  const json coarse = cofinality_json(r.coarse);
  json report = {{"command", "check transfer"},
                 {"element", element_json(z, s)},
                 {"delta", delta.str()},
                 {"fine", cofinality_json(r.fine)},
                 {"coarse", coarse},
                 {"implication_holds", r.implication_holds},
                 {"vacuous", r.vacuous},
                 {"verdict", r.implication_holds ? "IMPLICATION_HOLDS" : "IMPLICATION_FAILS"},
                 {"horizon", s.horizon.str()}};
  return {report, r.implication_holds ? kExitOk : kExitNegative};
}

CommandOutcome cmd_tower(const Args& a, const Session& s) {
  if (a.inner.empty() || a.outer.empty()) {
    fail(ErrorCode::InvalidArgument, "check tower needs --inner and --outer");
  }
  const ValPolynomial inner = parse_polynomial(a.inner, s);
  const std::vector<ValPolynomial> outer = parse_tower_polynomial(a.outer, s);
  const TowerReport r = tower_check(inner, parse_series(a.inner_start, s), outer,
                                    parse_series(a.outer_start, s), s.horizon, s.precision,
                                    a.min_samples);
  json report = {{"command", "check tower"},
                 {"inner", hensel_json(r.inner, s)},
                 {"outer", hensel_json(r.outer, s)},
                 {"outer_polynomial", a.outer},
                 {"over_l", cofinality_json(r.over_l)},
                 {"over_k", cofinality_json(r.over_k)},
                 {"hypothesis", cofinality_json(r.hypothesis)},
                 {"l_only_gaps", exponents_json(r.l_only_gaps)},
                 {"implication_holds", r.implication_holds},
                 {"vacuous", r.vacuous},
                 {"verdict", r.implication_holds ? "IMPLICATION_HOLDS" : "IMPLICATION_FAILS"},
                 {"horizon", s.horizon.str()},
                 {"precision", s.precision.str()}};
  return {report, r.implication_holds ? kExitOk : kExitNegative};
}

CommandOutcome cmd_disjoint(const Args& a, const Session& s) {
  if (a.minpoly.empty() || a.henspoly.empty()) {
    fail(ErrorCode::InvalidArgument, "disjoint needs --minpoly and --henspoly");
  }
  const ValPolynomial f = parse_polynomial(a.minpoly, s);
  const ValPolynomial g = parse_polynomial(a.henspoly, s);
  const HenselResult lifted = hensel_root(g, parse_series(a.start, s), s.precision);
  const HenselElement elem{g, lifted.root};
  const Series shift = parse_series(a.shift.empty() ? "0" : a.shift, s);
  const FactorReport r = certify_degree_drop(f, elem, shift, s.horizon, s.precision);

  json factors = json::array();
  for (const ValPolynomial& p : r.factors) factors.push_back(format_polynomial(p, s.variables));
  json report = {{"command", "disjoint"},
                 {"minpoly", format_polynomial(f, s.variables)},
                 {"henspoly", format_polynomial(g, s.variables)},
                 {"a", series_json(lifted.root, s.variables)},
                 {"shift", a.shift.empty() ? "0" : a.shift},
                 {"verdict", drop_verdict_name(r.verdict)},
                 {"input_degree", r.input_degree},
                 {"factor_degrees", r.factor_degrees},
                 {"delta_used", r.delta_used.str()},
                 {"alpha", r.alpha.str()},
                 {"scaling_d", format_series(r.scaling_d, s.variables)},
                 {"translation", format_series(r.translation, s.variables)},
                 {"precision", r.precision.str()},
                 {"certificate", r.certificate.str()},
                 {"factors", factors},
                 {"note", r.note}};
  const HypothesisEvidence& h = r.hypothesis;
  report["hypothesis"] = {{"shift_value", h.shift_value.str()},
                          {"max_gap", h.max_gap ? json(h.max_gap->str()) : json(nullptr)},
                          {"gaps", h.gaps},
                          {"horizon", h.horizon.str()},
                          {"holds", h.holds},
                          {"basis", "sampled gaps below the horizon"}};
  const ResidueEvidence ev = residue_membership_evidence(elem, s.horizon);
  report["residue_evidence"] = {{"membership", ev.membership},
                                {"agrees", ev.agrees},
                                {"non_membership", check_name(ev.non_membership.verdict)},
                                {"note", ev.note}};
  return {report, r.verdict == DropVerdict::DegreeDrop ? kExitOk : kExitNegative};
}

json error_json(std::string_view code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read scenario '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void rebuild_session(Session& session, const Args& a) {
  if (a.vars.empty() && a.field.empty() && a.prec.empty() && a.horizon.empty()) return;
  const std::vector<std::string> vars =
      a.vars.empty() ? session.variables : Session::split_variables(a.vars);
  const Field field = a.field.empty() ? session.field : Field::parse(a.field);
  if (vars.size() != session.rank()) {
    session = Session::make(vars, field, a.prec, a.horizon);
    return;
  }
  // Same rank: keep the bound that was not given, unless it conflicts.
  Session probe = session;
  std::string prec = a.prec;
  std::string horizon = a.horizon;
  if (prec.empty() && !horizon.empty()) {
    if (!(session.precision < probe.parse_exponent(horizon))) prec = session.precision.str();
  } else if (!prec.empty() && horizon.empty()) {
    horizon = min(session.horizon, probe.parse_exponent(prec)).str();
  } else if (prec.empty() && horizon.empty()) {
    prec = session.precision.str();
    horizon = session.horizon.str();
  }
  session = Session::make(vars, field, prec, horizon);
}

void add_global_options(CLI::App& app, Args& a) {
  app.add_option("--vars", a.vars, "Comma-separated variables, most significant first");
  app.add_option("--field", a.field, "Coefficient field: q or fp:<p>");
  app.add_option("--prec", a.prec, "Working precision, e.g. (0,64)");
  app.add_option("--horizon", a.horizon, "Sampling horizon, e.g. (0,50)");
  app.add_flag("--json", a.json_output, "Print JSON");
}

void add_element_options(CLI::App* cmd, Args& a) {
  cmd->add_option("--poly", a.poly, "Polynomial in X whose Hensel root is the element");
  cmd->add_option("--start", a.start, "Approximate root to lift from");
  cmd->add_option("--series", a.series, "The element as a series");
}

CommandOutcome dispatch(const std::vector<std::string>& args, Session& session, bool allow_run,
                        bool& json_output) {
  Args a;
  CLI::App app{"Valued-field computations over iterated Laurent series", "henselium"};
  app.require_subcommand(0, 1);
  add_global_options(app, a);

  CLI::App* lift = app.add_subcommand("lift", "Hensel-lift an approximate root");
  lift->add_option("--poly", a.poly, "Polynomial in X")->required();
  lift->add_option("--start", a.start, "Approximate root");

  CLI::App* coarsen = app.add_subcommand("coarsen", "Coarse value and residue of a series");
  coarsen->add_option("--delta", a.delta, "Number of trailing coordinates in the subgroup");
  coarsen->add_option("series", a.series, "The series")->required();

  CLI::App* diagnose = app.add_subcommand("diagnose", "Classify the gaps of an element");
  add_element_options(diagnose, a);
  CLI::Option* diagnose_delta = diagnose->add_option("--delta", a.delta, "Also run chardist");
  diagnose->add_option("--min-samples", a.min_samples, "Distinct levels needed per candidate");
  diagnose->add_flag("--asserted", a.asserted, "Residue non-membership is asserted");

  CLI::App* check = app.add_subcommand("check", "Property checks on an element");
  check->require_subcommand(1);
  CLI::App* aat = check->add_subcommand("aat", "Gaps of b*z + c against those of z");
  add_element_options(aat, a);
  aat->add_option("--b", a.b, "Multiplier in K")->required();
  aat->add_option("--c", a.c, "Offset in K");
  CLI::App* chardist = check->add_subcommand("chardist", "Residue distinction checks");
  add_element_options(chardist, a);
  chardist->add_option("--delta", a.delta, "Subgroup index");
  chardist->add_flag("--asserted", a.asserted, "Residue non-membership is asserted");
  CLI::App* sd = check->add_subcommand("sd", "Strong distinction conditions");
  add_element_options(sd, a);
  sd->add_option("--minpoly", a.minpoly, "Minimal polynomial (defaults to --poly)");
  sd->add_option("--delta", a.delta, "Subgroup index");
  sd->add_flag("--asserted", a.asserted, "Residue non-membership is asserted");
  CLI::App* transfer = check->add_subcommand("transfer", "Coarsening transfer");
  add_element_options(transfer, a);
  transfer->add_option("--delta", a.delta, "Subgroup index");
  transfer->add_option("--min-samples", a.min_samples, "Distinct levels needed per candidate");
  CLI::App* tower = check->add_subcommand("tower", "Tower transfer");
  tower->add_option("--inner", a.inner, "Polynomial in X defining x")->required();
  tower->add_option("--inner-start", a.inner_start, "Approximate root of the inner polynomial");
  tower->add_option("--outer", a.outer, "Polynomial in X with coefficients in K[Y], Y = x")->required();
  tower->add_option("--outer-start", a.outer_start, "Approximate root of the outer polynomial");
  tower->add_option("--min-samples", a.min_samples, "Distinct levels needed per candidate");

  CLI::App* disjoint = app.add_subcommand("disjoint", "Certify a degree drop over a Hensel element");
  disjoint->add_option("--minpoly", a.minpoly, "Monic minimal polynomial of z")->required();
  disjoint->add_option("--henspoly", a.henspoly, "Polynomial defining the Hensel element a")->required();
  disjoint->add_option("--start", a.start, "Approximate root for a");
  disjoint->add_option("--shift", a.shift, "z - a as an element of K");

  CLI::App* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", a.scenario, "Path or bundled scenario name")->required();

  app.add_subcommand("session", "Set session parameters only");

  for (CLI::App* sub : {lift, coarsen, diagnose, check, disjoint, run}) sub->fallthrough();
  for (CLI::App* sub : {aat, chardist, sd, transfer, tower}) sub->fallthrough();
  app.get_subcommand("session")->fallthrough();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    return {{{"command", "help"}, {"text", app.help()}}, kExitOk};
  } catch (const CLI::CallForAllHelp&) {
    return {{{"command", "help"}, {"text", app.help("", CLI::AppFormatMode::All)}}, kExitOk};
  } catch (const CLI::ParseError& e) {
    json_output = json_output || a.json_output;
    return {error_json(error_name(ErrorCode::InvalidArgument), e.what()), kExitError};
  }
  json_output = json_output || a.json_output;

  rebuild_session(session, a);
  if (*lift) return cmd_lift(a, session);
  if (*coarsen) return cmd_coarsen(a, session);
  if (*diagnose) return cmd_diagnose(a, session, diagnose_delta->count() > 0);
  if (*aat) return cmd_aat(a, session);
  if (*chardist) return cmd_chardist(a, session);
  if (*sd) return cmd_sd(a, session);
  if (*transfer) return cmd_transfer(a, session);
  if (*tower) return cmd_tower(a, session);
  if (*disjoint) return cmd_disjoint(a, session);
  if (*run) {
    if (!allow_run) fail(ErrorCode::InvalidArgument, "run is not available inside a scenario");
    return run_scenario(read_file(resolve_scenario(a.scenario)), session);
  }
  return {{{"command", "session"},
           {"variables", session.variables},
           {"field", session.field.str()},
           {"precision", session.precision.str()},
           {"horizon", session.horizon.str()}},
          kExitOk};
}

CommandOutcome execute(const std::vector<std::string>& args, Session& session, bool allow_run,
                       bool& json_output) {
  try {
    return dispatch(args, session, allow_run, json_output);
  } catch (const Error& e) {
    return {error_json(error_name(e.code()), e.what()), kExitError};
  } catch (const std::exception& e) {
    return {error_json("InternalError", e.what()), kExitError};
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Whitespace-separated words; single or double quotes group words.
std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  char quote = 0;
  for (const char c : line) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        current += c;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) words.push_back(std::exchange(current, {}));
      in_word = false;
    } else {
      current += c;
      in_word = true;
    }
  }
  if (quote) fail(ErrorCode::SyntaxError, "unterminated quote in '" + std::string(line) + "'");
  if (in_word) words.push_back(current);
  return words;
}

void flatten(const json& value, const std::string& prefix, std::ostringstream& out) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) {
      flatten(item, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (value.is_array() && !value.empty() &&
             (value.front().is_object() || value.front().is_array())) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      flatten(value[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else if (value.is_string()) {
    out << prefix << ": " << value.get<std::string>() << "\n";
  } else if (value.is_array()) {
    out << prefix << ": ";
    for (std::size_t i = 0; i < value.size(); ++i) {
      out << (i ? " " : "") << (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
    }
    out << "\n";
  } else {
    out << prefix << ": " << value.dump() << "\n";
  }
}

}  // namespace

Session default_session() { return Session::make({"s", "t"}, Field::rationals()); }

std::string resolve_scenario(const std::string& name) {
  if (std::filesystem::exists(name)) return name;
  const std::filesystem::path bundled =
      std::filesystem::path(HENSELIUM_SCENARIO_DIR) / (name.ends_with(".scn") ? name : name + ".scn");
  if (std::filesystem::exists(bundled)) return bundled.string();
  fail(ErrorCode::InvalidArgument, "no scenario file or bundled scenario named '" + name + "'");
}


CommandOutcome execute_command(const std::vector<std::string>& args, Session& session, bool allow_run) {
  bool json_output = false;
  return execute(args, session, allow_run, json_output);
}

CommandOutcome run_scenario(std::string_view text, Session& session) {
  json reports = json::array();
  int exit_code = kExitOk;
  std::size_t line_number = 0;
  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    ++line_number;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_number);

    if (line.starts_with("expect ") || line == "expect") {
      std::istringstream in(line.substr(6));
      std::string pointer;
      in >> pointer;
      std::string literal;
      std::getline(in, literal);
      literal = trim(literal);
      if (reports.empty() || pointer.empty() || literal.empty()) {
        reports.push_back(error_json(error_name(ErrorCode::SyntaxError),
                                     where + ": expect needs a pointer, a value and an earlier command"));
        return {reports, kExitError};
      }
      json expected;
      try {
        expected = json::parse(literal);
      } catch (const json::parse_error&) {
        expected = literal;
      }
      json& last = reports.back();
      json actual = nullptr;
      try {
        actual = last.at(json::json_pointer(pointer));
      } catch (const json::exception&) {
      }
      const bool pass = actual == expected;
      if (!pass) exit_code = kExitNegative;
      last["expectations"].push_back(
          {{"pointer", pointer}, {"expected", expected}, {"actual", actual}, {"pass", pass}, {"line", line_number}});
      continue;
    }

    std::vector<std::string> args;
    try {
      args = split_words(line);
    } catch (const Error& e) {
      reports.push_back(error_json(error_name(e.code()), where + ": " + e.what()));
      return {reports, kExitError};
    }
    if (!args.empty() && args.front() == "henselium") args.erase(args.begin());
    bool json_output = true;
    CommandOutcome outcome = execute(args, session, false, json_output);
    outcome.report["line"] = line_number;
    reports.push_back(outcome.report);
    if (outcome.exit_code == kExitError) return {reports, kExitError};
  }
  return {reports, exit_code};
}

std::string render_text(const json& report) {
  std::ostringstream out;
  if (report.is_array()) {
    for (std::size_t i = 0; i < report.size(); ++i) {
      if (i) out << "\n";
      flatten(report[i], "", out);
    }
  } else if (report.contains("command") && report["command"] == "help") {
    out << report["text"].get<std::string>();
  } else {
    flatten(report, "", out);
  }
  return out.str();
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) args.push_back("--help");
  Session session = default_session();
  bool json_output = false;
  const CommandOutcome outcome = execute(args, session, true, json_output);
  const bool error_only = outcome.report.is_object() && outcome.report.contains("error");
  std::ostream& sink = error_only && !json_output ? err : out;
  if (json_output) {
    sink << outcome.report.dump(2) << "\n";
  } else if (error_only) {
    sink << "error: " << outcome.report["error"].get<std::string>() << ": "
         << outcome.report["message"].get<std::string>() << "\n";
  } else {
    sink << render_text(outcome.report);
  }
  return outcome.exit_code;
}

}  // namespace henselium
