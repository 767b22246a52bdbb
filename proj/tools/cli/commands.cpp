#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "inferkit/belief_web.hpp"
#include "inferkit/correlation.hpp"
#include "inferkit/error.hpp"
#include "inferkit/identities.hpp"
#include "inferkit/logic.hpp"
#include "inferkit/maxent.hpp"
#include "inferkit/order.hpp"
#include "inferkit/parser.hpp"
#include "inferkit/regraduation.hpp"
#include "inferkit/scenario.hpp"

namespace inferkit::cli {

namespace {

// Bad arguments that CLI11 cannot detect on its own; exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  return fmt::format("{:#.12g}", v);
}

std::string unit_label(bool bits) { return bits ? "bits" : "nats"; }
double in_units(double nats, bool bits) { return bits ? to_bits(nats) : nats; }

// "--var x=a,b,c" declarations.
std::optional<Space> declared_space(const std::vector<std::string>& specs) {
  if (specs.empty()) return std::nullopt;
  std::vector<Variable> vars;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--var expects name=v1,v2,...: " + spec);
    Variable v{spec.substr(0, eq), {}};
    std::size_t pos = eq + 1;
    while (pos <= spec.size()) {
      const auto comma = std::min(spec.find(',', pos), spec.size());
      v.domain.push_back(spec.substr(pos, comma - pos));
      pos = comma + 1;
    }
    vars.push_back(std::move(v));
  }
  return Space(std::move(vars));
}

struct FormulaInput {
  Space space;
  std::vector<Formula> formulas;
};

FormulaInput read_formulas(const std::vector<std::string>& texts, const std::vector<std::string>& var_specs) {
  if (auto space = declared_space(var_specs)) {
    FormulaInput in{*space, {}};
    for (const auto& t : texts) in.formulas.push_back(parse_formula(t, in.space));
    return in;
  }
  auto parsed = parse_binary_formulas(texts);
  return {std::move(parsed.space), std::move(parsed.formulas)};
}

void print_world_table(std::ostream& out, const BeliefWeb& w, const std::string& indent = "  ") {
  std::size_t width = 0;
  for (std::uint64_t x = 0; x < w.world_count(); ++x) width = std::max(width, w.space().describe(x).size());
  for (std::uint64_t x = 0; x < w.world_count(); ++x) {
    out << indent << fmt::format("{:<{}}", w.space().describe(x), width) << "  " << num(w.weight(x)) << '\n';
  }
}

// tt -------------------------------------------------------------------------

int cmd_tt(const std::string& text, const std::vector<std::string>& vars, std::ostream& out) {
  const FormulaInput in = read_formulas({text}, vars);
  const Space& space = in.space;
  std::vector<std::size_t> widths;
  std::string header;
  for (const auto& v : space.variables()) {
    std::size_t w = v.name.size();
    for (const auto& label : v.domain) w = std::max(w, label.size());
    widths.push_back(w);
    header += fmt::format("{:<{}} ", v.name, w);
  }
  out << header << "| " << to_string(in.formulas[0], space) << '\n';
  for (const auto& row : truth_table(space, in.formulas[0])) {
    std::string line;
    for (std::size_t i = 0; i < space.variable_count(); ++i) {
      line += fmt::format("{:<{}} ", space.variable(i).domain[row.world.values[i]], widths[i]);
    }
    out << line << "| " << (row.value ? 'T' : 'F') << '\n';
  }
  return 0;
}

// check ----------------------------------------------------------------------

int cmd_check(const std::string& what, unsigned atoms, bool list, const std::vector<std::string>& vars,
              std::ostream& out) {
  if (list) {
    for (const auto& law : identity_catalog()) out << "identity " << law.name << '\n';
    for (const auto& rule : inference_rules()) out << "rule " << rule.name << '\n';
    return 0;
  }
  if (what.empty()) throw UsageError("check needs an identity name, 'f == g' or 'p1, p2 |= c'");

  if (const Identity* law = find_identity(what)) {
    const auto report = verify_identity(*law, atoms);
    out << "identity " << law->name << ": " << (report.failures == 0 ? "holds" : "fails") << " ("
        << report.instances << " substitution instances over " << atoms << " atoms, " << report.failures
        << " failures)\n";
    return 0;
  }
  for (const auto& rule : inference_rules()) {
    if (rule.name != what) continue;
    const auto report = verify_rule(rule, atoms);
    out << "rule " << rule.name << ": " << (report.failures == 0 ? "valid" : "invalid") << " ("
        << report.instances << " substitution instances over " << atoms << " atoms, " << report.failures
        << " failures)\n";
    return 0;
  }

  auto split_on = [&](std::string_view sep) -> std::optional<std::pair<std::string, std::string>> {
    const auto at = what.find(sep);
    if (at == std::string::npos) return std::nullopt;
    return std::make_pair(what.substr(0, at), what.substr(at + sep.size()));
  };

  std::optional<std::pair<std::string, std::string>> parts;
  for (std::string_view sep : {"|=", "⊨"}) {
    if ((parts = split_on(sep))) break;
  }
  if (parts) {
    std::vector<std::string> texts;
    std::size_t pos = 0;
    const std::string& lhs = parts->first;
    while (pos <= lhs.size()) {
      const auto comma = std::min(lhs.find(',', pos), lhs.size());
      if (lhs.find_first_not_of(" \t", pos) < comma) texts.push_back(lhs.substr(pos, comma - pos));
      pos = comma + 1;
    }
    texts.push_back(parts->second);
    const FormulaInput in = read_formulas(texts, vars);
    const std::vector<Formula> premises(in.formulas.begin(), in.formulas.end() - 1);
    const bool ok = entails(in.space, premises, in.formulas.back());
    out << "entails: " << (ok ? "yes" : "no") << '\n';
    if (!ok) {
      WorldSet counter = models(in.space, conjunction(premises) & !in.formulas.back());
      std::optional<std::uint64_t> first;
      counter.for_each([&](std::uint64_t x) { if (!first) first = x; });
      out << "counterexample: " << in.space.describe(*first) << '\n';
    }
    return 0;
  }

  for (std::string_view sep : {"==", "≡"}) {
    if ((parts = split_on(sep))) break;
  }
  if (!parts) {
    throw Error(ErrorKind::unknown_symbol, "'" + what + "' is neither a known identity or rule nor 'f == g'");
  }
  const FormulaInput in = read_formulas({parts->first, parts->second}, vars);
  WorldSet diff = models(in.space, in.formulas[0]);
  diff ^= models(in.space, in.formulas[1]);
  out << to_string(in.formulas[0], in.space) << " == " << to_string(in.formulas[1], in.space) << ": "
      << (diff.empty() ? "equivalent" : "not equivalent") << '\n';
  if (!diff.empty()) {
    std::optional<std::uint64_t> first;
    diff.for_each([&](std::uint64_t x) { if (!first) first = x; });
    out << "counterexample: " << in.space.describe(*first) << '\n';
  }
  return 0;
}

// hasse ----------------------------------------------------------------------

int cmd_hasse(std::vector<std::string> texts, const std::string& preset, bool bounds,
              const std::string& context_text, const std::string& dot_path, const std::vector<std::string>& vars,
              std::ostream& out) {
  std::optional<FormulaInput> in;
  if (preset == "cube") {
    if (!texts.empty()) throw UsageError("--preset cannot be combined with formulas");
    Space space({{"x", {"a", "b", "c"}}});
    in = FormulaInput{space, {}};
    for (const char* t : {"x=a", "x=b", "x=c", "x=a | x=b", "x=a | x=c", "x=b | x=c"}) {
      in->formulas.push_back(parse_formula(t, space));
    }
    bounds = true;
  } else if (preset == "tesseract") {
    if (!texts.empty()) throw UsageError("--preset cannot be combined with formulas");
    Space space = Space::binary({"a", "b"});
    in = FormulaInput{space, {}};
    for (const auto& op : binary_operators()) {
      in->formulas.push_back(op.build(Formula::atom(0, 0), Formula::atom(1, 0)));
    }
  } else if (!preset.empty()) {
    throw UsageError("unknown preset '" + preset + "' (expected cube or tesseract)");
  } else {
    if (texts.empty()) throw UsageError("hasse needs at least one formula or --preset");
    if (!context_text.empty()) texts.push_back(context_text);
    in = read_formulas(texts, vars);
  }

  Formula context = Formula::truth();
  if (!context_text.empty() && preset.empty()) {
    context = in->formulas.back();
    in->formulas.pop_back();
  }
  const OrderedSet order = build_order(in->space, in->formulas, context, bounds);

  auto label = [&](std::size_t node) {
    std::string s;
    for (std::size_t m = 0; m < order.nodes[node].size(); ++m) {
      if (m) s += " == ";
      s += to_string(order.elements[order.nodes[node][m]], in->space);
    }
    return s;
  };
  // DOT on stdout stays pipeable into graphviz.
  if (dot_path == "-") {
    out << export_dot(order, in->space);
    return 0;
  }
  out << "nodes: " << order.node_count() << '\n';
  out << "cover_edges: " << order.cover_edges.size() << '\n';
  out << "levels: " << order.level_count() << '\n';
  for (std::size_t level = 0; level < order.level_count(); ++level) {
    out << "level " << level << ":";
    std::string sep = " ";
    for (std::size_t n = 0; n < order.node_count(); ++n) {
      if (order.levels[n] != level) continue;
      out << sep << label(n);
      sep = "; ";
    }
    out << '\n';
  }
  out << "edges:\n";
  for (const auto& [lo, hi] : order.cover_edges) out << "  " << label(lo) << " -> " << label(hi) << '\n';

  if (!dot_path.empty()) {
    std::ofstream file(dot_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::io, "cannot write " + dot_path);
    file << export_dot(order, in->space);
    out << "dot: " << dot_path << '\n';
  }
  return 0;
}

// scenario commands ------------------------------------------------------------

Scenario load(const std::string& path, std::ostream& err) {
  Scenario s = load_scenario(path);
  for (const auto& w : s.warnings) err << "warning: " << w << '\n';
  return s;
}

int cmd_prob(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() != 2 && args.size() != 4) {
    throw UsageError("usage: prob <scenario> <formula> [given <formula>]");
  }
  if (args.size() == 4 && args[2] != "given") throw UsageError("expected 'given' before the context formula");
  const Scenario s = load(args[0], err);
  const Formula f = parse_formula(args[1], s.space);
  if (args.size() == 2) {
    out << "P(" << to_string(f, s.space) << ") = " << num(probability(s.prior, f)) << '\n';
    return 0;
  }
  const Formula g = parse_formula(args[3], s.space);
  out << "P(" << to_string(f, s.space) << " | " << to_string(g, s.space)
      << ") = " << num(conditional_probability(s.prior, f, g)) << '\n';
  return 0;
}

int cmd_update(const std::string& path, bool report_lambdas, bool bits, std::ostream& out, std::ostream& err) {
  const Scenario s = load(path, err);
  const UpdateReport r = update(s.prior, s.constraints, s.options);
  out << "posterior:\n";
  print_world_table(out, r.posterior);
  out << "relative_entropy: " << num(in_units(r.entropy_value, bits)) << ' ' << unit_label(bits) << '\n';
  out << "kl_divergence: " << num(in_units(-r.entropy_value, bits)) << ' ' << unit_label(bits) << '\n';
  if (r.dual) {
    out << "iterations: " << r.dual->iterations << '\n';
    out << "residual: " << num(r.dual->residual_inf_norm) << '\n';
  }
  if (report_lambdas) {
    out << "lambdas:\n";
    if (r.dual) {
      std::size_t j = 0;
      for (std::size_t i = 0; i < s.constraints.size(); ++i) {
        if (std::holds_alternative<DataConstraint>(s.constraints[i])) continue;
        out << "  " << s.constraint_labels[i] << ": " << num(r.dual->lambdas[j++]) << '\n';
      }
      out << "log_partition: " << num(r.dual->log_partition) << '\n';
    }
  }
  return 0;
}

int cmd_bayes(const std::string& path, const std::vector<std::string>& observations, std::ostream& out,
              std::ostream& err) {
  const Scenario s = load(path, err);
  if (observations.empty()) throw UsageError("bayes needs at least one --observe var=value");
  std::vector<std::size_t> block;
  std::vector<std::size_t> observed;
  for (const auto& obs : observations) {
    std::size_t pos = 0;
    while (pos <= obs.size()) {
      const auto comma = std::min(obs.find(',', pos), obs.size());
      const std::string item = obs.substr(pos, comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--observe expects var=value: " + item);
      const auto v = s.space.find_variable(item.substr(0, eq));
      if (!v) throw Error(ErrorKind::unknown_symbol, "unknown variable '" + item.substr(0, eq) + "'");
      const auto value = s.space.find_value(*v, item.substr(eq + 1));
      if (!value) throw Error(ErrorKind::unknown_symbol, "'" + item.substr(eq + 1) + "' is not a value of '" +
                                                             s.space.variable(*v).name + "'");
      block.push_back(*v);
      observed.push_back(*value);
      pos = comma + 1;
    }
  }
  const BlockIndex data(block);
  const BeliefWeb marginal = marginalize(s.prior, data);
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) index = index * s.space.domain_size(block[i]) + observed[i];
  const BeliefWeb posterior = bayes_condition(s.prior, data, observed);
  const BeliefWeb via_maxent = bayes_via_maxent(s.prior, data, observed);
  double gap = 0.0;
  for (std::uint64_t x = 0; x < posterior.world_count(); ++x) {
    gap = std::max(gap, std::abs(posterior.weight(x) - via_maxent.weight(x)));
  }

  out << "evidence: " << num(marginal.weight(index)) << '\n';
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < s.space.variable_count(); ++v) {
    if (!data.contains(v)) rest.push_back(v);
  }
  if (rest.empty()) {
    out << "posterior:\n";
    print_world_table(out, posterior);
  } else {
    out << "posterior (remaining variables):\n";
    print_world_table(out, marginalize(posterior, BlockIndex(rest)));
  }
  out << "maxent_route_gap: " << num(gap) << '\n';
  return 0;
}

int cmd_correlations(const std::string& path, const std::string& split_text, bool bits, std::ostream& out,
                     std::ostream& err) {
  const Scenario s = load(path, err);
  const Split split = split_text.empty() ? unit_split(s.space) : parse_split(s.space, split_text);
  const std::string u = unit_label(bits);
  std::string shown;
  for (std::size_t b = 0; b < split.blocks.size(); ++b) {
    if (b) shown += " | ";
    for (std::size_t i = 0; i < split.blocks[b].size(); ++i) {
      if (i) shown += ",";
      shown += s.space.variable(split.blocks[b][i]).name;
    }
  }
  out << "split: " << shown << '\n';
  out << "entropy(joint): " << num(in_units(shannon_entropy(s.prior), bits)) << ' ' << u << '\n';
  for (const auto& block : split.blocks) {
    std::string name;
    for (std::size_t i = 0; i < block.size(); ++i) name += (i ? "," : "") + s.space.variable(block[i]).name;
    out << "entropy(" << name << "): " << num(in_units(shannon_entropy(marginalize(s.prior, block)), bits)) << ' '
        << u << '\n';
  }
  const double value = npi(s.prior, split);
  out << "npi: " << num(in_units(value, bits)) << ' ' << u << '\n';
  if (split.blocks.size() == 2) {
    out << "mutual_information: " << num(in_units(mutual_information(s.prior, split), bits)) << ' ' << u << '\n';
  }
  if (split.blocks.size() == s.space.variable_count()) {
    out << "total_correlation: " << num(in_units(total_correlation(s.prior, split), bits)) << ' ' << u << '\n';
  }
  return 0;
}

// verify ---------------------------------------------------------------------

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

struct OperationPreset {
  BinaryOpTable table;
  Regraduation phi;
  std::string phi_name;
  UnaryFn basis;
};

OperationPreset operation(const std::string& op, double alpha, std::size_t points) {
  if (points < 3) throw UsageError("--points must be at least 3");
  if (op == "sum") {
    auto grid = linspace(0.0, 1.0, points);
    return {BinaryOpTable::sample(grid, [](double a, double b) { return a + b; }, true),
            Regraduation::from_function(grid, [](double t) { return t; }), "t", [](double t) { return t; }};
  }
  if (op == "product") {
    auto grid = linspace(1.0 / static_cast<double>(points), 1.0, points);
    return {BinaryOpTable::sample(grid, [](double a, double b) { return a * b; }, true),
            Regraduation::from_function(grid, [](double t) { return std::log(t); }), "log(t)",
            [](double t) { return std::log(t); }};
  }
  if (op == "power") {
    if (!(alpha > 0.0)) throw Error(ErrorKind::domain, "--alpha must be positive");
    auto grid = linspace(0.0, 1.0, points);
    auto f = [alpha](double a, double b) { return std::pow(std::pow(a, alpha) + std::pow(b, alpha), 1.0 / alpha); };
    auto phi = [alpha](double t) { return std::pow(t, alpha); };
    return {BinaryOpTable::sample(grid, f, true), Regraduation::from_function(grid, phi),
            fmt::format("t^{}", num(alpha)), phi};
  }
  if (op == "nonassociative") {
    auto grid = linspace(0.0, 1.0, points);
    return {BinaryOpTable::sample(grid, [](double a, double b) { return a + b * b; }, true),
            Regraduation::from_function(grid, [](double t) { return t; }), "t", [](double t) { return t; }};
  }
  throw UsageError("unknown operation '" + op + "' (expected sum, product, power or nonassociative)");
}

int cmd_verify(const std::string& which, const std::string& op, double alpha, std::size_t points, double anchor,
               unsigned depth, double scale, const std::string& form, std::size_t arity,
               const std::vector<double>& coeffs, double a, double b, std::ostream& out) {
  if (which == "aczel") {
    const OperationPreset p = operation(op, alpha, points);
    const double associativity = verify_associativity(p.table);
    const double regraduation = verify_regraduation(p.table, p.phi);
    out << "operation: " << op << '\n';
    out << "associativity_residual: " << num(associativity) << '\n';
    out << "regraduation: phi(t) = " << p.phi_name << '\n';
    out << "regraduation_residual: " << num(regraduation) << '\n';
    return 0;
  }
  if (which == "reconstruct") {
    const OperationPreset p = operation(op, alpha, points);
    const Reconstruction r = reconstruct_phi(p.table, anchor, depth);
    const LinearFit fit = fit_against(r.regraduation, p.basis);
    out << "operation: " << op << '\n';
    out << "identity: " << num(r.identity) << '\n';
    out << "tabulated_points: " << r.regraduation.points().size() << '\n';
    out << "regraduation_residual: " << num(r.residual) << '\n';
    out << "fit: phi(t) = " << num(fit.slope) << " * " << p.phi_name << (fit.intercept < 0.0 ? " - " : " + ")
        << num(std::abs(fit.intercept)) << '\n';
    out << "r_squared: " << num(fit.r_squared) << '\n';
    return 0;
  }
  if (which == "cauchy") {
    if (points < 3) throw UsageError("--points must be at least 3");
    std::function<double(double, double)> g;
    if (form == "linear") {
      g = [scale](double x, double y) { return scale * x * y; };
    } else if (form == "sine") {
      g = [scale](double x, double y) { return scale * std::sin(x) * y; };
    } else if (form == "square") {
      g = [scale](double x, double y) { return scale * x * y * y; };
    } else {
      throw UsageError("unknown form '" + form + "' (expected linear, sine or square)");
    }
    const CauchyReport r = verify_cauchy_linearity(BinaryOpTable::sample(linspace(0.0, 1.0, points), g));
    out << "form: " << form << '\n';
    out << "additive: " << (r.is_additive ? "yes" : "no") << '\n';
    out << "additivity_residual: " << num(r.additivity_residual) << '\n';
    for (const auto& [x, k] : r.fitted) out << "  coefficient(" << num(x) << ") = " << num(k) << '\n';
    return 0;
  }
  if (which == "pexider") {
    std::vector<double> c = coeffs;
    if (c.empty()) c.assign(arity, 1.0);
    if (c.size() != arity) throw UsageError("--coeffs needs one value per tuple component");
    auto linear = [c](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += c[k] * x[k];
      return s;
    };
    const TupleFn f = [=](std::span<const double> x) { return linear(x) + a + b; };
    const TupleFn g = [=](std::span<const double> x) { return linear(x) + b; };
    const TupleFn h = [=](std::span<const double> x) { return linear(x) + a; };
    const auto grid = linspace(-1.0, 1.0, points | 1u);  // odd count keeps 0 on the grid
    const PexiderSolution s = solve_pexider(f, g, h, grid, arity);
    out << "a: " << num(s.a) << '\n';
    out << "b: " << num(s.b) << '\n';
    out << "xi_linear: " << (s.xi_is_linear ? "yes" : "no") << '\n';
    out << "coefficients:";
    for (double k : s.coefficients) out << ' ' << num(k);
    out << '\n';
    out << "pexider_residual: " << num(s.pexider_residual) << '\n';
    out << "fit_residual: " << num(s.fit_residual) << '\n';
    return 0;
  }
  throw UsageError("unknown verification '" + which + "' (expected aczel, cauchy, pexider or reconstruct)");
}

// demo -----------------------------------------------------------------------

int cmd_double_slit(const std::vector<double>& p, const std::vector<double>& naive, std::ostream& out) {
  if (p.size() != 4) throw UsageError("double-slit needs 4 numbers: p_alpha p_beta p_x_alpha p_x_beta");
  std::optional<SingleSlitConditionals> single;
  if (!naive.empty()) {
    if (naive.size() != 4) throw UsageError("--naive needs 4 numbers");
    single = SingleSlitConditionals{naive[0], naive[1], naive[2], naive[3]};
  }
  const DoubleSlitResult r = double_slit_demo(p[0], p[1], p[2], p[3], single);
  out << "consistent: " << num(r.consistent) << '\n';
  out << "naive: " << num(r.naive) << '\n';
  out << "total_probability_residual: " << num(r.total_probability_residual) << '\n';
  out << "naive_disagrees: " << (r.disagrees ? "yes" : "no") << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete inference toolkit: logic, probability, entropic updating, correlations", "inferkit"};
  app.require_subcommand(1);

  std::vector<std::string> vars;
  std::vector<std::string> positional;
  std::string text;
  std::string path;

  auto* tt = app.add_subcommand("tt", "Truth table of a formula");
  tt->add_option("formula", text, "Formula text")->required();
  tt->add_option("--var", vars, "Declare a variable: name=v1,v2,...");

  unsigned atoms = 3;
  bool list = false;
  auto* check = app.add_subcommand("check", "Check an identity, an inference rule, 'f == g' or 'p1, p2 |= c'");
  check->add_option("what", text, "Identity or rule name, equivalence or entailment");
  check->add_option("--atoms", atoms, "Atoms used when substituting into identities")->check(CLI::Range(1, 3));
  check->add_flag("--list", list, "List known identities and rules");
  check->add_option("--var", vars, "Declare a variable: name=v1,v2,...");

  bool bounds = false;
  std::string preset;
  std::string context;
  std::string dot;
  auto* hasse = app.add_subcommand("hasse", "Implication order and Hasse diagram of formulas");
  hasse->add_option("formulas", positional, "Formulas to order");
  hasse->add_flag("--bounds", bounds, "Include false and true as bounds");
  hasse->add_option("--preset", preset, "Built-in figure: cube or tesseract");
  hasse->add_option("--context", context, "Context formula");
  hasse->add_option("--dot", dot, "Write Graphviz DOT to this file ('-' for stdout)");
  hasse->add_option("--var", vars, "Declare a variable: name=v1,v2,...");

  auto* prob = app.add_subcommand("prob", "Probability of a formula under a scenario");
  prob->add_option("args", positional, "<scenario> <formula> [given <formula>]")->required();

  bool report_lambdas = false;
  bool bits = false;
  auto* upd = app.add_subcommand("update", "Entropic update of a scenario's prior under its constraints");
  upd->add_option("scenario", path, "Scenario file")->required();
  upd->add_flag("--report-lambdas", report_lambdas, "Print Lagrange multipliers");
  upd->add_flag("--bits", bits, "Report entropies in bits");

  std::vector<std::string> observations;
  auto* bayes = app.add_subcommand("bayes", "Condition a scenario's prior on observed data");
  bayes->add_option("scenario", path, "Scenario file")->required();
  bayes->add_option("--observe", observations, "Observed values: var=value[,var=value]")->required();

  std::string split;
  auto* corr = app.add_subcommand("correlations", "Entropies and correlation quantifiers over a split");
  corr->add_option("scenario", path, "Scenario file")->required();
  corr->add_option("--split", split, "Blocks separated by '|', variables by ','");
  corr->add_flag("--bits", bits, "Report in bits");

  std::string which;
  std::string op = "product";
  double alpha = 3.0;
  std::size_t points = 41;
  double anchor = 0.5;
  unsigned depth = 12;
  double scale = 1.0;
  std::string form = "linear";
  std::size_t arity = 1;
  std::vector<double> coeffs;
  double pa = 0.0;
  double pb = 0.0;
  auto* verify = app.add_subcommand("verify", "Numerical checks of the functional equations");
  verify->add_option("which", which, "aczel, cauchy, pexider or reconstruct")->required();
  verify->add_option("--op", op, "Operation: sum, product, power or nonassociative");
  verify->add_option("--alpha", alpha, "Exponent of the power operation");
  verify->add_option("--points", points, "Grid points");
  verify->add_option("--anchor", anchor, "Reconstruction anchor, where phi = 1");
  verify->add_option("--depth", depth, "Dyadic depth of the reconstruction");
  verify->add_option("--scale", scale, "Scale factor of the Cauchy form");
  verify->add_option("--form", form, "Cauchy form: linear, sine or square");
  verify->add_option("--arity", arity, "Pexider tuple size")->check(CLI::Range(1, 4));
  verify->add_option("--coeffs", coeffs, "Pexider linear coefficients")->delimiter(',');
  verify->add_option("--a", pa, "Pexider offset h(0)");
  verify->add_option("--b", pb, "Pexider offset g(0)");

  std::string demo_name;
  std::vector<double> slit;
  std::vector<double> naive;
  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->add_option("name", demo_name, "double-slit")->required();
  demo->add_option("values", slit, "p_alpha p_beta p_x_alpha p_x_beta")->expected(4);
  demo->add_option("--naive", naive, "p_alpha_a_only p_x_a_only p_beta_b_only p_x_b_only")->expected(4);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error:usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*tt) return cmd_tt(text, vars, out);
    if (*check) return cmd_check(text, atoms, list, vars, out);
    if (*hasse) return cmd_hasse(positional, preset, bounds, context, dot, vars, out);
    if (*prob) return cmd_prob(positional, out, err);
    if (*upd) return cmd_update(path, report_lambdas, bits, out, err);
    if (*bayes) return cmd_bayes(path, observations, out, err);
    if (*corr) return cmd_correlations(path, split, bits, out, err);
    if (*verify) {
      return cmd_verify(which, op, alpha, points, anchor, depth, scale, form, arity, coeffs, pa, pb, out);
    }
    if (*demo) {
      if (demo_name != "double-slit") throw UsageError("unknown demo '" + demo_name + "' (expected double-slit)");
      return cmd_double_slit(slit, naive, out);
    }
  } catch (const UsageError& e) {
    err << "error:usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error:" << category_name(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace inferkit::cli
