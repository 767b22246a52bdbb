#include "inferkit/scenario.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "inferkit/error.hpp"
#include "inferkit/logic.hpp"
#include "inferkit/parser.hpp"

namespace inferkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with_word(std::string_view s, std::string_view word) {
  if (s.substr(0, word.size()) != word) return false;
  return s.size() == word.size() || std::isspace(static_cast<unsigned char>(s[word.size()]));
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> to_number(std::string_view s) {
  const std::string buf(s);
  if (buf.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

enum class Section { None, Variables, Distribution, Constraints, Options };

struct Entry {
  enum class Kind { Uniform, Table, Factor } kind;
  BlockIndex block;
  std::vector<double> weights;
  std::size_t line;
  std::size_t column;
};

class Reader {
 public:
  Reader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  Scenario read() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no_;
      raw_ = text_.substr(start, end - start);
      handle_line();
      start = end + 1;
    }
    ensure_space(line_no_, 1);
    return finish();
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, std::size_t line, std::size_t column, const std::string& msg) const {
    throw Error(kind, std::string(source_) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": " + msg);
  }
  [[noreturn]] void fail(ErrorKind kind, std::string_view at, const std::string& msg) const {
    fail(kind, line_no_, col(at), msg);
  }
  std::size_t col(std::string_view sub) const {
    return static_cast<std::size_t>(sub.data() - raw_.data()) + 1;
  }

  double number(std::string_view tok) const {
    const auto v = to_number(tok);
    if (!v) fail(ErrorKind::syntax, tok, "expected a number, got '" + std::string(tok) + "'");
    return *v;
  }

  std::vector<double> numbers(std::string_view s) const {
    std::vector<double> out;
    for (auto tok : split_ws(s)) out.push_back(number(tok));
    return out;
  }

  Formula formula(std::string_view text) const {
    try {
      return parse_formula(text, *space_);
    } catch (const Error& e) {
      // Re-anchor "column N: ..." from the formula parser to the file.
      std::string_view msg = e.what();
      std::size_t column = col(text);
      if (msg.substr(0, 7) == "column ") {
        const std::size_t colon = msg.find(':');
        column += static_cast<std::size_t>(std::stoul(std::string(msg.substr(7, colon - 7)))) - 1;
        msg = trim(msg.substr(colon + 1));
      }
      fail(e.kind(), line_no_, column, std::string(msg));
    }
  }

  void handle_line() {
    std::string_view line = raw_;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;

    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorKind::syntax, line, "expected ']' to close the section name");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name == "variables") {
        if (space_) fail(ErrorKind::syntax, line, "[variables] must come before other sections");
        section_ = Section::Variables;
      } else if (name == "distribution") {
        section_ = Section::Distribution;
      } else if (name == "constraints") {
        section_ = Section::Constraints;
      } else if (name == "options") {
        section_ = Section::Options;
      } else {
        fail(ErrorKind::syntax, name, "unknown section '" + std::string(name) + "'");
      }
      if (section_ != Section::Variables) ensure_space(line_no_, col(line));
      return;
    }

    switch (section_) {
      case Section::None: fail(ErrorKind::syntax, line, "content before the first section");
      case Section::Variables: return variable_line(line);
      case Section::Distribution: return distribution_line(line);
      case Section::Constraints: return constraint_line(line);
      case Section::Options: return option_line(line);
    }
  }

  void variable_line(std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::syntax, line, "expected 'name = value value ...'");
    const std::string_view name = trim(line.substr(0, eq));
    if (name.empty()) fail(ErrorKind::syntax, line, "missing variable name");
    for (char c : name) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        fail(ErrorKind::syntax, name, "variable names use letters, digits and '_'");
      }
    }
    Variable v{std::string(name), {}};
    for (auto label : split_ws(line.substr(eq + 1))) v.domain.emplace_back(label);
    if (v.domain.size() < 2) fail(ErrorKind::structural, name, "a variable needs at least two values");
    variables_.push_back(std::move(v));
    variable_pos_.push_back({line_no_, col(name)});
  }

  void ensure_space(std::size_t line, std::size_t column) {
    if (space_) return;
    if (variables_.empty()) fail(ErrorKind::structural, line, column, "no variables declared");
    try {
      space_.emplace(variables_);
      space_->require_enumerable();
    } catch (const Error& e) {
      const auto [l, c] = variable_pos_.back();
      fail(e.kind(), l, c, e.what());
    }
  }

  void distribution_line(std::string_view line) {
    if (line == "uniform") {
      entries_.push_back({Entry::Kind::Uniform, {}, {}, line_no_, col(line)});
      return;
    }
    if (starts_with_word(line, "table") || line.substr(0, 6) == "table=") {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(ErrorKind::syntax, line, "expected 'table = w1 w2 ...'");
      entries_.push_back({Entry::Kind::Table, {}, numbers(line.substr(eq + 1)), line_no_, col(line)});
      return;
    }
    if (starts_with_word(line, "factor")) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(ErrorKind::syntax, line, "expected 'factor x,y = w1 w2 ...'");
      std::string_view names = trim(line.substr(6, eq - 6));
      std::vector<std::size_t> vars;
      std::size_t pos = 0;
      while (pos <= names.size()) {
        const std::size_t comma = std::min(names.find(',', pos), names.size());
        const std::string_view name = trim(names.substr(pos, comma - pos));
        const auto v = space_->find_variable(name);
        if (!v) fail(ErrorKind::unknown_symbol, name.empty() ? line : name,
                     "unknown variable '" + std::string(name) + "'");
        vars.push_back(*v);
        pos = comma + 1;
      }
      BlockIndex block(std::move(vars));
      try {
        space_->validate(block);
      } catch (const Error& e) {
        fail(e.kind(), names, e.what());
      }
      entries_.push_back({Entry::Kind::Factor, std::move(block), numbers(line.substr(eq + 1)), line_no_,
                          col(line)});
      return;
    }
    if (!entries_.empty() && entries_.back().kind != Entry::Kind::Uniform &&
        (std::isdigit(static_cast<unsigned char>(line.front())) || line.front() == '.')) {
      for (double w : numbers(line)) entries_.back().weights.push_back(w);
      return;
    }
    fail(ErrorKind::syntax, line, "expected 'uniform', 'table = ...' or 'factor ... = ...'");
  }

  // Splits "<lhs> = <target>" at the last '='.
  std::pair<std::string_view, double> with_target(std::string_view body, std::string_view line) const {
    const auto eq = body.rfind('=');
    if (eq == std::string_view::npos) fail(ErrorKind::syntax, line, "expected '= <target>'");
    const std::string_view lhs = trim(body.substr(0, eq));
    const std::string_view rhs = trim(body.substr(eq + 1));
    if (lhs.empty()) fail(ErrorKind::syntax, body, "missing left-hand side");
    if (rhs.empty()) fail(ErrorKind::syntax, line, "missing target value");
    return {lhs, number(rhs)};
  }

  void constraint_line(std::string_view line) {
    const Space& space = *space_;
    if (starts_with_word(line, "expectation")) {
      const auto [fn, target] = with_target(trim(line.substr(11)), line);
      std::vector<double> values(space.world_count());
      if (fn.substr(0, 6) == "value(" && fn.back() == ')') {
        const std::string_view name = trim(fn.substr(6, fn.size() - 7));
        const auto v = space.find_variable(name);
        if (!v) fail(ErrorKind::unknown_symbol, name, "unknown variable '" + std::string(name) + "'");
        std::vector<double> label_values;
        for (const auto& label : space.variable(*v).domain) {
          const auto num = to_number(label);
          if (!num) fail(ErrorKind::domain, name, "value '" + label + "' of '" + std::string(name) + "' is not numeric");
          label_values.push_back(*num);
        }
        for (std::uint64_t x = 0; x < values.size(); ++x) values[x] = label_values[space.value_at(x, *v)];
      } else if (fn.substr(0, 10) == "indicator(" && fn.back() == ')') {
        const Formula f = formula(fn.substr(10, fn.size() - 11));
        models(space, f).for_each([&](std::uint64_t x) { values[x] = 1.0; });
      } else if (fn.front() == '[' && fn.back() == ']') {
        values = numbers(fn.substr(1, fn.size() - 2));
        if (values.size() != space.world_count()) {
          fail(ErrorKind::structural, fn, "expected " + std::to_string(space.world_count()) +
                                              " values, got " + std::to_string(values.size()));
        }
      } else {
        fail(ErrorKind::syntax, fn, "expected value(<var>), indicator(<formula>) or [v1 v2 ...]");
      }
      constraints_.push_back(ExpectationConstraint{std::move(values), target});
    } else if (starts_with_word(line, "mass")) {
      const auto [text, target] = with_target(trim(line.substr(4)), line);
      if (!(target >= 0.0 && target <= 1.0)) fail(ErrorKind::domain, line, "mass target must lie in [0, 1]");
      constraints_.push_back(MassConstraint{formula(text), target});
    } else if (starts_with_word(line, "data")) {
      std::vector<std::size_t> vars;
      std::vector<std::size_t> observed;
      std::string_view rest = trim(line.substr(4));
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        const std::size_t comma = std::min(rest.find(',', pos), rest.size());
        const std::string_view item = trim(rest.substr(pos, comma - pos));
        const auto eq = item.find('=');
        if (item.empty() || eq == std::string_view::npos) {
          fail(ErrorKind::syntax, item.empty() ? line : item, "expected 'var=value'");
        }
        const std::string_view name = trim(item.substr(0, eq));
        const std::string_view label = trim(item.substr(eq + 1));
        const auto v = space.find_variable(name);
        if (!v) fail(ErrorKind::unknown_symbol, name, "unknown variable '" + std::string(name) + "'");
        const auto value = space.find_value(*v, label);
        if (!value) {
          fail(ErrorKind::unknown_symbol, label,
               "'" + std::string(label) + "' is not a value of '" + std::string(name) + "'");
        }
        vars.push_back(*v);
        observed.push_back(*value);
        pos = comma + 1;
      }
      constraints_.push_back(DataConstraint{BlockIndex(std::move(vars)), std::move(observed)});
    } else {
      fail(ErrorKind::syntax, line, "expected 'expectation', 'mass' or 'data'");
    }
    labels_.emplace_back(line);
  }

  void option_line(std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::syntax, line, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "tol") {
      const double tol = number(value);
      if (!(tol > 0.0)) fail(ErrorKind::domain, value, "tol must be positive");
      options_.tolerance = tol;
    } else if (key == "max_iter") {
      const double n = number(value);
      if (!(n >= 1.0) || n != std::floor(n)) fail(ErrorKind::domain, value, "max_iter must be a positive integer");
      options_.max_iterations = static_cast<std::size_t>(n);
    } else {
      fail(ErrorKind::syntax, key, "unknown option '" + std::string(key) + "'");
    }
  }

  Scenario finish() {
    const Space& space = *space_;
    std::vector<double> weights(space.world_count(), 1.0);
    bool has_table = false;
    bool has_factor = false;
    for (const auto& e : entries_) {
      if (e.kind == Entry::Kind::Table) {
        if (has_table || has_factor) fail(ErrorKind::structural, e.line, e.column, "a table cannot be combined with other tables or factors");
        if (e.weights.size() != space.world_count()) {
          fail(ErrorKind::structural, e.line, e.column, "table needs " + std::to_string(space.world_count()) +
                                                            " weights, got " + std::to_string(e.weights.size()));
        }
        weights = e.weights;
        has_table = true;
      } else if (e.kind == Entry::Kind::Factor) {
        if (has_table) fail(ErrorKind::structural, e.line, e.column, "a factor cannot be combined with a table");
        const std::uint64_t size = space.subspace(e.block).world_count();
        if (e.weights.size() != size) {
          fail(ErrorKind::structural, e.line, e.column, "factor needs " + std::to_string(size) +
                                                            " weights, got " + std::to_string(e.weights.size()));
        }
        for (std::uint64_t x = 0; x < weights.size(); ++x) weights[x] *= e.weights[space.project(x, e.block)];
        has_factor = true;
      }
    }
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) fail(ErrorKind::domain, line_no_, 1, "distribution weights must be nonnegative");
      total += w;
    }
    if (!(total > 0.0)) fail(ErrorKind::domain, line_no_, 1, "distribution weights sum to zero");

    std::vector<std::string> warnings;
    if ((has_table || has_factor) && std::abs(total - 1.0) > 1e-9) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "distribution weights sum to %.12g; normalized", total);
      warnings.emplace_back(buf);
    }
    BeliefWeb prior = BeliefWeb::normalized(space, std::move(weights));
    return {space, std::move(prior), std::move(constraints_), std::move(labels_), options_, std::move(warnings)};
  }

  std::string_view text_;
  std::string_view source_;
  std::string_view raw_;
  std::size_t line_no_ = 0;
  Section section_ = Section::None;
  std::vector<Variable> variables_;
  std::vector<std::pair<std::size_t, std::size_t>> variable_pos_;
  std::optional<Space> space_;
  std::vector<Entry> entries_;
  ConstraintSet constraints_;
  std::vector<std::string> labels_;
  SolverOptions options_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source) {
  return Reader(text, source).read();
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

}  // namespace inferkit
