#include "bvforge/problem.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <tuple>
#include <sstream>

#include "bvforge/poly_io.hpp"

namespace bvforge {

namespace {

std::string format_diagnostics(const std::string& origin, const std::vector<Diagnostic>& diags) {
  std::string s;
  for (const auto& d : diags) {
    if (!s.empty()) s += '\n';
    s += origin + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
  }
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct LagrangianLine {
  int line;
  std::size_t offset;  // column of the first character, 1-based
  std::string text;
};

class ProblemParser {
 public:
  ProblemParser(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  ProblemSpec parse() {
    std::istringstream in(text_);
    std::string raw;
    int lineno = 0;
    std::string section;
    bool seen_base_dim = false;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = raw.substr(0, raw.find('#'));
      std::string body = trim(line);
      if (body.empty()) continue;
      int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
      if (body.front() == '[') {
        if (body.back() != ']') {
          error(lineno, col, "unterminated section header");
          continue;
        }
        section = trim(body.substr(1, body.size() - 2));
        if (section != "problem" && section != "variables" && section != "lagrangian" && section != "bounds")
          error(lineno, col + 1, "unknown section '" + section + "'");
        continue;
      }
      if (section.empty()) {
        error(lineno, col, "content before the first section");
      } else if (section == "problem") {
        auto [key, value, vcol] = key_value(body, lineno, col);
        if (key == "name") {
          spec_.name = value;
        } else if (key == "base_dim") {
          spec_.ring.base_dim = number(value, lineno, vcol, 0);
          seen_base_dim = true;
        } else if (key == "mode") {
          if (value != "finite" && value != "jet") error(lineno, vcol, "mode must be finite or jet");
          mode_ = value;
          mode_line_ = lineno;
        } else if (!key.empty()) {
          error(lineno, col, "unknown key '" + key + "'");
        }
      } else if (section == "variables") {
        declaration(body, lineno, col);
      } else if (section == "lagrangian") {
        lagrangian_.push_back({lineno, static_cast<std::size_t>(col), body});
      } else if (section == "bounds") {
        auto [key, value, vcol] = key_value(body, lineno, col);
        int* slot = key == "jet_order" || key == "max_jet_order" ? &spec_.bounds.max_jet_order
                    : key == "degree_bound"                      ? &spec_.bounds.degree_bound
                    : key == "max_kt_level"                      ? &spec_.bounds.max_kt_level
                    : key == "max_master_order"                  ? &spec_.bounds.max_master_order
                    : key == "prolongation_order"                ? &spec_.bounds.prolongation_order
                                                                 : nullptr;
        if (slot)
          *slot = number(value, lineno, vcol, key == "prolongation_order" ? 0 : 1);
        else if (!key.empty())
          error(lineno, col, "unknown bound '" + key + "'");
      }
    }
    if (mode_ == "jet" && !seen_base_dim) error(mode_line_, 1, "jet mode needs base_dim");
    if (mode_ == "finite" && spec_.ring.base_dim != 0) error(mode_line_, 1, "finite mode needs base_dim = 0");
    if (spec_.ring.fields.empty()) error(lineno, 1, "no fields declared");
    spec_.ring.max_jet_order = spec_.finite_mode() ? 0 : spec_.bounds.max_jet_order;
    check_lagrangian(lineno);
    if (!diags_.empty()) throw ProblemError(origin_, diags_);
    return spec_;
  }

 private:
  void error(int line, int col, std::string msg) { diags_.push_back({line, col, std::move(msg)}); }

  std::tuple<std::string, std::string, int> key_value(const std::string& body, int line, int col) {
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      error(line, col, "expected key = value");
      return {"", "", col};
    }
    std::string value = trim(body.substr(eq + 1));
    int vcol = col + static_cast<int>(body.find_first_not_of(" \t", eq + 1));
    return {trim(body.substr(0, eq)), value, vcol};
  }

  int number(const std::string& value, int line, int col, int min) {
    static const std::regex re("[0-9]+");
    if (!std::regex_match(value, re) || value.size() > 6) {
      error(line, col, "expected a non-negative integer, got '" + value + "'");
      return min;
    }
    int v = std::stoi(value);
    if (v < min) error(line, col, "value must be at least " + std::to_string(min));
    return v;
  }

  void declaration(const std::string& body, int line, int col) {
    std::istringstream ws(body);
    std::string kind, name, extra;
    ws >> kind >> name;
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    if (name.empty() || !std::regex_match(name, ident)) {
      error(line, col, "expected '<kind> <name>'");
      return;
    }
    if (name.find("C_") == 0) {
      error(line, col, "names starting with C_ are reserved for ghosts");
      return;
    }
    if (!declared_.insert(name).second) {
      error(line, col, "duplicate variable " + name);
      return;
    }
    int parity = 0;
    if (ws >> extra) {
      if (extra == "odd" && kind == "field") parity = 1;
      else if (extra != "even") error(line, col, "unexpected '" + extra + "'");
    }
    if (kind == "field") spec_.ring.fields.push_back({name, parity});
    else if (kind == "parameter") spec_.ring.parameters.push_back(name);
    else if (kind == "coordinate") spec_.ring.coordinates.push_back(name);
    else error(line, col, "unknown variable kind '" + kind + "'");
  }

  void check_lagrangian(int last_line) {
    if (lagrangian_.empty()) {
      error(last_line, 1, "missing [lagrangian] section");
      return;
    }
    std::string joined;
    std::vector<std::pair<std::size_t, const LagrangianLine*>> starts;
    for (const auto& l : lagrangian_) {
      if (!joined.empty()) joined += ' ';
      starts.push_back({joined.size(), &l});
      joined += l.text;
    }
    spec_.lagrangian = joined;
    if (!diags_.empty()) return;
    try {
      problem_action(spec_);
    } catch (const PolyParseError& e) {
      std::size_t pos = e.column() - 1;
      const LagrangianLine* at = starts.front().second;
      std::size_t base = 0;
      for (const auto& [off, l] : starts)
        if (off <= pos) at = l, base = off;
      error(at->line, static_cast<int>(at->offset + pos - base), e.what());
    } catch (const std::exception& e) {
      error(lagrangian_.front().line, static_cast<int>(lagrangian_.front().offset), e.what());
    }
  }

  const std::string& text_;
  std::string origin_;
  ProblemSpec spec_;
  std::string mode_;
  int mode_line_ = 1;
  std::set<std::string> declared_;
  std::vector<LagrangianLine> lagrangian_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

ProblemError::ProblemError(std::string origin, std::vector<Diagnostic> diags)
    : std::runtime_error(format_diagnostics(origin, diags)), origin_(std::move(origin)), diags_(std::move(diags)) {}

bool ProblemSpec::operator==(const ProblemSpec& o) const {
  auto same_bounds = [](const Bounds& a, const Bounds& b) {
    return a.max_jet_order == b.max_jet_order && a.degree_bound == b.degree_bound && a.max_kt_level == b.max_kt_level &&
           a.max_master_order == b.max_master_order && a.prolongation_order == b.prolongation_order;
  };
  return name == o.name && ring.base_dim == o.ring.base_dim && ring.fields == o.ring.fields &&
         ring.parameters == o.ring.parameters && ring.coordinates == o.ring.coordinates &&
         ring.max_jet_order == o.ring.max_jet_order && lagrangian == o.lagrangian && same_bounds(bounds, o.bounds);
}

ProblemSpec parse_problem_text(const std::string& text, const std::string& origin) {
  return ProblemParser(text, origin).parse();
}

ProblemSpec parse_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError(path, {{0, 0, "cannot read file"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str(), path);
}

std::string print_problem(const ProblemSpec& spec) {
  std::ostringstream o;
  o << "[problem]\n";
  if (!spec.name.empty()) o << "name = " << spec.name << '\n';
  o << "mode = " << (spec.finite_mode() ? "finite" : "jet") << '\n';
  if (!spec.finite_mode()) o << "base_dim = " << spec.ring.base_dim << '\n';
  o << "\n[variables]\n";
  for (const auto& f : spec.ring.fields) o << "field " << f.name << (f.intrinsic_parity ? " odd" : "") << '\n';
  for (const auto& p : spec.ring.parameters) o << "parameter " << p << '\n';
  for (const auto& c : spec.ring.coordinates) o << "coordinate " << c << '\n';
  o << "\n[lagrangian]\n" << spec.lagrangian << '\n';
  const Bounds& b = spec.bounds;
  o << "\n[bounds]\n";
  o << "jet_order = " << b.max_jet_order << '\n';
  o << "prolongation_order = " << b.prolongation_order << '\n';
  o << "degree_bound = " << b.degree_bound << '\n';
  o << "max_kt_level = " << b.max_kt_level << '\n';
  o << "max_master_order = " << b.max_master_order << '\n';
  return o.str();
}

LocalAction problem_action(const ProblemSpec& spec) {
  JetRingSpec ring = spec.ring;
  ring.max_jet_order = spec.finite_mode() ? 0 : spec.bounds.max_jet_order;
  return LocalAction::parse(ring, spec.lagrangian);
}

}  // namespace bvforge
