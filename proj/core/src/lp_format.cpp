#include "tsn/lp_format.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "tsn/errors.hpp"

namespace tsn {
namespace {

constexpr std::size_t kLineWidth = 78;
constexpr std::string_view kScaleTag = "objective scale";

// Accumulates " term" pieces and wraps before the line gets too long.
class LineWriter {
 public:
  explicit LineWriter(std::string head) : line_(std::move(head)) {}

  void add(const std::string& piece) {
    if (line_.size() + 1 + piece.size() > kLineWidth && line_.size() > indent_.size()) {
      out_ += line_ + "\n";
      line_ = indent_;
    }
    line_ += " " + piece;
  }

  std::string finish() { return out_ + line_ + "\n"; }

 private:
  std::string out_;
  std::string line_;
  std::string indent_ = "  ";
};

std::string term_text(int coef, const std::string& var, bool first) {
  std::string sign = coef < 0 ? "-" : (first ? "" : "+");
  const int magnitude = coef < 0 ? -coef : coef;
  std::string body = magnitude == 1 ? var : std::to_string(magnitude) + " " + var;
  return sign.empty() ? body : sign + " " + body;
}

std::string_view sense_text(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "=";
}

bool is_number(const std::string& token) {
  if (token.empty()) return false;
  const char c = token.front();
  return (c >= '0' && c <= '9') || c == '.';
}

}  // namespace

std::string emit_lp(const LinearProgram& program) {
  if (program.objective.size() != program.variables.size()) throw InputError("objective size mismatch");
  bool decimal = true;
  std::int64_t scale = 1;
  for (const Rational& w : program.objective) {
    if (!has_exact_decimal(w)) decimal = false;
    scale = boost::integer::lcm(scale, w.denominator());
  }

  std::string out = "\\ temporal steiner network flow model\n";
  if (!decimal) out += "\\ " + std::string(kScaleTag) + " " + std::to_string(scale) + "\n";
  out += "Minimize\n";
  LineWriter objective(" obj:");
  for (std::size_t i = 0; i < program.variables.size(); ++i) {
    Rational w = program.objective[i];
    if (!decimal) w *= scale;
    const bool negative = w < Rational(0);
    const std::string magnitude = decimal ? to_decimal_string(negative ? -w : w) : to_string(negative ? -w : w);
    const std::string sign = negative ? "- " : (i == 0 ? "" : "+ ");
    objective.add(sign + magnitude + " " + program.variables[i]);
  }
  out += objective.finish();

  out += "Subject To\n";
  for (const LinearConstraint& row : program.constraints) {
    if (row.terms.empty()) throw InputError("constraint " + row.name + " has no terms");
    LineWriter line(" " + row.name + ":");
    for (std::size_t j = 0; j < row.terms.size(); ++j) {
      line.add(term_text(row.terms[j].coef, program.variables.at(static_cast<std::size_t>(row.terms[j].var)), j == 0));
    }
    line.add(std::string(sense_text(row.sense)) + " " + std::to_string(row.rhs));
    out += line.finish();
  }

  out += "Binary\n";
  std::vector<std::string> names = program.variables;
  std::sort(names.begin(), names.end());
  LineWriter binaries("");
  for (const std::string& name : names) binaries.add(name);
  if (!names.empty()) out += binaries.finish();
  out += "End\n";
  return out;
}

std::string emit_lp(const IlpModel& model) { return emit_lp(model.program); }

LinearProgram parse_lp(std::string_view text) {
  enum class Section { kNone, kObjective, kConstraints, kBinary, kEnd };
  Section section = Section::kNone;
  std::int64_t scale = 1;
  std::vector<std::string> objective_tokens;
  std::vector<std::string> constraint_tokens;
  std::vector<std::string> binary;

  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    if (const auto slash = raw.find('\\'); slash != std::string::npos) {
      const std::string comment = raw.substr(slash + 1);
      if (const auto tag = comment.find(kScaleTag); tag != std::string::npos) {
        scale = std::stoll(comment.substr(tag + kScaleTag.size()));
        if (scale <= 0) throw InputError("objective scale must be positive");
      }
      raw.resize(slash);
    }
    std::istringstream words(raw);
    std::string first;
    if (!(words >> first)) continue;
    std::string lowered;
    for (char c : first) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lowered == "minimize" || lowered == "minimise") {
      section = Section::kObjective;
      continue;
    }
    if (lowered == "subject") {
      section = Section::kConstraints;
      continue;
    }
    if (lowered == "binary" || lowered == "binaries") {
      section = Section::kBinary;
      continue;
    }
    if (lowered == "end") {
      section = Section::kEnd;
      continue;
    }
    std::vector<std::string>* sink = nullptr;
    switch (section) {
      case Section::kObjective: sink = &objective_tokens; break;
      case Section::kConstraints: sink = &constraint_tokens; break;
      case Section::kBinary: sink = &binary; break;
      default: throw InputError("text outside of any LP section: " + raw);
    }
    sink->push_back(first);
    for (std::string word; words >> word;) sink->push_back(word);
  }
  if (section != Section::kEnd) throw InputError("LP text lacks an End line");

  LinearProgram program;
  std::map<std::string, int> index;

  // Objective: name, then [sign] coefficient variable repeated.
  std::size_t pos = 0;
  if (pos < objective_tokens.size() && objective_tokens[pos].back() == ':') ++pos;
  while (pos < objective_tokens.size()) {
    bool negative = false;
    if (objective_tokens[pos] == "+" || objective_tokens[pos] == "-") {
      negative = objective_tokens[pos] == "-";
      ++pos;
    }
    Rational coef(1);
    if (pos < objective_tokens.size() && is_number(objective_tokens[pos])) coef = parse_rational(objective_tokens[pos++]);
    if (pos >= objective_tokens.size()) throw InputError("objective ends with a dangling coefficient");
    const std::string& var = objective_tokens[pos++];
    if (index.count(var)) throw InputError("variable " + var + " repeated in objective");
    index.emplace(var, static_cast<int>(program.variables.size()));
    program.variables.push_back(var);
    coef /= scale;
    program.objective.push_back(negative ? -coef : coef);
  }

  pos = 0;
  while (pos < constraint_tokens.size()) {
    LinearConstraint row;
    const std::string& label = constraint_tokens[pos];
    if (label.size() < 2 || label.back() != ':') throw InputError("constraint without a name: " + label);
    row.name = label.substr(0, label.size() - 1);
    ++pos;
    bool closed = false;
    while (pos < constraint_tokens.size() && !closed) {
      const std::string& token = constraint_tokens[pos];
      if (token == ">=" || token == "=>" || token == "<=" || token == "=<" || token == "=") {
        row.sense = token == "=" ? Sense::kEqual : (token[0] == '>' || token[1] == '>') ? Sense::kGreaterEqual
                                                                                        : Sense::kLessEqual;
        if (++pos >= constraint_tokens.size()) throw InputError("constraint " + row.name + " lacks a right-hand side");
        row.rhs = std::stoi(constraint_tokens[pos++]);
        closed = true;
        continue;
      }
      int sign = 1;
      if (token == "+" || token == "-") {
        sign = token == "-" ? -1 : 1;
        ++pos;
      }
      int coef = 1;
      if (pos < constraint_tokens.size() && is_number(constraint_tokens[pos])) coef = std::stoi(constraint_tokens[pos++]);
      if (pos >= constraint_tokens.size()) throw InputError("constraint " + row.name + " is truncated");
      const auto it = index.find(constraint_tokens[pos]);
      if (it == index.end()) throw InputError("unknown variable " + constraint_tokens[pos]);
      row.terms.push_back({it->second, sign * coef});
      ++pos;
    }
    if (!closed) throw InputError("constraint " + row.name + " lacks a sense");
    program.constraints.push_back(std::move(row));
  }

  for (const std::string& name : binary) {
    if (!index.count(name)) throw InputError("binary variable " + name + " not in objective");
  }
  if (binary.size() != program.variables.size()) throw InputError("every variable must be declared binary");
  return program;
}

}  // namespace tsn
