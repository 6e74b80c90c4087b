#include "problem_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace bsm {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InvalidArgument("problem file line " + std::to_string(line) + ": " +
                        what);
}

double parse_number(std::string_view text, std::size_t line) {
  const std::string s(trim(text));
  const auto slash = s.find('/');
  auto read = [&](const std::string& part) {
    const std::string t(trim(part));
    if (t.empty()) fail(line, "empty number");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      fail(line, "not a number: '" + t + "'");
    }
    if (used != t.size()) fail(line, "not a number: '" + t + "'");
    return v;
  };
  if (slash == std::string::npos) return read(s);
  const double den = read(s.substr(slash + 1));
  if (den == 0.0) fail(line, "zero denominator in '" + s + "'");
  return read(s.substr(0, slash)) / den;
}

std::size_t parse_count(std::string_view text, std::size_t line) {
  const std::string_view t = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    fail(line, "expected a positive integer, got '" + std::string(t) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::size_t line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

ProblemDescription parse_problem_text(std::string_view text, std::string name) {
  ProblemDescription desc;
  desc.name = std::move(name);

  static const std::set<std::string> kMaterialKeys{"sigma_t", "sigma_s",
                                                   "lambda", "q"};
  std::string section;
  std::set<std::string> seen;  // "section:key"
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "material.1" && section != "material.2" &&
          section != "slab" && section != "boundary") {
        fail(line_no, "unknown section [" + section + "]");
      }
      if (!seen.insert("[" + section + "]").second) {
        fail(line_no, "duplicate section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key '" + key + "' outside a section");
    if (value.empty()) fail(line_no, "missing value for '" + key + "'");
    if (!seen.insert(section + ":" + key).second) {
      fail(line_no, "duplicate key '" + key + "'");
    }

    if (section == "material.1" || section == "material.2") {
      MaterialSpec& m = desc.materials[section.back() == '1' ? 0 : 1];
      if (!kMaterialKeys.count(key)) fail(line_no, "unknown key '" + key + "'");
      const double v = parse_number(value, line_no);
      if (key == "sigma_t") m.sigma_t = v;
      else if (key == "sigma_s") m.sigma_s = v;
      else if (key == "lambda") m.lambda = v;
      else m.q = v;
    } else if (section == "slab") {
      if (key == "length") desc.slab_length = parse_number(value, line_no);
      else if (key == "cells") desc.n_cells = parse_count(value, line_no);
      else fail(line_no, "unknown key '" + key + "'");
    } else {
      static const std::map<std::string, std::pair<int, int>> kInflowKeys{
          {"inflow.1.left", {0, 0}},
          {"inflow.1.right", {0, 1}},
          {"inflow.2.left", {1, 0}},
          {"inflow.2.right", {1, 1}}};
      const auto it = kInflowKeys.find(key);
      if (it == kInflowKeys.end()) fail(line_no, "unknown key '" + key + "'");
      desc.inflow[it->second.first][it->second.second].values =
          parse_list(value, line_no);
    }
  }

  for (const char* mat : {"material.1", "material.2"}) {
    for (const auto& k : kMaterialKeys) {
      if (!seen.count(std::string(mat) + ":" + k)) {
        throw InvalidArgument(std::string("problem file: missing ") + mat +
                              "." + k);
      }
    }
  }
  if (!seen.count("slab:length")) {
    throw InvalidArgument("problem file: missing slab.length");
  }
  return desc;
}

ProblemDescription load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path);
}

ProblemSpec to_problem(const ProblemDescription& desc, std::size_t n_per_half,
                       std::optional<std::size_t> n_cells) {
  std::array<BoundaryInflow, 2> inflow;
  for (std::size_t l = 0; l < 2; ++l) {
    std::vector<double>* sides[2] = {&inflow[l].left, &inflow[l].right};
    for (std::size_t s = 0; s < 2; ++s) {
      const auto& v = desc.inflow[l][s].values;
      if (v.size() == 1) {
        sides[s]->assign(n_per_half, v[0]);
      } else if (!v.empty()) {
        if (v.size() != n_per_half) {
          throw InvalidArgument(
              "inflow." + std::to_string(l + 1) + (s == 0 ? ".left" : ".right") +
              " has " + std::to_string(v.size()) + " values but the quadrature has " +
              std::to_string(n_per_half) + " nodes per half");
        }
        *sides[s] = v;
      }
    }
  }
  return make_problem(desc.name, desc.materials, desc.slab_length,
                      n_cells.value_or(desc.n_cells), n_per_half,
                      std::move(inflow));
}

}  // namespace bsm
