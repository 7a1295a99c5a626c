#include "folkscope/committees.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "folkscope/classify.hpp"
#include "folkscope/error.hpp"
#include "folkscope/representation.hpp"

namespace folkscope {

void MarginTable::validate() const {
  if (scores.size() != instances.size()) throw InvalidArgument("margin rows do not match instances");
  for (const auto& row : scores) {
    if (row.size() != categories.size()) throw InvalidArgument("margin row width differs from categories");
    for (double v : row) {
      if (!std::isfinite(v)) throw InvalidArgument("margins must be finite");
    }
  }
}

MarginTable normalize(const MarginTable& table, NormalizationReport* report) {
  table.validate();
  double max = -std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (const auto& row : table.scores) {
    for (double v : row) {
      max = std::max(max, v);
      max_abs = std::max(max_abs, std::abs(v));
    }
  }
  NormalizationReport r;
  if (max > 0.0) {
    r.divisor = max;
  } else {
    r.degenerate = true;
    r.divisor = max_abs > 0.0 ? max_abs : 1.0;
  }
  MarginTable out = table;
  for (auto& row : out.scores) {
    for (double& v : row) v /= r.divisor;
  }
  if (report) *report = r;
  return out;
}

MarginTable combine(std::span<const MarginTable> tables, bool normalize_margins,
                    std::vector<NormalizationReport>* reports) {
  if (tables.empty()) throw InvalidArgument("a committee needs at least one classifier");
  const MarginTable& first = tables.front();
  first.validate();

  std::map<std::string, std::size_t> instance_index, category_index;
  for (std::size_t j = 0; j < first.instances.size(); ++j) {
    if (!instance_index.emplace(first.instances[j], j).second) {
      throw InvalidArgument("instance '" + first.instances[j] + "' appears twice");
    }
  }
  for (std::size_t c = 0; c < first.categories.size(); ++c) {
    if (!category_index.emplace(first.categories[c], c).second) {
      throw InvalidArgument("category '" + first.categories[c] + "' appears twice");
    }
  }

  MarginTable sums{first.instances, first.categories,
                   std::vector<std::vector<double>>(first.instances.size(),
                                                    std::vector<double>(first.categories.size(), 0.0))};
  if (reports) reports->clear();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    NormalizationReport r;
    const MarginTable table = normalize_margins ? normalize(tables[i], &r) : tables[i];
    table.validate();
    if (reports) reports->push_back(r);
    if (table.categories.size() != first.categories.size() ||
        table.instances.size() != first.instances.size()) {
      throw InvalidArgument("classifier " + std::to_string(i) + " covers different categories or instances");
    }
    std::vector<std::size_t> col(table.categories.size());
    for (std::size_t c = 0; c < table.categories.size(); ++c) {
      auto it = category_index.find(table.categories[c]);
      if (it == category_index.end()) {
        throw InvalidArgument("classifier " + std::to_string(i) + " has unknown category '" +
                              table.categories[c] + "'");
      }
      col[c] = it->second;
    }
    std::vector<bool> seen(first.instances.size(), false);
    for (std::size_t j = 0; j < table.instances.size(); ++j) {
      auto it = instance_index.find(table.instances[j]);
      if (it == instance_index.end() || seen[it->second]) {
        throw InvalidArgument("classifier " + std::to_string(i) + " has mismatched instance '" +
                              table.instances[j] + "'");
      }
      seen[it->second] = true;
      for (std::size_t c = 0; c < col.size(); ++c) sums.scores[it->second][col[c]] += table.scores[j][c];
    }
  }
  return sums;
}

std::size_t predict_committee(std::span<const double> sums) { return argmax(sums); }

std::vector<std::size_t> predict_committee(const MarginTable& sums) {
  std::vector<std::size_t> out;
  out.reserve(sums.scores.size());
  for (const auto& row : sums.scores) out.push_back(argmax(row));
  return out;
}

MarginTable read_margins(std::istream& in) {
  MarginTable t;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("expected instance<TAB>label:score ...", n);
    std::vector<std::string> labels;
    std::vector<double> row;
    std::string_view rest = std::string_view(line).substr(tab + 1);
    while (!rest.empty()) {
      auto sp = rest.find(' ');
      auto item = rest.substr(0, sp);
      rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1);
      if (item.empty()) continue;
      auto colon = item.rfind(':');
      if (colon == std::string_view::npos || colon == 0) throw ParseError("expected label:score", n);
      double v = 0;
      auto num = item.substr(colon + 1);
      auto res = std::from_chars(num.data(), num.data() + num.size(), v);
      if (res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
        throw ParseError("malformed score '" + std::string(item) + "'", n);
      }
      labels.emplace_back(item.substr(0, colon));
      row.push_back(v);
    }
    if (t.instances.empty()) {
      t.categories = labels;
    } else if (labels != t.categories) {
      throw ParseError("category labels differ from the first line", n);
    }
    t.instances.push_back(line.substr(0, tab));
    t.scores.push_back(std::move(row));
  }
  return t;
}

MarginTable read_margins_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open margin file '" + path + "'");
  return read_margins(in);
}

void write_margins(std::ostream& out, const MarginTable& table) {
  table.validate();
  for (std::size_t j = 0; j < table.instances.size(); ++j) {
    out << table.instances[j] << '\t';
    for (std::size_t c = 0; c < table.categories.size(); ++c) {
      if (c) out << ' ';
      out << table.categories[c] << ':' << format_double(table.scores[j][c]);
    }
    out << '\n';
  }
}

}  // namespace folkscope
