#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace folkscope {

// Margins of one classifier over a batch: scores[j][c] for instance j and
// category c.
struct MarginTable {
  std::vector<std::string> instances;
  std::vector<std::string> categories;
  std::vector<std::vector<double>> scores;

  void validate() const;
  bool operator==(const MarginTable&) const = default;
};

struct NormalizationReport {
  double divisor = 1.0;
  // true when the batch maximum was <= 0 and max |m| was used instead
  bool degenerate = false;
};

// Divides every margin by the table's single global maximum.
MarginTable normalize(const MarginTable& table, NormalizationReport* report = nullptr);

// Elementwise sum over classifiers, optionally normalizing each first.
// Tables must share the instance and category sets; rows and columns are
// aligned to the first table's order.
MarginTable combine(std::span<const MarginTable> tables, bool normalize_margins,
                    std::vector<NormalizationReport>* reports = nullptr);

// argmax, lowest category index on ties.
std::size_t predict_committee(std::span<const double> sums);
std::vector<std::size_t> predict_committee(const MarginTable& sums);

// `instance<TAB>label:score label:score ...`, the label is everything
// before the last ':'.
MarginTable read_margins(std::istream& in);
MarginTable read_margins_file(const std::string& path);
void write_margins(std::ostream& out, const MarginTable& table);

}  // namespace folkscope
