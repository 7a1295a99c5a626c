#include "folkscope/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "folkscope/error.hpp"

namespace folkscope {

InverseFrequencyKind parse_inverse_frequency(std::string_view name) {
  if (name == "irf") return InverseFrequencyKind::irf;
  if (name == "iuf") return InverseFrequencyKind::iuf;
  if (name == "ibf") return InverseFrequencyKind::ibf;
  if (name == "none" || name == "tf") return InverseFrequencyKind::none;
  throw InvalidArgument("unknown inverse frequency '" + std::string(name) + "' (irf|iuf|ibf|none)");
}

std::string inverse_frequency_name(InverseFrequencyKind kind) {
  switch (kind) {
    case InverseFrequencyKind::irf: return "irf";
    case InverseFrequencyKind::iuf: return "iuf";
    case InverseFrequencyKind::ibf: return "ibf";
    case InverseFrequencyKind::none: return "none";
  }
  return "none";
}

double inverse_frequency(std::string_view tag, const Folksonomy& f, InverseFrequencyKind kind) {
  const auto& fr = f.frequency(tag);
  auto ratio = [](std::size_t total, std::size_t n) {
    return std::log(static_cast<double>(total) / static_cast<double>(n));
  };
  switch (kind) {
    case InverseFrequencyKind::irf: return ratio(f.resource_count(), fr.resources);
    case InverseFrequencyKind::iuf: return ratio(f.user_count(), fr.users);
    case InverseFrequencyKind::ibf: return ratio(f.bookmark_count(), fr.bookmarks);
    case InverseFrequencyKind::none: return 1.0;
  }
  return 1.0;
}

FeatureVector weight_resource(const Folksonomy& f, std::string_view resource,
                              InverseFrequencyKind kind, const Vocabulary& vocab) {
  const auto& entry = f.resource(resource);
  std::vector<FeatureEntry> out;
  out.reserve(entry.weights.size());
  for (const auto& [tag, count] : entry.weights) {
    auto id = vocab.find(tag);
    if (!id) continue;
    out.push_back({*id, static_cast<double>(count) * inverse_frequency(tag, f, kind)});
  }
  return FeatureVector::from_entries(std::move(out));
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("correlation inputs differ in length");
  if (xs.size() < 2) throw InvalidArgument("correlation needs at least two observations");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateInput("correlation undefined: zero variance in " +
                          std::string(sxx == 0.0 ? "first" : "second") + " sequence");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank mean(i+1 .. j+1)
    const double r = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t q = i; q <= j; ++q) ranks[order[q]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("correlation inputs differ in length");
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

std::vector<CorrelationPair> correlate_weightings(const Folksonomy& f) {
  if (f.tag_frequencies().size() < 2) {
    throw InvalidArgument("correlation needs at least two tags");
  }
  std::vector<double> irf, iuf, ibf;
  for (const auto& [tag, fr] : f.tag_frequencies()) {
    irf.push_back(inverse_frequency(tag, f, InverseFrequencyKind::irf));
    iuf.push_back(inverse_frequency(tag, f, InverseFrequencyKind::iuf));
    ibf.push_back(inverse_frequency(tag, f, InverseFrequencyKind::ibf));
  }
  using K = InverseFrequencyKind;
  return {
      {K::irf, K::iuf, pearson(irf, iuf), spearman(irf, iuf)},
      {K::irf, K::ibf, pearson(irf, ibf), spearman(irf, ibf)},
      {K::iuf, K::ibf, pearson(iuf, ibf), spearman(iuf, ibf)},
  };
}

}  // namespace folkscope
