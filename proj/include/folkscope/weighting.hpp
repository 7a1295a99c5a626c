#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "folkscope/folksonomy.hpp"
#include "folkscope/representation.hpp"

namespace folkscope {

enum class InverseFrequencyKind { irf, iuf, ibf, none };

InverseFrequencyKind parse_inverse_frequency(std::string_view name);
std::string inverse_frequency_name(InverseFrequencyKind kind);

// ln(|R|/rf), ln(|U|/uf), ln(|B|/bf) over annotated entities; 1 for none.
// Throws InvalidArgument for tags absent from the folksonomy.
double inverse_frequency(std::string_view tag, const Folksonomy& f, InverseFrequencyKind kind);

// w_t(r) * ixf(t) for each in-vocabulary tag of the resource.
FeatureVector weight_resource(const Folksonomy& f, std::string_view resource,
                              InverseFrequencyKind kind, const Vocabulary& vocab);

// Product-moment correlation. Sizes must match, n >= 2, both variances > 0.
double pearson(std::span<const double> xs, std::span<const double> ys);
// Pearson over average (fractional, 1-based) ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);
std::vector<double> average_ranks(std::span<const double> values);

struct CorrelationPair {
  InverseFrequencyKind first;
  InverseFrequencyKind second;
  double r;
  double rho;
};

// Correlations of per-tag IRF/IUF/IBF values, tags in lexicographic order.
std::vector<CorrelationPair> correlate_weightings(const Folksonomy& f);

}  // namespace folkscope
