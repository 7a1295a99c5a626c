#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "folkscope/folksonomy.hpp"
#include "folkscope/representation.hpp"

namespace folkscope {

// Categorizer/Describer measures of one user, computed over the user's
// annotated bookmarks only.
struct UserProfile {
  std::string user;
  double tpp = 0;     // tag assignments / annotated resources
  double trr = 0;     // distinct tags / annotated resources
  double orphan = 0;  // share of distinct tags used on <= n resources
  std::size_t resources = 0;
  std::size_t tags = 0;
  std::size_t assignments = 0;

  bool operator==(const UserProfile&) const = default;
};

enum class BehaviorMeasure { tpp, trr, orphan };

BehaviorMeasure parse_measure(std::string_view name);
std::string measure_name(BehaviorMeasure m);
double measure_value(const UserProfile& p, BehaviorMeasure m);

// Throws InvalidArgument when the user has no annotated bookmark.
UserProfile user_profile(const Folksonomy& f, std::string_view user);
double tpp(const Folksonomy& f, std::string_view user);
double trr(const Folksonomy& f, std::string_view user);
double orphan(const Folksonomy& f, std::string_view user);

// Profiles of every annotated user, in user id order.
std::vector<UserProfile> user_profiles(const Folksonomy& f);

// Ascending by measure (Categorizer end first), ties by user id.
std::vector<UserProfile> rank_users(std::vector<UserProfile> profiles, BehaviorMeasure m);

struct UserSplit {
  BehaviorMeasure measure = BehaviorMeasure::tpp;
  double percent = 0;
  std::vector<std::string> categorizers;
  std::vector<std::string> describers;
  double categorizer_fraction = 0;  // achieved share of all assignments
  double describer_fraction = 0;
  std::size_t overlap = 0;  // users present on both sides
};

// Whole users are taken from each end of the ranking until their
// assignments first reach `percent` of the total; the user crossing the
// threshold is included.
UserSplit split_by_assignments(std::span<const UserProfile> ranked, BehaviorMeasure m, double percent);

double cosine(const FeatureVector& a, const FeatureVector& b);

struct DescriptivenessResult {
  double value = 0;
  std::size_t resources = 0;
  // resources where either vector is all-zero; they score 0 and are counted
  std::vector<std::string> zero_vector_resources;
};

// Mean cosine between each resource's tag vector and its reference vector.
DescriptivenessResult descriptiveness(const std::map<std::string, FeatureVector>& tag_vectors,
                                      const std::map<std::string, FeatureVector>& reference_vectors);

}  // namespace folkscope
