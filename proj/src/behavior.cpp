#include "folkscope/behavior.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "folkscope/error.hpp"

namespace folkscope {

BehaviorMeasure parse_measure(std::string_view name) {
  if (name == "tpp") return BehaviorMeasure::tpp;
  if (name == "trr") return BehaviorMeasure::trr;
  if (name == "orphan") return BehaviorMeasure::orphan;
  throw InvalidArgument("unknown measure '" + std::string(name) + "' (tpp|trr|orphan)");
}

std::string measure_name(BehaviorMeasure m) {
  switch (m) {
    case BehaviorMeasure::tpp: return "tpp";
    case BehaviorMeasure::trr: return "trr";
    case BehaviorMeasure::orphan: return "orphan";
  }
  return "tpp";
}

double measure_value(const UserProfile& p, BehaviorMeasure m) {
  switch (m) {
    case BehaviorMeasure::tpp: return p.tpp;
    case BehaviorMeasure::trr: return p.trr;
    case BehaviorMeasure::orphan: return p.orphan;
  }
  return p.tpp;
}

namespace {

UserProfile profile_of(const Folksonomy& f, std::string_view user, const std::vector<std::size_t>& idx) {
  UserProfile p;
  p.user = std::string(user);
  // tag -> number of the user's resources carrying it
  std::unordered_map<std::string_view, std::size_t> spread;
  for (std::size_t i : idx) {
    const Bookmark& b = f.bookmarks()[i];
    if (!b.annotated()) continue;
    ++p.resources;
    p.assignments += b.tags.size();
    for (const auto& t : b.tags) ++spread[t];
  }
  if (p.resources == 0) {
    throw InvalidArgument("user '" + p.user + "' has no annotated bookmarks");
  }
  p.tags = spread.size();
  const auto r = static_cast<double>(p.resources);
  p.tpp = static_cast<double>(p.assignments) / r;
  p.trr = static_cast<double>(p.tags) / r;

  std::size_t top = 0;
  for (const auto& [t, n] : spread) top = std::max(top, n);
  const std::size_t threshold = (top + 99) / 100;  // ceil(|R(t_max)| / 100)
  std::size_t orphans = 0;
  for (const auto& [t, n] : spread) orphans += n <= threshold ? 1 : 0;
  p.orphan = static_cast<double>(orphans) / static_cast<double>(p.tags);
  return p;
}

}  // namespace

UserProfile user_profile(const Folksonomy& f, std::string_view user) {
  auto it = f.users().find(user);
  if (it == f.users().end()) throw InvalidArgument("unknown user '" + std::string(user) + "'");
  return profile_of(f, user, it->second);
}

double tpp(const Folksonomy& f, std::string_view user) { return user_profile(f, user).tpp; }
double trr(const Folksonomy& f, std::string_view user) { return user_profile(f, user).trr; }
double orphan(const Folksonomy& f, std::string_view user) { return user_profile(f, user).orphan; }

std::vector<UserProfile> user_profiles(const Folksonomy& f) {
  std::vector<UserProfile> out;
  for (const auto& [user, idx] : f.users()) {
    const bool annotated =
        std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return f.bookmarks()[i].annotated(); });
    if (annotated) out.push_back(profile_of(f, user, idx));
  }
  return out;
}

std::vector<UserProfile> rank_users(std::vector<UserProfile> profiles, BehaviorMeasure m) {
  std::sort(profiles.begin(), profiles.end(), [m](const UserProfile& a, const UserProfile& b) {
    const double va = measure_value(a, m);
    const double vb = measure_value(b, m);
    if (va != vb) return va < vb;
    return a.user < b.user;
  });
  return profiles;
}

UserSplit split_by_assignments(std::span<const UserProfile> ranked, BehaviorMeasure m, double percent) {
  if (!(percent > 0.0 && percent <= 100.0)) throw InvalidArgument("percent must lie in (0, 100]");
  std::size_t total = 0;
  for (const auto& p : ranked) total += p.assignments;
  if (total == 0) throw InvalidArgument("split needs users with tag assignments");

  UserSplit split;
  split.measure = m;
  split.percent = percent;
  // mass / total >= percent / 100, kept in products to avoid 0.1 * n drift
  const double target = percent * static_cast<double>(total);
  auto short_of_target = [&](std::size_t mass) { return 100.0 * static_cast<double>(mass) < target; };

  std::size_t head = 0, mass = 0;
  while (head < ranked.size() && short_of_target(mass)) mass += ranked[head++].assignments;
  split.categorizer_fraction = static_cast<double>(mass) / static_cast<double>(total);
  for (std::size_t i = 0; i < head; ++i) split.categorizers.push_back(ranked[i].user);

  std::size_t tail = ranked.size();
  mass = 0;
  while (tail > 0 && short_of_target(mass)) mass += ranked[--tail].assignments;
  split.describer_fraction = static_cast<double>(mass) / static_cast<double>(total);
  for (std::size_t i = ranked.size(); i > tail; --i) split.describers.push_back(ranked[i - 1].user);

  split.overlap = head > tail ? head - tail : 0;
  return split;
}

double cosine(const FeatureVector& a, const FeatureVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

DescriptivenessResult descriptiveness(const std::map<std::string, FeatureVector>& tag_vectors,
                                      const std::map<std::string, FeatureVector>& reference_vectors) {
  if (tag_vectors.empty()) throw InvalidArgument("descriptiveness needs at least one resource");
  if (tag_vectors.size() != reference_vectors.size()) {
    throw InvalidArgument("tag and reference vectors cover different resources");
  }
  DescriptivenessResult out;
  double sum = 0.0;
  for (const auto& [r, t] : tag_vectors) {
    auto it = reference_vectors.find(r);
    if (it == reference_vectors.end()) {
      throw InvalidArgument("resource '" + r + "' has no reference vector");
    }
    if (t.norm() == 0.0 || it->second.norm() == 0.0) out.zero_vector_resources.push_back(r);
    sum += cosine(t, it->second);
    ++out.resources;
  }
  out.value = sum / static_cast<double>(out.resources);
  return out;
}

}  // namespace folkscope
