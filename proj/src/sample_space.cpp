#include "choquet/sample_space.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace choquet {

SampleSpace::SampleSpace(std::vector<std::string> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty() || atoms_.size() > max_atoms) {
    fail(Errc::invalid_value,
         "sample space needs between 1 and " + std::to_string(max_atoms) +
             " atoms, got " + std::to_string(atoms_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : atoms_) {
    if (label.empty()) {
      fail(Errc::invalid_value, "atom labels must be non-empty");
    }
    if (label.find('|') != std::string::npos) {
      fail(Errc::invalid_value,
           "atom label \"" + label + "\" may not contain '|'");
    }
    if (!seen.insert(label).second) {
      fail(Errc::invalid_value, "duplicate atom label \"" + label + "\"");
    }
  }
}

std::size_t SampleSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == label) return i;
  }
  fail(Errc::invalid_value, "unknown atom label \"" + label + "\"");
}

bool SampleSpace::has_label(const std::string& label) const {
  return std::find(atoms_.begin(), atoms_.end(), label) != atoms_.end();
}

Event SampleSpace::event_from_labels(
    const std::vector<std::string>& labels) const {
  Event e;
  for (const auto& label : labels) {
    e = e.with(index_of(label));
  }
  return e;
}

std::vector<std::string> SampleSpace::labels_of(Event e) const {
  if (!e.subset_of(full())) {
    fail(Errc::invalid_value, "event is not a subset of the sample space");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (e.contains(i)) out.push_back(atoms_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string SampleSpace::event_key(Event e) const {
  const auto labels = labels_of(e);
  std::ostringstream key;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) key << '|';
    key << labels[i];
  }
  return key.str();
}

Event SampleSpace::event_from_key(const std::string& key) const {
  if (key.empty()) return Event{};
  std::vector<std::string> labels;
  std::string token;
  std::istringstream in(key);
  while (std::getline(in, token, '|')) labels.push_back(token);
  return event_from_labels(labels);
}

void require_same_space(const SampleSpace& a, const SampleSpace& b,
                        const char* context) {
  if (!(a == b)) {
    fail(Errc::space_mismatch,
         std::string(context) + ": operands live on different sample spaces");
  }
}

}  // namespace choquet
