#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amalgam/classify.hpp"

namespace amalgam {

struct CorpusEntry {
  std::string name;
  std::string description;
  AmalgamInstance instance;
  Label expected;
  /// The rule classify is expected to cite, when pinned.
  std::optional<Rule> expected_rule;
};

/// Bundled instances with known labels.
const std::vector<CorpusEntry>& corpus();
const CorpusEntry* find_corpus_entry(std::string_view name);

}  // namespace amalgam
