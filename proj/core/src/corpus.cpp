#include "amalgam/corpus.hpp"

#include <algorithm>

namespace amalgam {

namespace {

AmalgamInstance make(std::vector<Int> d, std::vector<Int> a1, std::vector<Int> a2, IntMatrix mu1, IntMatrix mu2) {
  return {BlockAlgebra(std::move(d)), BlockAlgebra(std::move(a1)), BlockAlgebra(std::move(a2)), std::move(mu1),
          std::move(mu2)};
}

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> out;
  out.push_back({"m2_c2_m2", "M2 *_{C^2} M2, isomorphic to M2(C(T))",
                 make({1, 1}, {2}, {2}, {{1, 1}}, {{1, 1}}), Label::NotPrimitive, Rule::M2AmalgamCircle});
  out.push_back({"m2m3_c3_m2m3", "(M2 + M3) *_{C^3} (M2 + M3), a direct sum of two products",
                 make({1, 1, 1}, {2, 3}, {2, 3}, {{1, 1, 0}, {0, 0, 3}}, {{1, 1, 0}, {0, 0, 3}}),
                 Label::NotPrimitive, Rule::PedersenDirectSum});
  for (Int a = 1; a <= 5; ++a) {
    for (Int b = 1; b <= 5; ++b) {
      std::vector<std::vector<Int>> rows;
      for (Int k = 0; k < a; ++k) rows.push_back({1, 0});
      for (Int k = 0; k < b; ++k) rows.push_back({0, 1});
      const bool primitive = (a == 1 && b == 1) || (std::min(a, b) >= 2 && std::max(a, b) >= 3);
      out.push_back({"m2_c2_c" + std::to_string(a) + "_c" + std::to_string(b),
                     "M2 *_{C^2} (C^" + std::to_string(a) + " + C^" + std::to_string(b) + ")",
                     make({1, 1}, {2}, std::vector<Int>(static_cast<std::size_t>(a + b), 1), {{1, 1}},
                          IntMatrix::from_rows(rows)),
                     primitive ? Label::Primitive : Label::NotPrimitive, Rule::M2AbelianFamily});
    }
  }
  out.push_back({"m2m2_c2_m2m2", "(M2 + M2) *_{C^2} (M2 + M2), every multiplicity 1",
                 make({1, 1}, {2, 2}, {2, 2}, {{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}), Label::Primitive,
                 Rule::RankOneCharacterization});
  out.push_back({"m4_c2_m4", "M4 *_{C^2} M4, every multiplicity 2", make({1, 1}, {4}, {4}, {{2, 2}}, {{2, 2}}),
                 Label::Primitive, Rule::RankOneCharacterization});
  out.push_back({"c2_c_c2", "C^2 * C^2 over C", make({1}, {1, 1}, {1, 1}, {{1}, {1}}, {{1}, {1}}),
                 Label::NotPrimitive, Rule::PlainFreeProduct});
  out.push_back({"c2_c_c3", "C^2 * C^3 over C", make({1}, {1, 1}, {1, 1, 1}, {{1}, {1}}, {{1}, {1}, {1}}),
                 Label::Primitive, Rule::PlainFreeProduct});
  out.push_back({"star_c4", "three M2 blocks each joining base block 1 to one other block, both sides",
                 make({1, 1, 1, 1}, {2, 2, 2}, {2, 2, 2}, {{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}},
                      {{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}}),
                 Label::Unknown, Rule::Unresolved});
  out.push_back({"not_rfd_m2_c2_m3", "M2 *_{C^2} M3 with multiplicities [1,1] and [1,2]",
                 make({1, 1}, {2}, {3}, {{1, 1}}, {{1, 2}}), Label::Unknown, Rule::NotRfd});
  out.push_back({"m3_c3_m3m3", "M3 *_{C^3} (M3 + M3)",
                 make({1, 1, 1}, {3}, {3, 3}, {{1, 1, 1}}, {{1, 1, 1}, {1, 1, 1}}), Label::Primitive,
                 Rule::RankOneCharacterization});
  out.push_back({"m4_c2_m2m2", "M4 *_{C^2} (M2 + M2), multiplicities [2,2] against all ones",
                 make({1, 1}, {4}, {2, 2}, {{2, 2}}, {{1, 1}, {1, 1}}), Label::Primitive,
                 Rule::RankOneCharacterization});
  out.push_back({"m4_m2_m4", "M4 *_{M2} M4, compresses to M2 * M2 over C", make({2}, {4}, {4}, {{2}}, {{2}}),
                 Label::Primitive, Rule::PlainFreeProduct});
  out.push_back({"m2m2_c2_m4", "(M2 + M2) *_{C^2} M4 with diagonal multiplicity 2",
                 make({1, 1}, {2, 2}, {4}, {{2, 0}, {0, 2}}, {{2, 2}}), Label::Primitive, Rule::BigMultiplicities});
  out.push_back({"linked_c3", "(M2 + C) *_{C^3} (M2 + C), linked only after reordering the base",
                 make({1, 1, 1}, {2, 1}, {2, 1}, {{1, 0, 1}, {0, 1, 0}}, {{1, 1, 0}, {0, 0, 1}}), Label::Unknown,
                 Rule::Unresolved});
  out.push_back({"m5_c_m2_m5", "M5 *_{C + M2} M5 with multiplicities [1,2]", make({1, 2}, {5}, {5}, {{1, 2}}, {{1, 2}}),
                 Label::Primitive, Rule::RankOneCharacterization});
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry* find_corpus_entry(std::string_view name) {
  const auto& all = corpus();
  auto it = std::find_if(all.begin(), all.end(), [&](const CorpusEntry& e) { return e.name == name; });
  return it == all.end() ? nullptr : &*it;
}

}  // namespace amalgam
