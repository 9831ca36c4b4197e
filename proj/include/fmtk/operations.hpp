#pragma once

#include <vector>

#include "fmtk/structure.hpp"

namespace fmtk {

// Structure-building operations. None of them accept vocabularies with constants.
// Element numbering of the results:
//   disjoint_union, bowtie: A's elements keep their numbers, B's are shifted by |A|.
//   cartesian_product, tensor_product: the pair (a, b) becomes a * |B| + b.
//   word_of_structures, tree_of_structures: parts are laid out consecutively in order.

Structure disjoint_union(const Structure& a, const Structure& b);

/// Flips membership of every tuple, including tuples with repeated components.
Structure complement(const Structure& a);

/// R((a1,b1)..(ak,bk)) iff (a1 = .. = ak and B |= R(b)) or (A |= R(a) and b1 = .. = bk).
Structure cartesian_product(const Structure& a, const Structure& b);

/// R((a1,b1)..(ak,bk)) iff A |= R(a) and B |= R(b).
Structure tensor_product(const Structure& a, const Structure& b);

/// !((!A) u (!B)): both parts kept, every cross tuple holds.
Structure bowtie(const Structure& a, const Structure& b);

/// Name of the block pre-order added by the word/tree constructions. It is placed
/// first in the resulting vocabulary.
inline constexpr const char* kBlockOrder = "le";

/// Concatenates the parts as blocks. `le` relates a to b iff a's block is not after b's;
/// tuples of the original predicates never mix blocks.
Structure word_of_structures(const std::vector<Structure>& parts);

/// Same as word_of_structures, but blocks are arranged by `parent` (one entry per part,
/// -1 for the single root) and `le` relates a to b iff a's block is an ancestor of, or
/// equal to, b's block.
Structure tree_of_structures(const std::vector<int>& parent, const std::vector<Structure>& parts);

/// Block index of every element of a word/tree of `parts`.
std::vector<int> block_index(const std::vector<Structure>& parts);

}  // namespace fmtk
