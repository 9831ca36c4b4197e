#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fmtk/structure.hpp"

namespace fmtk {

using IndexPair = std::pair<int, int>;

/// First pair i < j with tuples[i] <= tuples[j] componentwise: smallest j, then
/// smallest i. All tuples must have one dimension.
std::optional<IndexPair> dickson_pair(const std::vector<std::vector<long long>>& tuples);

/// Linear order of `size` elements with a tuple of marked positions.
struct MarkedOrder {
    int size = 1;
    std::vector<int> marks;
};

/// Relative order of the marks: rank of each mark among the distinct marked positions.
std::vector<int> mark_pattern(const MarkedOrder& o);

/// Gap counts: elements strictly before the first distinct mark, strictly between
/// consecutive distinct marks, and strictly after the last one.
std::vector<long long> order_type_tuple(const MarkedOrder& o);

/// The marked order as a structure over {le} with constants c1..ck.
Structure marked_order_structure(const MarkedOrder& o);

/// Embedding pair in a sequence of marked orders with k marks each, found by grouping
/// on the mark pattern and comparing gap tuples. The pair is checked with
/// find_embedding (VerificationFailure if that disagrees).
std::optional<IndexPair> linear_order_embedding_pair(const std::vector<MarkedOrder>& seq, int k);

/// First pair i < j (smallest j, then smallest i) with seq[i] embedding into seq[j].
std::optional<IndexPair> first_embedding_pair(const std::vector<Structure>& seq);

/// Constant expansion: constants c1..cr interpret the marks in order.
Structure to_Sk(const Structure& a, const std::vector<Element>& marks);
/// Unary expansion: a new predicate R holds exactly on the marks.
Structure to_Sk_pred(const Structure& a, const std::vector<Element>& marks);
/// Converts a constant expansion made by to_Sk into the unary expansion.
Structure forget_mark_order(const Structure& a_k);

/// Name of the mark predicate added by to_Sk_pred.
inline constexpr const char* kMarkPredicate = "R";

struct AntichainCertificate {
    bool antichain = true;
    /// When not an antichain: some (i, j), i != j, with items[i] embedding in items[j].
    std::optional<IndexPair> failing;
};

AntichainCertificate antichain_certificate(const std::vector<Structure>& items);

/// Induced union of at most |W| path segments of the path P containing W. W is split
/// where consecutive marks are more than 3^{m+1} apart; each group keeps its span.
/// With W empty, a single end segment of length min(|P|-1, 3^{m+k+2}) is kept.
Renumbered shrink_path_with_w(const Structure& p, const std::vector<Element>& w, int m, int k);

/// Deletes the smallest non-W node of the cycle and shrinks the resulting path.
Renumbered shrink_cycle_with_w(const Structure& c, const std::vector<Element>& w, int m, int k);

/// Substructure of A (which must be some H_n or G_n) containing W, isomorphic to H_T
/// for T = min(n, m+k+2) when a cycle or long paths must be cut, and A itself when no
/// cut is needed or the cycle cannot be replaced soundly (G_n with n < m).
Renumbered witness_HnGn(const Structure& a, const std::vector<Element>& w, int m, int k);

struct HnGnShape {
    int n = 0;
    bool cycle = false;  // G_n rather than H_n
};
/// Recognizes H_n and G_n up to the numbering of elements.
std::optional<HnGnShape> recognize_HnGn(const Structure& a);

/// Connected components (by E) listed as element sequences along the path or cycle.
struct GraphComponent {
    std::vector<Element> order;
    bool cycle = false;
};
std::vector<GraphComponent> path_cycle_components(const Structure& g);

}  // namespace fmtk
