#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fmtk/parallel.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

class TypeTable;

/// Canonical rank-m back-and-forth type of a structure with a distinguished tuple.
/// Rank 0 is the atomic type of the tuple together with the constants; rank m is the
/// set of rank m-1 types of all one-element extensions. Two values are equal iff the
/// duplicator wins the m-round game from the corresponding positions.
class RankType {
public:
    RankType(int rank, int id, std::shared_ptr<TypeTable> table)
        : rank_(rank), id_(id), table_(std::move(table)) {}

    int rank() const { return rank_; }
    /// Interned id, meaningful only within the table that produced it.
    int id() const { return id_; }
    /// Stable hex fingerprint (128-bit truncated SHA-256 of the canonical form).
    std::string hex() const;

    bool operator==(const RankType& other) const;

private:
    int rank_;
    int id_;
    std::shared_ptr<TypeTable> table_;
};

/// Rank-type cache shared by a sequence of computations. Thread-safe: types are
/// interned with insert-if-absent semantics, so concurrent callers get identical ids.
class EquivSession {
public:
    EquivSession();
    ~EquivSession();
    EquivSession(const EquivSession&) = delete;
    EquivSession& operator=(const EquivSession&) = delete;

    RankType rank_type(const Structure& a, const Tuple& tuple, int m,
                       Execution exec = Execution::Serial);

    bool m_equivalent(const Structure& a, const Structure& b, int m);
    bool m_equivalent(const Structure& a, const Tuple& ta, const Structure& b, const Tuple& tb, int m);

    /// Number of distinct types interned so far.
    std::size_t interned() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Convenience wrappers using a call-local session.
RankType rank_type(const Structure& a, const Tuple& tuple, int m,
                   Execution exec = Execution::Serial);
bool m_equivalent(const Structure& a, const Structure& b, int m);
bool m_equivalent(const Structure& a, const Tuple& ta, const Structure& b, const Tuple& tb, int m);

/// Explicit minimax search over the m-round Ehrenfeucht-Fraisse game. Shares no code
/// with the rank-type machinery; used as an oracle.
bool ef_game_equivalent(const Structure& a, const Structure& b, int m);
bool ef_game_equivalent(const Structure& a, const Tuple& ta, const Structure& b, const Tuple& tb,
                        int m);

struct MarkedItem {
    Structure structure;
    Tuple tuple;
};

/// Groups item indices by rank-m type. Classes are listed in order of first occurrence.
std::vector<std::vector<int>> realized_classes(const std::vector<MarkedItem>& items, int m,
                                               EquivSession* session = nullptr);

}  // namespace fmtk
