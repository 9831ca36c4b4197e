#include "fmtk/equiv.hpp"

#include <openssl/evp.h>
#include <omp.h>

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "fmtk/error.hpp"

namespace fmtk {

int max_threads() { return omp_get_max_threads(); }

namespace {

using Key = std::vector<std::uint64_t>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = k.size();
        for (auto w : k) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

constexpr std::uint64_t kAtomicTag = 0;
constexpr std::uint64_t kRankTag = 1;

std::string sha_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hexdigits = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < 16 && i < len; ++i) {
        out += hexdigits[digest[i] >> 4];
        out += hexdigits[digest[i] & 15];
    }
    return out;
}

}  // namespace

class TypeTable {
public:
    int intern(Key key) {
        {
            std::shared_lock lock(mutex_);
            auto it = ids_.find(key);
            if (it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto [it, inserted] = ids_.try_emplace(key, static_cast<int>(keys_.size()));
        if (inserted) {
            keys_.push_back(std::move(key));
            fingerprints_.emplace_back();
        }
        return it->second;
    }

    int vocab_id(const Vocabulary& v) {
        std::string sig = v.signature();
        std::lock_guard lock(vocab_mutex_);
        auto [it, inserted] = vocabs_.try_emplace(sig, static_cast<int>(vocab_names_.size()));
        if (inserted) vocab_names_.push_back(sig);
        return it->second;
    }

    std::string fingerprint(int id) {
        {
            std::shared_lock lock(mutex_);
            if (fingerprints_[id]) return *fingerprints_[id];
        }
        Key key;
        {
            std::shared_lock lock(mutex_);
            key = keys_[id];
        }
        std::string canon;
        if ((key[0] >> 56) == kAtomicTag) {
            int vid = static_cast<int>((key[0] >> 32) & 0xffffff);
            {
                std::lock_guard lock(vocab_mutex_);
                canon = "A|" + vocab_names_[vid] + "|";
            }
            canon += std::to_string(key[0] & 0xffffffff);
            for (std::size_t i = 1; i < key.size(); ++i) canon += "|" + std::to_string(key[i]);
        } else {
            std::vector<std::string> kids;
            for (std::size_t i = 1; i < key.size(); ++i) kids.push_back(fingerprint(static_cast<int>(key[i])));
            std::sort(kids.begin(), kids.end());
            canon = "R|" + std::to_string(key[0] & 0xffffffff);
            for (const auto& k : kids) canon += "|" + k;
        }
        std::string fp = sha_hex(canon);
        std::unique_lock lock(mutex_);
        fingerprints_[id] = fp;
        return fp;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return keys_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, int, KeyHash> ids_;
    std::vector<Key> keys_;
    std::vector<std::optional<std::string>> fingerprints_;
    std::mutex vocab_mutex_;
    std::map<std::string, int> vocabs_;
    std::vector<std::string> vocab_names_;
};

std::string RankType::hex() const { return table_->fingerprint(id_); }

bool RankType::operator==(const RankType& other) const {
    if (rank_ != other.rank_) return false;
    if (table_ == other.table_) return id_ == other.id_;
    return hex() == other.hex();
}

namespace {

struct MemoKey {
    std::uint64_t uid;
    int rank;
    Tuple tuple;
    bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
    std::size_t operator()(const MemoKey& k) const noexcept {
        std::size_t h = std::hash<std::uint64_t>{}(k.uid) * 31 + static_cast<std::size_t>(k.rank);
        for (Element e : k.tuple) h = h * 1000003u + static_cast<std::size_t>(e);
        return h;
    }
};

}  // namespace

struct EquivSession::Impl {
    std::shared_ptr<TypeTable> table = std::make_shared<TypeTable>();
    std::mutex memo_mutex;
    std::unordered_map<MemoKey, int, MemoHash> memo;

    int atomic(const Structure& a, const Tuple& t) {
        Tuple e = t;
        e.insert(e.end(), a.constants().begin(), a.constants().end());
        const int len = static_cast<int>(e.size());
        const auto& v = a.vocab();
        Key key;
        key.push_back((kAtomicTag << 56) |
                      (static_cast<std::uint64_t>(table->vocab_id(v)) << 32) |
                      static_cast<std::uint64_t>(t.size()));
        std::uint64_t word = 0;
        int used = 0;
        auto push = [&](bool bit) {
            if (bit) word |= std::uint64_t{1} << used;
            if (++used == 64) {
                key.push_back(word);
                word = 0;
                used = 0;
            }
        };
        for (int i = 0; i < len; ++i)
            for (int j = i + 1; j < len; ++j) push(e[i] == e[j]);
        Tuple idx, args;
        for (int p = 0; p < v.predicate_count(); ++p) {
            int r = v.arity(p);
            if (len == 0) continue;
            idx.assign(r, 0);
            args.assign(r, 0);
            while (true) {
                for (int i = 0; i < r; ++i) args[i] = e[idx[i]];
                push(a.holds(p, args));
                int i = r - 1;
                while (i >= 0 && ++idx[i] == len) idx[i--] = 0;
                if (i < 0) break;
            }
        }
        key.push_back(word);
        return table->intern(std::move(key));
    }

    int from_children(int m, std::size_t length, std::vector<int> kids) {
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        Key key;
        key.reserve(kids.size() + 1);
        key.push_back((kRankTag << 56) | (static_cast<std::uint64_t>(length) << 32) |
                      static_cast<std::uint64_t>(m));
        for (int k : kids) key.push_back(static_cast<std::uint64_t>(k));
        return table->intern(std::move(key));
    }

    std::optional<int> lookup(const Structure& a, const Tuple& t, int m) {
        std::lock_guard lock(memo_mutex);
        auto it = memo.find(MemoKey{a.uid(), m, t});
        if (it == memo.end()) return std::nullopt;
        return it->second;
    }

    void store(const Structure& a, const Tuple& t, int m, int id) {
        std::lock_guard lock(memo_mutex);
        memo.emplace(MemoKey{a.uid(), m, t}, id);
    }

    int compute(const Structure& a, Tuple& t, int m) {
        if (m == 0) return atomic(a, t);
        if (auto hit = lookup(a, t, m)) return *hit;
        std::vector<int> kids;
        kids.reserve(a.size());
        for (Element b = 0; b < a.size(); ++b) {
            t.push_back(b);
            kids.push_back(compute(a, t, m - 1));
            t.pop_back();
        }
        int id = from_children(m, t.size(), std::move(kids));
        store(a, t, m, id);
        return id;
    }

    // Same result as compute(); the top-level extensions are distributed over threads.
    int compute_parallel(const Structure& a, const Tuple& t, int m) {
        if (m == 0) return atomic(a, t);
        if (auto hit = lookup(a, t, m)) return *hit;
        const int n = a.size();
        std::vector<int> kids(n);
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (int b = 0; b < n; ++b) {
            try {
                Tuple ext = t;
                ext.push_back(b);
                kids[b] = compute(a, ext, m - 1);
            } catch (...) {
#pragma omp critical(fmtk_rank_type_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        int id = from_children(m, t.size(), std::move(kids));
        store(a, t, m, id);
        return id;
    }
};

EquivSession::EquivSession() : impl_(std::make_unique<Impl>()) {}
EquivSession::~EquivSession() = default;

RankType EquivSession::rank_type(const Structure& a, const Tuple& tuple, int m, Execution exec) {
    if (m < 0) throw InvalidArgument("rank must be non-negative");
    for (Element e : tuple)
        if (e < 0 || e >= a.size()) throw InvalidArgument("tuple element out of range");
    int id;
    if (exec == Execution::Parallel) {
        id = impl_->compute_parallel(a, tuple, m);
    } else {
        Tuple t = tuple;
        id = impl_->compute(a, t, m);
    }
    return RankType(m, id, impl_->table);
}

bool EquivSession::m_equivalent(const Structure& a, const Structure& b, int m) {
    return m_equivalent(a, {}, b, {}, m);
}

bool EquivSession::m_equivalent(const Structure& a, const Tuple& ta, const Structure& b,
                                const Tuple& tb, int m) {
    if (!(a.vocab() == b.vocab())) throw InvalidArgument("m-equivalence across vocabularies");
    if (ta.size() != tb.size()) return false;
    return rank_type(a, ta, m) == rank_type(b, tb, m);
}

std::size_t EquivSession::interned() const { return impl_->table->size(); }

RankType rank_type(const Structure& a, const Tuple& tuple, int m, Execution exec) {
    EquivSession s;
    return s.rank_type(a, tuple, m, exec);
}

bool m_equivalent(const Structure& a, const Structure& b, int m) {
    EquivSession s;
    return s.m_equivalent(a, b, m);
}

bool m_equivalent(const Structure& a, const Tuple& ta, const Structure& b, const Tuple& tb, int m) {
    EquivSession s;
    return s.m_equivalent(a, ta, b, tb, m);
}

std::vector<std::vector<int>> realized_classes(const std::vector<MarkedItem>& items, int m,
                                               EquivSession* session) {
    EquivSession local;
    EquivSession& s = session ? *session : local;
    std::vector<std::vector<int>> classes;
    std::vector<RankType> reps;
    for (std::size_t i = 0; i < items.size(); ++i) {
        RankType t = s.rank_type(items[i].structure, items[i].tuple, m);
        std::size_t c = 0;
        while (c < reps.size() &&
               !(reps[c] == t && items[classes[c].front()].structure.vocab() ==
                                     items[i].structure.vocab()))
            ++c;
        if (c == reps.size()) {
            reps.push_back(t);
            classes.emplace_back();
        }
        classes[c].push_back(static_cast<int>(i));
    }
    return classes;
}

}  // namespace fmtk
