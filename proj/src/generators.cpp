#include "fmtk/generators.hpp"

#include <iostream>

#include "fmtk/error.hpp"
#include "fmtk/operations.hpp"

namespace fmtk {

long long pow3(int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= 3;
    return r;
}

Vocabulary graph_vocabulary() { return Vocabulary({{"E", 2}}); }
Vocabulary order_vocabulary() { return Vocabulary({{"le", 2}}); }

Structure make_linear_order(int n) {
    if (n < 1) throw InvalidArgument("linear order needs at least one element");
    std::vector<std::vector<Tuple>> rels(1);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) rels[0].push_back({i, j});
    return Structure(order_vocabulary(), n, std::move(rels));
}

namespace {

void add_edge(std::vector<Tuple>& e, int a, int b) {
    e.push_back({a, b});
    e.push_back({b, a});
}

void append_path(std::vector<Tuple>& e, int start, int length) {
    for (int i = 0; i < length; ++i) add_edge(e, start + i, start + i + 1);
}

void check_guard(int n, bool allow_large) {
    if (n < 1) throw InvalidArgument("H_n and G_n need n >= 1");
    if (n > kHnGuard) {
        if (!allow_large)
            throw GuardExceeded("H_n/G_n limited to n <= " + std::to_string(kHnGuard));
        std::cerr << "warning: generating H_" << n << " (" << pow3(n) << " path lengths)\n";
    }
}

}  // namespace

Structure make_path(int n) {
    if (n < 0) throw InvalidArgument("path length must be non-negative");
    std::vector<std::vector<Tuple>> rels(1);
    append_path(rels[0], 0, n);
    return Structure(graph_vocabulary(), n + 1, std::move(rels));
}

Structure make_cycle(int n) {
    if (n < 3) throw InvalidArgument("cycles need at least 3 vertices");
    std::vector<std::vector<Tuple>> rels(1);
    for (int i = 0; i < n; ++i) add_edge(rels[0], i, (i + 1) % n);
    return Structure(graph_vocabulary(), n, std::move(rels));
}

Structure make_path_copies(int copies, int n) {
    if (copies < 1) throw InvalidArgument("need at least one copy");
    std::vector<std::vector<Tuple>> rels(1);
    for (int c = 0; c < copies; ++c) append_path(rels[0], c * (n + 1), n);
    return Structure(graph_vocabulary(), copies * (n + 1), std::move(rels));
}

namespace {

int append_Hn(std::vector<Tuple>& e, int start, int n) {
    int next = start;
    for (long long i = 0; i <= pow3(n); ++i)
        for (int c = 0; c < n; ++c) {
            append_path(e, next, static_cast<int>(i));
            next += static_cast<int>(i) + 1;
        }
    return next;
}

}  // namespace

Structure make_Hn(int n, bool allow_large) {
    check_guard(n, allow_large);
    std::vector<std::vector<Tuple>> rels(1);
    int size = append_Hn(rels[0], 0, n);
    return Structure(graph_vocabulary(), size, std::move(rels));
}

Structure make_Gn(int n, bool allow_large) {
    check_guard(n, allow_large);
    std::vector<std::vector<Tuple>> rels(1);
    int c = static_cast<int>(pow3(n));
    for (int i = 0; i < c; ++i) add_edge(rels[0], i, (i + 1) % c);
    int size = append_Hn(rels[0], c, n);
    return Structure(graph_vocabulary(), size, std::move(rels));
}

Structure make_grid(const std::vector<int>& dims) {
    if (dims.empty()) throw InvalidArgument("grid needs at least one dimension");
    Structure g = make_linear_order(dims.front());
    for (std::size_t i = 1; i < dims.size(); ++i) g = tensor_product(g, make_linear_order(dims[i]));
    return g;
}

}  // namespace fmtk
