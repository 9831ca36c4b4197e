#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fmtk/algebra.hpp"
#include "fmtk/sigma_tree.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

// Line-oriented formats; '#' starts a comment. ParseError positions are 1-based line
// numbers (column offsets for s-expressions).
//
//   structure NAME            tree NAME
//   vocab: E/2, Qa/1          alphabet: a b
//   universe: 4               node 0 label a root
//   E: (0,1) (1,2)            node 1 label b parent 0
//   const c1 = 0              marks: 1

struct NamedStructure {
    std::string name;
    Structure structure;
};

struct NamedTree {
    std::string name;
    SigmaTree tree;
    std::vector<int> marks;
};

std::vector<NamedStructure> parse_structures(std::string_view text);
std::string format_structure(const std::string& name, const Structure& s);

std::vector<NamedTree> parse_trees(std::string_view text);
std::string format_tree(const std::string& name, const SigmaTree& t,
                        const std::vector<int>& marks = {});

/// s-expression over u, !, x, t, bw whose leaves name entries of `leaves`.
ExpressionTree parse_expression(std::string_view text,
                                const std::map<std::string, Structure>& leaves);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fmtk
