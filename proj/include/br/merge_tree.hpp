#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "br/tridiagonal.hpp"

namespace br {

/// One node of the divide-and-conquer split tree. Offsets are relative to
/// the irreducible block the tree was built for. Leaves have no children;
/// internal nodes split at floor(size/2). rho and split_sign are filled in
/// once the tree is bound to a concrete block via apply_all_splits.
struct MergeNode {
    std::size_t offset = 0;
    std::size_t size = 0;
    std::int32_t left = -1;   // child node ids, -1 at leaves
    std::int32_t right = -1;
    std::int32_t level = 0;   // distance from the leaf frontier
    double rho = 0.0;         // |e_m| coupling strength, internal nodes only
    int split_sign = +1;      // sign of e_m at the split

    bool is_leaf() const { return left < 0; }
};

struct MergeTree {
    std::vector<MergeNode> nodes;
    std::int32_t root = -1;
    std::size_t leaf_cutoff = 0;

    const MergeNode& at(std::int32_t id) const { return nodes[static_cast<std::size_t>(id)]; }
    MergeNode& at(std::int32_t id) { return nodes[static_cast<std::size_t>(id)]; }

    /// Node ids of every internal node with the given level, left to right.
    std::vector<std::int32_t> internal_at_level(std::int32_t level) const;
    std::vector<std::int32_t> leaves() const;
    std::int32_t height() const { return root < 0 ? 0 : at(root).level; }
};

/// Builds the balanced split tree for one block: internal nodes split at
/// floor(size/2), every leaf has size <= leaf_cutoff, levels measure the
/// distance from the leaf frontier.
MergeTree build_merge_tree(std::size_t block_size, std::size_t leaf_cutoff);

/// Result of one Cuppen cut: the two boundary diagonal entries after
/// subtracting rho = |e_m|, plus the recorded sign of e_m. The sign is
/// later absorbed into the left boundary-row contribution of z, so the
/// reconstruction diag(T_L', T_R') + rho * u * u^T with u = (.., sign, 1, ..)
/// holds exactly.
struct CuppenSplit {
    double d_left_last = 0.0;
    double d_right_first = 0.0;
    double rho = 0.0;
    int sign = +1;
    std::size_t split_index = 0; // block-relative index m of e_m
};

/// Applies the rank-one split of an internal node to the block matrix
/// (d, e are block-local arrays). Throws InvalidArgument on a leaf.
CuppenSplit apply_cuppen_split(const TridiagonalMatrix& block, const MergeNode& node);

/// Walks the tree top-down, applying every internal node's cut to the
/// block-local diagonal in place and recording rho / split sign on the
/// nodes. Pre-order application is part of the shared convention: both
/// solver pipelines must modify the diagonal in the same order.
void apply_all_splits(MergeTree& tree, std::span<double> d, std::span<const double> e);

} // namespace br
