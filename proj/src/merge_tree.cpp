#include "br/merge_tree.hpp"

#include <algorithm>
#include <cmath>

#include "br/errors.hpp"

namespace br {

std::vector<std::int32_t> MergeTree::internal_at_level(std::int32_t level) const {
    std::vector<std::int32_t> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (!nodes[i].is_leaf() && nodes[i].level == level)
            ids.push_back(static_cast<std::int32_t>(i));
    std::sort(ids.begin(), ids.end(), [this](std::int32_t a, std::int32_t b) {
        return at(a).offset < at(b).offset;
    });
    return ids;
}

std::vector<std::int32_t> MergeTree::leaves() const {
    std::vector<std::int32_t> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_leaf())
            ids.push_back(static_cast<std::int32_t>(i));
    std::sort(ids.begin(), ids.end(), [this](std::int32_t a, std::int32_t b) {
        return at(a).offset < at(b).offset;
    });
    return ids;
}

namespace {

std::int32_t build_node(MergeTree& tree, std::size_t offset, std::size_t size) {
    const std::int32_t id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes.back().offset = offset;
    tree.nodes.back().size = size;
    if (size > tree.leaf_cutoff) {
        const std::size_t n_left = size / 2;
        const std::int32_t l = build_node(tree, offset, n_left);
        const std::int32_t r = build_node(tree, offset + n_left, size - n_left);
        MergeNode& node = tree.nodes[static_cast<std::size_t>(id)];
        node.left = l;
        node.right = r;
        node.level = 1 + std::max(tree.at(l).level, tree.at(r).level);
    }
    return id;
}

} // namespace

MergeTree build_merge_tree(std::size_t block_size, std::size_t leaf_cutoff) {
    if (block_size == 0 || leaf_cutoff == 0)
        throw InvalidArgument("build_merge_tree: sizes must be positive");
    MergeTree tree;
    tree.leaf_cutoff = leaf_cutoff;
    tree.root = build_node(tree, 0, block_size);
    return tree;
}

CuppenSplit apply_cuppen_split(const TridiagonalMatrix& block, const MergeNode& node) {
    if (node.is_leaf())
        throw InvalidArgument("apply_cuppen_split: node is a leaf");
    const std::size_t m = node.offset + node.size / 2 - 1;
    if (m + 1 >= block.n)
        throw InvalidArgument("apply_cuppen_split: split index outside block");
    CuppenSplit split;
    split.split_index = m;
    const double em = block.e[m];
    split.rho = std::abs(em);
    split.sign = em < 0 ? -1 : +1;
    split.d_left_last = block.d[m] - split.rho;
    split.d_right_first = block.d[m + 1] - split.rho;
    return split;
}

void apply_all_splits(MergeTree& tree, std::span<double> d, std::span<const double> e) {
    // tree.nodes is stored in pre-order, so this loop cuts parents before
    // their descendants.
    for (MergeNode& node : tree.nodes) {
        if (node.is_leaf())
            continue;
        const std::size_t m = node.offset + node.size / 2 - 1;
        const double em = e[m];
        const double rho = std::abs(em);
        node.rho = rho;
        node.split_sign = em < 0 ? -1 : +1;
        d[m] -= rho;
        d[m + 1] -= rho;
    }
}

} // namespace br
