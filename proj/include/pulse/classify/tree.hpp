#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "pulse/matrix.hpp"

namespace pulse {

struct TreeNode {
    int feature = -1;  // -1 = leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;  // mean label (0/1 encoding) at the node
};

// CART-style regression tree on 0/1-encoded labels: squared-error-reduction
// splits, leaf threshold 0.5. For binary labels this matches Gini-gain
// splitting up to a constant factor.
struct RegressionTreeModel {
    size_t dim = 0;
    std::vector<TreeNode> nodes;

    double predict_value(const double* x) const {
        int n = 0;
        while (nodes[n].feature >= 0)
            n = x[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left
                                                          : nodes[n].right;
        return nodes[n].value;
    }

    int predict(const double* x) const {
        return predict_value(x) >= 0.5 ? 2 : 1;
    }
};

namespace detail {

struct TreeBuilder {
    const Matrix& x;
    std::span<const int> labels;
    size_t min_leaf;
    int max_depth;  // <= 0 means unlimited
    std::vector<TreeNode> nodes;

    double label01(size_t i) const { return labels[i] == 2 ? 1.0 : 0.0; }

    // Best split minimizing child SSE. Candidate thresholds are midpoints of
    // consecutive sorted distinct values; ties in gain resolve to the lowest
    // feature index, then the lowest threshold (first strict improvement in
    // scan order wins).
    bool find_split(const std::vector<size_t>& idx, int& feature,
                    double& threshold) const {
        const auto n = static_cast<double>(idx.size());
        double total = 0;
        for (const size_t i : idx) total += label01(i);
        const double parent_sse = total - total * total / n;
        if (parent_sse <= 0) return false;

        double best_gain = 0;
        bool found = false;
        std::vector<std::pair<double, size_t>> order(idx.size());
        for (size_t j = 0; j < x.cols; ++j) {
            for (size_t k = 0; k < idx.size(); ++k)
                order[k] = {x.at(idx[k], j), idx[k]};
            std::sort(order.begin(), order.end());
            double left_sum = 0;
            for (size_t k = 0; k + 1 < order.size(); ++k) {
                left_sum += label01(order[k].second);
                if (order[k].first == order[k + 1].first) continue;
                const size_t nl = k + 1, nr = order.size() - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double mid = 0.5 * (order[k].first + order[k + 1].first);
                // Guard against the midpoint rounding onto either value.
                if (!(order[k].first < mid && mid < order[k + 1].first))
                    continue;
                const double right_sum = total - left_sum;
                const double sse =
                    (left_sum - left_sum * left_sum / static_cast<double>(nl)) +
                    (right_sum -
                     right_sum * right_sum / static_cast<double>(nr));
                const double gain = parent_sse - sse;
                if (gain > best_gain) {
                    best_gain = gain;
                    feature = static_cast<int>(j);
                    threshold = mid;
                    found = true;
                }
            }
        }
        return found;
    }

    int build(const std::vector<size_t>& idx, int depth) {
        const int node_id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        double total = 0;
        for (const size_t i : idx) total += label01(i);
        nodes[node_id].value = total / static_cast<double>(idx.size());

        if (max_depth > 0 && depth >= max_depth) return node_id;
        if (idx.size() < 2 * min_leaf) return node_id;

        int feature = -1;
        double threshold = 0;
        if (!find_split(idx, feature, threshold)) return node_id;

        std::vector<size_t> left, right;
        for (const size_t i : idx)
            (x.at(i, feature) <= threshold ? left : right).push_back(i);

        nodes[node_id].feature = feature;
        nodes[node_id].threshold = threshold;
        const int l = build(left, depth + 1);
        nodes[node_id].left = l;
        const int r = build(right, depth + 1);
        nodes[node_id].right = r;
        return node_id;
    }
};

}  // namespace detail

inline RegressionTreeModel fit_tree(const Matrix& x,
                                    std::span<const int> labels,
                                    size_t min_leaf = 5, int max_depth = 16) {
    if (x.rows == 0) throw std::runtime_error("tree: empty training set");
    if (min_leaf < 1) throw std::invalid_argument("tree: min_leaf must be >= 1");
    detail::TreeBuilder builder{x, labels, min_leaf, max_depth, {}};
    std::vector<size_t> idx(x.rows);
    for (size_t i = 0; i < x.rows; ++i) idx[i] = i;
    builder.build(idx, 0);
    RegressionTreeModel m;
    m.dim = x.cols;
    m.nodes = std::move(builder.nodes);
    return m;
}

}  // namespace pulse
