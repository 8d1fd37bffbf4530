#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sleeproute/netmodel.hpp"

namespace sleeproute {

/// Square 0/1 correlation-group matrix over all nodes, sink included.
class ConstellationMatrix {
public:
    ConstellationMatrix() = default;

    /// Checks shape and 0/1 entries only; partition structure is checked by
    /// ConstellationSet::from_matrix.
    static ConstellationMatrix from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t size() const { return n_; }
    bool at(NodeId i, NodeId j) const { return cells_[i * n_ + j] != 0; }
    std::vector<std::vector<int>> rows() const;

    /// Column sums of diag(x_a) * C, i.e. how many active nodes represent
    /// each node's group.
    std::vector<int> column_sums(const std::vector<bool>& active) const;

    friend bool operator==(const ConstellationMatrix&, const ConstellationMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> cells_;
};

struct MatrixViolation {
    NodeId row;
    NodeId col;
    std::string reason;
};

/// First entry that keeps the matrix from describing a partition with the
/// sink in its own group, scanning row-major over the upper triangle.
std::optional<MatrixViolation> find_partition_violation(const ConstellationMatrix& matrix);

/// Disjoint groups covering every node. Groups are sorted internally and
/// ordered by their smallest member, so group 0 is always {sink}.
class ConstellationSet {
public:
    ConstellationSet() = default;

    /// Throws NotAPartition if groups overlap, miss a node, are empty, or the
    /// sink shares its group.
    static ConstellationSet from_groups(std::size_t node_count, std::vector<std::vector<NodeId>> groups);

    /// Equivalence classes of the matrix. Throws NotAPartition naming the
    /// offending entry.
    static ConstellationSet from_matrix(const ConstellationMatrix& matrix);

    std::size_t node_count() const { return group_of_.size(); }
    std::size_t group_count() const { return groups_.size(); }
    std::span<const std::vector<NodeId>> groups() const { return groups_; }
    const std::vector<NodeId>& group(std::size_t g) const { return groups_[g]; }
    std::size_t group_of(NodeId v) const { return group_of_[v]; }
    bool same_group(NodeId a, NodeId b) const { return group_of_[a] == group_of_[b]; }

    ConstellationMatrix to_matrix() const;

    friend bool operator==(const ConstellationSet&, const ConstellationSet&) = default;

private:
    std::vector<std::vector<NodeId>> groups_;
    std::vector<std::size_t> group_of_;
};

/// True iff every group has an active member. Throws SinkInactive when
/// active[0] is false and InvalidArgument on a size mismatch.
bool covers_all(const ConstellationSet& set, const std::vector<bool>& active);

}  // namespace sleeproute
