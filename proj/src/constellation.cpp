#include "sleeproute/constellation.hpp"

#include <algorithm>
#include <limits>

#include "sleeproute/error.hpp"

namespace sleeproute {

namespace {

std::string cell(NodeId i, NodeId j) {
    return "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

ConstellationMatrix ConstellationMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    ConstellationMatrix m;
    m.n_ = rows.size();
    if (m.n_ == 0) throw Error(Errc::InvalidArgument, "constellation matrix is empty");
    m.cells_.reserve(m.n_ * m.n_);
    for (std::size_t i = 0; i < m.n_; ++i) {
        if (rows[i].size() != m.n_)
            throw Error(Errc::InvalidArgument, "constellation matrix row " + std::to_string(i) + " has " +
                                                   std::to_string(rows[i].size()) + " entries, expected " +
                                                   std::to_string(m.n_));
        for (std::size_t j = 0; j < m.n_; ++j) {
            int v = rows[i][j];
            if (v != 0 && v != 1) throw Error(Errc::InvalidArgument, cell(i, j) + " must be 0 or 1");
            m.cells_.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return m;
}

std::vector<std::vector<int>> ConstellationMatrix::rows() const {
    std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i][j] = at(i, j) ? 1 : 0;
    return out;
}

std::vector<int> ConstellationMatrix::column_sums(const std::vector<bool>& active) const {
    if (active.size() != n_) throw Error(Errc::InvalidArgument, "decision vector length must equal the node count");
    std::vector<int> sums(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = 0; j < n_; ++j) sums[j] += at(i, j) ? 1 : 0;
    }
    return sums;
}

std::optional<MatrixViolation> find_partition_violation(const ConstellationMatrix& m) {
    const std::size_t n = m.size();
    for (NodeId i = 0; i < n; ++i)
        if (!m.at(i, i)) return MatrixViolation{i, i, "diagonal entry must be 1"};
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (m.at(i, j) != m.at(j, i)) return MatrixViolation{i, j, "matrix is not symmetric"};
    for (NodeId j = 1; j < n; ++j)
        if (m.at(kSink, j)) return MatrixViolation{kSink, j, "the sink must form its own constellation"};
    // Transitivity: i~j and j~k imply i~k. Report the missing (i, k) pair.
    for (NodeId i = 0; i < n; ++i)
        for (NodeId k = i + 1; k < n; ++k) {
            if (m.at(i, k)) continue;
            for (NodeId j = 0; j < n; ++j)
                if (m.at(i, j) && m.at(j, k))
                    return MatrixViolation{i, k,
                                           "not transitive: node " + std::to_string(j) + " is grouped with both " +
                                               std::to_string(i) + " and " + std::to_string(k)};
        }
    return std::nullopt;
}

ConstellationSet ConstellationSet::from_groups(std::size_t node_count, std::vector<std::vector<NodeId>> groups) {
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    if (node_count == 0) throw Error(Errc::InvalidArgument, "constellations need at least the sink");
    for (auto& g : groups) {
        if (g.empty()) throw Error(Errc::NotAPartition, "empty constellation");
        std::sort(g.begin(), g.end());
    }
    std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });

    ConstellationSet set;
    set.group_of_.assign(node_count, unset);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        for (NodeId v : groups[gi]) {
            if (v >= node_count)
                throw Error(Errc::NotAPartition, "node " + std::to_string(v) + " is outside the network");
            if (set.group_of_[v] != unset)
                throw Error(Errc::NotAPartition, "node " + std::to_string(v) + " belongs to two constellations");
            set.group_of_[v] = gi;
        }
    }
    for (NodeId v = 0; v < node_count; ++v)
        if (set.group_of_[v] == unset)
            throw Error(Errc::NotAPartition, "node " + std::to_string(v) + " is in no constellation");
    if (groups.front().size() != 1)
        throw Error(Errc::NotAPartition, "the sink must form its own constellation");
    set.groups_ = std::move(groups);
    return set;
}

ConstellationSet ConstellationSet::from_matrix(const ConstellationMatrix& matrix) {
    if (auto bad = find_partition_violation(matrix))
        throw Error(Errc::NotAPartition, "at " + cell(bad->row, bad->col) + ": " + bad->reason);
    const std::size_t n = matrix.size();
    std::vector<std::vector<NodeId>> groups;
    std::vector<bool> placed(n, false);
    for (NodeId i = 0; i < n; ++i) {
        if (placed[i]) continue;
        std::vector<NodeId> g;
        for (NodeId j = i; j < n; ++j)
            if (matrix.at(i, j)) {
                g.push_back(j);
                placed[j] = true;
            }
        groups.push_back(std::move(g));
    }
    return from_groups(n, std::move(groups));
}

ConstellationMatrix ConstellationSet::to_matrix() const {
    const std::size_t n = node_count();
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) rows[i][j] = same_group(i, j) ? 1 : 0;
    return ConstellationMatrix::from_rows(rows);
}

bool covers_all(const ConstellationSet& set, const std::vector<bool>& active) {
    if (active.size() != set.node_count())
        throw Error(Errc::InvalidArgument, "decision vector length must equal the node count");
    if (!active[kSink]) throw Error(Errc::SinkInactive, "x_a(0) must be 1");
    for (const auto& g : set.groups()) {
        if (std::none_of(g.begin(), g.end(), [&](NodeId v) { return active[v]; })) return false;
    }
    return true;
}

}  // namespace sleeproute
