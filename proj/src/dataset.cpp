#include "fairhms/types.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fairhms {

Dataset::Dataset(std::vector<Point> points, int dim, int group_count,
                 std::vector<std::string> group_labels)
    : points_(std::move(points)), dim_(dim), group_count_(group_count),
      group_labels_(std::move(group_labels)) {
    if (points_.empty()) throw std::invalid_argument("dataset: no points");
    if (dim_ < 2) throw std::invalid_argument("dataset: dimensionality must be >= 2");
    if (group_count_ < 1) throw std::invalid_argument("dataset: group count must be >= 1");
    groups_.resize(group_count_);
    for (int i = 0; i < size(); ++i) {
        const Point& p = points_[i];
        if (static_cast<int>(p.coords.size()) != dim_)
            throw std::invalid_argument("dataset: point '" + p.id + "' has wrong dimensionality");
        if (p.group < 0 || p.group >= group_count_)
            throw std::invalid_argument("dataset: point '" + p.id + "' has invalid group index");
        groups_[p.group].push_back(i);
    }
    if (group_labels_.empty()) {
        for (int c = 0; c < group_count_; ++c) group_labels_.push_back("g" + std::to_string(c));
    }
    if (static_cast<int>(group_labels_.size()) != group_count_)
        throw std::invalid_argument("dataset: group label count mismatch");
}

std::vector<int> Dataset::group_sizes() const {
    std::vector<int> sizes(group_count_);
    for (int c = 0; c < group_count_; ++c) sizes[c] = static_cast<int>(groups_[c].size());
    return sizes;
}

int Dataset::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (points_[i].id == id) return i;
    return -1;
}

Dataset Dataset::restrict(const std::vector<int>& indices) const {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (int i : indices) pts.push_back(points_[i]);
    return Dataset(std::move(pts), dim_, group_count_, group_labels_);
}

Dataset Dataset::group_slice(int c, std::vector<int>& orig_index) const {
    orig_index = groups_[c];
    std::vector<Point> pts;
    pts.reserve(orig_index.size());
    for (int i : orig_index) {
        Point p = points_[i];
        p.group = 0;
        pts.push_back(std::move(p));
    }
    return Dataset(std::move(pts), dim_, 1, {group_labels_[c]});
}

Dataset normalize(const Dataset& ds) {
    const int d = ds.dim();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const Point& p : ds.points()) {
        for (int i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], p.coords[i]);
            hi[i] = std::max(hi[i], p.coords[i]);
        }
    }
    std::vector<Point> pts = ds.points();
    for (Point& p : pts) {
        for (int i = 0; i < d; ++i) {
            const double range = hi[i] - lo[i];
            p.coords[i] = range > 0.0 ? (p.coords[i] - lo[i]) / range : 1.0;
        }
    }
    return Dataset(std::move(pts), d, ds.group_count(), ds.group_labels());
}

bool dominates(const std::vector<double>& q, const std::vector<double>& p) {
    bool strict = false;
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] < p[i]) return false;
        if (q[i] > p[i]) strict = true;
    }
    return strict;
}

namespace {

// q >= p on every coordinate; used for duplicate handling (the earlier of
// two identical points wins).
bool dominates_or_equal(const std::vector<double>& q, const std::vector<double>& p) {
    for (size_t i = 0; i < q.size(); ++i)
        if (q[i] < p[i]) return false;
    return true;
}

void skyline_of_group_2d(const Dataset& ds, const std::vector<int>& members,
                         std::vector<char>& flags) {
    std::vector<int> order = members;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& pa = ds.point(a).coords;
        const auto& pb = ds.point(b).coords;
        if (pa[0] != pb[0]) return pa[0] > pb[0];
        if (pa[1] != pb[1]) return pa[1] > pb[1];
        return a < b;
    });
    double best_y = -std::numeric_limits<double>::infinity();
    for (int idx : order) {
        const double y = ds.point(idx).coords[1];
        if (y > best_y) {
            flags[idx] = 1;
            best_y = y;
        }
    }
}

void skyline_of_group(const Dataset& ds, const std::vector<int>& members,
                      std::vector<char>& flags) {
    // Scan in decreasing coordinate-sum order: a point can only be dominated
    // by one that comes earlier, so comparing against kept points suffices.
    std::vector<int> order = members;
    std::vector<double> sum(ds.size(), 0.0);
    for (int idx : members)
        sum[idx] = std::accumulate(ds.point(idx).coords.begin(), ds.point(idx).coords.end(), 0.0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (sum[a] != sum[b]) return sum[a] > sum[b];
        return a < b;
    });
    std::vector<int> kept;
    for (int idx : order) {
        bool dominated = false;
        for (int s : kept) {
            if (dominates_or_equal(ds.point(s).coords, ds.point(idx).coords)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            flags[idx] = 1;
            kept.push_back(idx);
        }
    }
}

}  // namespace

std::vector<char> skyline_flags(const Dataset& ds) {
    std::vector<char> flags(ds.size(), 0);
    for (int c = 0; c < ds.group_count(); ++c) {
        const auto& members = ds.group_members(c);
        if (members.empty()) continue;
        if (ds.dim() == 2)
            skyline_of_group_2d(ds, members, flags);
        else
            skyline_of_group(ds, members, flags);
    }
    // The 2d sweep keeps the first point in (x desc, y desc, index asc) order
    // among exact duplicates, which is also the lowest index.
    return flags;
}

Dataset group_skyline(const Dataset& ds) {
    const std::vector<char> flags = skyline_flags(ds);
    std::vector<int> keep;
    for (int i = 0; i < ds.size(); ++i)
        if (flags[i]) keep.push_back(i);
    return ds.restrict(keep);
}

}  // namespace fairhms
