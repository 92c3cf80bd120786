#pragma once

#include <string>
#include <vector>

namespace fairhms {

/// One tuple: an opaque label, d nonnegative attributes, and a group index.
struct Point {
    std::string id;
    std::vector<double> coords;
    int group = 0;
};

/// Immutable collection of points partitioned into C disjoint groups.
/// Attribute values are expected to lie in [0,1] after normalize().
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Point> points, int dim, int group_count,
            std::vector<std::string> group_labels = {});

    int size() const { return static_cast<int>(points_.size()); }
    int dim() const { return dim_; }
    int group_count() const { return group_count_; }

    const Point& point(int i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<int>& group_members(int c) const { return groups_[c]; }
    const std::string& group_label(int c) const { return group_labels_[c]; }
    const std::vector<std::string>& group_labels() const { return group_labels_; }
    std::vector<int> group_sizes() const;

    /// Index of the point with the given label, or -1.
    int index_of(const std::string& id) const;

    /// Subset with the same dimensionality, group count and labels.
    /// indices must be strictly increasing and valid.
    Dataset restrict(const std::vector<int>& indices) const;

    /// Group c as a standalone single-group dataset; orig_index maps the
    /// slice's point indices back to this dataset.
    Dataset group_slice(int c, std::vector<int>& orig_index) const;

private:
    std::vector<Point> points_;
    int dim_ = 0;
    int group_count_ = 0;
    std::vector<std::vector<int>> groups_;
    std::vector<std::string> group_labels_;
};

/// Min-max scales every attribute over the dataset. An attribute that is
/// constant across all points maps to 1.0 for every point, keeping
/// "larger is preferred" vacuous instead of undefined.
Dataset normalize(const Dataset& ds);

/// True iff q >= p on every coordinate and q > p on at least one.
bool dominates(const std::vector<double>& q, const std::vector<double>& p);

/// Per-point flags: 1 iff the point is not dominated by any other point of
/// its own group. Exact duplicates within a group keep only the lowest index.
std::vector<char> skyline_flags(const Dataset& ds);

/// The subset of points on their group's skyline; group structure preserved.
/// Removing a within-group dominated point never changes any happiness ratio
/// optimum, so this is a safe preprocessing step for all solvers.
Dataset group_skyline(const Dataset& ds);

}  // namespace fairhms
