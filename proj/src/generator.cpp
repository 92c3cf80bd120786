#include "fairhms/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fairhms/rng.hpp"

namespace fairhms {

Dataset generate_anticorrelated(int n, int d, int c_groups, uint64_t seed) {
    if (d < 2) throw std::invalid_argument("generator: d must be >= 2");
    if (c_groups < 1) throw std::invalid_argument("generator: C must be >= 1");
    if (n < c_groups) throw std::invalid_argument("generator: n must be >= C");

    Rng rng(seed);
    std::vector<std::vector<double>> coords(n);
    for (auto& x : coords) {
        double v;
        do {
            v = 0.5 + 0.25 * rng.normal();
        } while (v < 0.0 || v > 1.0);
        const double l = std::min(v, 1.0 - v);
        x.assign(d, v);
        // Shift mass between adjacent coordinates; keeps the sum near v*d
        // while making the attributes negatively correlated.
        for (int i = 0; i < d; ++i) {
            const double h = rng.uniform(-l, l);
            x[i] += h;
            x[(i + 1) % d] -= h;
        }
        for (double& c : x) c = std::clamp(c, 0.0, 1.0);
    }

    std::vector<double> sum(n);
    for (int i = 0; i < n; ++i)
        sum[i] = std::accumulate(coords[i].begin(), coords[i].end(), 0.0);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sum[a] < sum[b]; });

    std::vector<Point> points;
    points.reserve(n);
    for (int rank = 0; rank < n; ++rank) {
        Point p;
        p.id = std::to_string(rank);
        p.coords = std::move(coords[order[rank]]);
        p.group = static_cast<int>(static_cast<long long>(rank) * c_groups / n);
        points.push_back(std::move(p));
    }
    return Dataset(std::move(points), d, c_groups);
}

}  // namespace fairhms
