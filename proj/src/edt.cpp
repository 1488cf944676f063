#include "dualcurv/edt.hpp"

#include <limits>

namespace dualcurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::max() / 4.0;

/// 1-D squared distance transform of sampled function f (lower envelope of
/// parabolas rooted at (i, f[i])).
void dt1d(const double* f, double* out, int n) {
    std::vector<int> v(n);     // parabola roots
    std::vector<double> z(n + 1); // boundaries between parabolas
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double d = q - v[k];
        out[q] = d * d + f[v[k]];
    }
}

} // namespace

std::vector<double> squared_distance_to_complement(const std::vector<char>& member,
                                                   int nx, int ny) {
    std::vector<double> dist(static_cast<std::size_t>(nx) * ny);
    for (std::size_t idx = 0; idx < dist.size(); ++idx) {
        dist[idx] = member[idx] ? kInf : 0.0;
    }

    std::vector<double> col(ny), out(std::max(nx, ny));
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) col[j] = dist[static_cast<std::size_t>(j) * nx + i];
        dt1d(col.data(), out.data(), ny);
        for (int j = 0; j < ny; ++j) dist[static_cast<std::size_t>(j) * nx + i] = out[j];
    }
    std::vector<double> row(nx);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) row[i] = dist[static_cast<std::size_t>(j) * nx + i];
        dt1d(row.data(), out.data(), nx);
        for (int i = 0; i < nx; ++i) dist[static_cast<std::size_t>(j) * nx + i] = out[i];
    }
    return dist;
}

} // namespace dualcurv
