#include "axicyl/stencils.hpp"

#include "axicyl/error.hpp"

namespace axicyl {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order) {
    const int n = static_cast<int>(nodes.size());
    if (n == 0 || max_order < 0 || max_order >= n) {
        throw Error(ErrorKind::invalid_argument, "stencil needs more nodes than the derivative order");
    }
    // c[m][i], built incrementally over the nodes.
    std::vector<std::vector<double>> c(static_cast<std::size_t>(max_order + 1),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

}  // namespace axicyl
