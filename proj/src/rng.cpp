#include "degell/rng.hpp"

#include <stdexcept>

namespace degell {

namespace {
constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

double radical_inverse(int base, std::uint64_t i) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
    }
    return r;
}
}  // namespace

Eigen::VectorXd halton_point(int dim, std::uint64_t index) {
    if (dim < 1 || dim > 20) throw std::invalid_argument("halton_point: dim out of range");
    Eigen::VectorXd p(dim);
    for (int d = 0; d < dim; ++d) p[d] = radical_inverse(kPrimes[d], index + 1);
    return p;
}

Eigen::VectorXd halton_in_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                              std::uint64_t index) {
    Eigen::VectorXd u = halton_point(static_cast<int>(lo.size()), index);
    for (int d = 0; d < lo.size(); ++d) u[d] = lo[d] + (hi[d] - lo[d]) * u[d];
    return u;
}

}  // namespace degell
