#ifndef DEGELL_RNG_HPP
#define DEGELL_RNG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace degell {

/// Deterministic sampling. std::mt19937_64 output is pinned by the standard;
/// the double mappings below avoid the implementation-defined distribution
/// classes so identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Eigen::VectorXd uniform_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
        Eigen::VectorXd p(lo.size());
        for (int i = 0; i < lo.size(); ++i) p[i] = uniform(lo[i], hi[i]);
        return p;
    }

    /// Uniform direction on the unit sphere (Marsaglia via normals from
    /// Box-Muller, which keeps the stream deterministic).
    Eigen::VectorXd unit_vector(int dim) {
        Eigen::VectorXd v(dim);
        double norm2 = 0.0;
        do {
            for (int i = 0; i < dim; ++i) {
                v[i] = normal();
            }
            norm2 = v.squaredNorm();
        } while (norm2 < 1e-30);
        return v / std::sqrt(norm2);
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Halton low-discrepancy point in [0,1)^dim, index i >= 0.
Eigen::VectorXd halton_point(int dim, std::uint64_t index);

/// Halton point scaled into a box.
Eigen::VectorXd halton_in_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                              std::uint64_t index);

}  // namespace degell

#endif
