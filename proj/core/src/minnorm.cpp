#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nibble/concentration.hpp"

namespace nibble {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// minimize ||sum alpha_i s_i|| over the affine hull (sum alpha = 1):
// solve [G 1; 1^T 0] [alpha; mu] = [0; 1] with G the Gram matrix.
std::vector<double> affine_min_norm(const std::vector<const std::vector<double>*>& corral) {
    const std::size_t k = corral.size();
    const std::size_t dim = k + 1;
    std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = dot(*corral[i], *corral[j]);
        a[i][i] += 1e-12;  // ridge against affinely dependent corrals
        a[i][k] = 1.0;
        a[i][dim] = 0.0;
    }
    for (std::size_t j = 0; j < k; ++j) a[k][j] = 1.0;
    a[k][dim] = 1.0;

    // Gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        if (std::abs(a[col][col]) < 1e-14) continue;  // ridge keeps this rare
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c <= dim; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> alpha(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        alpha[i] = std::abs(a[i][i]) < 1e-14 ? 0.0 : a[i][dim] / a[i][i];
    return alpha;
}

}  // namespace

double min_norm_point(const std::vector<std::vector<double>>& points, double tol) {
    if (points.empty()) throw std::invalid_argument("min_norm_point needs at least one point");
    const std::size_t m = points[0].size();
    for (const auto& p : points)
        if (p.size() != m) throw std::invalid_argument("points of mixed dimension");

    // start from the shortest input point
    std::size_t best = 0;
    double best_norm = dot(points[0], points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double nn = dot(points[i], points[i]);
        if (nn < best_norm) {
            best_norm = nn;
            best = i;
        }
    }

    std::vector<const std::vector<double>*> corral{&points[best]};
    std::vector<double> lambda{1.0};
    std::vector<double> z = points[best];

    const std::size_t max_major = 1000 + 10 * points.size();
    for (std::size_t iter = 0; iter < max_major; ++iter) {
        const double zz = dot(z, z);
        if (zz <= tol * tol) return 0.0;

        // most violated linear minimizer
        std::size_t arg = 0;
        double min_dot = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = dot(z, points[i]);
            if (d < min_dot) {
                min_dot = d;
                arg = i;
            }
        }
        if (min_dot >= zz - tol * std::max(1.0, zz)) return std::sqrt(zz);
        if (std::find(corral.begin(), corral.end(), &points[arg]) != corral.end())
            return std::sqrt(zz);  // numerical stall
        corral.push_back(&points[arg]);
        lambda.push_back(0.0);

        // minor cycle: pull the affine solution back into the simplex
        for (;;) {
            std::vector<double> alpha = affine_min_norm(corral);
            const double eps = 1e-12;
            bool inside = true;
            for (double a : alpha)
                if (a < eps) {
                    inside = false;
                    break;
                }
            if (inside) {
                lambda = std::move(alpha);
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < alpha.size(); ++i)
                if (alpha[i] < eps && lambda[i] > alpha[i])
                    theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
            for (std::size_t i = 0; i < lambda.size(); ++i)
                lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
            // drop members that hit the boundary
            for (std::size_t i = lambda.size(); i > 0;) {
                --i;
                if (lambda[i] <= eps) {
                    lambda.erase(lambda.begin() + static_cast<long>(i));
                    corral.erase(corral.begin() + static_cast<long>(i));
                }
            }
            if (corral.empty()) return 0.0;  // degenerate; hull contains the origin
        }

        z.assign(m, 0.0);
        for (std::size_t i = 0; i < corral.size(); ++i)
            for (std::size_t c = 0; c < m; ++c) z[c] += lambda[i] * (*corral[i])[c];
    }
    return std::sqrt(dot(z, z));
}

}  // namespace nibble
