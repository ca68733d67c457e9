#include "pgap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pgap {

BoxDomain::BoxDomain(Vec v0, double u) : v0_(std::move(v0)), u_(u) {
    if (v0_.size() == 0) throw std::invalid_argument("box: dimension must be positive");
    if (!(u_ > 0.0)) throw std::invalid_argument("box: scale u must be positive");
    for (int i = 0; i < v0_.size(); ++i) {
        if (!(v0_[i] > 0.0))
            throw std::invalid_argument("box: lower corner must be strictly positive, coordinate " +
                                        std::to_string(i) + " is " + std::to_string(v0_[i]));
    }
}

Vec BoxDomain::upper() const { return v0_.array() + u_; }

double BoxDomain::volume() const { return std::pow(u_, dim()); }

Vec BoxDomain::vertex(std::uint32_t mask) const {
    Vec v = v0_;
    for (int j = 0; j < dim(); ++j)
        if (mask & (1u << j)) v[j] += u_;
    return v;
}

Vec BoxDomain::map_unit(const Vec& y) const { return v0_ + u_ * y; }

ZonotopeDomain::ZonotopeDomain(Mat A, Vec b) : A_(std::move(A)), b_(std::move(b)) {
    if (A_.rows() != b_.size())
        throw std::invalid_argument("zonotope: offset dimension does not match generators");
    if (A_.cols() == 0) throw std::invalid_argument("zonotope: needs at least one generator");
    jacobian_ = zonotope_jacobian(A_);
}

Vec ZonotopeDomain::map_unit(const Vec& t) const { return A_ * t + b_; }

double zonotope_jacobian(const Mat& A) {
    Eigen::JacobiSVD<Mat> svd(A);
    const auto& s = svd.singularValues();
    double smax = s(0);
    double smin = s(s.size() - 1);
    if (!(smin > 1e-10 * smax))
        throw std::invalid_argument("zonotope: generator matrix is rank deficient");
    double j = 1.0;
    for (int i = 0; i < s.size(); ++i) j *= s(i);
    return j;
}

SimplexDomain::SimplexDomain(std::vector<Vec> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("simplex: no vertices");
    int d = static_cast<int>(vertices_[0].size());
    if (static_cast<int>(vertices_.size()) != d + 1)
        throw std::invalid_argument("simplex: need exactly d+1 vertices in dimension d");
    Mat E(d, d);
    for (int j = 0; j < d; ++j) E.col(j) = vertices_[j + 1] - vertices_[0];
    double det = E.determinant();
    double scale = E.cwiseAbs().maxCoeff();
    if (scale == 0.0 || std::abs(det) < 1e-12 * std::pow(scale, d))
        throw std::invalid_argument("simplex: vertices are affinely dependent");
    double fact = 1.0;
    for (int k = 2; k <= d; ++k) fact *= k;
    volume_ = std::abs(det) / fact;
}

int domain_dim(const Domain& dom) {
    return std::visit(
        [](const auto& d) -> int {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ZonotopeDomain>)
                return d.param_dim();
            else
                return d.dim();
        },
        dom);
}

double domain_volume(const Domain& dom) {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ZonotopeDomain>)
                return d.jacobian();
            else
                return d.volume();
        },
        dom);
}

double KuhnCell::volume() const {
    double fact = 1.0;
    for (int k = 2; k <= dim(); ++k) fact *= k;
    return 1.0 / fact;
}

Vec KuhnCell::chain_vertex(int j) const {
    int n = dim();
    Vec w = Vec::Zero(n);
    for (int k = 0; k < j; ++k) w[perm[n - 1 - k]] = 1.0;
    return w;
}

bool KuhnCell::contains(const Vec& x) const {
    int n = dim();
    if (x.size() != n) return false;
    for (int i = 0; i < n; ++i)
        if (x[i] < 0.0 || x[i] > 1.0) return false;
    for (int k = 0; k + 1 < n; ++k) {
        int a = perm[k], b = perm[k + 1];
        // ascending in (value, index) lexicographic order
        if (x[a] > x[b]) return false;
        if (x[a] == x[b] && a > b) return false;
    }
    return true;
}

namespace {
long long factorial_ll(int n) {
    long long r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}
}  // namespace

KuhnTriangulation::KuhnTriangulation(int n, int cap) : n_(n) {
    if (n < 1) throw std::invalid_argument("triangulation: dimension must be positive");
    if (n > cap)
        throw std::invalid_argument("triangulation: dimension " + std::to_string(n) +
                                    " exceeds cap " + std::to_string(cap) +
                                    "; the cell count n! is a combinatorial blowup");
    cells_ = factorial_ll(n);
}

KuhnCell KuhnTriangulation::cell(long long index) const {
    if (index < 0 || index >= cells_) throw std::out_of_range("triangulation: cell index");
    return KuhnCell{permutation_unrank(n_, index)};
}

KuhnTriangulation::iterator::iterator(int n, long long index) : index_(index) {
    current_.perm.resize(static_cast<std::size_t>(n));
    std::iota(current_.perm.begin(), current_.perm.end(), 0);
    if (index > 0 && index < factorial_ll(n)) current_.perm = permutation_unrank(n, index);
}

KuhnTriangulation::iterator& KuhnTriangulation::iterator::operator++() {
    ++index_;
    std::next_permutation(current_.perm.begin(), current_.perm.end());
    return *this;
}

KuhnTriangulation kuhn_triangulate(int n, int cap) { return KuhnTriangulation(n, cap); }

SimplexDomain affine_image_of_cell(const KuhnCell& cell, const BoxDomain& box) {
    int n = cell.dim();
    if (n != box.dim())
        throw std::invalid_argument("affine image: cell and box dimensions differ");
    std::vector<Vec> verts;
    verts.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) verts.push_back(box.map_unit(cell.chain_vertex(j)));
    return SimplexDomain(std::move(verts));
}

std::vector<int> sorted_coordinate_order(const Vec& x) {
    std::vector<int> order(static_cast<std::size_t>(x.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return a < b;
    });
    return order;
}

long long permutation_rank(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    long long rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i]) ++smaller;
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

std::vector<int> permutation_unrank(int n, long long rank) {
    std::vector<long long> radix(static_cast<std::size_t>(n));
    long long f = 1;
    for (int i = 0; i < n; ++i) {
        radix[static_cast<std::size_t>(n - 1 - i)] = f;
        f *= i + 1;
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long long digit = rank / radix[static_cast<std::size_t>(i)];
        rank %= radix[static_cast<std::size_t>(i)];
        perm.push_back(pool[static_cast<std::size_t>(digit)]);
        pool.erase(pool.begin() + static_cast<long>(digit));
    }
    return perm;
}

}  // namespace pgap
