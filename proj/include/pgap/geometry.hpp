#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

namespace pgap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Axis-aligned cube v0 + u*[0,1]^d with v0 > 0 componentwise and u > 0.
// Positivity keeps every point of the box in the region where the function
// families below are nonnegative and convex.
class BoxDomain {
public:
    BoxDomain(Vec v0, double u);

    int dim() const { return static_cast<int>(v0_.size()); }
    const Vec& lower() const { return v0_; }
    double scale() const { return u_; }
    Vec upper() const;
    double volume() const;  // u^d

    // Vertex v0 + u * indicator(mask), bit j of mask selecting coordinate j.
    Vec vertex(std::uint32_t mask) const;

    // Maps y in [0,1]^d to v0 + u*y.
    Vec map_unit(const Vec& y) const;

private:
    Vec v0_;
    double u_;
};

// Affine image {A t + b : t in [0,1]^n} of the unit cube, A of full column
// rank so the parametrization is injective and carries the n-volume
// sqrt(det(A^T A)).
class ZonotopeDomain {
public:
    ZonotopeDomain(Mat A, Vec b);

    int ambient_dim() const { return static_cast<int>(A_.rows()); }
    int param_dim() const { return static_cast<int>(A_.cols()); }
    const Mat& generators() const { return A_; }
    const Vec& offset() const { return b_; }
    double jacobian() const { return jacobian_; }

    Vec map_unit(const Vec& t) const;

private:
    Mat A_;
    Vec b_;
    double jacobian_;
};

// Simplex given by d+1 affinely independent vertices in R^d.
class SimplexDomain {
public:
    explicit SimplexDomain(std::vector<Vec> vertices);

    int dim() const { return static_cast<int>(vertices_[0].size()); }
    const std::vector<Vec>& vertices() const { return vertices_; }
    double volume() const { return volume_; }

private:
    std::vector<Vec> vertices_;
    double volume_;
};

using Domain = std::variant<BoxDomain, ZonotopeDomain, SimplexDomain>;

int domain_dim(const Domain& dom);
double domain_volume(const Domain& dom);

// sqrt(det(A^T A)) for the zonotope parametrization; throws if A is rank
// deficient (smallest singular value below 1e-10 times the largest).
double zonotope_jacobian(const Mat& A);

// One cell of the standard triangulation of [0,1]^n into n! simplices: the
// region 0 <= x[perm[0]] <= x[perm[1]] <= ... <= x[perm[n-1]] <= 1. Its
// vertices form the chain w_0 = 0, w_j = w_{j-1} + e_{perm[n-j]}, i.e. w_j is
// the indicator of the j largest coordinates.
struct KuhnCell {
    std::vector<int> perm;  // coordinate order, ascending

    int dim() const { return static_cast<int>(perm.size()); }
    double volume() const;  // 1/n!

    // Vertex w_j as a 0/1 vector, j in 0..n.
    Vec chain_vertex(int j) const;

    // Membership with ties broken by coordinate index, so every point of the
    // cube belongs to exactly one cell.
    bool contains(const Vec& x) const;
};

// Lexicographic enumeration of the n! cells, generated on demand. n is capped
// because the cell count grows as n! and enumeration past the cap is a
// combinatorial blowup rather than a computation.
class KuhnTriangulation {
public:
    static constexpr int kDefaultCap = 9;

    explicit KuhnTriangulation(int n, int cap = kDefaultCap);

    int dim() const { return n_; }
    long long size() const { return cells_; }  // n!

    // Cell at lexicographic rank `index`.
    KuhnCell cell(long long index) const;

    class iterator {
    public:
        using value_type = KuhnCell;
        iterator(int n, long long index);
        const KuhnCell& operator*() const { return current_; }
        iterator& operator++();
        bool operator!=(const iterator& other) const { return index_ != other.index_; }

    private:
        KuhnCell current_;
        long long index_;
    };

    iterator begin() const { return iterator(n_, 0); }
    iterator end() const { return iterator(n_, cells_); }

private:
    int n_;
    long long cells_;
};

KuhnTriangulation kuhn_triangulate(int n, int cap = KuhnTriangulation::kDefaultCap);

// Image of a cell of the triangulation of [0,1]^d under x -> v0 + u*x.
SimplexDomain affine_image_of_cell(const KuhnCell& cell, const BoxDomain& box);

// Coordinate order of x, ascending, ties broken by index; identifies the
// triangulation cell containing x.
std::vector<int> sorted_coordinate_order(const Vec& x);

// Lexicographic rank of a permutation of 0..n-1.
long long permutation_rank(const std::vector<int>& perm);

// Inverse of permutation_rank.
std::vector<int> permutation_unrank(int n, long long rank);

}  // namespace pgap
