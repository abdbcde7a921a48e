#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace causalabs {

// Ordered variable tuple with outcome-domain sizes, defining the flat-index
// semantics used everywhere: first variable slowest, last variable fastest.
//   flat = o1*(d2*...*dk) + o2*(d3*...*dk) + ... + ok
class OutcomeSpace {
public:
    OutcomeSpace() = default;
    OutcomeSpace(std::vector<std::string> names, std::vector<int> sizes);

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& sizes() const { return sizes_; }
    std::size_t arity() const { return names_.size(); }
    std::size_t total() const { return total_; }

    std::size_t encode(std::span<const int> digits) const;
    std::vector<int> decode(std::size_t flat) const;
    void decode_into(std::size_t flat, std::span<int> out) const;

    // Index of a name; -1 when absent.
    int find(const std::string& name) const;

    bool operator==(const OutcomeSpace& other) const {
        return names_ == other.names_ && sizes_ == other.sizes_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> sizes_;
    std::size_t total_ = 1;
};

// Dense row-major matrix of doubles.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}
    static Mat identity(std::size_t n);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);

    double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat matmul(const Mat& A, const Mat& B);
Mat kron(const Mat& A, const Mat& B);

// Column j sums to 1 within tol and all entries lie in [0,1].
bool is_column_stochastic(const Mat& m, double tol = 1e-9);

// Binary matrix with exactly one 1 per column and at least one 1 per row.
bool is_binary_surjection(const Mat& m);

// Stochastic function between outcome spaces: column index = input flat,
// row index = output flat.
struct StochasticMatrix {
    Mat m;
    OutcomeSpace row_space;
    OutcomeSpace col_space;
};

} // namespace causalabs
