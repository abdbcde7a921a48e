#include "causalabs/outcome_space.hpp"

#include <stdexcept>

#include "causalabs/kernels.hpp"

namespace causalabs {

OutcomeSpace::OutcomeSpace(std::vector<std::string> names, std::vector<int> sizes)
    : names_(std::move(names)), sizes_(std::move(sizes)) {
    if (names_.size() != sizes_.size())
        throw std::invalid_argument("OutcomeSpace: names/sizes length mismatch");
    total_ = 1;
    for (int s : sizes_) {
        if (s < 1) throw std::invalid_argument("OutcomeSpace: domain size must be >= 1");
        total_ *= static_cast<std::size_t>(s);
    }
}

std::size_t OutcomeSpace::encode(std::span<const int> digits) const {
    if (digits.size() != sizes_.size())
        throw std::invalid_argument("OutcomeSpace::encode: digit count mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= sizes_[i])
            throw std::out_of_range("OutcomeSpace::encode: digit out of domain");
        flat = flat * static_cast<std::size_t>(sizes_[i]) + static_cast<std::size_t>(digits[i]);
    }
    return flat;
}

std::vector<int> OutcomeSpace::decode(std::size_t flat) const {
    std::vector<int> out(sizes_.size());
    decode_into(flat, out);
    return out;
}

void OutcomeSpace::decode_into(std::size_t flat, std::span<int> out) const {
    if (flat >= total_) throw std::out_of_range("OutcomeSpace::decode: flat index out of range");
    for (std::size_t i = sizes_.size(); i-- > 0;) {
        const auto d = static_cast<std::size_t>(sizes_[i]);
        out[i] = static_cast<int>(flat % d);
        flat /= d;
    }
}

int OutcomeSpace::find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols) throw std::invalid_argument("Mat::from_rows: ragged rows");
        std::size_t c = 0;
        for (double v : row) m.at(r, c++) = v;
        ++r;
    }
    return m;
}

Mat matmul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: inner dimension mismatch");
    Mat C(A.rows, B.cols);
    kernels::active().matmul(C.a.data(), A.a.data(), B.a.data(), A.rows, A.cols, B.cols);
    return C;
}

Mat kron(const Mat& A, const Mat& B) {
    Mat C(A.rows * B.rows, A.cols * B.cols);
    for (std::size_t ar = 0; ar < A.rows; ++ar)
        for (std::size_t ac = 0; ac < A.cols; ++ac) {
            const double v = A.at(ar, ac);
            if (v == 0.0) continue;
            for (std::size_t br = 0; br < B.rows; ++br)
                for (std::size_t bc = 0; bc < B.cols; ++bc)
                    C.at(ar * B.rows + br, ac * B.cols + bc) = v * B.at(br, bc);
        }
    return C;
}

bool is_column_stochastic(const Mat& m, double tol) {
    for (std::size_t c = 0; c < m.cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows; ++r) {
            const double v = m.at(r, c);
            if (v < 0.0 || v > 1.0 + tol) return false;
            s += v;
        }
        if (s < 1.0 - tol || s > 1.0 + tol) return false;
    }
    return true;
}

bool is_binary_surjection(const Mat& m) {
    for (std::size_t c = 0; c < m.cols; ++c) {
        int ones = 0;
        for (std::size_t r = 0; r < m.rows; ++r) {
            const double v = m.at(r, c);
            if (v == 1.0) ++ones;
            else if (v != 0.0) return false;
        }
        if (ones != 1) return false;
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < m.cols && !any; ++c) any = m.at(r, c) == 1.0;
        if (!any) return false;
    }
    return true;
}

} // namespace causalabs
