#pragma once

#include "voa/scalar.hpp"

namespace voa {

// Small dense matrix over the scalar field.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }

    Scalar& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Scalar& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
        Mat out(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) out.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return out;
    }
    friend Mat operator*(const Scalar& c, const Mat& y) {
        Mat out(y.rows, y.cols);
        for (size_t t = 0; t < y.a.size(); ++t) out.a[t] = c * y.a[t];
        return out;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols) fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
        Mat out = x;
        for (size_t t = 0; t < y.a.size(); ++t) out.a[t] += y.a[t];
        return out;
    }
    friend Mat operator-(const Mat& x, const Mat& y) { return x + Scalar(-1) * y; }

    bool is_zero() const {
        for (auto& s : a)
            if (!s.is_zero()) return false;
        return true;
    }

    Scalar trace() const {
        Scalar t;
        for (int i = 0; i < rows && i < cols; ++i) t += at(i, i);
        return t;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < cols; ++j) s += (j ? ", " : "") + at(i, j).str();
        }
        return s + "]";
    }
};

} // namespace voa
