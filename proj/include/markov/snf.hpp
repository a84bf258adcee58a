#pragma once

#include <markov/mat2.hpp>

namespace markov {

/// Smith normal form of a 2x2 integer matrix: U * A * V = diag(s1, s2)
/// with U, V unimodular, s1, s2 >= 0 and s1 | s2.
struct Smith2 {
    Mat2 U, V;
    Int s1, s2;
};

inline Smith2 smith_normal_form(Mat2 A) {
    Mat2 U = Mat2::identity(), V = Mat2::identity();

    auto swap_rows = [&] {
        std::swap(A.a, A.c);
        std::swap(A.b, A.d);
        std::swap(U.a, U.c);
        std::swap(U.b, U.d);
    };
    auto swap_cols = [&] {
        std::swap(A.a, A.b);
        std::swap(A.c, A.d);
        std::swap(V.a, V.b);
        std::swap(V.c, V.d);
    };
    auto row_op = [&](const Int& q) {  // row2 -= q * row1
        A.c -= q * A.a;
        A.d -= q * A.b;
        U.c -= q * U.a;
        U.d -= q * U.b;
    };
    auto col_op = [&](const Int& q) {  // col2 -= q * col1
        A.b -= q * A.a;
        A.d -= q * A.c;
        V.b -= q * V.a;
        V.d -= q * V.c;
    };

    // clear the off-diagonal entries of the first row/column by gcd steps
    for (int guard = 0; guard < 256; ++guard) {
        if (A.a == 0) {
            if (A.c != 0)
                swap_rows();
            else if (A.b != 0)
                swap_cols();
            else if (A.d != 0) {
                swap_rows();
                swap_cols();
            } else
                break;  // zero matrix
            continue;
        }
        if (A.c != 0) {
            Int q = A.c / A.a;
            if (q != 0) row_op(q);
            if (A.c != 0) swap_rows();
            continue;
        }
        if (A.b != 0) {
            Int q = A.b / A.a;
            if (q != 0) col_op(q);
            if (A.b != 0) swap_cols();
            continue;
        }
        break;
    }

    // divisibility: ensure s1 | s2
    if (A.a != 0 && A.d % A.a != 0) {
        // add col2 to col1, then redo the elimination (classic SNF trick)
        A.a += A.b;
        A.c += A.d;
        V.a += V.b;
        V.c += V.d;
        Smith2 inner = smith_normal_form(A);
        return {inner.U * U, V * inner.V, inner.s1, inner.s2};
    }

    // sign normalization
    if (A.a < 0) {
        A.a = -A.a;
        A.b = -A.b;
        U.a = -U.a;
        U.b = -U.b;
    }
    if (A.d < 0) {
        A.d = -A.d;
        V.b = -V.b;
        V.d = -V.d;
    }
    return {U, V, A.a, A.d};
}

}  // namespace markov
