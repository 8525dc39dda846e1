#pragma once

#include <cstddef>
#include <vector>

namespace hyperstab {

// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] couples i and i+1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
    // y = A x
    std::vector<double> apply(const std::vector<double>& x) const;
};

// Number of eigenvalues of (A - shift*B) below zero, B diagonal-free tridiagonal
// pencil form: counts negative pivots of the LDL^T factorization.
int inertia_below(const SymTridiag& A, const SymTridiag& B, double shift);

// Solve T x = b for a general tridiagonal T (lower, diag, upper) with partial
// pivoting; the factorization carries one extra superdiagonal of fill-in.
// Throws NumericalError on a numerically singular pivot.
std::vector<double> solve_tridiag(std::vector<double> lower,
                                  std::vector<double> diag,
                                  std::vector<double> upper,
                                  std::vector<double> rhs);

// k smallest eigenvalues of the symmetric-definite pencil A x = mu B x
// (A, B symmetric tridiagonal, B positive definite), by Sturm-count bisection.
std::vector<double> pencil_smallest_eigenvalues(const SymTridiag& A, const SymTridiag& B,
                                                int k, double rel_tol = 1e-12);

// Eigenvector for a converged eigenvalue via shifted inverse iteration.
// prev holds already-computed eigenvectors to B-orthogonalize against.
std::vector<double> pencil_eigenvector(const SymTridiag& A, const SymTridiag& B, double mu,
                                       const std::vector<std::vector<double>>& prev);

// B-inner product x^T B y.
double b_inner(const SymTridiag& B, const std::vector<double>& x, const std::vector<double>& y);

} // namespace hyperstab
