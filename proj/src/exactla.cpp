#include "prevtrop/exactla.hpp"

#include <algorithm>
#include <utility>

namespace prevtrop {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '+'))
        s.erase(s.begin());
    while (!s.empty() && s.back() == ' ')
        s.pop_back();
    if (s.empty())
        throw Error("empty rational literal");
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t start = (!part.empty() && part[0] == '-') ? 1 : 0;
        if (start >= part.size())
            return false;
        return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    Rational q;
    if (slash == std::string::npos) {
        if (!valid_int(s))
            throw Error("malformed rational literal '" + s + "'");
        q = Rational(Integer(s), 1);
    } else {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den))
            throw Error("malformed rational literal '" + s + "'");
        Integer d(den);
        if (d == 0)
            throw Error("zero denominator in '" + s + "'");
        q = Rational(Integer(num), d);
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer dot(std::span<const Integer> a, std::span<const Integer> b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot product of vectors of different length");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Rational dot(std::span<const Rational> a, std::span<const Integer> b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot product of vectors of different length");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot product of vectors of different length");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

IntVector primitive(IntVector v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    if (g > 1)
        for (auto& x : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

IntVector primitive(const RatVector& v)
{
    Integer l = 1;
    for (const auto& x : v)
        l = lcm(l, x.get_den());
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational scaled = v[i] * l;
        out[i] = scaled.get_num();
    }
    return primitive(std::move(out));
}

bool is_zero(std::span<const Integer> v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(std::span<const Rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RatVector to_rational(std::span<const Integer> v)
{
    return RatVector(v.begin(), v.end());
}

int compare(std::span<const Integer> a, std::span<const Integer> b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c < 0 ? -1 : 1;
    }
    if (a.size() == b.size())
        return 0;
    return a.size() < b.size() ? -1 : 1;
}

int compare(std::span<const Rational> a, std::span<const Rational> b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c < 0 ? -1 : 1;
    }
    if (a.size() == b.size())
        return 0;
    return a.size() < b.size() ? -1 : 1;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0))
{
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionMismatch("matrix row has length " + std::to_string(rows[i].size()) +
                                    ", expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows)
{
    return from_rows(columns, rows).transpose();
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntVector IntMatrix::row(std::size_t i) const
{
    return IntVector(data_.begin() + static_cast<long>(i * cols_),
                     data_.begin() + static_cast<long>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const
{
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = at(i, j);
    return c;
}

std::vector<IntVector> IntMatrix::row_vectors() const
{
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out.push_back(row(i));
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw DimensionMismatch("matrix product of incompatible shapes");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntVector IntMatrix::operator*(std::span<const Integer> v) const
{
    if (v.size() != cols_)
        throw DimensionMismatch("matrix-vector product of incompatible shapes");
    IntVector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] += at(i, j) * v[j];
    return out;
}

RatVector IntMatrix::operator*(std::span<const Rational> v) const
{
    if (v.size() != cols_)
        throw DimensionMismatch("matrix-vector product of incompatible shapes");
    RatVector out(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] += v[j] * at(i, j);
    return out;
}

bool IntMatrix::is_zero() const
{
    return prevtrop::is_zero(std::span<const Integer>(data_));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        at(target, j) += factor * at(source, j);
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        at(i, target) += factor * at(i, source);
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t j = 0; j < cols_; ++j)
        at(i, j) = -at(i, j);
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer trunc_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& A)
{
    HermiteResult res{A, IntMatrix::identity(A.rows()), {}};
    IntMatrix& H = res.H;
    IntMatrix& U = res.U;
    const std::size_t m = H.rows();
    const std::size_t n = H.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        bool found = false;
        while (true) {
            std::size_t best = m;
            for (std::size_t k = r; k < m; ++k) {
                if (H.at(k, c) == 0)
                    continue;
                if (best == m || abs(H.at(k, c)) < abs(H.at(best, c)))
                    best = k;
            }
            if (best == m)
                break;
            found = true;
            H.swap_rows(r, best);
            U.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (H.at(i, c) == 0)
                    continue;
                Integer q = floor_div(H.at(i, c), H.at(r, c));
                H.add_row_multiple(i, r, -q);
                U.add_row_multiple(i, r, -q);
                if (H.at(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (!found)
            continue;
        if (H.at(r, c) < 0) {
            H.negate_row(r);
            U.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(H.at(i, c), H.at(r, c));
            H.add_row_multiple(i, r, -q);
            U.add_row_multiple(i, r, -q);
        }
        res.pivot_columns.push_back(c);
        ++r;
    }
    return res;
}

std::vector<Integer> SmithResult::invariant_factors() const
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        out.push_back(D.at(i, i));
    return out;
}

SmithResult smith_normal_form(const IntMatrix& A)
{
    SmithResult res{A, IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols())};
    IntMatrix& D = res.D;
    IntMatrix& P = res.P;
    IntMatrix& Q = res.Q;
    const std::size_t m = D.rows();
    const std::size_t n = D.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (D.at(i, j) == 0)
                        continue;
                    if (bi == m || abs(D.at(i, j)) < abs(D.at(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == m)
                return res;
            D.swap_rows(t, bi);
            P.swap_rows(t, bi);
            D.swap_columns(t, bj);
            Q.swap_columns(t, bj);
            bool changed = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D.at(i, t) == 0)
                    continue;
                Integer q = trunc_div(D.at(i, t), D.at(t, t));
                D.add_row_multiple(i, t, -q);
                P.add_row_multiple(i, t, -q);
                if (D.at(i, t) != 0)
                    changed = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D.at(t, j) == 0)
                    continue;
                Integer q = trunc_div(D.at(t, j), D.at(t, t));
                D.add_column_multiple(j, t, -q);
                Q.add_column_multiple(j, t, -q);
                if (D.at(t, j) != 0)
                    changed = true;
            }
            if (changed)
                continue;
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        D.add_row_multiple(t, i, 1);
                        P.add_row_multiple(t, i, 1);
                        fixed = true;
                        break;
                    }
                }
            if (!fixed)
                break;
        }
        if (D.at(t, t) < 0) {
            D.negate_row(t);
            P.negate_row(t);
        }
    }
    return res;
}

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVector>& M, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
        std::size_t p = r;
        while (p < M.size() && M[p][c] == 0)
            ++p;
        if (p == M.size())
            continue;
        std::swap(M[p], M[r]);
        Rational inv = 1 / M[r][c];
        for (auto& x : M[r])
            x *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][c] == 0)
                continue;
            Rational f = M[i][c];
            for (std::size_t j = c; j < M[i].size(); ++j)
                M[i][j] -= f * M[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<RatVector> rational_rows(const IntMatrix& A)
{
    std::vector<RatVector> M(A.rows(), RatVector(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            M[i][j] = A.at(i, j);
    return M;
}

}  // namespace

std::size_t rank(const IntMatrix& A)
{
    auto M = rational_rows(A);
    return rref(M, A.cols()).size();
}

std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols)
{
    return rank(IntMatrix::from_rows(rows, cols));
}

Integer determinant(const IntMatrix& A)
{
    if (A.rows() != A.cols())
        throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0)
        return 1;
    IntMatrix M = A;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M.at(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            M.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                M.at(i, j) = v;
            }
        prev = M.at(k, k);
    }
    return sign * M.at(n - 1, n - 1);
}

std::optional<RatVector> solve_rational(const IntMatrix& A, std::span<const Rational> b)
{
    if (b.size() != A.rows())
        throw DimensionMismatch("right-hand side length does not match matrix rows");
    const std::size_t n = A.cols();
    std::vector<RatVector> M(A.rows(), RatVector(n + 1));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = A.at(i, j);
        M[i][n] = b[i];
    }
    auto pivots = rref(M, n + 1);
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt;
    RatVector x(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = M[r][n];
    return x;
}

std::optional<IntVector> solve_integer(const IntMatrix& A, std::span<const Integer> b)
{
    if (b.size() != A.rows())
        throw DimensionMismatch("right-hand side length does not match matrix rows");
    // U * A^T = H, so A * U^T = H^T and A x = b reduces to H^T y = b.
    auto hnf = hermite_normal_form(A.transpose());
    const IntMatrix& H = hnf.H;
    IntVector residual(b.begin(), b.end());
    IntVector y(A.cols(), Integer(0));
    for (std::size_t i = 0; i < hnf.pivot_columns.size(); ++i) {
        const std::size_t c = hnf.pivot_columns[i];
        if (residual[c] % H.at(i, c) != 0)
            return std::nullopt;
        y[i] = residual[c] / H.at(i, c);
        for (std::size_t j = 0; j < residual.size(); ++j)
            residual[j] -= y[i] * H.at(i, j);
    }
    if (!is_zero(residual))
        return std::nullopt;
    return hnf.U.transpose() * std::span<const Integer>(y);
}

std::vector<RatVector> inverse_rational(const IntMatrix& A)
{
    if (A.rows() != A.cols())
        throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = A.rows();
    std::vector<RatVector> M(n, RatVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = A.at(i, j);
        M[i][n + i] = 1;
    }
    auto pivots = rref(M, n);
    if (pivots.size() != n)
        throw Error("matrix is singular");
    std::vector<RatVector> inv(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = M[i][n + j];
    return inv;
}

// ---------------------------------------------------------------------------
// Lattices and groups

Lattice::Lattice(std::size_t ambient, const IntMatrix& basis) : ambient_(ambient)
{
    if (basis.cols() != ambient)
        throw DimensionMismatch("lattice basis has wrong ambient rank");
    auto hnf = hermite_normal_form(basis);
    if (hnf.pivot_columns.size() != basis.rows())
        throw Error("lattice basis vectors are linearly dependent");
    basis_ = hnf.H;
}

Lattice Lattice::standard(std::size_t rank)
{
    return Lattice(rank, IntMatrix::identity(rank));
}

bool Lattice::contains(std::span<const Integer> v) const
{
    return coordinates(v).has_value();
}

std::optional<IntVector> Lattice::coordinates(std::span<const Integer> v) const
{
    if (v.size() != ambient_)
        throw DimensionMismatch("vector length does not match lattice ambient rank");
    return solve_integer(basis_.transpose(), v);
}

bool Lattice::is_saturated() const
{
    auto snf = smith_normal_form(basis_);
    for (const auto& d : snf.invariant_factors())
        if (d != 1)
            return false;
    return true;
}

Lattice kernel_lattice(const IntMatrix& A)
{
    const std::size_t n = A.cols();
    auto hnf = hermite_normal_form(A.transpose());
    const std::size_t r = hnf.pivot_columns.size();
    IntMatrix K(n - r, n);
    for (std::size_t i = r; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            K.at(i - r, j) = hnf.U.at(i, j);
    return Lattice(n, K);
}

AbelianGroup::AbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion))
{
    for (const auto& m : torsion_)
        if (m < 2)
            throw Error("torsion orders must be at least 2");
}

IntVector AbelianGroup::reduce(IntVector element) const
{
    if (element.size() != coordinate_count())
        throw DimensionMismatch("group element has wrong number of coordinates");
    for (std::size_t k = 0; k < torsion_.size(); ++k) {
        Integer& x = element[free_rank_ + k];
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), torsion_[k].get_mpz_t());
    }
    return element;
}

CokernelInfo cokernel_is_finite(const IntMatrix& A, const AbelianGroup& target)
{
    const std::size_t d = target.coordinate_count();
    if (A.rows() != d)
        throw DimensionMismatch("generator columns do not match the group's coordinates");
    if (d == 0)
        return {true, Integer(1)};
    const std::size_t t = target.torsion().size();
    IntMatrix M(d, A.cols() + t);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            M.at(i, j) = A.at(i, j);
    for (std::size_t k = 0; k < t; ++k)
        M.at(target.free_rank() + k, A.cols() + k) = target.torsion()[k];
    auto snf = smith_normal_form(M);
    auto factors = snf.invariant_factors();
    if (factors.size() < d)
        return {false, std::nullopt};
    Integer index = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (factors[i] == 0)
            return {false, std::nullopt};
        index *= factors[i];
    }
    return {true, index};
}

}  // namespace prevtrop
