#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bctoda/numerics.hpp"

namespace bctoda::opalg {

/// Exact Gaussian rational a + b*i.
struct GRat {
    mpq_class re{0}, im{0};

    GRat() = default;
    GRat(long n, long d = 1) : re(n, d) { re.canonicalize(); }
    GRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    static GRat imag_unit(long n = 1, long d = 1) {
        GRat g;
        g.im = mpq_class(n, d);
        g.im.canonicalize();
        return g;
    }

    bool is_zero() const { return re == 0 && im == 0; }
    GRat operator-() const { return GRat(-re, -im); }
    GRat operator+(const GRat& o) const { return GRat(re + o.re, im + o.im); }
    GRat operator-(const GRat& o) const { return GRat(re - o.re, im - o.im); }
    GRat operator*(const GRat& o) const {
        return GRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    bool operator==(const GRat& o) const { return re == o.re && im == o.im; }
    Complex to_complex() const { return Complex(re.get_d(), im.get_d()); }
    std::string str() const;
};

enum class Sym : int { u = 0, v = 1, alpha = 2, beta = 3 };
constexpr int kNumSyms = 4;
const char* sym_name(Sym s);

/// Multivariate polynomial in the formal symbols u, v, alpha, beta with
/// Gaussian-rational coefficients.
class SPoly {
public:
    using Mono = std::array<int, kNumSyms>;

    SPoly() = default;
    explicit SPoly(GRat c);
    explicit SPoly(long n) : SPoly(GRat(n)) {}
    static SPoly sym(Sym s, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    SPoly operator-() const;
    SPoly operator+(const SPoly& o) const;
    SPoly operator-(const SPoly& o) const;
    SPoly operator*(const SPoly& o) const;
    bool operator==(const SPoly& o) const { return terms_ == o.terms_; }

    SPoly pow(int k) const;
    /// Substitute a polynomial for a symbol.
    SPoly subst(Sym s, const SPoly& replacement) const;
    int degree(Sym s) const;
    /// Coefficient of s^k as a polynomial in the remaining symbols.
    SPoly coeff_of(Sym s, int k) const;
    /// Numeric evaluation; every symbol present must be bound.
    Complex eval(const std::map<Sym, Complex>& bind) const;

    const std::map<Mono, GRat>& terms() const { return terms_; }
    std::string str() const;

private:
    std::map<Mono, GRat> terms_;
    void add_term(const Mono& m, const GRat& c);
    friend class OpPoly;
};

inline SPoly spoly_i(long n = 1, long d = 1) { return SPoly(GRat::imag_unit(n, d)); }

/// Normal-ordered element of the algebra generated by e^{+-x_j} and d/dx_j
/// over a fixed number of sites, with SPoly coefficients. A term is
/// c * e^{a.x} * d^k with all exponentials to the left of all derivatives;
/// operators on distinct sites commute.
class OpPoly {
public:
    struct Key {
        std::vector<int> a;  // exponential weight per site
        std::vector<int> k;  // derivative order per site
        bool operator<(const Key& o) const;
        bool operator==(const Key& o) const { return a == o.a && k == o.k; }
    };

    OpPoly() = default;
    explicit OpPoly(int sites) : sites_(sites) {}
    static OpPoly zero(int sites) { return OpPoly(sites); }
    static OpPoly constant(int sites, SPoly c);
    static OpPoly constant(int sites, GRat c) { return constant(sites, SPoly(std::move(c))); }
    static OpPoly exp_x(int sites, int site, int weight);
    static OpPoly deriv(int sites, int site, int order = 1);

    int sites() const { return sites_; }
    bool is_zero() const { return terms_.empty(); }
    size_t n_terms() const { return terms_.size(); }

    OpPoly operator-() const;
    OpPoly operator+(const OpPoly& o) const;
    OpPoly operator-(const OpPoly& o) const;
    OpPoly operator*(const OpPoly& o) const;  // normal-ordered product
    bool operator==(const OpPoly& o) const { return sites_ == o.sites_ && terms_ == o.terms_; }

    OpPoly scaled(const SPoly& c) const;
    OpPoly subst(Sym s, const SPoly& replacement) const;
    /// Conjugation d_site -> d_site + shift (models multiplication by
    /// exponentials with non-integral symbolic weights).
    OpPoly shift_deriv(int site, const SPoly& shift) const;

    int degree(Sym s) const;
    OpPoly coeff_of(Sym s, int k) const;

    const std::map<Key, SPoly>& terms() const { return terms_; }
    /// Canonical s-expression (stable across runs; used by golden tests).
    std::string sexpr() const;

private:
    int sites_ = 0;
    std::map<Key, SPoly> terms_;
    void add_term(const Key& key, const SPoly& c);
};

OpPoly commutator(const OpPoly& h1, const OpPoly& h2);

/// Dense matrix (2x2 or 4x4) with OpPoly entries.
class MatrixOp {
public:
    MatrixOp() = default;
    MatrixOp(int rows, int cols, int sites);
    static MatrixOp identity(int dim, int sites);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int sites() const { return sites_; }
    OpPoly& at(int r, int c) { return e_[static_cast<size_t>(r * cols_ + c)]; }
    const OpPoly& at(int r, int c) const { return e_[static_cast<size_t>(r * cols_ + c)]; }

    MatrixOp operator+(const MatrixOp& o) const;
    MatrixOp operator-(const MatrixOp& o) const;
    MatrixOp operator*(const MatrixOp& o) const;
    MatrixOp transpose() const;
    MatrixOp subst(Sym s, const SPoly& replacement) const;
    bool is_zero() const;
    std::string sexpr() const;

private:
    int rows_ = 0, cols_ = 0, sites_ = 0;
    std::vector<OpPoly> e_;
};

/// A ⊗ 1 and 1 ⊗ A embeddings of a 2x2 matrix into 4x4.
MatrixOp kron_left(const MatrixOp& a);
MatrixOp kron_right(const MatrixOp& a);

/// Lax matrix of the Toda chain at the given site, spectral argument `arg`.
MatrixOp lax_toda(int sites, int site, const SPoly& arg);
/// Lax matrix of the DST chain.
MatrixOp lax_dst(int sites, int site, const SPoly& arg);
/// Boundary K-matrix (entries carry the alpha, beta symbols).
MatrixOp k_matrix(int sites, const SPoly& arg);
/// Yang R-matrix (4x4, scalar entries).
MatrixOp yang_r(int sites, const SPoly& arg);
MatrixOp sigma2(int sites);

/// T_n(u) = L_n(u) ... L_1(u) on `sites` >= n sites (sites 0..n-1).
MatrixOp monodromy_gl(int n, int sites, const SPoly& arg);
inline MatrixOp monodromy_gl(int n) { return monodromy_gl(n, n, SPoly::sym(Sym::u)); }

/// TT_n(u) = T_n(u) K(u) sigma2 T_n^t(-u) sigma2; for n = 0 this is K(u).
MatrixOp monodromy_bc(int n);

enum class Family { GL, BC };

/// GL: coefficients H_s of A_n(u) = u^n + sum u^{n-s} H_s.
/// BC: divides the (1,2) entry of TT_n(u) exactly by (-1)^n (u - i/2),
/// asserts the quotient is even in u, and returns the coefficients HH_s of
/// u^{2(n-s)}.
std::vector<OpPoly> extract_hamiltonians(int n, Family family);

/// True iff every entry of lhs - rhs has empty normal form; otherwise
/// `witness` receives the first nonzero entry.
bool verify_identity(const MatrixOp& lhs, const MatrixOp& rhs, std::string* witness = nullptr);

/// Checks the factorization M(lambda) = U V(lambda) of the DST Lax matrix.
bool verify_mfact(std::string* witness = nullptr);
MatrixOp mfact_u(int sites);
MatrixOp mfact_v(int sites, const SPoly& arg);

/// Checks ((u - v + i d_n) A_{n-1} + e^{-x_n} C_{n-1}) e^{-i v x_n}
///        = e^{-i v x_n} A_n(u), with the exponential modeled by the
/// conjugation d_n -> d_n - i v.
bool verify_ace(int n, std::string* witness = nullptr);

struct FDTermDesc {
    Complex coeff;
    std::vector<int> exp_weights;
    std::vector<int> der_orders;
};

/// Numeric term list for finite-difference application; all spectral symbols
/// must be bound.
std::vector<FDTermDesc> to_numeric_applier(const OpPoly& op, const std::map<Sym, Complex>& bind);

}  // namespace bctoda::opalg
