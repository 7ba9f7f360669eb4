#include "bctoda/opalg.hpp"

#include <sstream>

namespace bctoda::opalg {

std::string GRat::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re.get_str();
    } else if (re == 0) {
        os << im.get_str() << "i";
    } else {
        os << re.get_str() << (im > 0 ? "+" : "") << im.get_str() << "i";
    }
    return os.str();
}

const char* sym_name(Sym s) {
    switch (s) {
        case Sym::u: return "u";
        case Sym::v: return "v";
        case Sym::alpha: return "alpha";
        case Sym::beta: return "beta";
    }
    return "?";
}

SPoly::SPoly(GRat c) {
    if (!c.is_zero()) terms_[{0, 0, 0, 0}] = std::move(c);
}

SPoly SPoly::sym(Sym s, int power) {
    SPoly p;
    Mono m{0, 0, 0, 0};
    m[static_cast<size_t>(int(s))] = power;
    p.terms_[m] = GRat(1);
    return p;
}

void SPoly::add_term(const Mono& m, const GRat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SPoly SPoly::operator-() const {
    SPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

SPoly SPoly::operator+(const SPoly& o) const {
    SPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SPoly SPoly::operator-(const SPoly& o) const {
    SPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

SPoly SPoly::operator*(const SPoly& o) const {
    SPoly r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Mono m;
            for (int i = 0; i < kNumSyms; ++i) m[static_cast<size_t>(i)] = m1[static_cast<size_t>(i)] + m2[static_cast<size_t>(i)];
            r.add_term(m, c1 * c2);
        }
    return r;
}

SPoly SPoly::pow(int k) const {
    SPoly r(GRat(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
}

SPoly SPoly::subst(Sym s, const SPoly& replacement) const {
    SPoly r;
    const int si = int(s);
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        int p = rest[static_cast<size_t>(si)];
        rest[static_cast<size_t>(si)] = 0;
        SPoly factor;
        factor.terms_[rest] = c;
        r = r + factor * replacement.pow(p);
    }
    return r;
}

int SPoly::degree(Sym s) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<size_t>(int(s))]);
    return d;
}

SPoly SPoly::coeff_of(Sym s, int k) const {
    SPoly r;
    const int si = int(s);
    for (const auto& [m, c] : terms_) {
        if (m[static_cast<size_t>(si)] != k) continue;
        Mono rest = m;
        rest[static_cast<size_t>(si)] = 0;
        r.add_term(rest, c);
    }
    return r;
}

Complex SPoly::eval(const std::map<Sym, Complex>& bind) const {
    Complex acc{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        Complex t = c.to_complex();
        for (int i = 0; i < kNumSyms; ++i) {
            if (m[static_cast<size_t>(i)] == 0) continue;
            auto it = bind.find(Sym(i));
            if (it == bind.end())
                throw Error(ErrorCode::UnboundSymbol,
                            std::string("symbol '") + sym_name(Sym(i)) + "' is unbound");
            for (int p = 0; p < m[static_cast<size_t>(i)]; ++p) t *= it->second;
        }
        acc += t;
    }
    return acc;
}

std::string SPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < kNumSyms; ++i)
            if (m[static_cast<size_t>(i)] != 0) {
                os << "*" << sym_name(Sym(i));
                if (m[static_cast<size_t>(i)] != 1) os << "^" << m[static_cast<size_t>(i)];
            }
    }
    return os.str();
}

bool OpPoly::Key::operator<(const Key& o) const {
    if (a != o.a) return a < o.a;
    return k < o.k;
}

OpPoly OpPoly::constant(int sites, SPoly c) {
    OpPoly p(sites);
    if (!c.is_zero()) p.terms_[Key{std::vector<int>(static_cast<size_t>(sites), 0),
                                   std::vector<int>(static_cast<size_t>(sites), 0)}] = std::move(c);
    return p;
}

OpPoly OpPoly::exp_x(int sites, int site, int weight) {
    OpPoly p(sites);
    Key key{std::vector<int>(static_cast<size_t>(sites), 0), std::vector<int>(static_cast<size_t>(sites), 0)};
    key.a[static_cast<size_t>(site)] = weight;
    p.terms_[key] = SPoly(GRat(1));
    return p;
}

OpPoly OpPoly::deriv(int sites, int site, int order) {
    OpPoly p(sites);
    Key key{std::vector<int>(static_cast<size_t>(sites), 0), std::vector<int>(static_cast<size_t>(sites), 0)};
    key.k[static_cast<size_t>(site)] = order;
    p.terms_[key] = SPoly(GRat(1));
    return p;
}

void OpPoly::add_term(const Key& key, const SPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OpPoly OpPoly::operator-() const {
    OpPoly r(sites_);
    for (const auto& [key, c] : terms_) r.terms_[key] = -c;
    return r;
}

OpPoly OpPoly::operator+(const OpPoly& o) const {
    OpPoly r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key, c);
    return r;
}

OpPoly OpPoly::operator-(const OpPoly& o) const {
    OpPoly r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key, -c);
    return r;
}

namespace {

long long binom(int n, int r) {
    long long b = 1;
    for (int i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
    return b;
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

OpPoly OpPoly::operator*(const OpPoly& o) const {
    // Site-wise normal ordering via d^k e^{b x} = e^{b x} (d + b)^k.
    OpPoly r(sites_);
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            // expand the binomials site by site
            std::vector<std::pair<Key, long long>> partial{
                {Key{std::vector<int>(static_cast<size_t>(sites_), 0), std::vector<int>(static_cast<size_t>(sites_), 0)}, 1}};
            for (int s = 0; s < sites_; ++s) {
                int kk = k1.k[static_cast<size_t>(s)];
                int b = k2.a[static_cast<size_t>(s)];
                std::vector<std::pair<int, long long>> site_terms;  // (extra derivative order, coeff)
                if (b == 0 || kk == 0) {
                    site_terms.emplace_back(kk, 1);
                } else {
                    for (int m = 0; m <= kk; ++m)
                        site_terms.emplace_back(m, binom(kk, m) * ipow(b, kk - m));
                }
                std::vector<std::pair<Key, long long>> next;
                next.reserve(partial.size() * site_terms.size());
                for (const auto& [key, coef] : partial)
                    for (const auto& [m, c] : site_terms) {
                        Key nk = key;
                        nk.a[static_cast<size_t>(s)] = k1.a[static_cast<size_t>(s)] + k2.a[static_cast<size_t>(s)];
                        nk.k[static_cast<size_t>(s)] = m + k2.k[static_cast<size_t>(s)];
                        next.emplace_back(std::move(nk), coef * c);
                    }
                partial = std::move(next);
            }
            SPoly cc = c1 * c2;
            for (const auto& [key, coef] : partial) {
                if (coef == 1)
                    r.add_term(key, cc);
                else
                    r.add_term(key, cc * SPoly(GRat(coef)));
            }
        }
    }
    return r;
}

OpPoly OpPoly::scaled(const SPoly& c) const {
    OpPoly r(sites_);
    for (const auto& [key, cc] : terms_) r.add_term(key, cc * c);
    return r;
}

OpPoly OpPoly::subst(Sym s, const SPoly& replacement) const {
    OpPoly r(sites_);
    for (const auto& [key, c] : terms_) r.add_term(key, c.subst(s, replacement));
    return r;
}

OpPoly OpPoly::shift_deriv(int site, const SPoly& shift) const {
    // d_site^k -> (d_site + shift)^k
    OpPoly r(sites_);
    for (const auto& [key, c] : terms_) {
        int kk = key.k[static_cast<size_t>(site)];
        for (int m = 0; m <= kk; ++m) {
            Key nk = key;
            nk.k[static_cast<size_t>(site)] = m;
            SPoly coef = c * SPoly(GRat(binom(kk, m))) * shift.pow(kk - m);
            r.add_term(nk, coef);
        }
    }
    return r;
}

int OpPoly::degree(Sym s) const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, c.degree(s));
    return d;
}

OpPoly OpPoly::coeff_of(Sym s, int k) const {
    OpPoly r(sites_);
    for (const auto& [key, c] : terms_) r.add_term(key, c.coeff_of(s, k));
    return r;
}

std::string OpPoly::sexpr() const {
    std::ostringstream os;
    os << "(oppoly sites " << sites_;
    for (const auto& [key, c] : terms_) {
        os << "\n  (term (exp";
        for (int a : key.a) os << " " << a;
        os << ") (der";
        for (int k : key.k) os << " " << k;
        os << ") " << c.str() << ")";
    }
    os << ")";
    return os.str();
}

OpPoly commutator(const OpPoly& h1, const OpPoly& h2) { return h1 * h2 - h2 * h1; }

MatrixOp::MatrixOp(int rows, int cols, int sites)
    : rows_(rows), cols_(cols), sites_(sites), e_(static_cast<size_t>(rows * cols), OpPoly(sites)) {}

MatrixOp MatrixOp::identity(int dim, int sites) {
    MatrixOp m(dim, dim, sites);
    for (int i = 0; i < dim; ++i) m.at(i, i) = OpPoly::constant(sites, GRat(1));
    return m;
}

MatrixOp MatrixOp::operator+(const MatrixOp& o) const {
    MatrixOp r(rows_, cols_, sites_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

MatrixOp MatrixOp::operator-(const MatrixOp& o) const {
    MatrixOp r(rows_, cols_, sites_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

MatrixOp MatrixOp::operator*(const MatrixOp& o) const {
    MatrixOp r(rows_, o.cols_, sites_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            OpPoly acc(sites_);
            for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

MatrixOp MatrixOp::transpose() const {
    MatrixOp r(cols_, rows_, sites_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

MatrixOp MatrixOp::subst(Sym s, const SPoly& replacement) const {
    MatrixOp r(rows_, cols_, sites_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].subst(s, replacement);
    return r;
}

bool MatrixOp::is_zero() const {
    for (const auto& e : e_)
        if (!e.is_zero()) return false;
    return true;
}

std::string MatrixOp::sexpr() const {
    std::ostringstream os;
    os << "(matrix " << rows_ << "x" << cols_;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            os << "\n (" << i + 1 << "," << j + 1 << ") " << at(i, j).sexpr();
    os << ")";
    return os.str();
}

MatrixOp kron_left(const MatrixOp& a) {
    MatrixOp r(4, 4, a.sites());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.at(2 * i + k, 2 * j + k) = a.at(i, j);
    return r;
}

MatrixOp kron_right(const MatrixOp& a) {
    MatrixOp r(4, 4, a.sites());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.at(2 * k + i, 2 * k + j) = a.at(i, j);
    return r;
}

MatrixOp lax_toda(int sites, int site, const SPoly& arg) {
    MatrixOp m(2, 2, sites);
    m.at(0, 0) = OpPoly::constant(sites, arg) +
                 OpPoly::deriv(sites, site).scaled(spoly_i());
    m.at(0, 1) = OpPoly::exp_x(sites, site, -1);
    m.at(1, 0) = -OpPoly::exp_x(sites, site, +1);
    return m;
}

MatrixOp lax_dst(int sites, int site, const SPoly& arg) {
    MatrixOp m(2, 2, sites);
    m.at(0, 0) = OpPoly::constant(sites, arg) +
                 OpPoly::deriv(sites, site).scaled(spoly_i());
    m.at(0, 1) = OpPoly::exp_x(sites, site, -1);
    m.at(1, 0) = -(OpPoly::exp_x(sites, site, +1) * OpPoly::deriv(sites, site));
    m.at(1, 1) = OpPoly::constant(sites, GRat::imag_unit());
    return m;
}

MatrixOp k_matrix(int sites, const SPoly& arg) {
    SPoly shifted = arg - spoly_i(1, 2);  // u - i/2
    MatrixOp m(2, 2, sites);
    m.at(0, 0) = OpPoly::constant(sites, -SPoly::sym(Sym::alpha));
    m.at(0, 1) = OpPoly::constant(sites, shifted);
    m.at(1, 0) = OpPoly::constant(sites, -(SPoly::sym(Sym::beta, 2) * shifted));
    m.at(1, 1) = OpPoly::constant(sites, -SPoly::sym(Sym::alpha));
    return m;
}

MatrixOp yang_r(int sites, const SPoly& arg) {
    SPoly upi = arg + spoly_i();
    MatrixOp m(4, 4, sites);
    m.at(0, 0) = OpPoly::constant(sites, upi);
    m.at(1, 1) = OpPoly::constant(sites, arg);
    m.at(2, 2) = OpPoly::constant(sites, arg);
    m.at(3, 3) = OpPoly::constant(sites, upi);
    m.at(1, 2) = OpPoly::constant(sites, GRat::imag_unit());
    m.at(2, 1) = OpPoly::constant(sites, GRat::imag_unit());
    return m;
}

MatrixOp sigma2(int sites) {
    MatrixOp m(2, 2, sites);
    m.at(0, 1) = OpPoly::constant(sites, GRat::imag_unit(-1));
    m.at(1, 0) = OpPoly::constant(sites, GRat::imag_unit(+1));
    return m;
}

MatrixOp monodromy_gl(int n, int sites, const SPoly& arg) {
    if (n < 0 || n > 3) throw Error(ErrorCode::SizeLimit, "monodromy supports n <= 3");
    MatrixOp t = MatrixOp::identity(2, sites);
    for (int j = 0; j < n; ++j) t = lax_toda(sites, n - 1 - j, arg) * t;  // L_n ... L_1
    return t;
}

MatrixOp monodromy_bc(int n) {
    if (n < 0 || n > 3) throw Error(ErrorCode::SizeLimit, "monodromy supports n <= 3");
    const int sites = std::max(n, 1);
    SPoly u = SPoly::sym(Sym::u);
    if (n == 0) return k_matrix(sites, u);
    MatrixOp t = monodromy_gl(n, sites, u);
    MatrixOp t_neg_transposed = monodromy_gl(n, sites, -u).transpose();
    MatrixOp s2 = sigma2(sites);
    return t * k_matrix(sites, u) * s2 * t_neg_transposed * s2;
}

std::vector<OpPoly> extract_hamiltonians(int n, Family family) {
    if (n < 1 || n > 3) throw Error(ErrorCode::SizeLimit, "extract_hamiltonians supports n <= 3");
    if (family == Family::GL) {
        MatrixOp t = monodromy_gl(n);
        const OpPoly& a = t.at(0, 0);
        std::vector<OpPoly> hs;
        for (int s = 1; s <= n; ++s) hs.push_back(a.coeff_of(Sym::u, n - s));
        // leading coefficient must be the identity
        OpPoly lead = a.coeff_of(Sym::u, n) - OpPoly::constant(n, GRat(1));
        if (!lead.is_zero())
            throw Error(ErrorCode::DivisionFails, "A_n(u) leading coefficient is not 1");
        return hs;
    }

    MatrixOp tt = monodromy_bc(n);
    const OpPoly& b = tt.at(0, 1);
    int deg = b.degree(Sym::u);
    // synthetic division by (u - i/2)
    std::vector<OpPoly> coef(static_cast<size_t>(deg) + 1, OpPoly(n));
    for (int k = 0; k <= deg; ++k) coef[static_cast<size_t>(k)] = b.coeff_of(Sym::u, k);
    SPoly half_i = spoly_i(1, 2);
    std::vector<OpPoly> q(static_cast<size_t>(deg), OpPoly(n));
    OpPoly carry = coef[static_cast<size_t>(deg)];
    for (int k = deg - 1; k >= 0; --k) {
        q[static_cast<size_t>(k)] = carry;
        carry = coef[static_cast<size_t>(k)] + carry.scaled(half_i);
    }
    if (!carry.is_zero())
        throw Error(ErrorCode::DivisionFails, "(u - i/2) does not divide B_n(u) exactly");
    // multiply by (-1)^n; the quotient must be an even polynomial in u
    std::vector<OpPoly> pc(static_cast<size_t>(deg), OpPoly(n));
    for (int k = 0; k < deg; ++k) pc[static_cast<size_t>(k)] = (n % 2 == 0) ? q[static_cast<size_t>(k)] : -q[static_cast<size_t>(k)];
    for (int k = 1; k < deg; k += 2)
        if (!pc[static_cast<size_t>(k)].is_zero())
            throw Error(ErrorCode::OddPowers, "odd powers of u survive in B_n(u)/(u - i/2)");
    OpPoly lead = pc[static_cast<size_t>(deg - 1)] - OpPoly::constant(n, GRat(1));
    if (deg - 1 != 2 * n || !lead.is_zero())
        throw Error(ErrorCode::DivisionFails, "unexpected leading term of B_n(u)/(u - i/2)");
    std::vector<OpPoly> hs;
    for (int s = 1; s <= n; ++s) hs.push_back(pc[static_cast<size_t>(2 * (n - s))]);
    return hs;
}

bool verify_identity(const MatrixOp& lhs, const MatrixOp& rhs, std::string* witness) {
    MatrixOp d = lhs - rhs;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (!d.at(i, j).is_zero()) {
                if (witness)
                    *witness = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               "): " + d.at(i, j).sexpr();
                return false;
            }
    return true;
}

MatrixOp mfact_u(int sites) {
    MatrixOp u(2, 2, sites);
    u.at(0, 0) = OpPoly::constant(sites, GRat(1));
    u.at(0, 1) = OpPoly::exp_x(sites, 0, -1).scaled(spoly_i(-1));
    u.at(1, 1) = OpPoly::constant(sites, GRat(1));
    return u;
}

MatrixOp mfact_v(int sites, const SPoly& arg) {
    MatrixOp v(2, 2, sites);
    v.at(0, 0) = OpPoly::constant(sites, arg);
    v.at(1, 0) = -(OpPoly::exp_x(sites, 0, +1) * OpPoly::deriv(sites, 0));
    v.at(1, 1) = OpPoly::constant(sites, GRat::imag_unit());
    return v;
}

bool verify_mfact(std::string* witness) {
    SPoly lam = SPoly::sym(Sym::u);
    MatrixOp m = lax_dst(1, 0, lam);
    MatrixOp uv = mfact_u(1) * mfact_v(1, lam);
    return verify_identity(m, uv, witness);
}

bool verify_ace(int n, std::string* witness) {
    if (n < 1 || n > 3) throw Error(ErrorCode::SizeLimit, "verify_ace supports n <= 3");
    const int sites = n;
    SPoly u = SPoly::sym(Sym::u), v = SPoly::sym(Sym::v);
    MatrixOp tprev = monodromy_gl(n - 1, sites, u);
    const OpPoly a_prev = tprev.at(0, 0);
    const OpPoly c_prev = tprev.at(1, 0);
    OpPoly lhs = (OpPoly::constant(sites, u - v) + OpPoly::deriv(sites, n - 1).scaled(spoly_i())) *
                     a_prev +
                 OpPoly::exp_x(sites, n - 1, -1) * c_prev;
    OpPoly conj = lhs.shift_deriv(n - 1, -spoly_i() * v);
    OpPoly a_n = monodromy_gl(n, sites, u).at(0, 0);
    OpPoly diff = conj - a_n;
    if (!diff.is_zero()) {
        if (witness) *witness = diff.sexpr();
        return false;
    }
    return true;
}

std::vector<FDTermDesc> to_numeric_applier(const OpPoly& op, const std::map<Sym, Complex>& bind) {
    std::vector<FDTermDesc> out;
    out.reserve(op.terms().size());
    for (const auto& [key, c] : op.terms()) {
        FDTermDesc t;
        t.coeff = c.eval(bind);
        t.exp_weights = key.a;
        t.der_orders = key.k;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace bctoda::opalg
