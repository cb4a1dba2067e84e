#include "modsurf/psl2.hpp"

#include <cmath>
#include <sstream>

namespace modsurf {

UnimodularMatrix::UnimodularMatrix(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (det() != 1)
        throw std::invalid_argument("UnimodularMatrix: determinant must be 1, got " +
                                    det().get_str());
}

UnimodularMatrix compose(const UnimodularMatrix& lhs, const UnimodularMatrix& rhs) {
    return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
            lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

UnimodularMatrix s_involution(const UnimodularMatrix& m) {
    return {m.a, -m.b, -m.c, m.d};
}

std::string UnimodularMatrix::str() const {
    std::ostringstream os;
    os << "[" << a.get_str() << ", " << b.get_str() << "; " << c.get_str() << ", "
       << d.get_str() << "]";
    return os.str();
}

ProjectiveClass::ProjectiveClass(const UnimodularMatrix& m) : rep(m) {
    const mpz_class* first = &rep.a;
    if (*first == 0) first = &rep.b;
    if (*first == 0) first = &rep.c;
    if (*first == 0) first = &rep.d;
    if (*first < 0) rep = rep.negated();
}

ExtendedRational::ExtendedRational(mpz_class p_, mpz_class q_) : p(std::move(p_)), q(std::move(q_)) {
    if (q == 0) {
        if (p == 0)
            throw std::invalid_argument("ExtendedRational: 0/0 is not a point of P^1");
        p = 1;
        return;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    p /= g;
    q /= g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
}

std::string ExtendedRational::str() const {
    if (is_infinity()) return "inf";
    if (q == 1) return p.get_str();
    return p.get_str() + "/" + q.get_str();
}

UnimodularMatrix GeneratorWord::evaluate() const {
    UnimodularMatrix m;
    for (Letter l : letters) {
        switch (l) {
            case Letter::S: m = compose(m, UnimodularMatrix::gen_s()); break;
            case Letter::T: m = compose(m, UnimodularMatrix::gen_t()); break;
            case Letter::TInv: m = compose(m, UnimodularMatrix::gen_t().inverse()); break;
        }
    }
    return m;
}

std::string GeneratorWord::str() const {
    std::string out;
    for (Letter l : letters) {
        if (!out.empty()) out += ' ';
        out += (l == Letter::S) ? "S" : (l == Letter::T) ? "T" : "T^-1";
    }
    return out.empty() ? "1" : out;
}

ExtendedRational mobius_act(const ProjectiveClass& g, const ExtendedRational& z) {
    const UnimodularMatrix& m = g.rep;
    mpz_class num = m.a * z.p + m.b * z.q;
    mpz_class den = m.c * z.p + m.d * z.q;
    if (den == 0) return ExtendedRational::infinity();
    return {num, den};
}

HalfPlanePoint mobius_act(const ProjectiveClass& g, const HalfPlanePoint& z) {
    const UnimodularMatrix& m = g.rep;
    std::complex<double> w(m.a.get_d() * z.x + m.b.get_d(), m.a.get_d() * z.y);
    std::complex<double> den(m.c.get_d() * z.x + m.d.get_d(), m.c.get_d() * z.y);
    std::complex<double> r = w / den;
    return {r.real(), r.imag()};
}

bool semilinear_identity_check(const UnimodularMatrix& m, const HalfPlanePoint& z,
                               double tolerance) {
    ProjectiveClass g(m);
    HalfPlanePoint sz(-z.x, z.y);                       // sigma_H(z)
    HalfPlanePoint lhs_raw = mobius_act(g, sz);
    HalfPlanePoint lhs(-lhs_raw.x, lhs_raw.y);          // sigma_H(A . sigma_H(z))
    HalfPlanePoint rhs = mobius_act(ProjectiveClass(s_involution(m)), z);
    return std::abs(lhs.x - rhs.x) <= tolerance && std::abs(lhs.y - rhs.y) <= tolerance;
}

namespace {

// nearest integer to a/c with ties toward +infinity; c != 0
mpz_class nearest_quotient(const mpz_class& a, const mpz_class& c) {
    mpz_class num = a, den = c;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpz_class q;
    mpz_class two_num_plus_den = 2 * num + den;
    mpz_fdiv_q(q.get_mpz_t(), two_num_plus_den.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    return q;
}

void append_t_run(std::vector<Letter>& out, const mpz_class& n) {
    Letter l = n >= 0 ? Letter::T : Letter::TInv;
    mpz_class count = abs(n);
    for (mpz_class i = 0; i < count; ++i) out.push_back(l);
}

}   // namespace

GeneratorWord matrix_to_word(const ProjectiveClass& g) {
    // Peel factors from the left: A = T^q * S * A' with the lower-left entry
    // of A' at most half the previous one; ends at A = +-T^m.
    mpz_class a = g.rep.a, b = g.rep.b, c = g.rep.c, d = g.rep.d;
    GeneratorWord word;
    while (c != 0) {
        mpz_class q = nearest_quotient(a, c);
        append_t_run(word.letters, q);
        a -= q * c;
        b -= q * d;
        word.letters.push_back(Letter::S);
        // A <- S^-1 * A; S^-1 == -S == S in PSL
        mpz_class na = c, nb = d, nc = -a, nd = -b;
        a = na; b = nb; c = nc; d = nd;
    }
    append_t_run(word.letters, b * d);   // A == +-T^(b*d) once c == 0
    return word;
}

bool is_parabolic(const UnimodularMatrix& m) {
    return abs(m.trace()) == 2 && !m.is_identity() && !m.negated().is_identity();
}

ParabolicNormalForm parabolic_normal_form(const UnimodularMatrix& m) {
    if (!is_parabolic(m))
        throw std::invalid_argument("parabolic_normal_form: matrix is not parabolic: " + m.str());

    // boundary fixed point p/q (reduced, q >= 0): (a-d)/(2c), or infinity if c == 0
    mpz_class p, q;
    if (m.c == 0) {
        p = 1;
        q = 0;
    } else {
        ExtendedRational fp(m.a - m.d, 2 * m.c);
        p = fp.p;
        q = fp.q;
    }

    // complete (p, q) to U = (p, r; q, s) in SL(2,Z): p*s - q*r = 1,
    // choosing the Bezout pair minimizing r^2 + s^2 (deterministic tie-break
    // toward the smaller line parameter).
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    // p*x + q*y == 1  =>  s0 = x, r0 = -y
    mpz_class s0 = x, r0 = -y;
    // general solution: r = r0 + n*p, s = s0 + n*q; minimize over n near the
    // real least-squares optimum
    mpz_class den = p * p + q * q;
    mpz_class num = -(r0 * p + s0 * q);
    mpz_class n0;
    {
        // round(num/den) with ties toward +infinity
        mpz_class t = 2 * num + den;
        mpz_fdiv_q(n0.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    }
    mpz_class best_r, best_s, best_v(-1);
    for (int dn = -1; dn <= 1; ++dn) {
        mpz_class n = n0 + dn;
        mpz_class r = r0 + n * p, s = s0 + n * q;
        mpz_class v = r * r + s * s;
        if (best_v < 0 || v < best_v) {
            best_v = v;
            best_r = r;
            best_s = s;
        }
    }
    UnimodularMatrix U(p, best_r, q, best_s);
    UnimodularMatrix B = compose(compose(U.inverse(), m), U);
    if (B.c != 0 || B.a != B.d || abs(B.a) != 1)
        throw std::logic_error("parabolic_normal_form: conjugation did not normalize " + m.str());
    int sign = B.a == 1 ? 1 : -1;
    ParabolicNormalForm nf{sign, B.b * B.a};   // B = sign*(1, shift; 0, 1)
    if (nf.shift == 0)
        throw std::logic_error("parabolic_normal_form: zero shift for " + m.str());
    return nf;
}

FundamentalDomainReduction reduce_to_fundamental_domain(const HalfPlanePoint& z) {
    double x = z.x, y = z.y;
    UnimodularMatrix m;   // accumulates: m . z == current point
    for (int iter = 0; iter < 512; ++iter) {
        double n = std::nearbyint(x);
        if (n != 0.0) {
            x -= n;
            m = compose(UnimodularMatrix::t_power(mpz_class(-static_cast<long>(n))), m);
        }
        double norm2 = x * x + y * y;
        if (norm2 < 1.0 - 1e-15) {
            // z <- -1/z (strictly increases y since |z| < 1)
            double nx = -x / norm2, ny = y / norm2;
            x = nx;
            y = ny;
            m = compose(UnimodularMatrix::gen_s(), m);
        } else {
            break;
        }
    }
    if (std::abs(x) > 0.5 + 1e-12 || x * x + y * y < 1.0 - 1e-12)
        throw std::logic_error("reduce_to_fundamental_domain: did not converge");
    return {HalfPlanePoint(x, y), ProjectiveClass(m)};
}

}   // namespace modsurf
