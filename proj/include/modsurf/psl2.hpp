#pragma once

// Exact arithmetic in SL(2,Z) / PSL(2,Z) and its action on the upper half
// plane H and on the boundary P^1(Q).
//
// Conventions used throughout the library:
//   * matrices act on the left: (a b; c d).z = (az+b)/(cz+d)
//   * words multiply left to right: the word "s t" evaluates to S*T
//   * the standard generators are S = (0,-1;1,0) and T = (1,1;0,1)
//   * positive orientation is counterclockwise
// Matrix entries are arbitrary-precision integers, so long generator
// products never overflow.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modsurf {

// ---------------------------------------------------------------------------
// SL(2,Z)

struct UnimodularMatrix {
    mpz_class a{1}, b{0}, c{0}, d{1};

    UnimodularMatrix() = default;
    UnimodularMatrix(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_);

    static UnimodularMatrix identity() { return {}; }
    static UnimodularMatrix gen_s() { return {0, -1, 1, 0}; }
    static UnimodularMatrix gen_t() { return {1, 1, 0, 1}; }
    static UnimodularMatrix t_power(const mpz_class& n) { return {1, n, 0, 1}; }

    mpz_class trace() const { return a + d; }
    mpz_class det() const { return a * d - b * c; }
    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }
    UnimodularMatrix negated() const { return {-a, -b, -c, -d}; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    bool operator==(const UnimodularMatrix& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    std::string str() const;
};

UnimodularMatrix compose(const UnimodularMatrix& lhs, const UnimodularMatrix& rhs);

// The involutive automorphism (a,b;c,d) -> (a,-b;-c,d), i.e. conjugation by
// diag(1,-1).  It realizes the real structure: sends T to T^-1, fixes S in
// PSL, and satisfies sigma_H(A . sigma_H(z)) = s_involution(A) . z.
UnimodularMatrix s_involution(const UnimodularMatrix& m);

// ---------------------------------------------------------------------------
// PSL(2,Z): matrices up to sign.  Canonical representative: the first
// nonzero entry of (a, b, c, d) is positive.

struct ProjectiveClass {
    UnimodularMatrix rep;

    ProjectiveClass() = default;
    explicit ProjectiveClass(const UnimodularMatrix& m);

    bool is_identity() const { return rep.is_identity(); }
    bool operator==(const ProjectiveClass& o) const { return rep == o.rep; }
    std::string str() const { return rep.str(); }
};

inline bool psl_equal(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return x == y || x == y.negated();
}

// ---------------------------------------------------------------------------
// Boundary points: P^1(Q) as reduced fractions p/q with q >= 0;
// infinity is 1/0.

struct ExtendedRational {
    mpz_class p{1}, q{0};   // default: infinity

    ExtendedRational() = default;
    ExtendedRational(mpz_class p_, mpz_class q_);   // reduces, q >= 0
    static ExtendedRational infinity() { return {}; }

    bool is_infinity() const { return q == 0; }
    bool operator==(const ExtendedRational& o) const { return p == o.p && q == o.q; }
    ExtendedRational negated() const { return {-p, q}; }
    std::string str() const;    // "inf", "0", "-3/2", ...
};

// ---------------------------------------------------------------------------
// Upper half plane (floating point layer).

struct HalfPlanePoint {
    double x, y;

    HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0))
            throw std::invalid_argument("HalfPlanePoint: y must be strictly positive");
    }
    std::complex<double> to_complex() const { return {x, y}; }
};

// ---------------------------------------------------------------------------
// Words over the generators {S, T, T^-1}.

enum class Letter : std::uint8_t { S = 0, T = 1, TInv = 2 };

struct GeneratorWord {
    std::vector<Letter> letters;

    UnimodularMatrix evaluate() const;
    std::size_t size() const { return letters.size(); }
    std::string str() const;    // e.g. "S T^-1 T^-1 S"
};

// ---------------------------------------------------------------------------
// Actions.

ExtendedRational mobius_act(const ProjectiveClass& g, const ExtendedRational& z);
HalfPlanePoint mobius_act(const ProjectiveClass& g, const HalfPlanePoint& z);

// Checks sigma_H(A . sigma_H(z)) == s_involution(A) . z, where
// sigma_H(x + iy) = -x + iy.  Pure consistency probe for the semilinear
// action; tolerance is absolute on both coordinates.
bool semilinear_identity_check(const UnimodularMatrix& m, const HalfPlanePoint& z,
                               double tolerance = 1e-10);

// Continued-fraction decomposition: a word w with w == g in PSL(2,Z).
// Run length of T's is O(log max entry).  Deterministic (nearest-integer
// division, ties toward +infinity).
GeneratorWord matrix_to_word(const ProjectiveClass& g);

// ---------------------------------------------------------------------------
// Parabolic elements.

bool is_parabolic(const UnimodularMatrix& m);   // |trace| == 2 and m != +-1

// m is SL(2,Z)-conjugate to sign * (1, shift; 0, 1) with shift != 0.
// (1,m;0,1) and (1,-m;0,1) are not conjugate, so the shift is signed.
struct ParabolicNormalForm {
    int sign;           // +1 or -1 (sign of the trace)
    mpz_class shift;    // nonzero
    bool operator==(const ParabolicNormalForm& o) const {
        return sign == o.sign && shift == o.shift;
    }
};

ParabolicNormalForm parabolic_normal_form(const UnimodularMatrix& m);

// ---------------------------------------------------------------------------
// Reduction to the standard fundamental domain |Re z| <= 1/2, |z| >= 1.

struct FundamentalDomainReduction {
    HalfPlanePoint point;   // the reduced point
    ProjectiveClass map;    // exact matrix with map . input == point
};

FundamentalDomainReduction reduce_to_fundamental_domain(const HalfPlanePoint& z);

}   // namespace modsurf
