#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace matk {

using Integer = mpz_class;

/**
 * Exact scalar.  Every coefficient in the library is stored as an exact
 * rational; the owning Ring keeps it in canonical form (an integer for the
 * integers, a reduced fraction for the rationals, a residue in [0, p) for a
 * prime field).
 */
using Scalar = mpq_class;

/**
 * Coefficient ring: the integers, the rationals, or a prime field.
 */
class Ring
{
  public:
    enum class Kind { Integers, Rationals, PrimeField };

    static Ring integers();
    static Ring rationals();

    /** Prime field F_p; throws NotPrime when p is not prime. */
    static Ring prime_field(unsigned long p);

    /** Parse "Z", "Q", "F2", "F3", "F5", "F<p>" or "Fp:<p>". */
    static Ring parse(std::string_view text);

    Kind kind() const { return kind_; }
    unsigned long characteristic() const { return p_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    bool is_finite() const { return kind_ == Kind::PrimeField; }

    /** Canonical name: "Z", "Q" or "F<p>". */
    std::string name() const;

    /** Bring an arbitrary rational into canonical form for this ring. */
    Scalar normalize(const Scalar& x) const;
    Scalar from_int(long v) const { return normalize(Scalar(v)); }

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;

    /** Multiplicative inverse; throws NotInvertible for non-units. */
    Scalar inv(const Scalar& a) const;
    bool is_unit(const Scalar& a) const;
    bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

    /** All elements of a prime field in increasing residue order. */
    std::vector<Scalar> elements() const;

    /** Parse a decimal integer or fraction string into this ring. */
    Scalar parse_scalar(const std::string& text) const;

    /** Decimal rendering of a canonical scalar. */
    static std::string format(const Scalar& x);

    bool operator==(const Ring& other) const
    {
        return kind_ == other.kind_ && p_ == other.p_;
    }

  private:
    Ring(Kind kind, unsigned long p) : kind_(kind), p_(p) {}

    Kind kind_;
    unsigned long p_;
};

}  // namespace matk
