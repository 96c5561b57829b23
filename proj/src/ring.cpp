#include "matk/ring.hpp"

#include "matk/error.hpp"

#include <charconv>

namespace matk {

namespace {

bool is_prime(unsigned long p)
{
    if (p < 2)
        return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

}  // namespace

Ring Ring::integers() { return Ring(Kind::Integers, 0); }

Ring Ring::rationals() { return Ring(Kind::Rationals, 0); }

Ring Ring::prime_field(unsigned long p)
{
    if (!is_prime(p))
        throw Error("NotPrime", std::to_string(p) + " is not a prime");
    return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(std::string_view text)
{
    if (text == "Z")
        return integers();
    if (text == "Q")
        return rationals();
    std::string_view digits;
    if (text.starts_with("Fp:"))
        digits = text.substr(3);
    else if (text.starts_with("F"))
        digits = text.substr(1);
    else
        throw Error("UnknownRing", std::string(text));
    unsigned long p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
        throw Error("UnknownRing", std::string(text));
    return prime_field(p);
}

std::string Ring::name() const
{
    switch (kind_)
    {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::PrimeField: return "F" + std::to_string(p_);
    }
    return "?";
}

Scalar Ring::normalize(const Scalar& input) const
{
    Scalar x = input;
    x.canonicalize();
    switch (kind_)
    {
        case Kind::Rationals: return x;
        case Kind::Integers:
            if (x.get_den() != 1)
                throw Error("NotIntegral", x.get_str() + " is not an integer");
            return x;
        case Kind::PrimeField:
        {
            Integer p(p_);
            Integer num = x.get_num() % p;
            if (num < 0)
                num += p;
            Integer den = x.get_den() % p;
            if (den == 0)
                throw Error("NotInvertible", "denominator divisible by " + std::to_string(p_));
            if (den != 1)
            {
                Integer inv;
                mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
                num = (num * inv) % p;
            }
            return Scalar(num);
        }
    }
    return x;
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const
{
    Scalar s = a + b;
    if (kind_ == Kind::PrimeField)
    {
        Integer p(p_);
        if (s.get_num() >= p)
            return Scalar(s.get_num() - p);
        return s;
    }
    return s;
}

Scalar Ring::sub(const Scalar& a, const Scalar& b) const
{
    Scalar s = a - b;
    if (kind_ == Kind::PrimeField && s < 0)
        return Scalar(s.get_num() + Integer(p_));
    return s;
}

Scalar Ring::mul(const Scalar& a, const Scalar& b) const
{
    if (kind_ == Kind::PrimeField)
        return Scalar(Integer(a.get_num() * b.get_num()) % Integer(p_));
    return a * b;
}

Scalar Ring::neg(const Scalar& a) const
{
    if (kind_ == Kind::PrimeField)
        return sgn(a) == 0 ? a : Scalar(Integer(p_) - a.get_num());
    return -a;
}

bool Ring::is_unit(const Scalar& a) const
{
    if (kind_ == Kind::Integers)
        return a == 1 || a == -1;
    return sgn(a) != 0;
}

Scalar Ring::inv(const Scalar& a) const
{
    if (!is_unit(a))
        throw Error("NotInvertible", a.get_str() + " in " + name());
    if (kind_ == Kind::PrimeField)
        return normalize(Scalar(1) / a);
    return Scalar(1) / a;
}

std::vector<Scalar> Ring::elements() const
{
    if (kind_ != Kind::PrimeField)
        throw Error("RingNotFinite", name());
    std::vector<Scalar> out;
    out.reserve(p_);
    for (unsigned long v = 0; v < p_; ++v)
        out.emplace_back(v);
    return out;
}

Scalar Ring::parse_scalar(const std::string& text) const
{
    Scalar x;
    if (x.set_str(text, 10) != 0)
        throw Error("BadScalar", text);
    x.canonicalize();
    return normalize(x);
}

std::string Ring::format(const Scalar& x) { return x.get_str(); }

}  // namespace matk
