#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace extrikit {

namespace detail {
inline std::uint32_t& prime_slot()
{
    static std::uint32_t p = 101;
    return p;
}
}

inline bool is_prime(std::uint32_t n)
{
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint32_t prime() { return detail::prime_slot(); }

inline void set_prime(std::uint32_t p)
{
    if (!is_prime(p) || p > 65521) throw std::invalid_argument("prime must be a prime below 65536");
    detail::prime_slot() = p;
}

// Restores the previous prime on scope exit.
class PrimeScope {
public:
    explicit PrimeScope(std::uint32_t p) : saved_(prime()) { set_prime(p); }
    ~PrimeScope() { detail::prime_slot() = saved_; }
    PrimeScope(const PrimeScope&) = delete;
    PrimeScope& operator=(const PrimeScope&) = delete;

private:
    std::uint32_t saved_;
};

// Residue modulo the configured prime.
struct Fp {
    std::uint32_t v = 0;

    Fp() = default;
    Fp(long long x)
    {
        long long p = prime();
        x %= p;
        if (x < 0) x += p;
        v = static_cast<std::uint32_t>(x);
    }

    static Fp zero() { return Fp(); }
    static Fp one() { return Fp(1); }
    static Fp raw(std::uint32_t x)
    {
        Fp r;
        r.v = x;
        return r;
    }

    bool is_zero() const { return v == 0; }

    Fp operator+(Fp o) const
    {
        std::uint32_t s = v + o.v;
        if (s >= prime()) s -= prime();
        return raw(s);
    }
    Fp operator-(Fp o) const { return raw(v >= o.v ? v - o.v : v + prime() - o.v); }
    Fp operator-() const { return raw(v == 0 ? 0 : prime() - v); }
    Fp operator*(Fp o) const
    {
        return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * o.v % prime()));
    }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    Fp pow(std::uint64_t e) const
    {
        Fp base = *this, r = one();
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }
    Fp inv() const
    {
        if (v == 0) throw std::domain_error("division by zero in F_p");
        return pow(prime() - 2);
    }
    Fp operator/(Fp o) const { return *this * o.inv(); }

    bool operator==(Fp o) const { return v == o.v; }
    bool operator!=(Fp o) const { return v != o.v; }
    bool operator<(Fp o) const { return v < o.v; }
};

inline std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.v; }

}
