#pragma once
#include <cstdint>
#include <string>

#include "acat/error.hpp"

namespace acat {

// Arithmetic in GF(2^e) in the polynomial basis. The modulus is a bit mask
// with bit i holding the coefficient of x^i; it must be irreducible of the
// stated degree (verified at construction by trial division, not trusted).
// Fields are interned, so pointer equality decides field equality and scalars
// can be passed around as raw bit patterns next to a Field pointer.
class Field {
 public:
    static const Field* get(int degree, uint64_t modulus);
    static const Field* get(int degree);  // default modulus, degree <= 8
    static const Field* gf2() { return get(1); }

    int degree() const { return e_; }
    uint64_t modulus() const { return mod_; }
    uint64_t order() const { return 1ull << e_; }

    uint64_t add(uint64_t a, uint64_t b) const { return a ^ b; }
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;  // throws acat::error on zero
    uint64_t pow(uint64_t a, uint64_t n) const;

    static bool irreducible(int degree, uint64_t modulus);
    static uint64_t default_modulus(int degree);

 private:
    Field(int e, uint64_t mod) : e_(e), mod_(mod) {}
    int e_;
    uint64_t mod_;
};

// Convenience value type used at API boundaries; the core containers store
// raw bits and a single Field per object instead.
struct Scalar {
    uint64_t bits = 0;
    const Field* f = nullptr;

    Scalar() = default;
    Scalar(uint64_t b, const Field* fld) : bits(b), f(fld) {}

    friend Scalar operator+(Scalar a, Scalar b) {
        require_same(a, b);
        return {a.f->add(a.bits, b.bits), a.f};
    }
    friend Scalar operator*(Scalar a, Scalar b) {
        require_same(a, b);
        return {a.f->mul(a.bits, b.bits), a.f};
    }
    Scalar inv() const { return {f->inv(bits), f}; }
    bool operator==(const Scalar& o) const { return f == o.f && bits == o.bits; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
    static void require_same(const Scalar& a, const Scalar& b) {
        if (a.f != b.f) throw error("scalar arithmetic across distinct fields");
    }
};

// Bit strings are written least significant coefficient first: "11" is 1 + x.
std::string bits_to_string(uint64_t bits);
uint64_t bits_from_string(const std::string& s);

}  // namespace acat
