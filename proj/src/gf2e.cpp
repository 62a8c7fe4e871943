#include "acat/gf2e.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace acat {

namespace {

int top_bit(uint64_t v) {
    int d = -1;
    while (v) {
        ++d;
        v >>= 1;
    }
    return d;
}

// Carry-less product of two polynomials over F2.
uint64_t clmul(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

uint64_t poly_mod(uint64_t a, uint64_t m) {
    int dm = top_bit(m);
    int da = top_bit(a);
    while (da >= dm) {
        a ^= m << (da - dm);
        da = top_bit(a);
    }
    return a;
}

}  // namespace

const Field* Field::get(int degree, uint64_t modulus) {
    if (degree < 1 || degree > 24) throw error("field extension degree out of range: " + std::to_string(degree));
    if (degree == 1) modulus = 0b10;  // the modulus is irrelevant over F2; normalize for interning
    if (degree > 1) {
        if (top_bit(modulus) != degree)
            throw error("field modulus does not have degree " + std::to_string(degree));
        if (!irreducible(degree, modulus))
            throw error("field modulus is reducible: " + bits_to_string(modulus));
    }
    static std::mutex mx;
    static std::map<std::pair<int, uint64_t>, std::unique_ptr<Field>> registry;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_pair(degree, modulus);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<Field>(new Field(degree, modulus))).first;
    return it->second.get();
}

const Field* Field::get(int degree) { return get(degree, default_modulus(degree)); }

uint64_t Field::default_modulus(int degree) {
    switch (degree) {
        case 1: return 0b10;
        case 2: return 0b111;        // x^2+x+1
        case 3: return 0b1011;       // x^3+x+1
        case 4: return 0b10011;      // x^4+x+1
        case 5: return 0b100101;     // x^5+x^2+1
        case 6: return 0b1000011;    // x^6+x+1
        case 7: return 0b10000011;   // x^7+x+1
        case 8: return 0b100011011;  // x^8+x^4+x^3+x+1
        default:
            throw error("no default modulus for extension degree " + std::to_string(degree) +
                        "; supply one explicitly");
    }
}

bool Field::irreducible(int degree, uint64_t modulus) {
    if (top_bit(modulus) != degree) return false;
    if (degree == 1) return true;
    if (!(modulus & 1)) return false;  // divisible by x
    for (uint64_t d = 2; top_bit(d) < degree; ++d) {
        if (poly_mod(modulus, d) == 0) return false;
    }
    return true;
}

uint64_t Field::mul(uint64_t a, uint64_t b) const {
    if (e_ == 1) return a & b & 1;
    return poly_mod(clmul(a, b), mod_);
}

uint64_t Field::pow(uint64_t a, uint64_t n) const {
    uint64_t r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) throw error("inversion of zero field element");
    return pow(a, order() - 2);
}

std::string bits_to_string(uint64_t bits) {
    if (bits == 0) return "0";
    std::string s;
    while (bits) {
        s.push_back((bits & 1) ? '1' : '0');
        bits >>= 1;
    }
    return s;
}

uint64_t bits_from_string(const std::string& s) {
    if (s.empty() || s.size() > 63) throw error("bad bit string: '" + s + "'");
    uint64_t v = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v |= 1ull << i;
        else if (s[i] != '0')
            throw error("bad bit string: '" + s + "'");
    }
    return v;
}

}  // namespace acat
