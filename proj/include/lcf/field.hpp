#pragma once

#include <cstdint>
#include <stdexcept>

namespace lcf {

/// The coefficient field F_q, q prime. Elements are residues in [0, q).
struct FieldSpec {
    std::uint32_t q;

    explicit FieldSpec(std::uint32_t q_) : q(q_) {
        if (!is_prime(q_)) throw std::invalid_argument("FieldSpec: q must be prime and >= 2");
    }

    static bool is_prime(std::uint32_t n) noexcept {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    bool operator==(const FieldSpec&) const = default;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t s = a + b;
        return s >= q ? s - q : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : a + q - b;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept {
        std::uint32_t r = 1 % q, base = a % q;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a % q == 0) throw std::domain_error("FieldSpec::inv: zero has no inverse");
        return pow(a, q - 2);  // Fermat
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    std::uint32_t reduce(std::uint64_t v) const noexcept {
        return static_cast<std::uint32_t>(v % q);
    }
};

}  // namespace lcf
