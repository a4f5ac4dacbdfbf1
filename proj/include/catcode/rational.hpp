#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "catcode/errors.hpp"

namespace catcode {

// Exact code rate a/b, normalized so that comparisons and string keys are canonical.
struct Rate {
    std::int64_t num = 1;
    std::int64_t den = 1;

    Rate() = default;
    Rate(std::int64_t n, std::int64_t d) : num(n), den(d) {
        require(d != 0, Errc::negative_rate, "rate denominator must be nonzero");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "a/b" or a bare integer "a".
    static Rate parse(const std::string& text) {
        auto bad = [&] { throw_error(Errc::bad_file, "invalid rate '" + text + "'"); };
        if (text.empty()) bad();
        std::size_t slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t used = 0;
                std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) bad();
                return Rate(n, 1);
            }
            std::size_t used_n = 0, used_d = 0;
            std::string num_part = text.substr(0, slash);
            std::string den_part = text.substr(slash + 1);
            if (num_part.empty() || den_part.empty()) bad();
            std::int64_t n = std::stoll(num_part, &used_n);
            std::int64_t d = std::stoll(den_part, &used_d);
            if (used_n != num_part.size() || used_d != den_part.size()) bad();
            return Rate(n, d);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            bad();
        }
        return Rate();  // unreachable
    }

    friend bool operator==(const Rate& a, const Rate& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rate& a, const Rate& b) { return !(a == b); }
    friend bool operator<(const Rate& a, const Rate& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator>(const Rate& a, const Rate& b) { return b < a; }
    friend bool operator<=(const Rate& a, const Rate& b) { return !(b < a); }
    friend bool operator>=(const Rate& a, const Rate& b) { return !(a < b); }
};

}  // namespace catcode
