#pragma once

#include <compare>
#include <string>

namespace iafc {

// Angular momentum quantum number stored as 2j so half-integers stay exact.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int whole) : twice_(2 * whole) {}
    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    // "3/2", "-1", ... for diagnostics.
    std::string str() const {
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_ = 0;
};

// Shorthand for literals in twice-units: half(3) == 3/2.
inline constexpr HalfInt half(int twice) { return HalfInt::from_twice(twice); }

constexpr bool projection_valid(HalfInt j, HalfInt m) {
    const int tj = j.twice(), tm = m.twice() < 0 ? -m.twice() : m.twice();
    return tm <= tj && (tj - m.twice()) % 2 == 0;
}

constexpr bool triangle_valid(HalfInt j1, HalfInt j2, HalfInt j3) {
    const int d = j1.twice() - j2.twice();
    const int lo = d < 0 ? -d : d;
    return j3.twice() >= lo && j3.twice() <= j1.twice() + j2.twice() &&
           (j1.twice() + j2.twice() + j3.twice()) % 2 == 0;
}

constexpr int multiplicity(HalfInt j) { return j.twice() + 1; }  // 2j+1

}  // namespace iafc
