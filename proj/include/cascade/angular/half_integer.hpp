#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cascade {

class MalformedAngularMomentum : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Angular momentum quantum number stored as twice its value.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
    static constexpr HalfInteger from_int(int j) { return HalfInteger(2 * j); }
    /// Accepts "3", "-2", "7/2", "-1/2".
    static HalfInteger parse(std::string_view text);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    /// Integer value; throws when half-odd.
    int as_int() const;
    std::string str() const;

    constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ + b.twice_); }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ - b.twice_); }
    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// True when j and m are both integer or both half-odd.
constexpr bool same_parity(HalfInteger j, HalfInteger m) { return ((j.twice() - m.twice()) % 2) == 0; }

} // namespace cascade
