#include "cascade/angular/half_integer.hpp"

#include <charconv>

namespace cascade {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw MalformedAngularMomentum("cannot parse angular momentum '" + std::string(whole) + "'");
    return v;
}

} // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_int(parse_int(text, text));
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den != 2 || num % 2 == 0) throw MalformedAngularMomentum("'" + std::string(text) + "' is not a half-odd integer");
    return from_twice(num);
}

int HalfInteger::as_int() const {
    if (!is_integer()) throw MalformedAngularMomentum(str() + " is not an integer");
    return twice_ / 2;
}

std::string HalfInteger::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

} // namespace cascade
